#include "epiq/netgen/graph.hpp"

#include <algorithm>
#include <string>

#include "epiq/common/error.hpp"

namespace epiq::netgen {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  BuildReport ignored;
  return from_edges(n, edges, ignored);
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges, BuildReport& report) {
  report = {};
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ParameterError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                           ") references a node outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) {
      ++report.self_loops;
      continue;
    }
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  const auto last = std::unique(canon.begin(), canon.end());
  report.duplicates = static_cast<std::size_t>(canon.end() - last);
  canon.erase(last, canon.end());

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : canon) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.neighbors_.resize(2 * canon.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : canon) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  return g;
}

Graph Graph::from_adjacency(std::vector<std::vector<NodeId>> adjacency) {
  Graph g;
  const std::size_t n = adjacency.size();
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + adjacency[v].size();
  g.neighbors_.reserve(g.offsets_[n]);
  for (auto& list : adjacency) {
    std::sort(list.begin(), list.end());
    g.neighbors_.insert(g.neighbors_.end(), list.begin(), list.end());
    std::vector<NodeId>().swap(list);
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(num_nodes());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = degree(static_cast<NodeId>(v));
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

void Graph::validate() const {
  const std::size_t n = num_nodes();
  for (NodeId u = 0; u < n; ++u) {
    const auto nb = neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const NodeId v = nb[i];
      if (v >= n) throw ParameterError("neighbor id out of range at node " + std::to_string(u));
      if (v == u) throw ParameterError("self-loop at node " + std::to_string(u));
      if (i > 0 && nb[i - 1] >= v) {
        throw ParameterError("unsorted or duplicate neighbor at node " + std::to_string(u));
      }
      const auto back = neighbors(v);
      if (!std::binary_search(back.begin(), back.end(), u)) {
        throw ParameterError("asymmetric edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
      }
    }
  }
}

bool GraphBuilder::has_edge(NodeId u, NodeId v) const {
  const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  const NodeId other = adjacency_[u].size() <= adjacency_[v].size() ? v : u;
  return std::find(a.begin(), a.end(), other) != a.end();
}

bool GraphBuilder::add_edge(NodeId u, NodeId v) {
  if (u == v || has_edge(u, v)) return false;
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  return true;
}

void GraphBuilder::remove_edge(NodeId u, NodeId v) {
  auto drop = [](std::vector<NodeId>& list, NodeId x) {
    auto it = std::find(list.begin(), list.end(), x);
    if (it != list.end()) {
      *it = list.back();
      list.pop_back();
    }
  };
  drop(adjacency_[u], v);
  drop(adjacency_[v], u);
}

Graph GraphBuilder::build() && { return Graph::from_adjacency(std::move(adjacency_)); }

}  // namespace epiq::netgen
