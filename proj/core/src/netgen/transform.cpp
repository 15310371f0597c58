#include "epiq/netgen/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "epiq/common/error.hpp"

namespace epiq::netgen {

Graph induced_subgraph(const Graph& g, const std::vector<bool>& keep) {
  if (keep.size() != g.num_nodes()) throw ParameterError("keep mask length does not match node count");
  constexpr NodeId kDropped = ~NodeId{0};
  std::vector<NodeId> relabel(g.num_nodes(), kDropped);
  NodeId next = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (keep[v]) relabel[v] = next++;
  }
  std::vector<std::vector<NodeId>> adjacency(next);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (relabel[v] == kDropped) continue;
    for (NodeId w : g.neighbors(v)) {
      if (relabel[w] != kDropped) adjacency[relabel[v]].push_back(relabel[w]);
    }
  }
  return Graph::from_adjacency(std::move(adjacency));
}

Graph induced_susceptible_subgraph(const Graph& g, std::span<const NodeState> states) {
  if (states.size() != g.num_nodes()) {
    throw ParameterError("state vector has " + std::to_string(states.size()) + " entries for " +
                         std::to_string(g.num_nodes()) + " nodes");
  }
  std::vector<bool> keep(states.size());
  for (std::size_t v = 0; v < states.size(); ++v) keep[v] = states[v] == NodeState::S;
  return induced_subgraph(g, keep);
}

std::vector<NodeId> immunize(const Graph& g, double fraction, ImmunizationStrategy strategy, Seed seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ParameterError("immunization fraction must lie in [0, 1]");
  const std::size_t n = g.num_nodes();
  // The small slack keeps e.g. 0.07 * 100 from rounding up to 8.
  const auto count = std::min(n, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9)));

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  if (strategy == ImmunizationStrategy::TopDegree) {
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
  } else {
    Rng rng = seed.stream({0x1a3});
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + rng.below(n - i);
      std::swap(order[i], order[j]);
    }
  }
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace epiq::netgen
