#include "epiq/netgen/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "epiq/common/error.hpp"

namespace epiq::netgen {
namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

// BFS that reuses its buffers across sources.
class BfsScratch {
 public:
  explicit BfsScratch(std::size_t n) : dist_(n, kUnreached) {}

  const std::vector<std::size_t>& run(const Graph& g, NodeId source) {
    for (NodeId v : touched_) dist_[v] = kUnreached;
    touched_.clear();
    dist_[source] = 0;
    touched_.push_back(source);
    for (std::size_t head = 0; head < touched_.size(); ++head) {
      const NodeId v = touched_[head];
      for (NodeId w : g.neighbors(v)) {
        if (dist_[w] == kUnreached) {
          dist_[w] = dist_[v] + 1;
          touched_.push_back(w);
        }
      }
    }
    return dist_;
  }

  const std::vector<NodeId>& reached() const { return touched_; }

 private:
  std::vector<std::size_t> dist_;
  std::vector<NodeId> touched_;
};

}  // namespace

double local_clustering(const Graph& g, NodeId v) {
  const auto nb = g.neighbors(v);
  const std::size_t d = nb.size();
  if (d < 2) return 0.0;
  std::size_t links = 0;
  for (std::size_t i = 0; i < d; ++i) {
    const auto other = g.neighbors(nb[i]);
    // Both lists are sorted; count common neighbors above nb[i].
    auto a = std::upper_bound(nb.begin(), nb.end(), nb[i]);
    auto b = std::upper_bound(other.begin(), other.end(), nb[i]);
    while (a != nb.end() && b != other.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++links;
        ++a;
        ++b;
      }
    }
  }
  return 2.0 * static_cast<double>(links) / (static_cast<double>(d) * static_cast<double>(d - 1));
}

double average_clustering(const Graph& g) {
  if (g.empty()) return 0.0;
  double sum = 0.0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) sum += local_clustering(g, v);
  return sum / static_cast<double>(g.num_nodes());
}

std::vector<NodeId> largest_component(const Graph& g) {
  std::vector<bool> seen(g.num_nodes(), false);
  std::vector<NodeId> best;
  std::vector<NodeId> current;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (seen[s]) continue;
    current.clear();
    current.push_back(s);
    seen[s] = true;
    for (std::size_t head = 0; head < current.size(); ++head) {
      for (NodeId w : g.neighbors(current[head])) {
        if (!seen[w]) {
          seen[w] = true;
          current.push_back(w);
        }
      }
    }
    if (current.size() > best.size()) best = current;
  }
  std::sort(best.begin(), best.end());
  return best;
}

std::vector<std::size_t> bfs_distances(const Graph& g, NodeId source) {
  BfsScratch scratch(g.num_nodes());
  return scratch.run(g, source);
}

double average_shortest_path(const Graph& g, std::size_t sample_pairs, Seed seed) {
  if (sample_pairs == 0) throw ParameterError("path_sample_pairs must be >= 1");
  const auto component = largest_component(g);
  const std::size_t c = component.size();
  if (c < 2) return 0.0;

  BfsScratch scratch(g.num_nodes());
  const double all_pairs = 0.5 * static_cast<double>(c) * static_cast<double>(c - 1);
  if (all_pairs <= static_cast<double>(sample_pairs)) {
    double total = 0.0;
    for (NodeId s : component) {
      const auto& dist = scratch.run(g, s);
      for (NodeId t : component) {
        if (t > s) total += static_cast<double>(dist[t]);
      }
    }
    return total / all_pairs;
  }

  // Pairs are drawn as (source, target) with a BFS per source; sources are
  // shared by ~sqrt(pairs) targets each.
  Rng rng = seed.stream({0x9a7b});
  const auto sources = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(sample_pairs))));
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t i = 0; i < sources && counted < sample_pairs; ++i) {
    const std::size_t s_index = rng.below(c);
    const auto& dist = scratch.run(g, component[s_index]);
    const std::size_t quota = std::min(sample_pairs - counted, (sample_pairs + sources - 1) / sources);
    for (std::size_t j = 0; j < quota; ++j) {
      std::size_t t_index = rng.below(c - 1);
      if (t_index >= s_index) ++t_index;
      total += static_cast<double>(dist[component[t_index]]);
      ++counted;
    }
  }
  return total / static_cast<double>(counted);
}

PowerlawFit fit_powerlaw_exponent(const Graph& g) {
  PowerlawFit fit;
  if (g.empty()) return fit;
  std::map<std::size_t, std::size_t> histogram;
  for (NodeId v = 0; v < g.num_nodes(); ++v) ++histogram[g.degree(v)];

  std::size_t modal = 0;
  std::size_t modal_count = 0;
  for (auto [k, count] : histogram) {
    if (count > modal_count) {
      modal = k;
      modal_count = count;
    }
  }
  fit.k_min = std::max<std::size_t>(2, modal);

  const double n = static_cast<double>(g.num_nodes());
  std::vector<std::pair<double, double>> points;
  std::size_t at_least = g.num_nodes();
  for (auto [k, count] : histogram) {
    if (k >= fit.k_min) points.emplace_back(std::log(static_cast<double>(k)), std::log(static_cast<double>(at_least) / n));
    at_least -= count;
  }
  fit.points = points.size();
  if (points.size() < 2) return fit;

  double mx = 0.0, my = 0.0;
  for (auto [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(points.size());
  my /= static_cast<double>(points.size());
  double sxy = 0.0, sxx = 0.0;
  for (auto [x, y] : points) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  fit.exponent = 1.0 - sxy / sxx;
  return fit;
}

GraphStats graph_stats(const Graph& g, std::size_t path_sample_pairs, Seed seed) {
  if (g.empty()) throw ParameterError("graph_stats on an empty graph");
  if (path_sample_pairs == 0) throw ParameterError("path_sample_pairs must be >= 1");
  GraphStats s;
  s.n = g.num_nodes();
  s.edge_count = g.num_edges();
  s.avg_degree = g.average_degree();
  s.global_clustering = average_clustering(g);
  s.largest_component = largest_component(g).size();
  s.avg_shortest_path = average_shortest_path(g, path_sample_pairs, seed);
  const auto fit = fit_powerlaw_exponent(g);
  s.powerlaw_exponent = fit.exponent;
  s.fit_min_degree = fit.k_min;
  return s;
}

std::string stats_csv_header() { return "n,edges,avg_degree,clustering,avg_path,plaw_exp"; }

std::string stats_csv_row(const GraphStats& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%zu,%.6f,%.6f,%.6f,%.6f", s.n, s.edge_count, s.avg_degree,
                s.global_clustering, s.avg_shortest_path, s.powerlaw_exponent);
  return buf;
}

}  // namespace epiq::netgen
