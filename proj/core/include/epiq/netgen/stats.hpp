#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "epiq/common/random.hpp"
#include "epiq/netgen/graph.hpp"

namespace epiq::netgen {

struct GraphStats {
  std::size_t n = 0;
  std::size_t edge_count = 0;
  double avg_degree = 0.0;
  /// Mean local clustering; nodes of degree < 2 contribute 0.
  double global_clustering = 0.0;
  /// Mean shortest path inside the largest component (exact when the
  /// component has no more pairs than requested, sampled otherwise).
  double avg_shortest_path = 0.0;
  /// Exponent from a least-squares fit of log CCDF against log degree.
  double powerlaw_exponent = 0.0;
  /// Smallest degree included in the exponent fit.
  std::size_t fit_min_degree = 0;
  std::size_t largest_component = 0;
};

double local_clustering(const Graph& g, NodeId v);
double average_clustering(const Graph& g);

/// Node ids of the largest connected component (smallest id wins ties).
std::vector<NodeId> largest_component(const Graph& g);

/// Hop distances from `source`; unreachable nodes get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const Graph& g, NodeId source);

double average_shortest_path(const Graph& g, std::size_t sample_pairs, Seed seed);

struct PowerlawFit {
  double exponent = 0.0;
  std::size_t k_min = 0;
  std::size_t points = 0;
};

/// Fits log P(K >= k) = c - (alpha - 1) log k over distinct degrees
/// k >= max(2, modal degree).
PowerlawFit fit_powerlaw_exponent(const Graph& g);

/// Throws ParameterError for an empty graph or sample_pairs == 0.
GraphStats graph_stats(const Graph& g, std::size_t path_sample_pairs, Seed seed);

/// "n,edges,avg_degree,clustering,avg_path,plaw_exp"
std::string stats_csv_header();
std::string stats_csv_row(const GraphStats& s);

}  // namespace epiq::netgen
