#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "epiq/common/random.hpp"
#include "epiq/gfun/distribution.hpp"
#include "epiq/netgen/graph.hpp"

namespace epiq::netgen {

/// Node counts per degree: counts[k] = P_k.
struct DegreeSequence {
  std::vector<std::size_t> counts;

  std::size_t num_nodes() const;
  std::size_t stub_count() const;
  /// Per-node degrees in ascending order.
  std::vector<std::size_t> expand() const;
};

// Generator parameters. Symbols follow the usual model literature:
// m edges per new node, p triad/rewiring probability, k lattice degree or
// random pairs, q_e walk continuation, q_v walk attachment, u 2-hop
// attachment.
struct BAParams {
  std::size_t n;
  std::size_t m;
};
struct PLCParams {
  std::size_t n;
  std::size_t m;
  double p;
};
struct WSParams {
  std::size_t n;
  std::size_t k;
  double p;
};
struct RWParams {
  std::size_t n;
  double q_e;
  double q_v;
};
struct NNParams {
  std::size_t n;
  double u;
  std::size_t k;
};
struct ConfigParams {
  DegreeSequence sequence;
};

using GeneratorParams = std::variant<BAParams, PLCParams, WSParams, RWParams, NNParams, ConfigParams>;

/// Preferential attachment grown from a star on m+1 nodes.
Graph gen_ba(const BAParams& params, Seed seed);
/// Holme-Kim: preferential attachment plus triad formation with prob. p.
Graph gen_plc(const PLCParams& params, Seed seed);
/// Watts-Strogatz ring lattice with per-edge rewiring.
Graph gen_ws(const WSParams& params, Seed seed);
/// Vazquez random-walk growth.
Graph gen_rw(const RWParams& params, Seed seed);
/// Nearest-neighbor growth with k random pairs connected per new node.
Graph gen_nn(const NNParams& params, Seed seed);

struct ConfigModelResult {
  Graph graph;
  /// Stubs discarded because no simple partner could be found.
  std::size_t dropped_stubs = 0;
};

/// Uniform stub matching that keeps the graph simple: a colliding pair is
/// re-drawn up to n times, after which both stubs are dropped.
ConfigModelResult gen_config_model(const DegreeSequence& sequence, Seed seed);

/// Dispatches on the parameter variant.
Graph generate(const GeneratorParams& params, Seed seed);

/// Checks the parameter invariants; throws ParameterError.
void validate(const GeneratorParams& params);

std::string describe(const GeneratorParams& params);

/// n i.i.d. degree draws. Infinite-support laws are truncated where the
/// tail mass drops below 1e-8. An odd stub total gets one extra stub on a
/// uniformly chosen node.
DegreeSequence sample_degree_sequence(const gfun::DegreeDistribution& dist, std::size_t n, Seed seed);

/// Empirical degree distribution of a graph.
gfun::DegreeDistribution degree_distribution(const Graph& g);

}  // namespace epiq::netgen
