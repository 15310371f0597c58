#include "epiq/netgen/generators.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include "epiq/common/error.hpp"

namespace epiq::netgen {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(std::string(name) + " must lie in [0, 1]");
}

NodeId as_node(std::uint64_t x) { return static_cast<NodeId>(x); }

// m distinct entries drawn uniformly from a list with repetitions; the
// list encodes degree-proportional sampling.
std::vector<NodeId> random_subset(const std::vector<NodeId>& repeated, std::size_t m, Rng& rng) {
  std::vector<NodeId> picked;
  picked.reserve(m);
  while (picked.size() < m) {
    const NodeId x = repeated[rng.below(repeated.size())];
    if (std::find(picked.begin(), picked.end(), x) == picked.end()) picked.push_back(x);
  }
  return picked;
}

// Uniform neighbor of `from` that is neither `self` nor already adjacent to it.
std::optional<NodeId> fresh_neighbor(const GraphBuilder& b, NodeId from, NodeId self, Rng& rng) {
  std::vector<NodeId> candidates;
  for (NodeId w : b.neighbors(from)) {
    if (w != self && !b.has_edge(self, w)) candidates.push_back(w);
  }
  if (candidates.empty()) return std::nullopt;
  return candidates[rng.below(candidates.size())];
}

}  // namespace

std::size_t DegreeSequence::num_nodes() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

std::size_t DegreeSequence::stub_count() const {
  std::size_t total = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) total += k * counts[k];
  return total;
}

std::vector<std::size_t> DegreeSequence::expand() const {
  std::vector<std::size_t> degrees;
  degrees.reserve(num_nodes());
  for (std::size_t k = 0; k < counts.size(); ++k) degrees.insert(degrees.end(), counts[k], k);
  return degrees;
}

void validate(const GeneratorParams& params) {
  std::visit(overloaded{
                 [](const BAParams& p) {
                   if (!(p.m >= 1 && p.n > p.m)) throw ParameterError("BA requires n > m >= 1");
                 },
                 [](const PLCParams& p) {
                   if (!(p.m >= 1 && p.n > p.m)) throw ParameterError("PLC requires n > m >= 1");
                   require_probability(p.p, "p");
                 },
                 [](const WSParams& p) {
                   if (p.k % 2 != 0) throw ParameterError("WS requires even k");
                   if (p.k >= p.n) throw ParameterError("WS requires k < n");
                   require_probability(p.p, "p");
                 },
                 [](const RWParams& p) {
                   if (p.n < 1) throw ParameterError("RW requires n >= 1");
                   require_probability(p.q_e, "q_e");
                   require_probability(p.q_v, "q_v");
                 },
                 [](const NNParams& p) {
                   if (p.n < 1) throw ParameterError("NN requires n >= 1");
                   require_probability(p.u, "u");
                 },
                 [](const ConfigParams& p) {
                   if (p.sequence.stub_count() % 2 != 0) {
                     throw ParameterError("configuration model requires an even stub count");
                   }
                 },
             },
             params);
}

Graph gen_ba(const BAParams& params, Seed seed) {
  validate(params);
  Rng rng = seed.stream();
  GraphBuilder b(params.n);
  std::vector<NodeId> repeated;
  repeated.reserve(2 * params.n * params.m);
  for (NodeId leaf = 1; leaf <= params.m; ++leaf) {
    b.add_edge(0, leaf);
    repeated.push_back(0);
    repeated.push_back(leaf);
  }
  for (auto source = static_cast<NodeId>(params.m + 1); source < params.n; ++source) {
    const auto targets = random_subset(repeated, params.m, rng);
    for (NodeId t : targets) b.add_edge(source, t);
    repeated.insert(repeated.end(), targets.begin(), targets.end());
    repeated.insert(repeated.end(), params.m, source);
  }
  return std::move(b).build();
}

Graph gen_plc(const PLCParams& params, Seed seed) {
  validate(params);
  Rng rng = seed.stream();
  GraphBuilder b(params.n);
  std::vector<NodeId> repeated(params.m);
  std::iota(repeated.begin(), repeated.end(), NodeId{0});

  for (auto source = static_cast<NodeId>(params.m); source < params.n; ++source) {
    auto targets = random_subset(repeated, params.m, rng);
    NodeId target = targets.back();
    targets.pop_back();
    b.add_edge(source, target);
    repeated.push_back(target);
    std::size_t count = 1;
    while (count < params.m) {
      if (rng.bernoulli(params.p)) {
        if (auto nbr = fresh_neighbor(b, target, source, rng)) {
          b.add_edge(source, *nbr);
          repeated.push_back(*nbr);
          ++count;
          continue;
        }
      }
      target = targets.back();
      targets.pop_back();
      // A triad step may already have linked this target; the attempt still counts.
      b.add_edge(source, target);
      repeated.push_back(target);
      ++count;
    }
    repeated.insert(repeated.end(), params.m, source);
  }
  return std::move(b).build();
}

Graph gen_ws(const WSParams& params, Seed seed) {
  validate(params);
  Rng rng = seed.stream();
  const std::size_t n = params.n;
  GraphBuilder b(n);
  for (std::size_t j = 1; j <= params.k / 2; ++j) {
    for (std::size_t u = 0; u < n; ++u) b.add_edge(as_node(u), as_node((u + j) % n));
  }
  for (std::size_t j = 1; j <= params.k / 2; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      if (!rng.bernoulli(params.p)) continue;
      const NodeId src = as_node(u);
      const NodeId old = as_node((u + j) % n);
      NodeId w = as_node(rng.below(n));
      bool saturated = false;
      while (w == src || b.has_edge(src, w)) {
        w = as_node(rng.below(n));
        if (b.degree(src) >= n - 1) {
          saturated = true;
          break;
        }
      }
      if (saturated) continue;
      b.remove_edge(src, old);
      b.add_edge(src, w);
    }
  }
  return std::move(b).build();
}

Graph gen_rw(const RWParams& params, Seed seed) {
  validate(params);
  Rng rng = seed.stream();
  GraphBuilder b(1);
  for (std::size_t i = 1; i < params.n; ++i) {
    const NodeId v = b.add_node();
    const NodeId anchor = as_node(rng.below(v));
    b.add_edge(v, anchor);
    NodeId current = anchor;
    // Walk length is capped at n steps so q_e = 1 terminates.
    for (std::size_t step = 0; step < params.n && rng.bernoulli(params.q_e); ++step) {
      const auto& nb = b.neighbors(current);
      if (nb.size() == 1 && nb.front() == v) break;
      NodeId next = v;
      while (next == v) next = nb[rng.below(nb.size())];
      current = next;
      if (rng.bernoulli(params.q_v)) b.add_edge(v, current);
    }
  }
  return std::move(b).build();
}

Graph gen_nn(const NNParams& params, Seed seed) {
  validate(params);
  Rng rng = seed.stream();
  GraphBuilder b(1);
  for (std::size_t i = 1; i < params.n; ++i) {
    const NodeId v = b.add_node();
    const NodeId anchor = as_node(rng.below(v));
    b.add_edge(v, anchor);
    while (rng.bernoulli(params.u)) {
      const auto w = fresh_neighbor(b, anchor, v, rng);
      if (!w) break;
      b.add_edge(v, *w);
    }
    const std::size_t size = b.num_nodes();
    for (std::size_t pair = 0; pair < params.k && size >= 2; ++pair) {
      const NodeId a = as_node(rng.below(size));
      NodeId c = as_node(rng.below(size - 1));
      if (c >= a) ++c;
      b.add_edge(a, c);
    }
  }
  return std::move(b).build();
}

ConfigModelResult gen_config_model(const DegreeSequence& sequence, Seed seed) {
  validate(GeneratorParams{ConfigParams{sequence}});
  Rng rng = seed.stream();
  std::vector<std::size_t> degrees = sequence.expand();
  const std::size_t n = degrees.size();
  // Degree-to-id assignment is randomized so ids carry no degree information.
  for (std::size_t i = n; i > 1; --i) std::swap(degrees[i - 1], degrees[rng.below(i)]);

  std::vector<NodeId> stubs;
  stubs.reserve(sequence.stub_count());
  for (std::size_t v = 0; v < n; ++v) stubs.insert(stubs.end(), degrees[v], as_node(v));

  auto take = [&stubs](std::size_t i) {
    const NodeId x = stubs[i];
    stubs[i] = stubs.back();
    stubs.pop_back();
    return x;
  };

  GraphBuilder b(n);
  ConfigModelResult result;
  while (stubs.size() >= 2) {
    const NodeId a = take(rng.below(stubs.size()));
    for (std::size_t attempt = 0;; ++attempt) {
      const std::size_t j = rng.below(stubs.size());
      const NodeId c = stubs[j];
      if (c != a && !b.has_edge(a, c)) {
        b.add_edge(a, c);
        take(j);
        break;
      }
      if (attempt + 1 >= n) {
        take(j);
        result.dropped_stubs += 2;
        break;
      }
    }
  }
  result.graph = std::move(b).build();
  return result;
}

Graph generate(const GeneratorParams& params, Seed seed) {
  return std::visit(overloaded{
                        [&](const BAParams& p) { return gen_ba(p, seed); },
                        [&](const PLCParams& p) { return gen_plc(p, seed); },
                        [&](const WSParams& p) { return gen_ws(p, seed); },
                        [&](const RWParams& p) { return gen_rw(p, seed); },
                        [&](const NNParams& p) { return gen_nn(p, seed); },
                        [&](const ConfigParams& p) { return gen_config_model(p.sequence, seed).graph; },
                    },
                    params);
}

std::string describe(const GeneratorParams& params) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const BAParams& p) { out << "ba(n=" << p.n << ",m=" << p.m << ")"; },
                 [&](const PLCParams& p) { out << "plc(n=" << p.n << ",m=" << p.m << ",p=" << p.p << ")"; },
                 [&](const WSParams& p) { out << "ws(n=" << p.n << ",k=" << p.k << ",p=" << p.p << ")"; },
                 [&](const RWParams& p) { out << "rw(n=" << p.n << ",q_e=" << p.q_e << ",q_v=" << p.q_v << ")"; },
                 [&](const NNParams& p) { out << "nn(n=" << p.n << ",u=" << p.u << ",k=" << p.k << ")"; },
                 [&](const ConfigParams& p) { out << "config(n=" << p.sequence.num_nodes() << ")"; },
             },
             params);
  return out.str();
}

DegreeSequence sample_degree_sequence(const gfun::DegreeDistribution& dist, std::size_t n, Seed seed) {
  if (n < 1) throw ParameterError("degree sequence needs n >= 1");
  const auto table = dist.truncated(1e-8);
  const auto& p = std::get<gfun::Empirical>(table.form()).p;
  std::vector<double> cumulative(p.size());
  std::partial_sum(p.begin(), p.end(), cumulative.begin());

  Rng rng = seed.stream();
  std::vector<std::size_t> draws(n);
  std::size_t stubs = 0;
  for (auto& d : draws) {
    const double x = rng.uniform() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    d = std::min(static_cast<std::size_t>(it - cumulative.begin()), p.size() - 1);
    stubs += d;
  }
  if (stubs % 2 != 0) ++draws[rng.below(n)];

  DegreeSequence seq;
  for (std::size_t d : draws) {
    if (d >= seq.counts.size()) seq.counts.resize(d + 1, 0);
    ++seq.counts[d];
  }
  return seq;
}

gfun::DegreeDistribution degree_distribution(const Graph& g) {
  if (g.empty()) throw ParameterError("degree distribution of an empty graph");
  std::vector<double> counts;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const std::size_t d = g.degree(v);
    if (d >= counts.size()) counts.resize(d + 1, 0.0);
    counts[d] += 1.0;
  }
  return gfun::DegreeDistribution::from_counts(counts);
}

}  // namespace epiq::netgen
