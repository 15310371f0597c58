#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "epiq/common/error.hpp"
#include "epiq/netgen/generators.hpp"
#include "epiq/netgen/io.hpp"
#include "epiq/netgen/stats.hpp"
#include "oracles/series.hpp"

#include <sstream>

using namespace epiq;
using namespace epiq::netgen;

namespace {

bool connected(const Graph& g) { return largest_component(g).size() == g.num_nodes(); }

std::string serialize(const Graph& g) {
  std::ostringstream out;
  write_edge_list(g, out);
  return out.str();
}

}  // namespace

TEST_CASE("BA edge count and connectivity") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Graph tiny = gen_ba({3, 1}, Seed{s});
    CHECK(tiny.num_edges() == 2);
  }
  const Graph g = gen_ba({2000, 4}, Seed{1});
  CHECK(g.num_edges() == 4u * (2000 - 4));
  CHECK(connected(g));
  g.validate();
}

TEST_CASE("generator parameter validation") {
  CHECK_THROWS_AS(gen_ba({5, 5}, Seed{}), ParameterError);
  CHECK_THROWS_AS(gen_ba({5, 0}, Seed{}), ParameterError);
  CHECK_THROWS_AS(gen_plc({100, 3, 1.5}, Seed{}), ParameterError);
  CHECK_THROWS_AS(gen_ws({100, 3, 0.1}, Seed{}), ParameterError);
  CHECK_THROWS_AS(gen_ws({10, 10, 0.1}, Seed{}), ParameterError);
  CHECK_THROWS_AS(gen_rw({100, -0.1, 0.5}, Seed{}), ParameterError);
  CHECK_THROWS_AS(gen_nn({100, 2.0, 1}, Seed{}), ParameterError);
}

TEST_CASE("generators are deterministic") {
  const std::vector<GeneratorParams> all{BAParams{500, 3}, PLCParams{500, 3, 0.4}, WSParams{500, 6, 0.1},
                                         RWParams{500, 0.8, 0.8}, NNParams{500, 0.7, 2}};
  for (const auto& p : all) {
    CAPTURE(describe(p));
    const Graph a = generate(p, Seed{42});
    const Graph b = generate(p, Seed{42});
    CHECK(serialize(a) == serialize(b));
    CHECK_FALSE(serialize(a) == serialize(generate(p, Seed{43})));
    a.validate();
  }
}

TEST_CASE("PLC without triads looks like BA") {
  const Graph plc = gen_plc({3000, 4, 0.0}, Seed{3});
  const Graph ba = gen_ba({3000, 4}, Seed{3});
  CHECK(std::abs(average_clustering(plc) - average_clustering(ba)) < 0.02);
  const Graph clustered = gen_plc({3000, 4, 0.8}, Seed{3});
  CHECK(average_clustering(clustered) > average_clustering(plc) + 0.1);
}

TEST_CASE("WS without rewiring is the ring lattice") {
  for (std::size_t k : {4, 6, 10}) {
    const Graph g = gen_ws({200, k, 0.0}, Seed{9});
    const double expected = 3.0 * (k - 2.0) / (4.0 * (k - 1.0));
    CHECK(average_clustering(g) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(g.num_edges() == 200 * k / 2);
  }
}

TEST_CASE("RW without walking is a tree") {
  const Graph g = gen_rw({1000, 0.0, 0.9}, Seed{5});
  CHECK(g.num_edges() == 999);
  CHECK(connected(g));
}

TEST_CASE("NN without extras is a tree") {
  const Graph g = gen_nn({1000, 0.0, 0}, Seed{5});
  CHECK(g.num_edges() == 999);
  CHECK(connected(g));
}

TEST_CASE("configuration model") {
  SUBCASE("two stubs") {
    DegreeSequence seq{{0, 2}};
    const auto r = gen_config_model(seq, Seed{1});
    CHECK(r.graph.num_edges() == 1);
    CHECK(r.graph.has_edge(0, 1));
  }
  SUBCASE("regular") {
    DegreeSequence seq;
    seq.counts.assign(5, 0);
    seq.counts[4] = 10000;
    const auto r = gen_config_model(seq, Seed{2});
    CHECK(r.graph.average_degree() > 4.0 * 0.99);
    for (NodeId v = 0; v < r.graph.num_nodes(); ++v) CHECK(r.graph.degree(v) <= 4);
    CHECK(r.graph.average_degree() * r.graph.num_nodes() + r.dropped_stubs == doctest::Approx(40000));
  }
  SUBCASE("odd stub total") {
    DegreeSequence seq{{0, 3}};
    CHECK_THROWS_AS(gen_config_model(seq, Seed{1}), ParameterError);
  }
}

TEST_CASE("degree sequence sampling") {
  SUBCASE("point mass") {
    const auto seq = sample_degree_sequence(gfun::DegreeDistribution::d_regular(4), 100, Seed{1});
    REQUIRE(seq.counts.size() >= 5);
    CHECK(seq.counts[4] == 100);
    CHECK(seq.num_nodes() == 100);
  }
  SUBCASE("poisson mean") {
    const auto seq = sample_degree_sequence(gfun::DegreeDistribution::poisson(2.0), 100000, Seed{2});
    CHECK(seq.stub_count() % 2 == 0);
    CHECK(std::abs(static_cast<double>(seq.stub_count()) / 1e5 - 2.0) < 0.02);
  }
  SUBCASE("powerlaw degree-1 fraction") {
    const auto seq = sample_degree_sequence(gfun::DegreeDistribution::simple_powerlaw(3.0), 100000, Seed{3});
    const double frac = static_cast<double>(seq.counts[1]) / 1e5;
    CHECK(std::abs(frac - 1.0 / oracle::zeta_bruteforce(3.0)) < 0.005);
  }
  SUBCASE("powerlaw configuration graph mean degree") {
    const auto seq = sample_degree_sequence(gfun::DegreeDistribution::simple_powerlaw(3.0), 10000, Seed{4});
    const auto r = gen_config_model(seq, Seed{5});
    const double expected = oracle::zeta_bruteforce(2.0) / oracle::zeta_bruteforce(3.0);
    CHECK(std::abs(r.graph.average_degree() - expected) < 0.1);
    CHECK(static_cast<double>(r.dropped_stubs) < 0.01 * static_cast<double>(seq.stub_count()));
  }
  SUBCASE("unnormalized table") {
    CHECK_THROWS_AS(gfun::DegreeDistribution::empirical({0.5, 0.2}), ParameterError);
  }
}
