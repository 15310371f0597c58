#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "epiq/common/error.hpp"
#include "epiq/exper/output.hpp"
#include "epiq/exper/parallel.hpp"
#include "epiq/exper/strategies.hpp"
#include "epiq/exper/sweep.hpp"
#include "epiq/netgen/generators.hpp"
#include "json.hpp"

using namespace epiq;
using namespace epiq::exper;
using netgen::Edge;

namespace {

Graph small_ba(std::size_t n = 400, std::size_t m = 3, std::uint64_t seed = 11) {
  return netgen::gen_ba({n, m}, Seed{seed});
}

Graph star(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) e.push_back({0, v});
  return Graph::from_edges(n, e);
}

SweepSpec small_spec() {
  SweepSpec spec;
  spec.params = {1.0, 1.0, 4};
  spec.thresholds = {0.0, 0.2, 0.5, 1.0};
  spec.trials = 24;
  spec.seed = Seed{2024};
  spec.workers = 1;
  return spec;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "epiq_test_exper";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parallel_for runs every task once and rethrows the lowest failing index") {
  std::vector<std::atomic<int>> hits(200);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (auto& h : hits) CHECK(h.load() == 1);

  for (std::size_t workers : {1u, 3u}) {
    try {
      parallel_for(50, workers, [](std::size_t i) {
        if (i == 17 || i == 33) throw std::runtime_error("task " + std::to_string(i));
      });
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "task 17");
    }
  }
}

TEST_CASE("threshold grid") {
  const auto grid = threshold_grid();
  REQUIRE(grid.size() == 101);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.0);
  CHECK(grid[37] == 0.37);
  CHECK(threshold_grid(0.25) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(threshold_grid(0.3).back() == 1.0);
  CHECK_THROWS_AS(threshold_grid(0.0), ParameterError);
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec = small_spec();
  spec.trials = 0;
  CHECK_THROWS_AS(spec.validate(), ParameterError);
  spec = small_spec();
  spec.thresholds = {0.5, 0.2};
  CHECK_THROWS_AS(spec.validate(), ParameterError);
  spec.thresholds = {0.2, 1.5};
  CHECK_THROWS_AS(spec.validate(), ParameterError);
  spec.thresholds = {};
  CHECK_THROWS_AS(spec.validate(), ParameterError);
}

TEST_CASE("aggregate matches hand-computed moments") {
  std::vector<TrialRow> rows(4);
  const double totals[] = {0.01, 0.2, 0.4, 0.03};
  const double maxima[] = {0.01, 0.1, 0.1, 0.02};
  for (int i = 0; i < 4; ++i) {
    rows[i].total = totals[i];
    rows[i].max = maxima[i];
    rows[i].second_wave = i == 2;
  }
  const auto s = aggregate(0.3, rows, 0.05);
  CHECK(s.threshold == 0.3);
  CHECK(s.trials == 4);
  CHECK(s.mean_total == doctest::Approx(0.16));
  // sample variance of totals: sum (x - 0.16)^2 / 3
  const double var = (0.0225 + 0.0016 + 0.0576 + 0.0169) / 3.0;
  CHECK(s.se_total == doctest::Approx(std::sqrt(var / 4.0)));
  CHECK(s.mean_max == doctest::Approx(0.0575));
  CHECK(s.second_wave_rate == 0.25);
  CHECK(s.outbreak_rate == 0.5);
  CHECK(s.mean_total_given_outbreak == doctest::Approx(0.3));

  const auto one = aggregate(0.1, {rows[0]}, 0.05);
  CHECK(one.se_total == 0.0);
  CHECK(aggregate(0.1, {}, 0.05).trials == 0);
}

TEST_CASE("sweep is deterministic and independent of worker count") {
  const Graph g = small_ba();
  SweepSpec spec = small_spec();
  spec.keep_trials = true;
  const auto a = sweep_single(g, spec);
  spec.workers = 3;
  const auto b = sweep_single(g, spec);
  REQUIRE(a.cells.size() == spec.thresholds.size());
  REQUIRE(a.rows.size() == spec.thresholds.size() * spec.trials);
  for (std::size_t c = 0; c < a.cells.size(); ++c) {
    CHECK(a.cells[c].mean_total == b.cells[c].mean_total);
    CHECK(a.cells[c].se_max == b.cells[c].se_max);
    CHECK(a.cells[c].mean_total >= 0.0);
    CHECK(a.cells[c].mean_total <= 1.0);
    CHECK_FALSE(a.cells[c].failed);
  }
  CHECK(a.baseline.mean_total == b.baseline.mean_total);
  CHECK(a.argmin_total == b.argmin_total);
  CHECK(a.best_total().mean_total <= a.cells.back().mean_total);

  spec.seed = Seed{2025};
  const auto c = sweep_single(g, spec);
  CHECK(c.cells[1].mean_total != a.cells[1].mean_total);
}

TEST_CASE("threshold 1 reproduces the unquarantined run trial by trial") {
  const Graph g = small_ba();
  const sim::EpidemicParams params{1.0, 1.0, 4};
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto q = sim::run_sir(g, params, sim::FractionAffected{{1.0}}, Seed{s});
    const auto none = sim::run_sir(g, params, sim::NoQuarantine{}, Seed{s});
    CHECK(q.final_removed_fraction == none.final_removed_fraction);
    CHECK(q.max_infected_fraction == none.max_infected_fraction);
  }
}

TEST_CASE("threshold 0 cell equals the baseline within sampling error plus the seeds") {
  const Graph g = small_ba(600);
  SweepSpec spec = small_spec();
  spec.trials = 60;
  spec.thresholds = {0.0};
  const auto r = sweep_single(g, spec);
  const auto& zero = r.cells[0];
  const double rho_share = static_cast<double>(spec.params.rho) / static_cast<double>(g.num_nodes());
  const double tol = 3.0 * std::hypot(zero.se_total, r.baseline.se_total);
  CHECK(std::abs(zero.mean_total - rho_share - r.baseline.mean_total) < tol + rho_share);
}

TEST_CASE("two-quarantine grid: shape, determinism and the degenerate first row") {
  const Graph g = small_ba(600);
  SweepSpec spec = small_spec();
  spec.trials = 40;
  const std::vector<double> q1{0.0, 0.3};
  const std::vector<double> q2{0.1, 0.4};
  const auto grid = grid_two_quarantines(g, spec, q1, q2);
  REQUIRE(grid.cells.size() == 4);
  const auto again = grid_two_quarantines(g, spec, q1, q2);
  CHECK(grid.at(1, 1).mean_total == again.at(1, 1).mean_total);

  spec.thresholds = q2;
  const auto single = sweep_single(g, spec);
  const double rho_share = static_cast<double>(spec.params.rho) / static_cast<double>(g.num_nodes());
  for (std::size_t j = 0; j < q2.size(); ++j) {
    const double tol = 3.0 * std::hypot(grid.at(0, j).se_total, single.cells[j].se_total) + 2.0 * rho_share;
    CHECK(std::abs(grid.at(0, j).mean_total - single.cells[j].mean_total) < tol);
  }

  const auto cmp = compare(grid, single);
  CHECK(cmp.grid_min_total == grid.cells[grid.argmin_total()].mean_total);
  CHECK(cmp.single_min_max == single.best_max().mean_max);

  spec.thresholds = {0.2, 0.1};
  CHECK_THROWS_AS(grid_two_quarantines(g, spec, {0.3, 0.1}, q2), ParameterError);
}

TEST_CASE("ablation and robustness bookkeeping") {
  const Graph g = small_ba(300);
  SweepSpec spec = small_spec();
  spec.trials = 10;
  const auto rows = beta_gamma_ablation(g, {0.25, 2.0}, spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].ratio == 0.25);
  for (const auto& r : rows) {
    CHECK(r.argmin_threshold == r.sweep.best_total().threshold);
    CHECK(r.trough_depth == doctest::Approx(r.sweep.baseline.mean_total - r.sweep.best_total().mean_total));
  }
  CHECK_THROWS_AS(beta_gamma_ablation(g, {}, spec), ParameterError);
  CHECK_THROWS_AS(beta_gamma_ablation(g, {-1.0}, spec), ParameterError);
  CHECK(default_ratios().size() == 11);
  CHECK(default_ratios().front() == 1.0 / 32.0);

  const auto one = robustness_series({{"only", g}}, spec);
  CHECK(one.max_total_deviation == 0.0);
  CHECK(one.max_threshold_deviation == 0.0);
  const auto two = robustness_series({{"a", g}, {"b", small_ba(300, 3, 12)}}, spec);
  CHECK(two.members.size() == 2);
  CHECK(two.max_total_deviation ==
        doctest::Approx(std::abs(two.members[0].sweep.best_total().mean_total -
                                 two.members[1].sweep.best_total().mean_total)));
}

TEST_CASE("infected-count strategy") {
  const Graph g = small_ba(500);
  const sim::EpidemicParams params{1.0, 1.0, 5};
  CHECK_THROWS_AS(infected_count_strategy(g, params, {4}, 5, Seed{1}, 1), ParameterError);
  const auto rows = infected_count_strategy(g, params, {5, 20}, 20, Seed{1}, 2, 0.25);
  REQUIRE(rows.size() == 2);
  // trigger = rho fires at every seeding until the susceptible pool is gone
  CHECK(rows[0].mean_quarantines >= 1.0);
  CHECK(rows[0].mean_total == doctest::Approx(1.0));
  CHECK(rows[1].ratio_to_single == doctest::Approx(rows[1].mean_total / 0.25));
  const auto no_ref = infected_count_strategy(g, params, {20}, 5, Seed{1}, 1);
  CHECK(std::isnan(no_ref[0].ratio_to_single));
}

TEST_CASE("structural change report") {
  const Graph g = small_ba(500, 4);
  const sim::EpidemicParams params{1.0, 1.0, 5};
  const auto at_zero = structural_change_report(g, params, 0.0, 8, Seed{3}, 1, 20000);
  CHECK(at_zero.samples == 8);
  CHECK(at_zero.after_nodes == doctest::Approx(495.0));
  CHECK(std::abs(at_zero.degree_change_pct) < 5.0);
  CHECK(at_zero.before.n == 500);

  const auto late = structural_change_report(g, params, 0.6, 8, Seed{3}, 1, 20000);
  CHECK(late.degree_change_pct < -50.0);
  CHECK(late.after_nodes <= 0.41 * 500 + 1e-9);

  CHECK_THROWS_AS(structural_change_report(g, params, 1.2, 8, Seed{3}, 1), ParameterError);
}

TEST_CASE("equal-peaks search") {
  const Graph g = small_ba(400);
  EqualPeaksSpec spec;
  spec.params = {1.0, 1.0, 4};
  spec.trials = 12;
  spec.seed = Seed{5};
  spec.workers = 1;
  spec.outer_steps = 6;
  spec.inner_steps = 6;
  spec.quarantines = 2;
  const auto r = multi_quarantine_equal_peaks(g, spec);
  REQUIRE(r.thresholds.size() >= 1);
  CHECK(r.wave_peaks.size() == r.thresholds.size() + 1);
  for (std::size_t i = 1; i < r.thresholds.size(); ++i) CHECK(r.thresholds[i] > r.thresholds[i - 1]);
  double highest = 0.0;
  for (double p : r.wave_peaks) highest = std::max(highest, p);
  // the mean of per-run maxima bounds each wave's mean peak from above
  CHECK(highest <= r.mean_max + 1e-12);

  spec.quarantines = 0;
  CHECK_THROWS_AS(multi_quarantine_equal_peaks(g, spec), ParameterError);
}

TEST_CASE("star: removing the hub is the minimal targeted immunization") {
  const Graph g = star(100);
  ImmunizationSpec spec;
  spec.params = {2.0, 1.0, 1};
  spec.trials = 60;
  spec.seed = Seed{9};
  spec.workers = 1;
  CHECK(outbreak_rate_after_immunization(g, 0.0, netgen::ImmunizationStrategy::TopDegree, spec) > 0.3);
  CHECK(outbreak_rate_after_immunization(g, 0.01, netgen::ImmunizationStrategy::TopDegree, spec) == 0.0);
  const auto top = minimal_immunization(g, netgen::ImmunizationStrategy::TopDegree, spec);
  REQUIRE(top.has_value());
  CHECK(*top == doctest::Approx(0.01));
  const auto random = minimal_immunization(g, netgen::ImmunizationStrategy::Random, spec);
  REQUIRE(random.has_value());
  CHECK(*random > *top);
}

TEST_CASE("immunization comparison on a regular ring has no quarantine threshold") {
  const Graph g = netgen::gen_ws({200, 4, 0.0}, Seed{1});
  ImmunizationSpec spec;
  spec.params = {1.0, 1.0, 2};
  spec.trials = 20;
  spec.workers = 1;
  spec.sweep.trials = 5;
  spec.sweep.thresholds = {0.1, 0.5};
  const auto report = immunization_comparison(g, spec);
  CHECK_FALSE(report.quarantine_theory.has_value());
  CHECK(report.sweep.cells.size() == 2);
  CHECK(report.quarantine_experiment == report.sweep.best_total().mean_total);
  CHECK(report.quarantine_experiment_threshold == report.sweep.best_total().threshold);

  const auto poisson = immunization_comparison(g, spec, gfun::DegreeDistribution::poisson(2.0));
  REQUIRE(poisson.quarantine_theory.has_value());
  CHECK(*poisson.quarantine_theory == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-5));
}

TEST_CASE("number formatting round-trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1e-7) == "1e-07");
  CHECK(format_double(std::nan("")) == "nan");
  for (double x : {1.0 / 3.0, 0.940599, 123456.789, 2.5e-12}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("crc32 uses the IEEE polynomial") {
  const auto path = scratch_dir() / "check.txt";
  {
    std::ofstream out(path, std::ios::binary);
    out << "123456789";
  }
  // standard check value for CRC-32/ISO-HDLC
  CHECK(file_crc32(path) == "cbf43926");
  CHECK_THROWS_AS(file_crc32(scratch_dir() / "missing.bin"), Error);
}

TEST_CASE("csv writers and manifest") {
  const Graph g = small_ba(200);
  SweepSpec spec = small_spec();
  spec.trials = 4;
  spec.keep_trials = true;
  const auto r = sweep_single(g, spec);
  const auto dir = scratch_dir();
  write_sweep_csv(r, dir / "agg.csv");
  write_sweep_trials_csv(r, spec.thresholds, dir / "trials.csv");

  const std::string agg = slurp(dir / "agg.csv");
  CHECK(agg.rfind("threshold,trials,mean_total,se_total,mean_max,se_max,", 0) == 0);
  CHECK(agg.find('\r') == std::string::npos);
  CHECK(std::count(agg.begin(), agg.end(), '\n') == static_cast<long>(spec.thresholds.size() + 2));
  CHECK(agg.find("\nnone,4,") != std::string::npos);
  const std::string trials = slurp(dir / "trials.csv");
  CHECK(std::count(trials.begin(), trials.end(), '\n') == static_cast<long>(r.rows.size() + 1));

  const auto grid = grid_two_quarantines(g, spec, {0.1}, {0.2, 0.3});
  write_grid_csv(grid, dir / "grid.csv");
  const std::string grid_csv = slurp(dir / "grid.csv");
  CHECK(grid_csv.rfind("q1,q2,metric,value\n0.1,0.2,mean_total,", 0) == 0);

  Manifest m("sweep", R"({"beta":1})", 2024);
  m.add_file(dir / "agg.csv");
  m.add_summary("best_threshold", r.best_total().threshold);
  m.write_ok(dir / "manifest.json");
  const auto doc = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(doc["status"] == "ok");
  CHECK(doc["seed"] == 2024);
  CHECK(doc["config"]["beta"] == 1);
  CHECK(doc["files"][0]["path"] == "agg.csv");
  CHECK(doc["files"][0]["crc32"] == file_crc32(dir / "agg.csv"));
  CHECK(doc["version"] == tool_version());
  CHECK(doc["wall_time_seconds"].get<double>() >= 0.0);

  m.write_failed(dir / "manifest_failed.json", "boom");
  const auto failed = nlohmann::json::parse(slurp(dir / "manifest_failed.json"));
  CHECK(failed["status"] == "failed");
  CHECK(failed["error"] == "boom");
}
