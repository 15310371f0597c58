// Acceptance checks. Each criterion runs as its own ctest entry:
//
//   epiq_acceptance <1..12 | fb-artist | all>
//
// Every check prints one indented PASS/FAIL line with the measured value,
// and each criterion ends with a single summary line. Tolerances live next
// to the checks and are not configurable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epiq/common/random.hpp"
#include "epiq/exper/strategies.hpp"
#include "epiq/exper/sweep.hpp"
#include "epiq/gfun/distribution.hpp"
#include "epiq/gfun/genfn.hpp"
#include "epiq/netgen/generators.hpp"
#include "epiq/netgen/io.hpp"
#include "epiq/netgen/stats.hpp"
#include "epiq/sim/metrics.hpp"
#include "epiq/sim/sir.hpp"
#include "oracles/jump_chain.hpp"
#include "oracles/series.hpp"

namespace {

using namespace epiq;
using netgen::Graph;
using gfun::DegreeDistribution;

constexpr int kSkip = 77;

std::string num(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

class Criterion {
 public:
  Criterion(std::string id, std::string title) : id_(std::move(id)) {
    std::cout << "criterion " << id_ << ": " << title << "\n" << std::flush;
  }

  bool check(bool ok, const std::string& what, const std::string& measured) {
    std::cout << "  " << (ok ? "PASS" : "FAIL") << "  " << what << "  [" << measured << "]\n" << std::flush;
    ++total_;
    if (ok) ++passed_;
    return ok;
  }

  void note(const std::string& text) { std::cout << "  info  " << text << "\n" << std::flush; }

  int finish() const {
    const bool ok = passed_ == total_ && total_ > 0;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id_ << " (" << passed_ << "/" << total_
              << " checks)\n";
    return ok ? 0 : 1;
  }

 private:
  std::string id_;
  int passed_ = 0;
  int total_ = 0;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

bool near(double x, double target, double tol) { return std::abs(x - target) <= tol; }

std::string vs(double measured, double target) { return num(measured, 7) + " vs " + num(target, 7); }

sim::EpidemicParams standard_params(double beta = 0.5) {
  sim::EpidemicParams p;
  p.beta = beta;
  p.gamma = 1.0;
  p.rho = 10;
  return p;
}

Graph ba_graph(std::size_t m, Seed seed) { return netgen::gen_ba({10000, m}, seed); }

Graph config_graph(const DegreeDistribution& dist, std::size_t n, Seed seed) {
  const auto seq = netgen::sample_degree_sequence(dist, n, seed.child(1));
  return netgen::gen_config_model(seq, seed.child(2)).graph;
}

exper::SweepResult sweep(const Graph& g, const sim::EpidemicParams& params, double step, std::size_t trials,
                         Seed seed) {
  exper::SweepSpec spec;
  spec.params = params;
  spec.thresholds = exper::threshold_grid(step);
  spec.trials = trials;
  spec.seed = seed;
  return exper::sweep_single(g, spec);
}

std::filesystem::path data_dir() { return EPIQ_TEST_DATA_DIR; }

// ---------------------------------------------------------------------------

int criterion_1() {
  Criterion c("1", "analytic herd-immunity thresholds");
  Stopwatch clock;
  const auto sp = gfun::herd_threshold(DegreeDistribution::simple_powerlaw(3.0));
  const auto ba = gfun::herd_threshold(DegreeDistribution::ba_analytic(1));
  const auto po = gfun::herd_threshold(DegreeDistribution::poisson(2.0));
  const auto rg = gfun::herd_threshold(DegreeDistribution::d_regular(4));
  const double elapsed = clock.seconds();

  c.check(sp.found() && near(sp.u, 0.940599, 1e-4), "simple powerlaw alpha=3: u* = 0.940599 +- 1e-4", vs(sp.u, 0.940599));
  c.check(ba.found() && near(ba.u, 0.776621, 1e-4), "BA analytic m=1: u* = 0.776621 +- 1e-4", vs(ba.u, 0.776621));
  c.check(po.found() && near(po.u, 0.5, 1e-6), "Poisson lambda=2: u* = 0.5 +- 1e-6", vs(po.u, 0.5));
  c.check(rg.kind == gfun::HerdThreshold::Kind::NotExists, "4-regular: no threshold exists",
          rg.kind == gfun::HerdThreshold::Kind::NotExists ? "not-exists" : "threshold reported");
  c.check(elapsed < 1.0, "runtime < 1 s", num(elapsed) + " s");
  return c.finish();
}

// g0 of the BA m=1 limit law by direct summation of p_k = 4 / (k (k+1) (k+2)).
double ba1_g0_series(double u) {
  long double sum = 0.0L;
  long double uk = 1.0L;
  for (long k = 1; k < 100'000'000; ++k) {
    uk *= u;
    const long double kk = k;
    const long double term = 4.0L / (kk * (kk + 1) * (kk + 2)) * uk;
    sum += term;
    if (term < 1e-22L) break;
  }
  return static_cast<double>(sum);
}

int criterion_2() {
  Criterion c("2", "removed fraction at the herd threshold");
  const auto sp = DegreeDistribution::simple_powerlaw(3.0);
  const auto ba = DegreeDistribution::ba_analytic(1);
  const auto po = DegreeDistribution::poisson(2.0);

  Stopwatch clock;
  const double u_sp = gfun::herd_threshold(sp).u;
  const double u_ba = gfun::herd_threshold(ba).u;
  const double u_po = gfun::herd_threshold(po).u;
  const double r_sp = gfun::removed_after_quarantine(sp, u_sp);
  const double r_ba = gfun::removed_after_quarantine(ba, u_ba);
  const double r_po = gfun::removed_after_quarantine(po, u_po);
  const double elapsed = clock.seconds();

  const double sp_oracle = 1.0 - oracle::polylog_bruteforce(3.0, u_sp) / oracle::zeta_bruteforce(3.0);
  c.check(near(r_sp, 0.0771, 1e-4), "simple powerlaw: removed = 0.0771 +- 1e-4", vs(r_sp, 0.0771));
  c.note("simple powerlaw susceptible share " + num(1.0 - r_sp, 7) + ", series oracle removed " + num(sp_oracle, 7));
  const double ba_oracle = 1.0 - ba1_g0_series(0.776621);
  c.check(r_ba <= 0.33, "BA m=1: removed <= 0.33", num(r_ba, 7));
  c.check(near(r_ba, ba_oracle, 0.01), "BA m=1: within 0.01 of 1 - g0(0.776621) by series", vs(r_ba, ba_oracle));
  c.check(near(r_po, 1.0 - std::exp(-1.0), 1e-5), "Poisson lambda=2: removed = 1 - 1/e +- 1e-5",
          vs(r_po, 1.0 - std::exp(-1.0)));
  c.check(elapsed < 1.0, "runtime < 1 s", num(elapsed) + " s");
  return c.finish();
}

int criterion_3() {
  Criterion c("3", "final-size oracle and total-removed consistency");
  Stopwatch clock;

  double s = 0.5;
  for (int i = 0; i < 10000; ++i) s = 1.0 - std::exp(-2.0 * s);
  const double fs = gfun::final_size(DegreeDistribution::poisson(2.0), 1.0);
  c.check(near(fs, s, 1e-6), "Poisson lambda=2, phi=1: S matches S = 1 - exp(-2S) to 1e-6", vs(fs, s));

  const std::vector<std::pair<std::string, DegreeDistribution>> dists{
      {"simple-powerlaw(3)", DegreeDistribution::simple_powerlaw(3.0)},
      {"ba-analytic(1)", DegreeDistribution::ba_analytic(1)},
      {"poisson(2)", DegreeDistribution::poisson(2.0)},
      {"regular(4)", DegreeDistribution::d_regular(4)},
      {"empirical", DegreeDistribution::empirical({0.0, 0.3, 0.2, 0.2, 0.1, 0.1, 0.1})},
  };
  double worst = 0.0;
  std::string where;
  for (const auto& [name, d] : dists) {
    for (double phi : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      const double diff = std::abs(gfun::total_removed(d, 1.0, phi) - gfun::final_size(d, phi));
      if (diff >= worst) {
        worst = diff;
        where = name + " phi=" + num(phi, 2);
      }
    }
  }
  c.check(worst <= 1e-8, "total_removed(d, 1, phi) == final_size(d, phi) to 1e-8 on 5 x 5 cases",
          "max diff " + num(worst) + " at " + where);
  const double elapsed = clock.seconds();
  c.check(elapsed < 1.0, "runtime < 1 s", num(elapsed) + " s");
  return c.finish();
}

int criterion_4() {
  Criterion c("4", "simulator micro-oracles");
  Stopwatch clock;
  constexpr std::size_t kTrials = 10000;

  const std::vector<netgen::Edge> pair_edge{{0, 1}};
  const Graph pair = Graph::from_edges(2, pair_edge);
  for (double beta : {1.0, 3.0}) {
    sim::EpidemicParams p;
    p.beta = beta;
    p.gamma = 1.0;
    p.rho = 1;
    const Seed seed{0x2a0d + static_cast<std::uint64_t>(beta)};
    std::size_t both = 0;
    for (std::size_t t = 0; t < kTrials; ++t) {
      if (sim::run_sir(pair, p, sim::NoQuarantine{}, seed.child(t)).total_infected == 2) ++both;
    }
    const double rate = static_cast<double>(both) / kTrials;
    const double expected = beta / (beta + 1.0);
    c.check(near(rate, expected, 0.02), "2-node transmission rate = beta/(beta+gamma) +- 0.02, beta=" + num(beta),
            vs(rate, expected));
  }

  const std::vector<netgen::Edge> tri_edges{{0, 1}, {1, 2}, {0, 2}};
  const Graph tri = Graph::from_edges(3, tri_edges);
  sim::EpidemicParams p;
  p.beta = 1.0;
  p.gamma = 1.0;
  p.rho = 1;
  std::vector<double> observed(4, 0.0);
  const Seed seed{0x4b33};
  for (std::size_t t = 0; t < kTrials; ++t) {
    observed[sim::run_sir(tri, p, sim::NoQuarantine{}, seed.child(t)).total_infected] += 1.0;
  }
  oracle::JumpChain chain(3, {{0, 1}, {1, 2}, {0, 2}}, 1.0, 1.0);
  const auto exact = chain.final_size_distribution(1);
  double chi2 = 0.0;
  for (std::size_t r = 1; r <= 3; ++r) {
    const double e = exact[r] * kTrials;
    chi2 += (observed[r] - e) * (observed[r] - e) / e;
  }
  // Three outcome classes, two degrees of freedom: the chi-square survival
  // function is exp(-x / 2).
  const double pvalue = std::exp(-chi2 / 2.0);
  c.check(pvalue > 0.01, "K3 final-size distribution vs jump chain, chi-square p > 0.01",
          "chi2=" + num(chi2) + " p=" + num(pvalue) + " observed " + num(observed[1]) + "/" + num(observed[2]) +
              "/" + num(observed[3]));
  const double elapsed = clock.seconds();
  c.check(elapsed < 30.0, "runtime < 30 s", num(elapsed) + " s");
  return c.finish();
}

int criterion_5() {
  Criterion c("5", "degree-k susceptibility follows u^k");
  constexpr double kU = 0.95;
  constexpr std::size_t kTrials = 100;
  constexpr std::size_t kMaxDegree = 5;
  const Seed seed{0x5005};
  const Graph g = config_graph(DegreeDistribution::simple_powerlaw(3.0), 20000, seed.child(0));
  // At phi = 1/3 the outbreak on this law stops near u = 0.996, so a strong
  // infection (phi = 10/11, final u near 0.87) is needed to pass u = 0.95.
  const auto params = standard_params(10.0);

  sim::RunOptions options;
  options.record_node_times = true;
  std::vector<double> sums(kMaxDegree + 1, 0.0);
  std::size_t reached = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto out = sim::run_sir(g, params, sim::NoQuarantine{}, seed.child(100 + t), options);
    const auto frac = sim::degree_class_susceptibility(g, out, kU, kMaxDegree);
    if (frac.empty()) continue;
    ++reached;
    for (std::size_t k = 2; k <= kMaxDegree; ++k) sums[k] += frac[k];
  }
  c.note(std::to_string(reached) + " of " + std::to_string(kTrials) + " runs reached u = 0.95");
  c.check(reached > 0, "some runs reach u = 0.95", std::to_string(reached));
  for (std::size_t k = 2; k <= kMaxDegree; ++k) {
    const double mean = reached ? sums[k] / static_cast<double>(reached) : std::nan("");
    const double expected = std::pow(kU, static_cast<double>(k));
    c.check(near(mean, expected, 0.05), "k=" + std::to_string(k) + ": susceptible share = u^k +- 0.05",
            vs(mean, expected));
  }
  return c.finish();
}

// Mean over runs of each group's survival curve; points reached by fewer
// than `min_runs` runs are NaN.
std::vector<double> mean_top_curve(const Graph& g, const sim::EpidemicParams& params, std::size_t trials, Seed seed,
                                   std::size_t min_runs, std::vector<double>& grid) {
  const auto groups = sim::standard_groups(g);
  const std::vector<sim::Group> top{groups.front()};
  sim::RunOptions options;
  options.record_node_times = true;
  std::vector<double> sum;
  std::vector<std::size_t> count;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto out = sim::run_sir(g, params, sim::NoQuarantine{}, seed.child(t), options);
    const auto curves = sim::groupwise_survival(g, out, top);
    const auto& curve = curves.front();
    if (sum.empty()) {
      grid = curve.grid;
      sum.assign(grid.size(), 0.0);
      count.assign(grid.size(), 0);
    }
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (std::isnan(curve.group[j])) continue;
      sum[j] += curve.group[j];
      ++count[j];
    }
  }
  std::vector<double> mean(grid.size(), std::nan(""));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (count[j] >= min_runs) mean[j] = sum[j] / static_cast<double>(count[j]);
  }
  return mean;
}

void check_dominance(Criterion& c, const std::string& label, const std::vector<double>& grid,
                     const std::vector<double>& curve) {
  std::size_t points = 0;
  double worst = 1.0;
  double worst_at = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (grid[j] <= 0.05 || std::isnan(curve[j])) continue;
    ++points;
    const double gap = curve[j] - grid[j];
    if (gap < worst) {
      worst = gap;
      worst_at = grid[j];
    }
  }
  c.check(points > 0 && worst >= -1e-12, label + ": top-1% curve >= identity where affected > 5%",
          std::to_string(points) + " points, smallest margin " + num(worst) + " at " + num(worst_at, 3));
}

int criterion_6() {
  Criterion c("6", "groupwise survival of the top-degree group");
  std::vector<double> grid;
  const Graph ba = ba_graph(10, Seed{0x6006});
  const auto ba_curve = mean_top_curve(ba, standard_params(), 20, Seed{0x6106}, 10, grid);
  check_dominance(c, "BA m=10", grid, ba_curve);

  // Ten seeds would be 29% of this graph; one keeps seeding below 5%.
  const Graph karate = netgen::load_edge_list(data_dir() / "karate.txt");
  auto karate_params = standard_params();
  karate_params.rho = 1;
  const auto k_curve = mean_top_curve(karate, karate_params, 400, Seed{0x6206}, 40, grid);
  check_dominance(c, "karate club (34 nodes, loaded)", grid, k_curve);
  return c.finish();
}

// Best mean total of a sweep on a graph, reported with its threshold.
struct Optimum {
  double total = 0.0;
  double given_outbreak = 0.0;
  double threshold = 0.0;
};

Optimum optimum_of(const exper::SweepResult& r) {
  const auto& best = r.best_total();
  return {best.mean_total, best.mean_total_given_outbreak, best.threshold};
}

std::string describe(const Optimum& o) {
  return "removed " + num(o.total) + " at threshold " + num(o.threshold, 3) + " (given outbreak " +
         num(o.given_outbreak) + ")";
}

int criterion_7() {
  Criterion c("7", "V-curve reproduction");
  const auto params = standard_params();
  const Graph ba = ba_graph(10, Seed{0x7007});
  const auto r = sweep(ba, params, 0.01, 100, Seed{0x7107});
  const auto& best = r.best_total();
  const auto& cells = r.cells;
  c.check(r.argmin_total > 0 && r.argmin_total + 1 < cells.size() && best.mean_total < cells.front().mean_total &&
              best.mean_total < cells.back().mean_total,
          "BA m=10: total-infected curve has an interior minimum",
          "min " + num(best.mean_total) + " at " + num(best.threshold, 3) + ", ends " +
              num(cells.front().mean_total) + " / " + num(cells.back().mean_total));

  // Past the point where the rho reseeds alone are 5% of the remaining
  // susceptibles every run is flagged, so those cells are left out. The
  // susceptible count at quarantine is at most (1 - threshold) n.
  const double n = static_cast<double>(ba.num_nodes());
  double worst = 0.0;
  double worst_at = 0.0;
  std::size_t considered = 0;
  for (std::size_t i = r.argmin_total + 1; i < cells.size(); ++i) {
    if (static_cast<double>(params.rho) >= 0.05 * (1.0 - cells[i].threshold) * n - 1e-6) continue;
    ++considered;
    if (cells[i].second_wave_rate >= worst) {
      worst = cells[i].second_wave_rate;
      worst_at = cells[i].threshold;
    }
  }
  c.check(worst < 0.05, "BA m=10: second-wave probability < 5% above the argmin",
          "max " + num(worst) + " at " + num(worst_at, 3) + " over " + std::to_string(considered) + " thresholds");

  const Optimum ba_opt = optimum_of(r);
  c.check(near(ba_opt.total, 0.22, 0.05), "BA m=10: optimal removed fraction = 22% +- 5 points", describe(ba_opt));

  // The configuration rows model a strong infection (phi = 10/11).
  const auto strong = standard_params(10.0);
  const std::size_t n_config = 10000;
  auto config_optimum = [&](const DegreeDistribution& d, std::uint64_t tag) {
    const Graph g = config_graph(d, n_config, Seed{tag});
    return optimum_of(sweep(g, strong, 0.01, 100, Seed{tag}.child(9)));
  };
  const Optimum po = config_optimum(DegreeDistribution::poisson(2.0), 0x7207);
  c.check(near(po.total, 0.42, 0.05), "Poisson(2) config: removed = 42% +- 5 points", describe(po));
  const Optimum sp = config_optimum(DegreeDistribution::simple_powerlaw(3.0), 0x7307);
  c.check(sp.total <= 0.08, "simple powerlaw config: removed <= 8%", describe(sp));
  c.check(near(sp.total, 0.02, 0.02), "simple powerlaw config: removed = 2% +- 2 points", describe(sp));
  const Optimum rg = config_optimum(DegreeDistribution::d_regular(4), 0x7407);
  c.check(near(rg.total, 0.89, 0.05), "4-regular config: removed = 89% +- 5 points", describe(rg));
  const Optimum ba1 = config_optimum(DegreeDistribution::ba_analytic(1), 0x7507);
  c.note("BA m=1 analytic config graph at the same strength: " + describe(ba1));
  return c.finish();
}

int criterion_8() {
  Criterion c("8", "structural change after the optimal quarantine");
  const auto params = standard_params();
  const Graph ba = ba_graph(10, Seed{0x7007});
  const auto r = sweep(ba, params, 0.01, 100, Seed{0x7107});
  const auto report = exper::structural_change_report(ba, params, r, 20, Seed{0x8008}, 0, 100000);
  c.note("threshold " + num(report.threshold, 3) + ", " + std::to_string(report.samples) + " samples, degree " +
         num(report.before.avg_degree) + " -> " + num(report.after_avg_degree) + ", path " +
         num(report.before.avg_shortest_path) + " -> " + num(report.after_avg_path) + ", nodes " +
         num(report.after_nodes));
  c.check(near(report.degree_change_pct, -93.5, 3.0), "degree change = -93.5% +- 3 points",
          num(report.degree_change_pct) + "%");
  c.check(near(report.path_change_pct, 388.0, 0.25 * 388.0), "path change = +388% within 25% relative",
          num(report.path_change_pct) + "%");
  return c.finish();
}

int criterion_9() {
  Criterion c("9", "two-quarantine grid against a single quarantine");
  const Graph ba = ba_graph(10, Seed{0x9009});
  exper::SweepSpec spec;
  spec.params = standard_params();
  spec.thresholds = exper::threshold_grid(0.05);
  spec.trials = 50;
  spec.seed = Seed{0x9109};
  const auto single = exper::sweep_single(ba, spec);
  const auto grid = exper::grid_two_quarantines(ba, spec, spec.thresholds, spec.thresholds);
  const auto cmp = exper::compare(grid, single);
  c.check(cmp.grid_min_max < cmp.single_min_max, "grid min of max-infected < single min of max-infected",
          num(cmp.grid_min_max) + " vs " + num(cmp.single_min_max));
  c.check(cmp.grid_min_total >= cmp.single_min_total - 2.0 * cmp.single_min_total_se,
          "grid min of total-infected >= single min - 2 stderr",
          num(cmp.grid_min_total) + " vs " + num(cmp.single_min_total) + " - 2*" + num(cmp.single_min_total_se));
  return c.finish();
}

int criterion_10() {
  Criterion c("10", "infected-count strategy within a factor 2");
  const auto params = standard_params();
  const Graph ba = ba_graph(10, Seed{0xa00a});
  const auto single = sweep(ba, params, 0.01, 50, Seed{0xa10a});
  const double optimum = single.best_total().mean_total;
  c.note("single-quarantine optimum " + num(optimum) + " at " + num(single.best_total().threshold, 3));
  const std::size_t limit = ba.num_nodes() / 50;
  std::vector<std::size_t> triggers;
  for (std::size_t t : {10, 20, 50, 100, 200}) {
    if (t <= limit) triggers.push_back(t);
  }
  const auto rows = exper::infected_count_strategy(ba, params, triggers, 100, Seed{0xa20a}, 0, optimum);
  for (const auto& row : rows) {
    c.check(row.mean_total <= 2.0 * optimum, "trigger " + std::to_string(row.trigger) + ": removed <= 2 x optimum",
            num(row.mean_total) + " (ratio " + num(row.ratio_to_single, 3) + ", " + num(row.mean_quarantines, 3) +
                " quarantines)");
  }
  return c.finish();
}

int criterion_11() {
  Criterion c("11", "beta/gamma ablation monotonicity");
  const Graph ba = ba_graph(10, Seed{0xb00b});
  exper::SweepSpec spec;
  spec.params = standard_params();
  spec.trials = 100;
  spec.seed = Seed{0xb10b};
  const auto rows = exper::beta_gamma_ablation(ba, {0.25, 0.5, 1.0, 2.0, 4.0}, spec);
  std::string argmins;
  std::string depths;
  bool argmin_ok = true;
  bool depth_ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    argmins += (i ? " " : "") + num(rows[i].argmin_threshold, 3);
    depths += (i ? " " : "") + num(rows[i].trough_depth, 3);
    if (i > 0) {
      argmin_ok = argmin_ok && rows[i].argmin_threshold >= rows[i - 1].argmin_threshold;
      depth_ok = depth_ok && rows[i].trough_depth <= rows[i - 1].trough_depth;
    }
  }
  c.check(argmin_ok, "argmin threshold non-decreasing in beta/gamma", argmins);
  c.check(depth_ok, "trough depth non-increasing in beta/gamma", depths);
  return c.finish();
}

struct TableRow {
  std::string label;
  netgen::GeneratorParams params;
  double degree;
  double clustering;
  double path;
};

int criterion_12() {
  Criterion c("12", "generator statistics");
  const std::vector<TableRow> rows{
      {"BA (m=5)", netgen::BAParams{10000, 5}, 9.99, 0.007, 3.66},
      {"BA (m=10)", netgen::BAParams{10000, 10}, 19.98, 0.011, 3.06},
      {"NN (u=0.88, k=6)", netgen::NNParams{10000, 0.88, 6}, 26.29, 0.124, 3.41},
      {"PLC (m=5, p=0.5)", netgen::PLCParams{10000, 5, 0.5}, 9.99, 0.178, 3.53},
      {"PLC (m=10, p=0.25)", netgen::PLCParams{10000, 10, 0.25}, 19.96, 0.059, 2.97},
      {"RW (qe=0.91, qv=0.94)", netgen::RWParams{10000, 0.91, 0.94}, 19.32, 0.285, 3.45},
      {"WS (k=10, p=0.05)", netgen::WSParams{10000, 10, 0.05}, 10.0, 0.574, 7.47},
  };
  constexpr int kSeeds = 5;
  for (const auto& row : rows) {
    double degree = 0.0;
    double clustering = 0.0;
    double path = 0.0;
    for (int s = 0; s < kSeeds; ++s) {
      const Seed seed{0xc00c + static_cast<std::uint64_t>(s)};
      const Graph g = netgen::generate(row.params, seed);
      const auto st = netgen::graph_stats(g, 100000, seed.child(7));
      degree += st.avg_degree / kSeeds;
      clustering += st.global_clustering / kSeeds;
      path += st.avg_shortest_path / kSeeds;
    }
    c.check(near(degree, row.degree, 0.05 * row.degree), row.label + ": avg degree within 5%", vs(degree, row.degree));
    c.check(near(clustering, row.clustering, 0.05), row.label + ": clustering within 0.05",
            vs(clustering, row.clustering));
    c.check(near(path, row.path, 0.5), row.label + ": avg path within 0.5", vs(path, row.path));
  }
  return c.finish();
}

int fb_artist() {
  std::filesystem::path path = data_dir() / "artist_edges.csv";
  if (const char* env = std::getenv("EPIQ_FB_ARTIST")) path = env;
  if (!std::filesystem::exists(path)) {
    std::cout << "SKIP criterion fb-artist (no edge list at " << path.string() << ")\n";
    return kSkip;
  }
  Criterion c("fb-artist", "full-size real network");
  const Graph g = netgen::load_edge_list(path);
  c.check(g.num_nodes() == 50515, "n = 50,515", std::to_string(g.num_nodes()));
  c.check(near(g.average_degree(), 32.44, 0.005), "avg degree = 32.44", num(g.average_degree(), 6));
  const auto params = standard_params();
  const auto r = sweep(g, params, 0.01, 20, Seed{0xfa01});
  const auto report = exper::structural_change_report(g, params, r, 10, Seed{0xfa02}, 0, 100000);
  c.check(near(report.degree_change_pct, -94.85, 3.0), "optimal-quarantine degree change = -94.85% +- 3 points",
          num(report.degree_change_pct) + "% at threshold " + num(report.threshold, 3));
  return c.finish();
}

const std::map<std::string, std::function<int()>>& registry() {
  static const std::map<std::string, std::function<int()>> r{
      {"1", criterion_1},   {"2", criterion_2},   {"3", criterion_3},   {"4", criterion_4},
      {"5", criterion_5},   {"6", criterion_6},   {"7", criterion_7},   {"8", criterion_8},
      {"9", criterion_9},   {"10", criterion_10}, {"11", criterion_11}, {"12", criterion_12},
      {"fb-artist", fb_artist},
  };
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: epiq_acceptance <1..12 | fb-artist | all>\n";
    return 2;
  }
  const std::string which = argv[1];
  try {
    if (which == "all") {
      int failed = 0;
      for (int i = 1; i <= 12; ++i) failed += registry().at(std::to_string(i))() != 0;
      return failed == 0 ? 0 : 1;
    }
    const auto it = registry().find(which);
    if (it == registry().end()) {
      std::cerr << "unknown criterion '" << which << "'\n";
      return 2;
    }
    return it->second();
  } catch (const std::exception& e) {
    std::cout << "FAIL criterion " << which << " (error: " << e.what() << ")\n";
    return 1;
  }
}
