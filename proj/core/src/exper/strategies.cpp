#include "epiq/exper/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epiq/common/error.hpp"
#include "epiq/exper/parallel.hpp"
#include "epiq/gfun/genfn.hpp"
#include "epiq/netgen/generators.hpp"
#include "epiq/sim/metrics.hpp"

namespace epiq::exper {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Per-wave means over a batch of runs with a fixed absolute-threshold list.
// A wave that a run never reached contributes a zero peak.
struct WaveProfile {
  std::vector<double> peaks;
  std::vector<double> widths;
  double mean_total = 0.0;
  double mean_max = 0.0;
};

WaveProfile profile(const Graph& g, const EqualPeaksSpec& spec, const std::vector<double>& thresholds,
                    bool widths) {
  const std::size_t waves = thresholds.size() + 1;
  std::vector<sim::SimOutcome> runs(spec.trials);
  sim::RunOptions options;
  options.record_series = widths;
  const sim::QuarantinePolicy policy = sim::FractionAffected{thresholds};
  // Every candidate reuses the same per-trial streams so that comparisons
  // between threshold lists are not swamped by sampling noise.
  parallel_for(spec.trials, spec.workers, [&](std::size_t t) {
    runs[t] = sim::run_sir(g, spec.params, policy, Seed{spec.seed.derive({t})}, options);
  });

  WaveProfile p;
  p.peaks.assign(waves, 0.0);
  p.widths.assign(waves, 0.0);
  std::vector<std::size_t> width_counts(waves, 0);
  const double n = static_cast<double>(g.num_nodes());
  for (const auto& o : runs) {
    p.mean_total += o.final_removed_fraction;
    p.mean_max += o.max_infected_fraction;
    for (std::size_t w = 0; w < std::min(waves, o.waves.size()); ++w) {
      p.peaks[w] += static_cast<double>(o.waves[w].peak) / n;
      if (std::isfinite(o.waves[w].fwhm)) {
        p.widths[w] += o.waves[w].fwhm;
        ++width_counts[w];
      }
    }
  }
  const double trials = static_cast<double>(spec.trials);
  p.mean_total /= trials;
  p.mean_max /= trials;
  for (std::size_t w = 0; w < waves; ++w) {
    p.peaks[w] /= trials;
    p.widths[w] = width_counts[w] ? p.widths[w] / static_cast<double>(width_counts[w]) : kNaN;
  }
  return p;
}

// Greedy threshold selection for a target peak height h. Returns nullopt
// when some wave cannot be held at or below h.
std::optional<std::vector<double>> thresholds_for_target(const Graph& g, const EqualPeaksSpec& spec, double h) {
  std::vector<double> chosen;
  double floor = 0.0;
  for (std::size_t q = 0; q < spec.quarantines; ++q) {
    auto peak_with = [&](double theta) {
      std::vector<double> trial = chosen;
      trial.push_back(theta);
      return profile(g, spec, trial, false).peaks[q];
    };
    double lo = floor;
    if (peak_with(lo) > h) return std::nullopt;
    double hi = 1.0;
    if (peak_with(hi) <= h) {
      lo = hi;
    } else {
      for (std::size_t step = 0; step < spec.inner_steps; ++step) {
        const double mid = 0.5 * (lo + hi);
        (peak_with(mid) <= h ? lo : hi) = mid;
      }
    }
    chosen.push_back(lo);
    // Later thresholds must be strictly larger; nudge past equal values.
    floor = std::nextafter(lo, 2.0);
    if (floor > 1.0) break;
  }
  const auto last = profile(g, spec, chosen, false);
  if (last.peaks[chosen.size()] > h) return std::nullopt;
  return chosen;
}

}  // namespace

EqualPeaksResult multi_quarantine_equal_peaks(const Graph& g, const EqualPeaksSpec& spec) {
  if (spec.quarantines < 1) throw ParameterError("quarantine count must be >= 1");
  if (spec.trials < 1) throw ParameterError("trials must be >= 1");
  spec.params.validate(g.num_nodes());

  double hi = profile(g, spec, {}, false).peaks[0];
  double lo = 0.0;
  std::vector<double> best(1, 1.0);
  if (auto at_hi = thresholds_for_target(g, spec, hi)) best = *at_hi;
  for (std::size_t step = 0; step < spec.outer_steps; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (auto found = thresholds_for_target(g, spec, mid)) {
      best = *found;
      hi = mid;
    } else {
      lo = mid;
    }
  }

  EqualPeaksResult result;
  const auto p = profile(g, spec, best, true);
  result.thresholds = best;
  result.wave_peaks = p.peaks;
  result.wave_widths = p.widths;
  result.mean_total = p.mean_total;
  result.mean_max = p.mean_max;
  result.budget_exhausted = hi - lo > 0.005;
  return result;
}

std::vector<TriggerRow> infected_count_strategy(const Graph& g, const EpidemicParams& params,
                                                const std::vector<std::size_t>& triggers, std::size_t trials,
                                                Seed seed, std::size_t workers, std::optional<double> single_optimum) {
  params.validate(g.num_nodes());
  if (trials < 1) throw ParameterError("trials must be >= 1");
  for (std::size_t trigger : triggers) {
    if (trigger < params.rho) throw ParameterError("infected-count triggers must be >= rho");
  }
  const std::size_t tasks = triggers.size() * trials;
  std::vector<double> totals(tasks), maxima(tasks), quarantines(tasks);
  parallel_for(tasks, workers, [&](std::size_t task) {
    const std::size_t cell = task / trials;
    const std::size_t trial = task % trials;
    const auto o = sim::run_sir(g, params, sim::InfectedCount{triggers[cell]}, Seed{seed.derive({cell, trial})});
    totals[task] = o.final_removed_fraction;
    maxima[task] = o.max_infected_fraction;
    quarantines[task] = static_cast<double>(o.quarantines());
  });

  std::vector<TriggerRow> rows;
  for (std::size_t cell = 0; cell < triggers.size(); ++cell) {
    std::vector<TrialRow> cell_rows(trials);
    double q = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      cell_rows[t].total = totals[cell * trials + t];
      cell_rows[t].max = maxima[cell * trials + t];
      q += quarantines[cell * trials + t];
    }
    const CellStats stats = aggregate(0.0, cell_rows, 0.05);
    TriggerRow row;
    row.trigger = triggers[cell];
    row.mean_total = stats.mean_total;
    row.se_total = stats.se_total;
    row.mean_max = stats.mean_max;
    row.mean_quarantines = q / static_cast<double>(trials);
    row.ratio_to_single = single_optimum && *single_optimum > 0.0 ? stats.mean_total / *single_optimum : kNaN;
    rows.push_back(row);
  }
  return rows;
}

StructuralChange structural_change_report(const Graph& g, const EpidemicParams& params, double threshold,
                                          std::size_t trials, Seed seed, std::size_t workers,
                                          std::size_t path_pairs) {
  params.validate(g.num_nodes());
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ParameterError("threshold must lie in [0, 1]");

  StructuralChange report;
  report.before = netgen::graph_stats(g, path_pairs, seed.child(0));
  report.threshold = threshold;

  struct After {
    bool used = false;
    double nodes = 0.0, degree = 0.0, path = 0.0;
  };
  std::vector<After> after(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    sim::RunOptions options;
    options.record_final_states = true;
    options.stop_after_quarantines = 1;
    const Seed trial_seed{seed.derive({1, t})};
    const auto o = sim::run_sir(g, params, sim::FractionAffected{{threshold}}, trial_seed, options);
    if (o.quarantines() == 0) return;
    const Graph sub = netgen::induced_susceptible_subgraph(g, o.final_states);
    if (sub.empty()) return;
    after[t].used = true;
    after[t].nodes = static_cast<double>(sub.num_nodes());
    after[t].degree = sub.average_degree();
    after[t].path = netgen::average_shortest_path(sub, path_pairs, trial_seed);
  });

  for (const auto& a : after) {
    if (!a.used) continue;
    ++report.samples;
    report.after_nodes += a.nodes;
    report.after_avg_degree += a.degree;
    report.after_avg_path += a.path;
  }
  if (report.samples > 0) {
    const double k = static_cast<double>(report.samples);
    report.after_nodes /= k;
    report.after_avg_degree /= k;
    report.after_avg_path /= k;
  }
  auto pct = [](double before, double after_value) {
    return before > 0.0 ? 100.0 * (after_value - before) / before : 0.0;
  };
  report.degree_change_pct = pct(report.before.avg_degree, report.after_avg_degree);
  report.path_change_pct = pct(report.before.avg_shortest_path, report.after_avg_path);
  return report;
}

StructuralChange structural_change_report(const Graph& g, const EpidemicParams& params, const SweepResult& sweep,
                                          std::size_t trials, Seed seed, std::size_t workers,
                                          std::size_t path_pairs) {
  if (sweep.cells.empty()) throw ParameterError("sweep has no cells");
  return structural_change_report(g, params, sweep.best_total().threshold, trials, seed, workers, path_pairs);
}

double outbreak_rate_after_immunization(const Graph& g, double fraction, netgen::ImmunizationStrategy strategy,
                                        const ImmunizationSpec& spec) {
  if (spec.trials < 1) throw ParameterError("trials must be >= 1");
  const std::uint64_t tag = strategy == netgen::ImmunizationStrategy::Random ? 0x7a : 0x7d;
  std::vector<NodeId> fixed;
  if (strategy == netgen::ImmunizationStrategy::TopDegree) fixed = netgen::immunize(g, fraction, strategy, Seed{});

  std::vector<char> outbreak(spec.trials, 0);
  parallel_for(spec.trials, spec.workers, [&](std::size_t t) {
    // The immune set and the epidemic use the same per-trial stream for
    // every fraction, so random immune sets are nested as the fraction grows.
    const Seed trial_seed{spec.seed.derive({tag, t})};
    std::vector<NodeId> random_set;
    if (strategy == netgen::ImmunizationStrategy::Random) random_set = netgen::immunize(g, fraction, strategy, trial_seed);
    sim::RunOptions options;
    options.immune = strategy == netgen::ImmunizationStrategy::Random ? random_set : fixed;
    const auto o = sim::run_sir(g, spec.params, sim::NoQuarantine{}, trial_seed, options);
    outbreak[t] = o.final_removed_fraction >= spec.outbreak_cutoff;
  });
  const auto hits = std::count(outbreak.begin(), outbreak.end(), 1);
  return static_cast<double>(hits) / static_cast<double>(spec.trials);
}

std::optional<double> minimal_immunization(const Graph& g, netgen::ImmunizationStrategy strategy,
                                           const ImmunizationSpec& spec) {
  spec.params.validate(g.num_nodes());
  auto ok = [&](int percent) {
    return outbreak_rate_after_immunization(g, percent / 100.0, strategy, spec) <= 1.0 - spec.success_rate + 1e-12;
  };
  if (!ok(100)) return std::nullopt;
  if (ok(0)) return 0.0;
  int lo = 0, hi = 100;  // ok(lo) false, ok(hi) true
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi / 100.0;
}

ImmunizationReport immunization_comparison(const Graph& g, const ImmunizationSpec& spec,
                                           const std::optional<gfun::DegreeDistribution>& dist) {
  ImmunizationReport report;
  report.random = minimal_immunization(g, netgen::ImmunizationStrategy::Random, spec);
  report.top_degree = minimal_immunization(g, netgen::ImmunizationStrategy::TopDegree, spec);

  const gfun::DegreeDistribution theory = dist ? *dist : netgen::degree_distribution(g);
  const auto herd = gfun::herd_threshold(theory);
  switch (herd.kind) {
    case gfun::HerdThreshold::Kind::Found:
      report.quarantine_theory = gfun::removed_after_quarantine(theory, herd.u);
      report.quarantine_theory_u = herd.u;
      break;
    case gfun::HerdThreshold::Kind::NotNeeded:
      report.quarantine_theory = 0.0;
      report.quarantine_theory_u = 1.0;
      break;
    case gfun::HerdThreshold::Kind::NotExists:
      break;
  }

  SweepSpec sweep = spec.sweep;
  sweep.params = spec.params;
  sweep.seed = spec.seed.child(0x5e);
  sweep.workers = spec.workers;
  sweep.outbreak_cutoff = spec.outbreak_cutoff;
  report.sweep = sweep_single(g, sweep);
  const auto& best = report.sweep.best_total();
  report.quarantine_experiment = best.mean_total;
  report.quarantine_experiment_given_outbreak = best.mean_total_given_outbreak;
  report.quarantine_experiment_threshold = best.threshold;
  return report;
}

}  // namespace epiq::exper
