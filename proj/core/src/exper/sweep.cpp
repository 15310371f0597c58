#include "epiq/exper/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epiq/common/error.hpp"
#include "epiq/exper/parallel.hpp"
#include "epiq/sim/metrics.hpp"

namespace epiq::exper {
namespace {

constexpr std::uint64_t kGridTag = 0x9121d;

struct CellRun {
  std::vector<CellStats> cells;
  std::vector<TrialRow> rows;
};

// Runs spec.trials simulations for each policy; stream (tag, cell, trial).
CellRun run_cells(const Graph& g, const SweepSpec& spec, const std::vector<sim::QuarantinePolicy>& policies,
                  const std::vector<double>& labels, const std::vector<std::uint64_t>& cell_ids,
                  std::uint64_t tag) {
  const std::size_t cells = policies.size();
  const std::size_t tasks = cells * spec.trials;
  std::vector<TrialRow> rows(tasks);
  std::vector<std::string> errors(tasks);

  parallel_for(tasks, spec.workers, [&](std::size_t task) {
    const std::size_t cell = task / spec.trials;
    const std::size_t trial = task % spec.trials;
    TrialRow& row = rows[task];
    row.cell = cell;
    row.trial = trial;
    try {
      const Seed stream{tag == 0 ? spec.seed.derive({cell_ids[cell], trial})
                                 : spec.seed.derive({tag, cell_ids[cell], trial})};
      const auto o = sim::run_sir(g, spec.params, policies[cell], stream);
      row.total = o.final_removed_fraction;
      row.max = o.max_infected_fraction;
      row.quarantines = o.quarantines();
      row.second_wave = o.quarantines() > 0 && sim::detect_second_wave(o, 0);
    } catch (const std::exception& e) {
      errors[task] = e.what();
    }
  });

  CellRun out;
  out.cells.reserve(cells);
  std::vector<TrialRow> ok;
  for (std::size_t c = 0; c < cells; ++c) {
    ok.clear();
    std::string first_error;
    for (std::size_t t = 0; t < spec.trials; ++t) {
      const std::size_t task = c * spec.trials + t;
      if (errors[task].empty()) {
        ok.push_back(rows[task]);
      } else if (first_error.empty()) {
        first_error = errors[task];
      }
    }
    CellStats stats = aggregate(labels[c], ok, spec.outbreak_cutoff);
    if (!first_error.empty()) {
      stats.failed = true;
      stats.error = first_error;
    }
    out.cells.push_back(std::move(stats));
  }
  if (spec.keep_trials) {
    for (std::size_t task = 0; task < tasks; ++task) {
      if (errors[task].empty()) out.rows.push_back(rows[task]);
    }
  }
  return out;
}

std::size_t argmin_by(const std::vector<CellStats>& cells, double CellStats::*field) {
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].failed && cells[i].trials == 0) continue;
    if (cells[i].*field < best_value) {
      best_value = cells[i].*field;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::vector<double> threshold_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw ParameterError("grid step must lie in (0, 1]");
  const auto count = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(count + 2);
  for (std::size_t i = 0; i <= count; ++i) grid.push_back(std::round(static_cast<double>(i) * step * 1e9) / 1e9);
  if (grid.back() < 1.0) grid.push_back(1.0);
  return grid;
}

void SweepSpec::validate() const {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (thresholds.empty()) throw ParameterError("threshold grid is empty");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] >= 0.0 && thresholds[i] <= 1.0)) throw ParameterError("thresholds must lie in [0, 1]");
    if (i > 0 && !(thresholds[i] > thresholds[i - 1])) throw ParameterError("thresholds must be ascending");
  }
  if (!(outbreak_cutoff >= 0.0 && outbreak_cutoff <= 1.0)) throw ParameterError("outbreak cutoff must lie in [0, 1]");
}

CellStats aggregate(double threshold, const std::vector<TrialRow>& rows, double outbreak_cutoff) {
  CellStats s;
  s.threshold = threshold;
  s.trials = rows.size();
  if (rows.empty()) return s;
  const double n = static_cast<double>(rows.size());
  double sum_total = 0.0, sum_max = 0.0, waves = 0.0, outbreaks = 0.0, outbreak_total = 0.0;
  for (const auto& r : rows) {
    sum_total += r.total;
    sum_max += r.max;
    waves += r.second_wave;
    if (r.total >= outbreak_cutoff) {
      outbreaks += 1.0;
      outbreak_total += r.total;
    }
  }
  s.mean_total = sum_total / n;
  s.mean_max = sum_max / n;
  s.second_wave_rate = waves / n;
  s.outbreak_rate = outbreaks / n;
  s.mean_total_given_outbreak = outbreaks > 0 ? outbreak_total / outbreaks : 0.0;
  if (rows.size() > 1) {
    double var_total = 0.0, var_max = 0.0;
    for (const auto& r : rows) {
      var_total += (r.total - s.mean_total) * (r.total - s.mean_total);
      var_max += (r.max - s.mean_max) * (r.max - s.mean_max);
    }
    s.se_total = std::sqrt(var_total / (n - 1.0) / n);
    s.se_max = std::sqrt(var_max / (n - 1.0) / n);
  }
  return s;
}

SweepResult sweep_single(const Graph& g, const SweepSpec& spec) {
  spec.validate();
  spec.params.validate(g.num_nodes());

  std::vector<sim::QuarantinePolicy> policies;
  std::vector<std::uint64_t> ids;
  for (std::size_t c = 0; c < spec.thresholds.size(); ++c) {
    policies.emplace_back(sim::FractionAffected{{spec.thresholds[c]}});
    ids.push_back(c);
  }
  policies.emplace_back(sim::NoQuarantine{});
  ids.push_back(kBaselineCell);
  std::vector<double> labels = spec.thresholds;
  labels.push_back(std::numeric_limits<double>::quiet_NaN());

  CellRun run = run_cells(g, spec, policies, labels, ids, 0);
  SweepResult result;
  result.baseline = run.cells.back();
  run.cells.pop_back();
  result.cells = std::move(run.cells);
  const std::size_t baseline_cell = spec.thresholds.size();
  for (auto& row : run.rows) {
    if (row.cell != baseline_cell) result.rows.push_back(row);
  }
  result.argmin_total = argmin_by(result.cells, &CellStats::mean_total);
  result.argmin_max = argmin_by(result.cells, &CellStats::mean_max);
  return result;
}

std::size_t GridResult::argmin_total() const { return argmin_by(cells, &CellStats::mean_total); }
std::size_t GridResult::argmin_max() const { return argmin_by(cells, &CellStats::mean_max); }

GridResult grid_two_quarantines(const Graph& g, const SweepSpec& spec, const std::vector<double>& q1,
                                const std::vector<double>& q2) {
  SweepSpec checked = spec;
  checked.thresholds = q1;
  checked.validate();
  checked.thresholds = q2;
  checked.validate();
  spec.params.validate(g.num_nodes());

  std::vector<sim::QuarantinePolicy> policies;
  std::vector<std::uint64_t> ids;
  std::vector<double> labels;
  for (std::size_t i = 0; i < q1.size(); ++i) {
    for (std::size_t j = 0; j < q2.size(); ++j) {
      policies.emplace_back(sim::FractionAffected{{q1[i], q2[j]}, true});
      ids.push_back(i * q2.size() + j);
      labels.push_back(q1[i]);
    }
  }
  CellRun run = run_cells(g, spec, policies, labels, ids, kGridTag);
  GridResult result;
  result.q1 = q1;
  result.q2 = q2;
  result.cells = std::move(run.cells);
  result.rows = std::move(run.rows);
  return result;
}

GridComparison compare(const GridResult& grid, const SweepResult& single) {
  GridComparison c;
  const auto& gt = grid.cells.at(grid.argmin_total());
  c.grid_min_total = gt.mean_total;
  c.grid_min_total_se = gt.se_total;
  c.grid_min_max = grid.cells.at(grid.argmin_max()).mean_max;
  c.single_min_total = single.best_total().mean_total;
  c.single_min_total_se = single.best_total().se_total;
  c.single_min_max = single.best_max().mean_max;
  return c;
}

std::vector<double> default_ratios() {
  std::vector<double> r;
  for (int e = -5; e <= 5; ++e) r.push_back(std::ldexp(1.0, e));
  return r;
}

std::vector<AblationRow> beta_gamma_ablation(const Graph& g, const std::vector<double>& ratios, SweepSpec spec) {
  if (ratios.empty()) throw ParameterError("ablation needs at least one ratio");
  const Seed base = spec.seed;
  std::vector<AblationRow> rows;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (!(ratios[i] > 0.0)) throw ParameterError("beta/gamma ratios must be positive");
    spec.params.beta = ratios[i];
    spec.params.gamma = 1.0;
    spec.seed = base.child(i);
    AblationRow row;
    row.ratio = ratios[i];
    row.sweep = sweep_single(g, spec);
    row.argmin_threshold = row.sweep.best_total().threshold;
    row.trough_depth = row.sweep.baseline.mean_total - row.sweep.best_total().mean_total;
    rows.push_back(std::move(row));
  }
  return rows;
}

RobustnessResult robustness_series(const std::vector<LabeledGraph>& graphs, const SweepSpec& spec) {
  if (graphs.empty()) throw ParameterError("robustness series is empty");
  RobustnessResult result;
  double lo_total = 1.0, hi_total = 0.0, lo_th = 1.0, hi_th = 0.0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    SweepSpec member = spec;
    member.seed = spec.seed.child(i);
    RobustnessMember m{graphs[i].label, sweep_single(graphs[i].graph, member)};
    const auto& best = m.sweep.best_total();
    lo_total = std::min(lo_total, best.mean_total);
    hi_total = std::max(hi_total, best.mean_total);
    lo_th = std::min(lo_th, best.threshold);
    hi_th = std::max(hi_th, best.threshold);
    result.members.push_back(std::move(m));
  }
  result.max_total_deviation = hi_total - lo_total;
  result.max_threshold_deviation = hi_th - lo_th;
  return result;
}

}  // namespace epiq::exper
