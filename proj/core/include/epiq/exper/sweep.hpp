#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "epiq/common/random.hpp"
#include "epiq/netgen/graph.hpp"
#include "epiq/sim/sir.hpp"

namespace epiq::exper {

using netgen::Graph;
using netgen::NodeId;
using sim::EpidemicParams;

/// 0, step, 2 step, ..., 1 (inclusive).
std::vector<double> threshold_grid(double step = 0.01);

struct SweepSpec {
  EpidemicParams params{};
  std::vector<double> thresholds = threshold_grid();
  std::size_t trials = 100;
  Seed seed{};
  std::size_t workers = 0;
  /// Keep one row per trial in the result.
  bool keep_trials = false;
  /// Runs with total infected below this fraction count as "no outbreak".
  double outbreak_cutoff = 0.05;

  void validate() const;
};

struct TrialRow {
  std::size_t cell = 0;
  std::size_t trial = 0;
  double total = 0.0;
  double max = 0.0;
  std::size_t quarantines = 0;
  bool second_wave = false;
};

struct CellStats {
  double threshold = 0.0;
  std::size_t trials = 0;
  double mean_total = 0.0;
  double se_total = 0.0;
  double mean_max = 0.0;
  double se_max = 0.0;
  /// Share of trials whose first quarantine was followed by a second wave.
  double second_wave_rate = 0.0;
  /// Share of trials with total >= outbreak cutoff, and their mean total.
  double outbreak_rate = 0.0;
  double mean_total_given_outbreak = 0.0;
  bool failed = false;
  std::string error;
};

struct SweepResult {
  std::vector<CellStats> cells;
  CellStats baseline;  ///< no quarantine, same trial count
  std::size_t argmin_total = 0;
  std::size_t argmin_max = 0;
  std::vector<TrialRow> rows;

  const CellStats& best_total() const { return cells.at(argmin_total); }
  const CellStats& best_max() const { return cells.at(argmin_max); }
};

/// Aggregates trial rows of one cell; trials with failed runs are excluded
/// by the caller.
CellStats aggregate(double threshold, const std::vector<TrialRow>& rows, double outbreak_cutoff);

/// Single-quarantine sweep over spec.thresholds. The stream for (cell c,
/// trial t) is derived from (seed, c, t); the baseline uses cell index
/// kBaselineCell.
SweepResult sweep_single(const Graph& g, const SweepSpec& spec);

inline constexpr std::uint64_t kBaselineCell = 0xba5e;

struct GridResult {
  std::vector<double> q1;
  std::vector<double> q2;
  /// Row-major [i * q2.size() + j].
  std::vector<CellStats> cells;
  std::vector<TrialRow> rows;

  const CellStats& at(std::size_t i, std::size_t j) const { return cells.at(i * q2.size() + j); }
  std::size_t argmin_total() const;
  std::size_t argmin_max() const;
};

/// Two quarantines: the first at affected fraction q1, the second once a
/// further q2 of the population has been affected after the first.
GridResult grid_two_quarantines(const Graph& g, const SweepSpec& spec, const std::vector<double>& q1,
                                const std::vector<double>& q2);

struct GridComparison {
  double grid_min_total = 0.0;
  double grid_min_total_se = 0.0;
  double grid_min_max = 0.0;
  double single_min_total = 0.0;
  double single_min_total_se = 0.0;
  double single_min_max = 0.0;
};

GridComparison compare(const GridResult& grid, const SweepResult& single);

struct AblationRow {
  double ratio = 0.0;
  SweepResult sweep;
  double argmin_threshold = 0.0;
  /// Baseline (no quarantine) mean total minus the best mean total.
  double trough_depth = 0.0;
};

/// Sweeps with gamma = 1 and beta = ratio for each ratio.
std::vector<AblationRow> beta_gamma_ablation(const Graph& g, const std::vector<double>& ratios, SweepSpec spec);

/// The ratios 1/32, 1/16, ..., 16, 32.
std::vector<double> default_ratios();

struct RobustnessMember {
  std::string label;
  SweepResult sweep;
};

struct RobustnessResult {
  std::vector<RobustnessMember> members;
  double max_total_deviation = 0.0;      ///< spread of the optimal mean totals
  double max_threshold_deviation = 0.0;  ///< spread of the optimal thresholds
};

struct LabeledGraph {
  std::string label;
  Graph graph;
};

RobustnessResult robustness_series(const std::vector<LabeledGraph>& graphs, const SweepSpec& spec);

}  // namespace epiq::exper
