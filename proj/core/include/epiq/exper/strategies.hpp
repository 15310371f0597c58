#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "epiq/exper/sweep.hpp"
#include "epiq/gfun/distribution.hpp"
#include "epiq/netgen/stats.hpp"
#include "epiq/netgen/transform.hpp"

namespace epiq::exper {

struct EqualPeaksSpec {
  EpidemicParams params{};
  std::size_t quarantines = 1;
  std::size_t trials = 50;
  Seed seed{};
  std::size_t workers = 0;
  /// Bisection steps for the target peak and for each threshold.
  std::size_t outer_steps = 10;
  std::size_t inner_steps = 10;
};

struct EqualPeaksResult {
  std::vector<double> thresholds;
  /// Mean peak (fraction of n) and mean FWHM of each wave, thresholds applied.
  std::vector<double> wave_peaks;
  std::vector<double> wave_widths;
  double mean_total = 0.0;
  double mean_max = 0.0;
  /// The search could not bring every wave under the best target found.
  bool budget_exhausted = false;
};

/// Thresholds (absolute affected fractions, ascending) that minimize the
/// largest mean wave peak.
///
/// For a target height h, thresholds are chosen greedily: each one is the
/// latest quarantine that keeps the mean peak of its wave at or below h.
/// h is bisected to the smallest value for which the wave after the last
/// quarantine also stays at or below h.
EqualPeaksResult multi_quarantine_equal_peaks(const Graph& g, const EqualPeaksSpec& spec);

struct TriggerRow {
  std::size_t trigger = 0;
  double mean_total = 0.0;
  double se_total = 0.0;
  double mean_max = 0.0;
  double mean_quarantines = 0.0;
  /// mean_total / single_optimum; NaN when no optimum was given.
  double ratio_to_single = 0.0;
};

/// Unbounded quarantines whenever I reaches each trigger.
std::vector<TriggerRow> infected_count_strategy(const Graph& g, const EpidemicParams& params,
                                                const std::vector<std::size_t>& triggers, std::size_t trials,
                                                Seed seed, std::size_t workers,
                                                std::optional<double> single_optimum = std::nullopt);

struct StructuralChange {
  netgen::GraphStats before;
  double threshold = 0.0;
  /// Trials whose quarantine fired and left a non-empty susceptible subgraph.
  std::size_t samples = 0;
  double after_nodes = 0.0;
  double after_avg_degree = 0.0;
  double after_avg_path = 0.0;
  double degree_change_pct = 0.0;
  double path_change_pct = 0.0;
};

/// Stats of the susceptible subgraph at the moment a single quarantine at
/// `threshold` fires, averaged over trials. With no samples the "after"
/// fields are zero and the changes are -100%.
StructuralChange structural_change_report(const Graph& g, const EpidemicParams& params, double threshold,
                                          std::size_t trials, Seed seed, std::size_t workers,
                                          std::size_t path_pairs = 100000);

/// Same, at the total-minimizing threshold of a finished sweep.
StructuralChange structural_change_report(const Graph& g, const EpidemicParams& params, const SweepResult& sweep,
                                          std::size_t trials, Seed seed, std::size_t workers,
                                          std::size_t path_pairs = 100000);

struct ImmunizationSpec {
  EpidemicParams params{};
  std::size_t trials = 100;
  /// An outbreak infects at least this fraction of all nodes.
  double outbreak_cutoff = 0.05;
  /// Immunization succeeds when at least this share of trials stay small.
  double success_rate = 0.95;
  Seed seed{};
  std::size_t workers = 0;
  SweepSpec sweep{};
};

struct ImmunizationReport {
  /// Minimal immunized fractions; nullopt when unattainable.
  std::optional<double> random;
  std::optional<double> top_degree;
  std::optional<double> quarantine_theory;
  double quarantine_theory_u = 0.0;
  /// Best mean total of the quarantine sweep, and the same cell's mean over
  /// outbreak runs only.
  double quarantine_experiment = 0.0;
  double quarantine_experiment_given_outbreak = 0.0;
  double quarantine_experiment_threshold = 0.0;
  SweepResult sweep;
};

/// Fraction of trials with an outbreak after immunizing `fraction` nodes.
double outbreak_rate_after_immunization(const Graph& g, double fraction, netgen::ImmunizationStrategy strategy,
                                        const ImmunizationSpec& spec);

/// Smallest fraction on the 0.01 grid meeting the success criterion, found
/// by bisection (assumes monotonicity in the fraction).
std::optional<double> minimal_immunization(const Graph& g, netgen::ImmunizationStrategy strategy,
                                           const ImmunizationSpec& spec);

/// `dist` feeds the theory column; the graph's empirical distribution is
/// used when absent.
ImmunizationReport immunization_comparison(const Graph& g, const ImmunizationSpec& spec,
                                           const std::optional<gfun::DegreeDistribution>& dist = std::nullopt);

}  // namespace epiq::exper
