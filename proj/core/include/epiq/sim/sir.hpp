#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "epiq/common/random.hpp"
#include "epiq/netgen/graph.hpp"
#include "epiq/netgen/transform.hpp"

namespace epiq::sim {

using netgen::Graph;
using netgen::NodeId;
using netgen::NodeState;

struct EpidemicParams {
  double beta = 0.5;   ///< per-edge infection rate
  double gamma = 1.0;  ///< per-node recovery rate
  std::size_t rho = 10;  ///< initial and reseed infected count

  /// Throws ParameterError naming the offending field.
  void validate(std::size_t n) const;
};

struct NoQuarantine {};

/// Quarantine when the affected fraction (I + R) / n reaches each threshold
/// in turn. In incremental mode threshold i > 0 is measured from the affected
/// count at quarantine i - 1 (before its reseed), so the list need not be
/// ascending.
struct FractionAffected {
  std::vector<double> thresholds;
  bool incremental = false;
};

/// Quarantine whenever I >= trigger, at most max_quarantines times.
struct InfectedCount {
  std::size_t trigger = 1;
  std::size_t max_quarantines = std::numeric_limits<std::size_t>::max();
};

using QuarantinePolicy = std::variant<NoQuarantine, FractionAffected, InfectedCount>;

void validate(const QuarantinePolicy& policy);
std::string describe(const QuarantinePolicy& policy);

struct RunOptions {
  /// Nodes that start (and stay) removed; they never count as affected.
  std::span<const NodeId> immune{};
  /// Keep a (t, S, I, R) record after every event; enables wave widths.
  bool record_series = false;
  /// Keep each node's infection time (infinity if never infected).
  bool record_node_times = false;
  bool record_final_states = false;
  /// End the run right after this many quarantines, before reseeding, so
  /// final states describe the population at the quarantine moment.
  std::size_t stop_after_quarantines = std::numeric_limits<std::size_t>::max();
};

struct SeriesPoint {
  double t;
  std::uint32_t s;
  std::uint32_t i;
  std::uint32_t r;
};

/// One wave: from a (re)seeding to the next quarantine or extinction.
struct Wave {
  double start = 0.0;
  double end = 0.0;
  /// Susceptible count when the wave was seeded, before the seeds.
  std::size_t susceptible_at_start = 0;
  /// Nodes infected during the wave, seeds included.
  std::size_t infections = 0;
  std::size_t peak = 0;
  double peak_time = 0.0;
  /// Full width at half maximum; NaN if no series was recorded or the width
  /// is undefined.
  double fwhm = std::numeric_limits<double>::quiet_NaN();
  /// Index range [series_begin, series_end] of the wave's records.
  std::size_t series_begin = 0;
  std::size_t series_end = 0;
};

struct SimOutcome {
  std::size_t n = 0;
  /// Ever-infected nodes over n.
  double final_removed_fraction = 0.0;
  double max_infected_fraction = 0.0;
  std::size_t total_infected = 0;
  std::size_t max_infected = 0;
  double end_time = 0.0;
  std::vector<Wave> waves;
  std::vector<double> quarantine_times;
  /// A reseed found fewer than rho susceptible nodes.
  bool shortfall = false;

  std::vector<SeriesPoint> series;
  std::vector<double> infection_time;
  std::vector<NodeState> final_states;

  std::size_t quarantines() const noexcept { return quarantine_times.size(); }
};

/// Continuous-time event-driven SIR with perfect quarantines.
SimOutcome run_sir(const Graph& g, const EpidemicParams& params, const QuarantinePolicy& policy, Seed seed,
                   const RunOptions& options = {});

}  // namespace epiq::sim
