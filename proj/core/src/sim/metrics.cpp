#include "epiq/sim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epiq/common/error.hpp"
#include "epiq/netgen/transform.hpp"

namespace epiq::sim {

bool detect_second_wave(const SimOutcome& outcome, std::size_t quarantine_index) {
  if (quarantine_index >= outcome.quarantines()) {
    throw ParameterError("quarantine index " + std::to_string(quarantine_index) + " out of range (" +
                         std::to_string(outcome.quarantines()) + " quarantines)");
  }
  const Wave& after = outcome.waves.at(quarantine_index + 1);
  if (after.susceptible_at_start == 0) return false;
  return static_cast<double>(after.infections) >= 0.05 * static_cast<double>(after.susceptible_at_start);
}

double fwhm(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size() || t.empty()) throw ParameterError("fwhm needs equally sized, non-empty series");
  const std::size_t p = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  const double peak = y[p];
  if (!(peak > 0.0)) throw UndefinedWidthError("window has no positive peak");
  const double half = 0.5 * peak;

  double left = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = p; i-- > 0;) {
    if (y[i] <= half) {
      left = t[i] + (half - y[i]) / (y[i + 1] - y[i]) * (t[i + 1] - t[i]);
      break;
    }
  }
  double right = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t j = p + 1; j < y.size(); ++j) {
    if (y[j] <= half) {
      right = t[j - 1] + (y[j - 1] - half) / (y[j - 1] - y[j]) * (t[j] - t[j - 1]);
      break;
    }
  }
  if (std::isnan(left) || std::isnan(right)) throw UndefinedWidthError("no half-maximum crossing on one side of the peak");
  return right - left;
}

double fwhm(std::span<const SeriesPoint> series, std::size_t begin, std::size_t end) {
  if (begin > end || end >= series.size()) throw ParameterError("series window out of range");
  std::vector<double> t;
  std::vector<double> y;
  t.reserve(end - begin + 1);
  y.reserve(end - begin + 1);
  for (std::size_t i = begin; i <= end; ++i) {
    t.push_back(series[i].t);
    y.push_back(series[i].i);
  }
  return fwhm(t, y);
}

std::vector<Group> standard_groups(const Graph& g) {
  std::vector<Group> groups;
  for (int pct : {1, 3, 5}) {
    groups.push_back({"top" + std::to_string(pct) + "pct",
                      netgen::immunize(g, pct / 100.0, netgen::ImmunizationStrategy::TopDegree, Seed{})});
  }
  Group low{"min_degree", {}};
  std::size_t kmin = std::numeric_limits<std::size_t>::max();
  for (NodeId v = 0; v < g.num_nodes(); ++v) kmin = std::min(kmin, g.degree(v));
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) == kmin) low.members.push_back(v);
  }
  groups.push_back(std::move(low));
  Group all{"all", std::vector<NodeId>(g.num_nodes())};
  for (NodeId v = 0; v < g.num_nodes(); ++v) all.members[v] = v;
  groups.push_back(std::move(all));
  return groups;
}

std::vector<SurvivalCurve> groupwise_survival(const Graph& g, const SimOutcome& outcome,
                                              std::span<const Group> groups, double grid_step) {
  const std::size_t n = g.num_nodes();
  if (outcome.infection_time.size() != n) throw ParameterError("outcome was recorded without node infection times");
  if (!(grid_step > 0.0 && grid_step <= 1.0)) throw ParameterError("grid step must lie in (0, 1]");

  std::vector<double> times;
  for (double t : outcome.infection_time) {
    if (std::isfinite(t)) times.push_back(t);
  }
  std::sort(times.begin(), times.end());

  const auto points = static_cast<std::size_t>(std::floor(1.0 / grid_step + 1e-9)) + 1;
  std::vector<double> grid(points);
  for (std::size_t j = 0; j < points; ++j) grid[j] = std::min(1.0, static_cast<double>(j) * grid_step);

  std::vector<SurvivalCurve> curves;
  for (const Group& group : groups) {
    if (group.members.empty()) throw ParameterError("group '" + group.name + "' is empty");
    std::vector<double> member_times;
    member_times.reserve(group.members.size());
    for (NodeId v : group.members) member_times.push_back(outcome.infection_time.at(v));
    std::sort(member_times.begin(), member_times.end());

    SurvivalCurve curve{group.name, grid, std::vector<double>(points, std::numeric_limits<double>::quiet_NaN())};
    for (std::size_t j = 0; j < points; ++j) {
      const auto needed = static_cast<std::size_t>(std::ceil(grid[j] * static_cast<double>(n) - 1e-9));
      if (needed == 0) {
        curve.group[j] = 0.0;
        continue;
      }
      if (needed > times.size()) break;
      const double t = times[needed - 1];
      const auto hit = std::upper_bound(member_times.begin(), member_times.end(), t) - member_times.begin();
      curve.group[j] = static_cast<double>(hit) / static_cast<double>(member_times.size());
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<double> degree_class_susceptibility(const Graph& g, const SimOutcome& outcome, double u,
                                                std::size_t max_degree) {
  const std::size_t n = g.num_nodes();
  if (outcome.infection_time.size() != n) throw ParameterError("outcome was recorded without node infection times");
  if (!(u >= 0.0 && u <= 1.0)) throw ParameterError("u must lie in [0, 1]");

  std::vector<double> leaf_times;
  for (NodeId v = 0; v < n; ++v) {
    if (g.degree(v) == 1) leaf_times.push_back(outcome.infection_time[v]);
  }
  if (leaf_times.empty()) throw ParameterError("graph has no degree-1 nodes");
  std::sort(leaf_times.begin(), leaf_times.end());

  const double leaves = static_cast<double>(leaf_times.size());
  const auto needed = static_cast<std::size_t>(std::ceil(leaves * (1.0 - u) - 1e-9));
  double moment = -std::numeric_limits<double>::infinity();
  if (needed > 0) {
    moment = leaf_times[needed - 1];
    if (!std::isfinite(moment)) return {};
  }

  std::vector<std::size_t> total(max_degree + 1, 0);
  std::vector<std::size_t> susceptible(max_degree + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t k = g.degree(v);
    if (k > max_degree) continue;
    ++total[k];
    if (outcome.infection_time[v] > moment) ++susceptible[k];
  }
  std::vector<double> out(max_degree + 1, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k <= max_degree; ++k) {
    if (total[k] > 0) out[k] = static_cast<double>(susceptible[k]) / static_cast<double>(total[k]);
  }
  return out;
}

}  // namespace epiq::sim
