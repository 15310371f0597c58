#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "epiq/sim/sir.hpp"

namespace epiq::sim {

/// New infections after quarantine q (its reseeds included) reach 5% of the
/// nodes still susceptible when the quarantine ended.
bool detect_second_wave(const SimOutcome& outcome, std::size_t quarantine_index);

/// Full width at half maximum of the piecewise-linear curve through
/// (t[i], y[i]). Uses the half-maximum crossings nearest the first maximum.
/// Throws UndefinedWidthError when either crossing is missing.
double fwhm(std::span<const double> t, std::span<const double> y);

/// FWHM of the infected count over series records [begin, end].
double fwhm(std::span<const SeriesPoint> series, std::size_t begin, std::size_t end);

struct Group {
  std::string name;
  std::vector<NodeId> members;
};

/// Top 1%, 3%, 5% of nodes by degree, the minimum-degree nodes, everyone.
std::vector<Group> standard_groups(const Graph& g);

/// group[j]: affected fraction of the group at the moment the population
/// affected fraction first reaches grid[j]; NaN if it never does.
struct SurvivalCurve {
  std::string name;
  std::vector<double> grid;
  std::vector<double> group;
};

/// Requires an outcome recorded with node infection times.
/// Throws ParameterError for an empty group.
std::vector<SurvivalCurve> groupwise_survival(const Graph& g, const SimOutcome& outcome,
                                              std::span<const Group> groups, double grid_step = 0.01);

/// Susceptible fraction per degree class at the first moment the fraction of
/// susceptible degree-1 nodes is <= u. Entry k is NaN when no node has
/// degree k. Returns an empty vector when the run never reaches u.
std::vector<double> degree_class_susceptibility(const Graph& g, const SimOutcome& outcome, double u,
                                                std::size_t max_degree);

}  // namespace epiq::sim
