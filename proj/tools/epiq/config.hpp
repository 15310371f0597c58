#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "epiq/gfun/distribution.hpp"
#include "epiq/netgen/generators.hpp"
#include "epiq/sim/sir.hpp"

namespace epiq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kExitNumeric = 4;

inline const std::vector<std::string> kCommands{"generate", "stats",  "analyze",  "simulate", "sweep",     "grid2q",
                                                "multiq",   "ablate", "immunize", "report",   "robustness"};

/// Analytic degree law: simple-powerlaw (alpha), ba-analytic (m),
/// poisson (lambda) or regular (d).
struct DistSpec {
  std::string name = "simple-powerlaw";
  double alpha = 3.0;
  std::size_t m = 1;
  double lambda = 2.0;
  std::size_t d = 4;
};

/// Exactly one of `path` and `family` is set after validation. Unset
/// generator parameters take the family's reference values.
struct GraphSpec {
  std::string path;
  std::string family;
  std::size_t n = 10000;
  std::optional<std::size_t> m;
  std::optional<std::size_t> k;
  std::optional<double> p;
  std::optional<double> qe;
  std::optional<double> qv;
  std::optional<double> u;
  DistSpec dist;
};

struct RunConfig {
  std::string command;
  GraphSpec graph;
  sim::EpidemicParams params{};

  // simulate
  std::string policy = "none";
  std::vector<double> thresholds;
  bool incremental = false;
  std::size_t trigger = 10;
  std::size_t max_quarantines = 0;  ///< 0 = unbounded
  bool series = false;

  // experiments
  std::size_t trials = 100;
  std::size_t sweep_trials = 100;
  double step = 0.01;
  double q1_step = 0.05;
  double q2_step = 0.05;
  std::string mode = "equal-peaks";
  std::size_t quarantines = 2;
  std::size_t outer_steps = 10;
  std::size_t inner_steps = 10;
  std::vector<std::size_t> triggers{10, 20, 50, 100, 200};
  std::optional<double> single_optimum;
  std::vector<double> ratios;
  std::optional<double> threshold;
  std::size_t path_pairs = 100000;
  double outbreak_cutoff = 0.05;
  double success_rate = 0.95;
  std::optional<std::string> theory_dist;
  std::string vary = "p";
  std::vector<double> values;

  // plumbing
  std::filesystem::path config_file;
  std::filesystem::path out;
  std::filesystem::path out_dir;
  std::uint64_t seed = 1;
  std::size_t workers = 0;
};

struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;
  /// Help text or a diagnostic when no config was produced.
  std::string message;
};

/// Parses `args` (without the program name). A "--config FILE" argument
/// supplies flat "key = value" lines that explicit flags override.
ParseResult parse_config(const std::vector<std::string>& args);

/// Every invalid field, one "name: reason" entry each.
std::vector<std::string> validate(const RunConfig& config);

/// Echo of the effective configuration as a JSON object.
std::string config_json(const RunConfig& config);

/// Parameters of a growth or lattice family (not "config").
netgen::GeneratorParams generator_params(const GraphSpec& spec);
/// Degree law of the "config" family; --m feeds the ba-analytic law.
DistSpec config_law(const GraphSpec& spec);
gfun::DegreeDistribution make_distribution(const DistSpec& spec);

}  // namespace epiq::cli
