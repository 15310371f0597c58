#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "epiq/common/error.hpp"

namespace epiq::cli {
namespace {

const std::vector<std::string> kFamilies{"ba", "plc", "ws", "rw", "nn", "config"};
const std::vector<std::string> kDists{"simple-powerlaw", "ba-analytic", "poisson", "regular"};

bool one_of(const std::string& value, const std::vector<std::string>& allowed) {
  return std::find(allowed.begin(), allowed.end(), value) != allowed.end();
}

std::string joined(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "|") + s;
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Builder {
  RunConfig& cfg;
  CLI::App* sub;

  template <typename T>
  void optional(const std::string& name, std::optional<T>& target, const std::string& help,
                const std::string& shown_default) {
    sub->add_option_function<T>(name, [&target](const T& v) { target = v; }, help)->default_str(shown_default);
  }

  void graph(bool allow_path) {
    auto& g = cfg.graph;
    if (allow_path) {
      sub->add_option("--graph", g.path, "Edge-list file (SNAP style: 'u v' per line, '#' comments)");
    }
    sub->add_option("--family", g.family, "Generator family: " + joined(kFamilies));
    sub->add_option("--n", g.n, "Node count")->capture_default_str();
    optional("--m", g.m, "Edges per new node (ba, plc); m of the ba-analytic law (config)", "ba/plc: 5, ba-analytic: 1");
    optional("--p", g.p, "Triad probability (plc) or rewiring probability (ws)", "plc: 0.5, ws: 0.05");
    optional("--k", g.k, "Lattice degree (ws) or random pairs per new node (nn)", "ws: 10, nn: 6");
    optional("--qe", g.qe, "Walk continuation probability (rw)", "0.91");
    optional("--qv", g.qv, "Walk attachment probability (rw)", "0.94");
    optional("--u", g.u, "Two-hop attachment probability (nn)", "0.88");
    sub->add_option("--dist", g.dist.name, "Degree law of the config family: " + joined(kDists))
        ->capture_default_str();
    distribution_params(g.dist, false);
  }

  void distribution_params(DistSpec& d, bool with_m) {
    sub->add_option("--alpha", d.alpha, "Exponent of the simple power law")->capture_default_str();
    sub->add_option("--lambda", d.lambda, "Mean of the Poisson law")->capture_default_str();
    sub->add_option("--d", d.d, "Degree of the regular law")->capture_default_str();
    if (with_m) sub->add_option("--m", d.m, "m of the ba-analytic law")->capture_default_str();
  }

  void epidemic() {
    sub->add_option("--beta", cfg.params.beta, "Transmission rate per S-I edge (1/time)")->capture_default_str();
    sub->add_option("--gamma", cfg.params.gamma, "Recovery rate (1/time)")->capture_default_str();
    sub->add_option("--rho", cfg.params.rho, "Nodes infected at the start and after each quarantine")
        ->capture_default_str();
  }

  void trials(std::size_t fallback, const std::string& help = "Monte Carlo trials per cell") {
    // Subcommands share one RunConfig, so the default is applied only once
    // this subcommand is selected.
    sub->preparse_callback([this_cfg = &cfg, fallback](std::size_t) { this_cfg->trials = fallback; });
    sub->add_option("--trials", cfg.trials, help)->default_str(std::to_string(fallback));
  }

  void step() {
    sub->add_option("--step", cfg.step, "Threshold grid step (fraction of the population)")->capture_default_str();
  }

  void sweep_trials() {
    sub->add_option("--sweep-trials", cfg.sweep_trials, "Trials per threshold of the auxiliary sweep")
        ->capture_default_str();
  }

  void common(bool workers) {
    sub->add_option("--seed", cfg.seed, "Master seed; equal seeds give byte-identical data files")
        ->capture_default_str();
    if (workers) {
      sub->add_option("--workers", cfg.workers, "Worker threads (0 = hardware concurrency)")->capture_default_str();
    }
    sub->add_option("--out-dir", cfg.out_dir, "Output directory (default: $EPIQ_OUT_DIR, else '.')");
    sub->add_option("--config", cfg.config_file, "File of 'key = value' lines; explicit flags take precedence");
  }
};

void build(CLI::App& app, RunConfig& cfg) {
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("epiq"));

  auto make = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&cfg, name] { cfg.command = name; });
    return Builder{cfg, sub};
  };

  {
    auto b = make("generate", "Generate a graph and write it as an edge list");
    b.graph(false);
    b.sub->add_option("--out", cfg.out, "Edge-list file to write")->required();
    b.sub->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    b.sub->add_option("--config", cfg.config_file, "File of 'key = value' lines; explicit flags take precedence");
  }
  {
    auto b = make("stats", "Degree, clustering, shortest path and power-law fit of a graph");
    b.graph(true);
    b.sub->add_option("--path-pairs", cfg.path_pairs, "Node pairs sampled for the mean shortest path")
        ->capture_default_str();
    b.common(false);
  }
  {
    auto b = make("analyze", "Generating-function analytics of a degree law");
    b.sub->add_option("--family", cfg.graph.dist.name, "Degree law: " + joined(kDists))->capture_default_str();
    b.distribution_params(cfg.graph.dist, true);
    b.sub->add_option("--beta", cfg.params.beta, "Transmission rate (sets phi = beta / (beta + gamma))")
        ->capture_default_str();
    b.sub->add_option("--gamma", cfg.params.gamma, "Recovery rate")->capture_default_str();
    b.sub->add_option("--out-dir", cfg.out_dir, "Output directory (default: $EPIQ_OUT_DIR, else '.')");
    b.sub->add_option("--config", cfg.config_file, "File of 'key = value' lines; explicit flags take precedence");
  }
  {
    auto b = make("simulate", "Run SIR epidemics under one quarantine policy");
    b.graph(true);
    b.epidemic();
    b.sub->add_option("--policy", cfg.policy, "none|fraction|infected")->capture_default_str();
    b.sub->add_option("--thresholds", cfg.thresholds, "Affected fractions that trigger quarantines (fraction)")
        ->delimiter(',');
    b.sub->add_flag("--incremental", cfg.incremental,
                    "Measure each later threshold from the previous quarantine");
    b.sub->add_option("--trigger", cfg.trigger, "Infected count that triggers a quarantine (nodes)")
        ->capture_default_str();
    b.sub->add_option("--max-quarantines", cfg.max_quarantines, "Cap on infected-count quarantines (0 = none)")
        ->capture_default_str();
    b.sub->add_flag("--series", cfg.series, "Also write the (t, S, I, R) series of the first trial");
    b.trials(1, "Independent runs");
    b.common(true);
  }
  {
    auto b = make("sweep", "Single-quarantine threshold sweep");
    b.graph(true);
    b.epidemic();
    b.trials(100);
    b.step();
    b.common(true);
  }
  {
    auto b = make("grid2q", "Two-quarantine threshold grid");
    b.graph(true);
    b.epidemic();
    b.trials(50);
    b.sub->add_option("--q1-step", cfg.q1_step, "Grid step of the first threshold (fraction)")->capture_default_str();
    b.sub->add_option("--q2-step", cfg.q2_step, "Grid step of the second threshold (fraction affected after the "
                                                "first quarantine)")
        ->capture_default_str();
    b.common(true);
  }
  {
    auto b = make("multiq", "Multi-quarantine strategies: equal peaks or infected-count triggers");
    b.graph(true);
    b.epidemic();
    b.sub->add_option("--mode", cfg.mode, "equal-peaks|infected-count")->capture_default_str();
    b.sub->add_option("--quarantines", cfg.quarantines, "Quarantine count (equal-peaks)")->capture_default_str();
    b.sub->add_option("--outer-steps", cfg.outer_steps, "Bisection steps on the target peak")->capture_default_str();
    b.sub->add_option("--inner-steps", cfg.inner_steps, "Bisection steps per threshold")->capture_default_str();
    b.sub->add_option("--triggers", cfg.triggers, "Infected counts that trigger quarantines (nodes)")
        ->delimiter(',')
        ->capture_default_str();
    b.optional("--single-optimum", cfg.single_optimum,
               "Known single-quarantine optimum (fraction); a sweep computes it when absent", "none");
    b.trials(50);
    b.sweep_trials();
    b.step();
    b.common(true);
  }
  {
    auto b = make("ablate", "Threshold sweeps across beta/gamma ratios (gamma = 1)");
    b.graph(true);
    b.sub->add_option("--rho", cfg.params.rho, "Seed count")->capture_default_str();
    b.sub->add_option("--ratios", cfg.ratios, "beta/gamma ratios")->delimiter(',')->default_str("1/32,...,32");
    b.trials(100);
    b.step();
    b.common(true);
  }
  {
    auto b = make("immunize", "Minimal immunization by strategy versus quarantine");
    b.graph(true);
    b.epidemic();
    b.trials(100, "Trials per immunized fraction");
    b.sweep_trials();
    b.step();
    b.sub->add_option("--outbreak-cutoff", cfg.outbreak_cutoff, "Outbreak = at least this fraction removed")
        ->capture_default_str();
    b.sub->add_option("--success-rate", cfg.success_rate, "Required share of trials without an outbreak")
        ->capture_default_str();
    b.optional("--theory-dist", cfg.theory_dist,
               "Degree law for the theory column (" + joined(kDists) + ")", "the graph's own degrees");
    b.common(true);
  }
  {
    auto b = make("report", "Structure of the susceptible subgraph left by a quarantine");
    b.graph(true);
    b.epidemic();
    b.optional("--threshold", cfg.threshold, "Quarantine threshold (fraction); a sweep picks it when absent",
               "sweep optimum");
    b.trials(100, "Trials averaged for the after-quarantine stats");
    b.sweep_trials();
    b.step();
    b.sub->add_option("--path-pairs", cfg.path_pairs, "Node pairs sampled for the mean shortest path")
        ->capture_default_str();
    b.common(true);
  }
  {
    auto b = make("robustness", "Overlay sweeps while varying clustering (p) or size (n)");
    b.graph(false);
    b.epidemic();
    b.sub->add_option("--vary", cfg.vary, "p|n")->capture_default_str();
    b.sub->add_option("--values", cfg.values, "Values of the varied parameter")
        ->delimiter(',')
        ->default_str("p: 0.1,0.3,0.5; n: 5000,10000,20000");
    b.trials(100);
    b.step();
    b.common(true);
  }
}

// Turns the lines of a config file into "--key=value" tokens, skipping
// keys given explicitly on the command line.
std::vector<std::string> config_tokens(const std::filesystem::path& path, const CLI::App& sub,
                                       const std::vector<std::string>& explicit_args) {
  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path.string());
  std::vector<std::string> tokens;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError(path.string() + ":" + std::to_string(number), "expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    std::replace(key.begin(), key.end(), '_', '-');
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (key == "config" || sub.get_option_no_throw("--" + key) == nullptr) {
      throw CLI::ValidationError(path.string() + ":" + std::to_string(number), "unknown key '" + key + "'");
    }
    const std::string flag = "--" + key;
    const bool overridden = std::any_of(explicit_args.begin(), explicit_args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!overridden) tokens.push_back(flag + "=" + value);
  }
  return tokens;
}

std::optional<std::filesystem::path> find_config_arg(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

void check(std::vector<std::string>& errors, bool ok, const std::string& field, const std::string& reason) {
  if (!ok) errors.push_back(field + ": " + reason);
}

bool is_fraction(double x) { return x >= 0.0 && x <= 1.0; }
bool is_step(double x) { return x > 0.0 && x <= 1.0; }

}  // namespace

ParseResult parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  if (const char* env = std::getenv("EPIQ_OUT_DIR"); env && *env) {
    cfg.out_dir = env;
  } else {
    cfg.out_dir = ".";
  }
  CLI::App app{"Network SIR epidemics with perfect quarantine", "epiq"};
  build(app, cfg);

  ParseResult result;
  try {
    std::vector<std::string> tokens = args;
    if (const auto file = find_config_arg(args); file && !args.empty()) {
      const CLI::App* sub = app.get_subcommand_no_throw(args.front());
      if (sub == nullptr) throw CLI::ExtrasError({args.front()});
      const auto extra = config_tokens(*file, *sub, args);
      tokens.insert(tokens.begin() + 1, extra.begin(), extra.end());
    }
    std::reverse(tokens.begin(), tokens.end());
    app.parse(tokens);
  } catch (const CLI::CallForHelp&) {
    result.message = app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.message = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::CallForVersion&) {
    result.message = "epiq\n";
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = kExitUsage;
    result.message = std::string("usage error: ") + e.what() + "\nRun 'epiq --help' for usage.\n";
    return result;
  }

  const auto errors = validate(cfg);
  if (!errors.empty()) {
    result.exit_code = kExitUsage;
    result.message = "invalid configuration:\n";
    for (const auto& e : errors) result.message += "  " + e + "\n";
    return result;
  }
  result.config = std::move(cfg);
  return result;
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> errors;
  const auto& g = c.graph;
  const bool needs_graph = c.command != "analyze";
  const bool family_only = c.command == "generate" || c.command == "robustness";

  if (needs_graph) {
    if (family_only) {
      check(errors, !g.family.empty(), "family", "required");
    } else {
      check(errors, g.path.empty() != g.family.empty(), "graph", "give exactly one of --graph and --family");
    }
    if (!g.family.empty()) {
      if (!one_of(g.family, kFamilies)) {
        errors.push_back("family: unknown family '" + g.family + "' (expected " + joined(kFamilies) + ")");
      } else if (g.family == "config" && !one_of(g.dist.name, kDists)) {
        errors.push_back("dist: unknown degree law '" + g.dist.name + "' (expected " + joined(kDists) + ")");
      } else {
        try {
          if (g.family == "config") {
            make_distribution(config_law(g));
            if (g.n < 2) throw ParameterError("n must be >= 2");
          } else {
            netgen::validate(generator_params(g));
          }
        } catch (const Error& e) {
          errors.push_back(std::string("family: ") + e.what());
        }
      }
      check(errors, c.params.rho <= g.n, "rho", "must not exceed n");
    }
  } else {
    if (!one_of(g.dist.name, kDists)) {
      errors.push_back("family: unknown degree law '" + g.dist.name + "' (expected " + joined(kDists) + ")");
    } else {
      try {
        make_distribution(g.dist);
      } catch (const Error& e) {
        errors.push_back(std::string("family: ") + e.what());
      }
    }
  }

  check(errors, c.params.beta >= 0.0 && std::isfinite(c.params.beta), "beta", "must be a finite rate >= 0");
  check(errors, c.params.gamma > 0.0 && std::isfinite(c.params.gamma), "gamma", "must be a finite rate > 0");
  check(errors, c.params.rho >= 1, "rho", "must be >= 1");

  if (c.command == "simulate") {
    check(errors, one_of(c.policy, {"none", "fraction", "infected"}), "policy", "expected none|fraction|infected");
    check(errors, c.policy != "fraction" || !c.thresholds.empty(), "thresholds", "required by the fraction policy");
    check(errors, c.trigger >= 1, "trigger", "must be >= 1");
  }
  for (std::size_t i = 0; i < c.thresholds.size(); ++i) {
    check(errors, is_fraction(c.thresholds[i]), "thresholds", "must lie in [0, 1]");
    if (!c.incremental && i > 0) {
      check(errors, c.thresholds[i] > c.thresholds[i - 1], "thresholds", "must be strictly ascending");
    }
  }
  check(errors, c.trials >= 1, "trials", "must be >= 1");
  check(errors, c.sweep_trials >= 1, "sweep-trials", "must be >= 1");
  check(errors, is_step(c.step), "step", "must lie in (0, 1]");
  check(errors, is_step(c.q1_step), "q1-step", "must lie in (0, 1]");
  check(errors, is_step(c.q2_step), "q2-step", "must lie in (0, 1]");
  if (c.command == "multiq") {
    check(errors, one_of(c.mode, {"equal-peaks", "infected-count"}), "mode", "expected equal-peaks|infected-count");
    check(errors, c.quarantines >= 1, "quarantines", "must be >= 1");
    check(errors, !c.triggers.empty(), "triggers", "must not be empty");
    for (std::size_t t : c.triggers) check(errors, t >= c.params.rho, "triggers", "must be >= rho");
    if (c.single_optimum) check(errors, is_step(*c.single_optimum), "single-optimum", "must lie in (0, 1]");
  }
  for (double r : c.ratios) check(errors, r > 0.0 && std::isfinite(r), "ratios", "must be positive");
  if (c.threshold) check(errors, is_fraction(*c.threshold), "threshold", "must lie in [0, 1]");
  check(errors, c.path_pairs >= 1, "path-pairs", "must be >= 1");
  check(errors, is_fraction(c.outbreak_cutoff), "outbreak-cutoff", "must lie in [0, 1]");
  check(errors, is_fraction(c.success_rate), "success-rate", "must lie in [0, 1]");
  if (c.theory_dist) check(errors, one_of(*c.theory_dist, kDists), "theory-dist", "expected " + joined(kDists));
  if (c.command == "robustness") {
    check(errors, c.vary == "p" || c.vary == "n", "vary", "expected p|n");
    for (double v : c.values) {
      if (c.vary == "n") {
        check(errors, v >= 2 && v == std::floor(v), "values", "node counts must be integers >= 2");
      } else {
        check(errors, is_fraction(v), "values", "probabilities must lie in [0, 1]");
      }
    }
  }
  if (c.command == "generate") check(errors, !c.out.empty(), "out", "required");
  return errors;
}

netgen::GeneratorParams generator_params(const GraphSpec& g) {
  if (g.family == "ba") return netgen::BAParams{g.n, g.m.value_or(5)};
  if (g.family == "plc") return netgen::PLCParams{g.n, g.m.value_or(5), g.p.value_or(0.5)};
  if (g.family == "ws") return netgen::WSParams{g.n, g.k.value_or(10), g.p.value_or(0.05)};
  if (g.family == "rw") return netgen::RWParams{g.n, g.qe.value_or(0.91), g.qv.value_or(0.94)};
  if (g.family == "nn") return netgen::NNParams{g.n, g.u.value_or(0.88), g.k.value_or(6)};
  throw ParameterError("unknown family '" + g.family + "'");
}

DistSpec config_law(const GraphSpec& g) {
  DistSpec d = g.dist;
  d.m = g.m.value_or(d.m);
  return d;
}

gfun::DegreeDistribution make_distribution(const DistSpec& d) {
  if (d.name == "simple-powerlaw") return gfun::DegreeDistribution::simple_powerlaw(d.alpha);
  if (d.name == "ba-analytic") return gfun::DegreeDistribution::ba_analytic(static_cast<int>(d.m));
  if (d.name == "poisson") return gfun::DegreeDistribution::poisson(d.lambda);
  if (d.name == "regular") return gfun::DegreeDistribution::d_regular(static_cast<int>(d.d));
  throw ParameterError("unknown degree law '" + d.name + "'");
}

std::string config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  nlohmann::ordered_json graph;
  if (!c.graph.path.empty()) {
    graph["path"] = c.graph.path;
  } else if (!c.graph.family.empty()) {
    graph["family"] = c.graph.family;
    graph["n"] = c.graph.n;
    graph["describe"] = c.graph.family == "config" ? "config:" + c.graph.dist.name
                                                    : netgen::describe(generator_params(c.graph));
  }
  if (c.command == "analyze" || c.graph.family == "config") {
    graph["dist"] = {{"name", c.graph.dist.name},
                     {"alpha", c.graph.dist.alpha},
                     {"m", c.graph.m.value_or(c.graph.dist.m)},
                     {"lambda", c.graph.dist.lambda},
                     {"d", c.graph.dist.d}};
  }
  j["graph"] = graph;
  j["beta"] = c.params.beta;
  j["gamma"] = c.params.gamma;
  j["rho"] = c.params.rho;
  j["policy"] = c.policy;
  j["thresholds"] = c.thresholds;
  j["incremental"] = c.incremental;
  j["trigger"] = c.trigger;
  j["max_quarantines"] = c.max_quarantines;
  j["trials"] = c.trials;
  j["sweep_trials"] = c.sweep_trials;
  j["step"] = c.step;
  j["q1_step"] = c.q1_step;
  j["q2_step"] = c.q2_step;
  j["mode"] = c.mode;
  j["quarantines"] = c.quarantines;
  j["outer_steps"] = c.outer_steps;
  j["inner_steps"] = c.inner_steps;
  j["triggers"] = c.triggers;
  j["single_optimum"] = c.single_optimum ? nlohmann::ordered_json(*c.single_optimum) : nullptr;
  j["ratios"] = c.ratios;
  j["threshold"] = c.threshold ? nlohmann::ordered_json(*c.threshold) : nullptr;
  j["path_pairs"] = c.path_pairs;
  j["outbreak_cutoff"] = c.outbreak_cutoff;
  j["success_rate"] = c.success_rate;
  j["theory_dist"] = c.theory_dist ? nlohmann::ordered_json(*c.theory_dist) : nullptr;
  j["vary"] = c.vary;
  j["values"] = c.values;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  return j.dump();
}

}  // namespace epiq::cli
