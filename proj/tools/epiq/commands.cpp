#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>

#include "epiq/common/error.hpp"
#include "epiq/exper/output.hpp"
#include "epiq/exper/parallel.hpp"
#include "epiq/exper/strategies.hpp"
#include "epiq/exper/sweep.hpp"
#include "epiq/gfun/genfn.hpp"
#include "epiq/netgen/io.hpp"
#include "epiq/netgen/stats.hpp"
#include "epiq/sim/metrics.hpp"

namespace epiq::cli {
namespace {

using exper::format_double;
using netgen::Graph;
namespace fs = std::filesystem;

std::string num(double x) { return format_double(x); }
std::string num(std::size_t x) { return std::to_string(x); }

// A CSV file inside the output directory; rows are joined with ',' and
// terminated with LF. Closing registers the file with the manifest.
class Csv {
 public:
  Csv(const fs::path& path, const std::string& header) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw Error("cannot open '" + path.string() + "' for writing");
    out_ << header << '\n';
  }

  Csv& row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
    return *this;
  }

  void close(exper::Manifest& manifest) {
    out_.close();
    if (!out_) throw Error("write to '" + path_.string() + "' failed");
    manifest.add_file(path_);
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

struct Context {
  const RunConfig& cfg;
  std::ostream& out;
  exper::Manifest& manifest;
  Seed graph_seed;
  Seed run_seed;

  fs::path file(const std::string& name) const { return cfg.out_dir / name; }
};

Graph build_graph(const GraphSpec& spec, Seed seed) {
  if (!spec.path.empty()) return netgen::load_edge_list(spec.path);
  if (spec.family == "config") {
    const auto law = make_distribution(config_law(spec));
    const auto sequence = netgen::sample_degree_sequence(law, spec.n, seed.child(1));
    return netgen::gen_config_model(sequence, seed.child(2)).graph;
  }
  return netgen::generate(generator_params(spec), seed);
}

sim::QuarantinePolicy make_policy(const RunConfig& c) {
  if (c.policy == "fraction") return sim::FractionAffected{c.thresholds, c.incremental};
  if (c.policy == "infected") {
    return sim::InfectedCount{c.trigger,
                              c.max_quarantines == 0 ? std::numeric_limits<std::size_t>::max() : c.max_quarantines};
  }
  return sim::NoQuarantine{};
}

exper::SweepSpec sweep_spec(const RunConfig& c, Seed seed, std::size_t trials) {
  exper::SweepSpec spec;
  spec.params = c.params;
  spec.thresholds = exper::threshold_grid(c.step);
  spec.trials = trials;
  spec.seed = seed;
  spec.workers = c.workers;
  spec.outbreak_cutoff = c.outbreak_cutoff;
  return spec;
}

std::vector<std::string> cell_cells(const exper::CellStats& s) {
  return {num(s.mean_total), num(s.se_total), num(s.mean_max), num(s.se_max), num(s.second_wave_rate)};
}

void summarize_sweep(exper::Manifest& m, const exper::SweepResult& r, const std::string& prefix = "") {
  m.add_summary(prefix + "argmin_total_threshold", r.best_total().threshold);
  m.add_summary(prefix + "min_mean_total", r.best_total().mean_total);
  m.add_summary(prefix + "argmin_max_threshold", r.best_max().threshold);
  m.add_summary(prefix + "min_mean_max", r.best_max().mean_max);
  m.add_summary(prefix + "baseline_mean_total", r.baseline.mean_total);
}

// --- commands -------------------------------------------------------------

void cmd_stats(Context& ctx) {
  const Graph g = build_graph(ctx.cfg.graph, ctx.graph_seed);
  const auto stats = netgen::graph_stats(g, ctx.cfg.path_pairs, ctx.run_seed);
  Csv csv(ctx.file("stats.csv"), netgen::stats_csv_header());
  csv.row({netgen::stats_csv_row(stats)});
  csv.close(ctx.manifest);
  ctx.out << netgen::stats_csv_header() << '\n' << netgen::stats_csv_row(stats) << '\n';
}

void cmd_analyze(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto dist = make_distribution(c.graph.dist);
  std::string r_value;
  try {
    r_value = num(gfun::reproductive_number(dist));
  } catch (const DivergenceError&) {
    r_value = "inf";
  }

  const auto herd = gfun::herd_threshold(dist);
  std::string kind = "none";
  double u_star = std::numeric_limits<double>::quiet_NaN();
  double removed = std::numeric_limits<double>::quiet_NaN();
  if (herd.kind == gfun::HerdThreshold::Kind::Found) {
    kind = "found";
    u_star = herd.u;
    removed = gfun::removed_after_quarantine(dist, herd.u);
  } else if (herd.kind == gfun::HerdThreshold::Kind::NotNeeded) {
    kind = "not-needed";
    u_star = 1.0;
    removed = 0.0;
  }

  const double phi = gfun::transmissibility(c.params.beta, c.params.gamma);
  const double size = gfun::final_size(dist, phi);
  // Analytic V-curve: total removed against the quarantine point u.
  double best_u = 1.0;
  double best_total = gfun::total_removed(dist, 1.0, phi);
  for (int i = 1; i < 1000; ++i) {
    const double u = i / 1000.0;
    try {
      const double total = gfun::total_removed(dist, u, phi);
      if (total < best_total) {
        best_total = total;
        best_u = u;
      }
    } catch (const DegenerateError&) {
    }
  }

  const std::string header = "distribution,R,herd_status,u_star,removed_at_threshold,phi,final_size,best_u,"
                             "best_total_removed";
  const std::vector<std::string> row{c.graph.dist.name, r_value, kind,           num(u_star), num(removed),
                                     num(phi),          num(size), num(best_u), num(best_total)};
  Csv csv(ctx.file("analyze.csv"), header);
  csv.row(row);
  csv.close(ctx.manifest);
  ctx.out << header << '\n';
  for (std::size_t i = 0; i < row.size(); ++i) ctx.out << (i ? "," : "") << row[i];
  ctx.out << '\n';
  ctx.manifest.add_summary("herd_status", kind);
  ctx.manifest.add_summary("u_star", u_star);
}

void cmd_simulate(Context& ctx) {
  const auto& c = ctx.cfg;
  const Graph g = build_graph(c.graph, ctx.graph_seed);
  const auto policy = make_policy(c);
  std::vector<sim::SimOutcome> runs(c.trials);
  exper::parallel_for(c.trials, c.workers, [&](std::size_t t) {
    sim::RunOptions options;
    options.record_series = c.series && t == 0;
    runs[t] = sim::run_sir(g, c.params, policy, Seed{ctx.run_seed.derive({t})}, options);
  });

  Csv trials(ctx.file("simulate_trials.csv"), "trial,total_infected,max_infected,quarantines,end_time,second_wave");
  Csv waves(ctx.file("simulate_waves.csv"),
            "trial,wave,start,end,susceptible_at_start,infections,peak,peak_time,fwhm");
  double total = 0.0;
  for (std::size_t t = 0; t < runs.size(); ++t) {
    const auto& o = runs[t];
    total += o.final_removed_fraction;
    const bool second = o.quarantines() > 0 && sim::detect_second_wave(o, 0);
    trials.row({num(t), num(o.final_removed_fraction), num(o.max_infected_fraction), num(o.quarantines()),
                num(o.end_time), second ? "1" : "0"});
    for (std::size_t w = 0; w < o.waves.size(); ++w) {
      const auto& wave = o.waves[w];
      waves.row({num(t), num(w), num(wave.start), num(wave.end), num(wave.susceptible_at_start),
                 num(wave.infections), num(wave.peak), num(wave.peak_time), num(wave.fwhm)});
    }
  }
  trials.close(ctx.manifest);
  waves.close(ctx.manifest);
  if (c.series) {
    Csv series(ctx.file("simulate_series.csv"), "t,s,i,r");
    for (const auto& p : runs.front().series) {
      series.row({num(p.t), num(std::size_t{p.s}), num(std::size_t{p.i}), num(std::size_t{p.r})});
    }
    series.close(ctx.manifest);
  }
  const double mean_total = total / static_cast<double>(runs.size());
  ctx.manifest.add_summary("policy", sim::describe(policy));
  ctx.manifest.add_summary("mean_total", mean_total);
  ctx.out << "policy " << sim::describe(policy) << ": mean total infected " << num(mean_total) << " over "
          << runs.size() << " run(s)\n";
}

void write_sweep_files(Context& ctx, const exper::SweepResult& r, const exper::SweepSpec& spec,
                       const std::string& stem) {
  exper::write_sweep_csv(r, ctx.file(stem + ".csv"));
  ctx.manifest.add_file(ctx.file(stem + ".csv"));
  if (spec.keep_trials) {
    exper::write_sweep_trials_csv(r, spec.thresholds, ctx.file(stem + "_trials.csv"));
    ctx.manifest.add_file(ctx.file(stem + "_trials.csv"));
  }
}

void cmd_sweep(Context& ctx) {
  const Graph g = build_graph(ctx.cfg.graph, ctx.graph_seed);
  auto spec = sweep_spec(ctx.cfg, ctx.run_seed, ctx.cfg.trials);
  spec.keep_trials = true;
  const auto r = exper::sweep_single(g, spec);
  write_sweep_files(ctx, r, spec, "sweep");
  summarize_sweep(ctx.manifest, r);
  ctx.out << "min mean total " << num(r.best_total().mean_total) << " at threshold "
          << num(r.best_total().threshold) << "; min mean max " << num(r.best_max().mean_max) << " at threshold "
          << num(r.best_max().threshold) << '\n';
}

void cmd_grid2q(Context& ctx) {
  const auto& c = ctx.cfg;
  const Graph g = build_graph(c.graph, ctx.graph_seed);
  auto spec = sweep_spec(c, ctx.run_seed, c.trials);
  spec.keep_trials = true;
  const auto q1 = exper::threshold_grid(c.q1_step);
  const auto q2 = exper::threshold_grid(c.q2_step);
  const auto grid = exper::grid_two_quarantines(g, spec, q1, q2);
  exper::write_grid_csv(grid, ctx.file("grid2q.csv"));
  ctx.manifest.add_file(ctx.file("grid2q.csv"));

  Csv trials(ctx.file("grid2q_trials.csv"), "q1,q2,trial,total_infected,max_infected,quarantines,second_wave");
  for (const auto& row : grid.rows) {
    trials.row({num(q1[row.cell / q2.size()]), num(q2[row.cell % q2.size()]), num(row.trial), num(row.total),
                num(row.max), num(row.quarantines), row.second_wave ? "1" : "0"});
  }
  trials.close(ctx.manifest);

  spec.thresholds = q1;
  spec.keep_trials = false;
  const auto single = exper::sweep_single(g, spec);
  write_sweep_files(ctx, single, spec, "grid2q_single");
  const auto cmp = exper::compare(grid, single);
  Csv summary(ctx.file("grid2q_summary.csv"), "metric,grid_min,grid_min_se,single_min,single_min_se");
  summary.row({"total", num(cmp.grid_min_total), num(cmp.grid_min_total_se), num(cmp.single_min_total),
               num(cmp.single_min_total_se)});
  summary.row({"max", num(cmp.grid_min_max), "", num(cmp.single_min_max), ""});
  summary.close(ctx.manifest);
  ctx.manifest.add_summary("grid_min_total", cmp.grid_min_total);
  ctx.manifest.add_summary("single_min_total", cmp.single_min_total);
  ctx.manifest.add_summary("grid_min_max", cmp.grid_min_max);
  ctx.manifest.add_summary("single_min_max", cmp.single_min_max);
  ctx.out << "total: grid " << num(cmp.grid_min_total) << " vs single " << num(cmp.single_min_total) << "; max: grid "
          << num(cmp.grid_min_max) << " vs single " << num(cmp.single_min_max) << '\n';
}

void cmd_multiq(Context& ctx) {
  const auto& c = ctx.cfg;
  const Graph g = build_graph(c.graph, ctx.graph_seed);
  if (c.mode == "equal-peaks") {
    exper::EqualPeaksSpec spec;
    spec.params = c.params;
    spec.quarantines = c.quarantines;
    spec.trials = c.trials;
    spec.seed = ctx.run_seed;
    spec.workers = c.workers;
    spec.outer_steps = c.outer_steps;
    spec.inner_steps = c.inner_steps;
    const auto r = exper::multi_quarantine_equal_peaks(g, spec);
    Csv csv(ctx.file("multiq.csv"), "wave,ending_threshold,mean_peak,mean_fwhm");
    for (std::size_t w = 0; w < r.wave_peaks.size(); ++w) {
      csv.row({num(w), w < r.thresholds.size() ? num(r.thresholds[w]) : "none", num(r.wave_peaks[w]),
               num(r.wave_widths[w])});
    }
    csv.close(ctx.manifest);
    ctx.manifest.add_summary("mean_total", r.mean_total);
    ctx.manifest.add_summary("mean_max", r.mean_max);
    ctx.manifest.add_summary("budget_exhausted", r.budget_exhausted ? "true" : "false");
    ctx.out << r.thresholds.size() << " threshold(s); mean max " << num(r.mean_max) << ", mean total "
            << num(r.mean_total) << (r.budget_exhausted ? " (search budget exhausted)" : "") << '\n';
    return;
  }

  double optimum = 0.0;
  if (c.single_optimum) {
    optimum = *c.single_optimum;
  } else {
    const auto single = exper::sweep_single(g, sweep_spec(c, ctx.run_seed.child(1), c.sweep_trials));
    write_sweep_files(ctx, single, sweep_spec(c, ctx.run_seed.child(1), c.sweep_trials), "multiq_single");
    optimum = single.best_total().mean_total;
  }
  const auto rows =
      exper::infected_count_strategy(g, c.params, c.triggers, c.trials, ctx.run_seed, c.workers, optimum);
  Csv csv(ctx.file("multiq.csv"), "trigger,mean_total,se_total,mean_max,mean_quarantines,ratio_to_single");
  for (const auto& r : rows) {
    csv.row({num(r.trigger), num(r.mean_total), num(r.se_total), num(r.mean_max), num(r.mean_quarantines),
             num(r.ratio_to_single)});
  }
  csv.close(ctx.manifest);
  ctx.manifest.add_summary("single_optimum", optimum);
  ctx.out << rows.size() << " trigger(s) against single-quarantine optimum " << num(optimum) << '\n';
}

void cmd_ablate(Context& ctx) {
  const auto& c = ctx.cfg;
  const Graph g = build_graph(c.graph, ctx.graph_seed);
  const auto ratios = c.ratios.empty() ? exper::default_ratios() : c.ratios;
  const auto rows = exper::beta_gamma_ablation(g, ratios, sweep_spec(c, ctx.run_seed, c.trials));
  Csv summary(ctx.file("ablate.csv"),
              "ratio,argmin_threshold,min_mean_total,baseline_mean_total,trough_depth,argmin_max_threshold,"
              "min_mean_max");
  Csv cells(ctx.file("ablate_cells.csv"), "ratio,threshold,mean_total,se_total,mean_max,se_max,second_wave_rate");
  for (const auto& r : rows) {
    summary.row({num(r.ratio), num(r.argmin_threshold), num(r.sweep.best_total().mean_total),
                 num(r.sweep.baseline.mean_total), num(r.trough_depth), num(r.sweep.best_max().threshold),
                 num(r.sweep.best_max().mean_max)});
    for (const auto& cell : r.sweep.cells) {
      auto row = cell_cells(cell);
      row.insert(row.begin(), {num(r.ratio), num(cell.threshold)});
      cells.row(row);
    }
  }
  summary.close(ctx.manifest);
  cells.close(ctx.manifest);
  ctx.out << "ablation over " << rows.size() << " ratio(s) written\n";
}

void cmd_immunize(Context& ctx) {
  const auto& c = ctx.cfg;
  const Graph g = build_graph(c.graph, ctx.graph_seed);
  exper::ImmunizationSpec spec;
  spec.params = c.params;
  spec.trials = c.trials;
  spec.outbreak_cutoff = c.outbreak_cutoff;
  spec.success_rate = c.success_rate;
  spec.seed = ctx.run_seed;
  spec.workers = c.workers;
  spec.sweep = sweep_spec(c, ctx.run_seed, c.sweep_trials);
  std::optional<gfun::DegreeDistribution> theory;
  if (c.theory_dist) {
    DistSpec d = config_law(c.graph);
    d.name = *c.theory_dist;
    theory = make_distribution(d);
  }
  const auto r = exper::immunization_comparison(g, spec, theory);

  Csv csv(ctx.file("immunize.csv"), "strategy,fraction,status");
  auto row = [&](const std::string& name, const std::optional<double>& v) {
    csv.row({name, v ? num(*v) : "", v ? "ok" : "unattainable"});
  };
  row("random", r.random);
  row("top_degree", r.top_degree);
  row("quarantine_theory", r.quarantine_theory);
  row("quarantine_experiment", r.quarantine_experiment);
  row("quarantine_experiment_given_outbreak", r.quarantine_experiment_given_outbreak);
  csv.close(ctx.manifest);
  exper::SweepSpec shown = spec.sweep;
  write_sweep_files(ctx, r.sweep, shown, "immunize_sweep");
  ctx.manifest.add_summary("quarantine_theory_u", r.quarantine_theory_u);
  ctx.manifest.add_summary("quarantine_experiment_threshold", r.quarantine_experiment_threshold);
  ctx.out << "immunization comparison written\n";
}

void cmd_report(Context& ctx) {
  const auto& c = ctx.cfg;
  const Graph g = build_graph(c.graph, ctx.graph_seed);
  double threshold = 0.0;
  if (c.threshold) {
    threshold = *c.threshold;
  } else {
    const auto spec = sweep_spec(c, ctx.run_seed.child(1), c.sweep_trials);
    const auto sweep = exper::sweep_single(g, spec);
    write_sweep_files(ctx, sweep, spec, "report_sweep");
    threshold = sweep.best_total().threshold;
  }
  const auto r = exper::structural_change_report(g, c.params, threshold, c.trials, ctx.run_seed, c.workers,
                                                 c.path_pairs);
  Csv csv(ctx.file("report.csv"), "metric,before,after,change_pct");
  csv.row({"nodes", num(r.before.n), num(r.after_nodes),
           num(100.0 * (r.after_nodes - static_cast<double>(r.before.n)) / static_cast<double>(r.before.n))});
  csv.row({"avg_degree", num(r.before.avg_degree), num(r.after_avg_degree), num(r.degree_change_pct)});
  csv.row({"avg_path", num(r.before.avg_shortest_path), num(r.after_avg_path), num(r.path_change_pct)});
  csv.close(ctx.manifest);
  ctx.manifest.add_summary("threshold", threshold);
  ctx.manifest.add_summary("samples", static_cast<double>(r.samples));
  ctx.out << "threshold " << num(threshold) << ": degree " << num(r.before.avg_degree) << " -> "
          << num(r.after_avg_degree) << ", path " << num(r.before.avg_shortest_path) << " -> "
          << num(r.after_avg_path) << '\n';
}

void cmd_robustness(Context& ctx) {
  const auto& c = ctx.cfg;
  std::vector<double> values = c.values;
  if (values.empty()) values = c.vary == "n" ? std::vector<double>{5000, 10000, 20000} : std::vector<double>{0.1, 0.3, 0.5};
  std::vector<exper::LabeledGraph> graphs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    GraphSpec spec = c.graph;
    if (c.vary == "n") {
      spec.n = static_cast<std::size_t>(values[i]);
    } else {
      spec.p = values[i];
    }
    graphs.push_back({c.vary + "=" + num(values[i]), build_graph(spec, ctx.graph_seed.child(i))});
  }
  const auto r = exper::robustness_series(graphs, sweep_spec(c, ctx.run_seed, c.trials));
  Csv cells(ctx.file("robustness.csv"), "label,threshold,mean_total,se_total,mean_max,se_max,second_wave_rate");
  Csv best(ctx.file("robustness_summary.csv"), "label,argmin_threshold,min_mean_total,se_total");
  for (const auto& m : r.members) {
    for (const auto& cell : m.sweep.cells) {
      auto row = cell_cells(cell);
      row.insert(row.begin(), {m.label, num(cell.threshold)});
      cells.row(row);
    }
    best.row({m.label, num(m.sweep.best_total().threshold), num(m.sweep.best_total().mean_total),
              num(m.sweep.best_total().se_total)});
  }
  cells.close(ctx.manifest);
  best.close(ctx.manifest);
  ctx.manifest.add_summary("max_total_deviation", r.max_total_deviation);
  ctx.manifest.add_summary("max_threshold_deviation", r.max_threshold_deviation);
  ctx.out << "optimal totals spread " << num(r.max_total_deviation) << ", optimal thresholds spread "
          << num(r.max_threshold_deviation) << '\n';
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParameterError*>(&e) != nullptr) return kExitUsage;
  if (dynamic_cast<const NumericError*>(&e) != nullptr || dynamic_cast<const DivergenceError*>(&e) != nullptr) {
    return kExitNumeric;
  }
  return kExitRuntime;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.command == "generate") {
    try {
      const Graph g = build_graph(config.graph, Seed{config.seed}.child(1));
      netgen::write_edge_list(g, config.out);
      out << "wrote " << g.num_nodes() << " nodes and " << g.num_edges() << " edges to " << config.out.string()
          << '\n';
      return kExitOk;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return exit_code_for(e);
    }
  }

  static const std::map<std::string, std::function<void(Context&)>> commands{
      {"stats", cmd_stats},   {"analyze", cmd_analyze}, {"simulate", cmd_simulate}, {"sweep", cmd_sweep},
      {"grid2q", cmd_grid2q}, {"multiq", cmd_multiq},   {"ablate", cmd_ablate},     {"immunize", cmd_immunize},
      {"report", cmd_report}, {"robustness", cmd_robustness}};
  const auto it = commands.find(config.command);
  if (it == commands.end()) {
    err << "error: unknown command '" << config.command << "'\n";
    return kExitUsage;
  }

  try {
    fs::create_directories(config.out_dir);
  } catch (const fs::filesystem_error& e) {
    err << "error: cannot create output directory '" << config.out_dir.string() << "': " << e.what() << '\n';
    return kExitRuntime;
  }
  exper::Manifest manifest(config.command, config_json(config), config.seed);
  const fs::path manifest_path = config.out_dir / (config.command + "_manifest.json");
  const Seed master{config.seed};
  Context ctx{config, out, manifest, master.child(1), master.child(2)};
  try {
    it->second(ctx);
    manifest.write_ok(manifest_path);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    try {
      manifest.write_failed(manifest_path, e.what());
    } catch (const std::exception& inner) {
      err << "error: could not write the failure manifest: " << inner.what() << '\n';
    }
    return exit_code_for(e);
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto parsed = parse_config(args);
  if (!parsed.config) {
    (parsed.exit_code == kExitOk ? out : err) << parsed.message;
    return parsed.exit_code;
  }
  return dispatch(*parsed.config, out, err);
}

}  // namespace epiq::cli
