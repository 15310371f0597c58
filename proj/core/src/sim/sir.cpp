#include "epiq/sim/sir.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "epiq/common/error.hpp"
#include "epiq/sim/metrics.hpp"

namespace epiq::sim {
namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();

enum : std::uint8_t { kS = 0, kI = 1, kR = 2 };

struct Event {
  double t;
  NodeId node;
  bool recovery;
};

// Min-heap order on time. Ties (which only arise with degenerate rates) are
// broken on node id and kind so the event order is fully determined.
struct Later {
  bool operator()(const Event& a, const Event& b) const noexcept {
    if (a.t != b.t) return a.t > b.t;
    if (a.node != b.node) return a.node > b.node;
    return a.recovery < b.recovery;
  }
};

class Engine {
 public:
  Engine(const Graph& g, const EpidemicParams& params, const QuarantinePolicy& policy, Seed seed,
         const RunOptions& options)
      : g_(g),
        params_(params),
        policy_(policy),
        options_(options),
        rng_(seed.stream({0x51e})),
        n_(g.num_nodes()),
        state_(n_, kS),
        pending_(n_, kNever) {}

  SimOutcome run() {
    out_.n = n_;
    s_ = n_;
    for (NodeId v : options_.immune) {
      if (v >= n_) throw ParameterError("immune node id out of range");
      if (state_[v] == kR) continue;
      state_[v] = kR;
      --s_;
      ++r_;
    }
    if (options_.record_node_times) out_.infection_time.assign(n_, kNever);

    record(0.0);
    wave_.susceptible_at_start = s_;
    seed_infections(0.0);
    record(0.0);
    fire_triggers(0.0);

    double now = 0.0;
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), Later{});
      const Event e = heap_.back();
      heap_.pop_back();
      if (e.recovery) {
        now = e.t;
        state_[e.node] = kR;
        --i_;
        ++r_;
        record(now);
      } else {
        if (state_[e.node] != kS) continue;
        now = e.t;
        infect(e.node, now);
        record(now);
        fire_triggers(now);
      }
    }

    out_.end_time = now;
    if (!stopped_) close_wave(now);
    out_.final_removed_fraction = static_cast<double>(out_.total_infected) / static_cast<double>(n_);
    out_.max_infected_fraction = static_cast<double>(out_.max_infected) / static_cast<double>(n_);
    if (options_.record_series) {
      for (Wave& w : out_.waves) {
        try {
          w.fwhm = fwhm(out_.series, w.series_begin, w.series_end);
        } catch (const UndefinedWidthError&) {
          w.fwhm = std::numeric_limits<double>::quiet_NaN();
        }
      }
    }
    if (options_.record_final_states) {
      out_.final_states.resize(n_);
      for (std::size_t v = 0; v < n_; ++v) out_.final_states[v] = static_cast<NodeState>(state_[v]);
    }
    return std::move(out_);
  }

 private:
  void infect(NodeId v, double t) {
    state_[v] = kI;
    --s_;
    ++i_;
    ++affected_;
    ++out_.total_infected;
    ++wave_.infections;
    if (options_.record_node_times) out_.infection_time[v] = t;

    const double recovery = t + rng_.exponential(params_.gamma);
    push({recovery, v, true});
    if (params_.beta > 0.0) {
      for (NodeId w : g_.neighbors(v)) {
        if (state_[w] != kS) continue;
        const double hit = t + rng_.exponential(params_.beta);
        if (hit < recovery && hit < pending_[w]) {
          pending_[w] = hit;
          push({hit, w, false});
        }
      }
    }

    if (i_ > wave_.peak) {
      wave_.peak = i_;
      wave_.peak_time = t;
    }
    out_.max_infected = std::max(out_.max_infected, i_);
  }

  void push(const Event& e) {
    heap_.push_back(e);
    std::push_heap(heap_.begin(), heap_.end(), Later{});
  }

  // Infects min(rho, S) susceptible nodes chosen uniformly without replacement.
  void seed_infections(double t) {
    const std::size_t want = params_.rho;
    if (s_ < want) out_.shortfall = true;
    const std::size_t count = std::min(want, s_);
    if (count == 0) return;

    if (4 * s_ >= n_ && 4 * count <= s_) {
      // Plenty of susceptible nodes: rejection sampling over all ids. An
      // infected draw is no longer susceptible, so repeats are rejected too.
      for (std::size_t done = 0; done < count;) {
        const auto v = static_cast<NodeId>(rng_.below(n_));
        if (state_[v] != kS) continue;
        infect(v, t);
        ++done;
      }
      return;
    }
    std::vector<NodeId> pool;
    pool.reserve(s_);
    for (NodeId v = 0; v < n_; ++v) {
      if (state_[v] == kS) pool.push_back(v);
    }
    for (std::size_t k = 0; k < count; ++k) {
      std::swap(pool[k], pool[k + rng_.below(pool.size() - k)]);
      infect(pool[k], t);
    }
  }

  bool triggered() const {
    if (i_ == 0 || stopped_) return false;
    if (const auto* fa = std::get_if<FractionAffected>(&policy_)) {
      if (next_threshold_ >= fa->thresholds.size()) return false;
      const std::size_t base = (fa->incremental && next_threshold_ > 0) ? affected_at_quarantine_ : 0;
      const double fraction = static_cast<double>(affected_ - base) / static_cast<double>(n_);
      return fraction >= fa->thresholds[next_threshold_];
    }
    if (const auto* ic = std::get_if<InfectedCount>(&policy_)) {
      return i_ >= ic->trigger && out_.quarantines() < ic->max_quarantines;
    }
    return false;
  }

  void fire_triggers(double t) {
    while (triggered()) quarantine(t);
  }

  void quarantine(double t) {
    // Each infected node has exactly one pending recovery; pending infections
    // only need their dedup marks cleared.
    for (const Event& e : heap_) {
      if (e.recovery) {
        state_[e.node] = kR;
      } else {
        pending_[e.node] = kNever;
      }
    }
    heap_.clear();
    r_ += i_;
    i_ = 0;
    affected_at_quarantine_ = affected_;
    ++next_threshold_;
    out_.quarantine_times.push_back(t);
    record(t);
    close_wave(t);
    if (out_.quarantines() >= options_.stop_after_quarantines) {
      stopped_ = true;
      return;
    }

    wave_ = Wave{};
    wave_.start = t;
    wave_.susceptible_at_start = s_;
    wave_.series_begin = out_.series.empty() ? 0 : out_.series.size() - 1;
    seed_infections(t);
    record(t);
  }

  void close_wave(double t) {
    wave_.end = t;
    wave_.series_end = out_.series.empty() ? 0 : out_.series.size() - 1;
    out_.waves.push_back(wave_);
  }

  void record(double t) {
    if (!options_.record_series) return;
    out_.series.push_back({t, static_cast<std::uint32_t>(s_), static_cast<std::uint32_t>(i_),
                           static_cast<std::uint32_t>(r_)});
  }

  const Graph& g_;
  const EpidemicParams& params_;
  const QuarantinePolicy& policy_;
  const RunOptions& options_;
  Rng rng_;
  std::size_t n_;

  std::vector<std::uint8_t> state_;
  // Earliest scheduled infection time per susceptible node; later attempts
  // on the same node are not queued.
  std::vector<double> pending_;
  std::vector<Event> heap_;

  std::size_t s_ = 0;
  std::size_t i_ = 0;
  std::size_t r_ = 0;
  std::size_t affected_ = 0;
  std::size_t affected_at_quarantine_ = 0;
  std::size_t next_threshold_ = 0;
  bool stopped_ = false;

  Wave wave_;
  SimOutcome out_;
};

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

void EpidemicParams::validate(std::size_t n) const {
  if (!(beta >= 0.0) || std::isinf(beta)) throw ParameterError("beta must be a finite rate >= 0");
  if (!(gamma > 0.0) || std::isinf(gamma)) throw ParameterError("gamma must be a finite rate > 0");
  if (rho < 1) throw ParameterError("rho must be >= 1");
  if (rho > n) throw ParameterError("rho must not exceed the node count");
}

void validate(const QuarantinePolicy& policy) {
  if (const auto* fa = std::get_if<FractionAffected>(&policy)) {
    for (std::size_t i = 0; i < fa->thresholds.size(); ++i) {
      const double th = fa->thresholds[i];
      if (!(th >= 0.0 && th <= 1.0)) throw ParameterError("quarantine thresholds must lie in [0, 1]");
      if (!fa->incremental && i > 0 && !(th > fa->thresholds[i - 1])) {
        throw ParameterError("quarantine thresholds must be strictly ascending");
      }
    }
  } else if (const auto* ic = std::get_if<InfectedCount>(&policy)) {
    if (ic->trigger < 1) throw ParameterError("infected-count trigger must be >= 1");
  }
}

std::string describe(const QuarantinePolicy& policy) {
  if (std::holds_alternative<NoQuarantine>(policy)) return "none";
  if (const auto* fa = std::get_if<FractionAffected>(&policy)) {
    std::string s = fa->incremental ? "fraction-incremental:" : "fraction:";
    for (std::size_t i = 0; i < fa->thresholds.size(); ++i) {
      if (i) s += ',';
      s += format_number(fa->thresholds[i]);
    }
    return s;
  }
  const auto& ic = std::get<InfectedCount>(policy);
  std::string s = "infected:" + std::to_string(ic.trigger);
  if (ic.max_quarantines != std::numeric_limits<std::size_t>::max()) s += "/max" + std::to_string(ic.max_quarantines);
  return s;
}

SimOutcome run_sir(const Graph& g, const EpidemicParams& params, const QuarantinePolicy& policy, Seed seed,
                   const RunOptions& options) {
  if (g.empty()) throw ParameterError("cannot simulate on an empty graph");
  params.validate(g.num_nodes());
  validate(policy);
  return Engine(g, params, policy, seed, options).run();
}

}  // namespace epiq::sim
