#include "ckptwin/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "ckptwin/analytic.hpp"
#include "ckptwin/parallel.hpp"

namespace ckptwin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack when comparing a remaining window against a checkpoint length.
constexpr double kTimeEps = 1e-9;

enum class Activity { Work, RegularCkpt, ProactiveCkpt, Downtime, Recovery };
enum class Mode { Regular, Pending, Proactive };

const char* name(Activity a) {
  switch (a) {
    case Activity::Work: return "work";
    case Activity::RegularCkpt: return "regular-ckpt";
    case Activity::ProactiveCkpt: return "proactive-ckpt";
    case Activity::Downtime: return "downtime";
    case Activity::Recovery: return "recovery";
  }
  return "?";
}

struct FaultAt {
  double time;
  bool predicted;
};

struct PredictionAt {
  double reveal;
  double window_start;
  bool is_true;
  std::uint64_t index;
};

class Simulation {
 public:
  Simulation(const PolicyConfig& policy, const Trace& trace, double t_base,
             const Platform& platform, const Predictor& predictor, const CounterRng& rng,
             const SimOptions& options)
      : policy_(policy), trace_(trace), t_base_(t_base), platform_(platform),
        window_(predictor.window), rng_(rng), options_(options) {
    if (!(t_base > 0) || !std::isfinite(t_base))
      throw InvalidParameter("t_base must be positive");
    platform.validate();
    policy.validate(platform, predictor);

    std::uint64_t pred_index = 0;
    for (const Event& e : trace.events) {
      if (e.fault_time)
        faults_.push_back({*e.fault_time, e.kind == EventKind::TruePrediction});
      if (e.window_start)
        predictions_.push_back({e.reveal_time, *e.window_start,
                                e.kind == EventKind::TruePrediction, pred_index++});
    }
    std::stable_sort(faults_.begin(), faults_.end(),
                     [](const FaultAt& a, const FaultAt& b) { return a.time < b.time; });
    chunk_left_ = regular_chunk();
  }

  SimResult run() {
    log("start");
    for (;;) {
      const double t_fault = fi_ < faults_.size() ? faults_[fi_].time : kInf;
      const double t_pred = pi_ < predictions_.size() ? predictions_[pi_].reveal : kInf;

      bool job_done = false;
      double t_act = activity_end_;
      if (activity_ == Activity::Work) {
        const double remaining = t_base_ - (committed_ + unprotected_);
        const double limit = work_limit();
        if (remaining <= limit) {
          t_act = clock_ + remaining;
          job_done = true;
        } else {
          t_act = clock_ + limit;
        }
      }
      const double t_mode = mode_ == Mode::Pending     ? window_start_
                            : mode_ == Mode::Proactive ? window_end_
                                                       : kInf;

      const double t = std::min({t_act, t_mode, t_fault, t_pred});
      if (t > options_.max_makespan) throw MakespanLimit(options_.max_makespan);
      if (t > trace_.complete_until) throw TraceExhausted(t);
      advance(t);

      if (t_act == t) {
        if (job_done) break;
        on_activity_end();
      } else if (t_mode == t) {
        if (mode_ == Mode::Pending)
          on_window_start();
        else
          on_window_end();
      } else if (t_fault == t) {
        on_fault(faults_[fi_++]);
      } else {
        on_reveal(predictions_[pi_++]);
      }
    }
    unprotected_ = t_base_ - committed_;
    log("done");

    result_.makespan = clock_;
    result_.waste = waste_of(result_, t_base_);
    return result_;
  }

 private:
  double regular_chunk() const {
    return std::max(0.0, policy_.t_regular - platform_.c_regular - period_work_);
  }

  double work_limit() const {
    switch (mode_) {
      case Mode::Regular: return chunk_left_;
      case Mode::Pending: return kInf;
      case Mode::Proactive:
        return policy_.strategy == Strategy::WithCkptI ? proactive_left_ : kInf;
    }
    return kInf;
  }

  void advance(double to) {
    const double dt = to - clock_;
    switch (activity_) {
      case Activity::Work:
        unprotected_ += dt;
        result_.work_time += dt;
        if (mode_ == Mode::Regular) {
          period_work_ += dt;
          chunk_left_ -= dt;
        } else if (mode_ == Mode::Proactive) {
          proactive_left_ -= dt;
        } else if (no_time_branch_) {
          result_.no_time_branch_work += dt;
        }
        break;
      case Activity::RegularCkpt:
      case Activity::ProactiveCkpt: result_.ckpt_time += dt; break;
      case Activity::Downtime: result_.downtime_time += dt; break;
      case Activity::Recovery: result_.recovery_time += dt; break;
    }
    clock_ = to;
  }

  void start(Activity a, double duration) {
    activity_ = a;
    activity_end_ = a == Activity::Work ? kInf : clock_ + duration;
    log(name(a));
  }

  void commit() {
    committed_ += unprotected_;
    unprotected_ = 0;
  }

  void on_activity_end() {
    switch (activity_) {
      case Activity::Work:
        if (mode_ == Mode::Regular) {
          chunk_left_ = 0;
          start(Activity::RegularCkpt, platform_.c_regular);
        } else {
          // Proactive WithCkptI: checkpoint only if it fits in the window.
          if (clock_ + platform_.c_proactive <= window_end_ + kTimeEps) {
            proactive_left_ = 0;
            start(Activity::ProactiveCkpt, platform_.c_proactive);
          } else {
            proactive_left_ = kInf;
          }
        }
        break;
      case Activity::RegularCkpt:
        commit();
        ++result_.n_regular_ckpts;
        period_work_ = 0;
        chunk_left_ = regular_chunk();
        start(Activity::Work, 0);
        break;
      case Activity::ProactiveCkpt:
        commit();
        ++result_.n_proactive_ckpts;
        if (mode_ == Mode::Proactive)
          proactive_left_ = policy_.t_proactive - platform_.c_proactive;
        start(Activity::Work, 0);
        break;
      case Activity::Downtime: start(Activity::Recovery, platform_.recovery); break;
      case Activity::Recovery: start(Activity::Work, 0); break;
    }
  }

  void on_window_start() {
    mode_ = Mode::Proactive;
    no_time_branch_ = false;
    switch (policy_.strategy) {
      case Strategy::Instant: window_end_ = window_start_; break;
      case Strategy::WithCkptI:
        window_end_ = window_start_ + window_;
        proactive_left_ = policy_.t_proactive - platform_.c_proactive;
        break;
      default: window_end_ = window_start_ + window_; break;
    }
    log("enter-proactive");
  }

  void leave_prediction_handling() {
    result_.max_proactive_span = std::max(result_.max_proactive_span, clock_ - reveal_at_);
    mode_ = Mode::Regular;
    no_time_branch_ = false;
    proactive_left_ = kInf;
  }

  void on_window_end() {
    leave_prediction_handling();
    // Resume the interrupted regular period (its work credit is period_work_).
    w_reg_ = 0;
    chunk_left_ = regular_chunk();
    log("enter-regular");
  }

  void on_fault(const FaultAt& f) {
    if (f.predicted)
      ++result_.n_predicted_faults;
    else
      ++result_.n_unpredicted_faults;
    if (mode_ != Mode::Regular) leave_prediction_handling();
    if (activity_ != Activity::Downtime && activity_ != Activity::Recovery) {
      result_.lost_work += unprotected_;
      unprotected_ = 0;
    }
    period_work_ = 0;
    w_reg_ = 0;
    chunk_left_ = regular_chunk();
    log("fault");
    start(Activity::Downtime, platform_.downtime);
  }

  bool trusted(const PredictionAt& p) const {
    const double q = policy_.trust_prob;
    if (q <= 0) return false;
    if (q >= 1) return true;
    return rng_.uniform_at(p.index) < q;
  }

  void on_reveal(const PredictionAt& p) {
    if (p.is_true)
      ++result_.n_true_predictions;
    else
      ++result_.n_false_predictions;
    if (!trusted(p)) return;
    if (mode_ != Mode::Regular) {
      ++result_.n_predictions_overlapping;
      return;
    }
    ++result_.n_predictions_trusted;
    mode_ = Mode::Pending;
    reveal_at_ = clock_;
    window_start_ = p.window_start;
    if (activity_ == Activity::Work &&
        window_start_ - clock_ >= platform_.c_proactive - kTimeEps) {
      w_reg_ = period_work_;
      log("prediction");
      start(Activity::ProactiveCkpt, window_start_ - clock_);
    } else {
      // Busy (checkpointing or recovering), or too close to the window.
      ++result_.n_no_time_branch;
      no_time_branch_ = true;
      w_reg_ = 0;
      period_work_ = 0;
      log("prediction-no-time");
    }
  }

  void log(const char* what) {
    if (!options_.log) return;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.6f %s %.6f w_reg=%.6f\n", clock_, what,
                  committed_ + unprotected_, w_reg_);
    *options_.log << buf;
  }

  const PolicyConfig& policy_;
  const Trace& trace_;
  const double t_base_;
  const Platform& platform_;
  const double window_;
  const CounterRng& rng_;
  const SimOptions& options_;

  std::vector<FaultAt> faults_;
  std::vector<PredictionAt> predictions_;
  std::size_t fi_ = 0, pi_ = 0;

  double clock_ = 0;
  double committed_ = 0;
  double unprotected_ = 0;
  Activity activity_ = Activity::Work;
  double activity_end_ = kInf;
  Mode mode_ = Mode::Regular;
  bool no_time_branch_ = false;
  double reveal_at_ = 0;
  double window_start_ = 0;
  double window_end_ = 0;
  double period_work_ = 0;
  double w_reg_ = 0;
  double chunk_left_ = 0;
  double proactive_left_ = kInf;

  SimResult result_;
};

}  // namespace

SimResult simulate(const PolicyConfig& policy, const Trace& trace, double t_base,
                   const Platform& platform, const Predictor& predictor,
                   const CounterRng& rng, const SimOptions& options) {
  return Simulation(policy, trace, t_base, platform, predictor, rng, options).run();
}

SimResult simulate(const PolicyConfig& policy, TraceSource& source, double t_base,
                   const Platform& platform, const Predictor& predictor,
                   const CounterRng& rng, const SimOptions& options) {
  for (;;) {
    try {
      return simulate(policy, source.trace(), t_base, platform, predictor, rng, options);
    } catch (const TraceExhausted&) {
      source.grow(2.0);
    }
  }
}

double waste_of(const SimResult& result, double t_base) {
  if (!(result.makespan >= t_base)) throw InvalidParameter("makespan below t_base");
  return (result.makespan - t_base) / result.makespan;
}

double initial_horizon(double t_base, const Platform& platform) {
  double estimate = 10 * t_base;
  try {
    const double mu = platform.mtbf();
    const auto w = waste_nopred(daly_period(mu, platform.recovery, platform.c_regular), platform);
    estimate = t_base * w.t_final_over_t_base;
  } catch (const Error&) {
  }
  return 4 * estimate;
}

ReplicationStats summarize(std::vector<SimResult> runs) {
  ReplicationStats s;
  const double n = static_cast<double>(runs.size());
  if (runs.empty()) return s;
  for (const auto& r : runs) {
    s.mean_makespan += r.makespan / n;
    s.mean_waste += r.waste / n;
  }
  if (runs.size() > 1) {
    double vm = 0, vw = 0;
    for (const auto& r : runs) {
      vm += (r.makespan - s.mean_makespan) * (r.makespan - s.mean_makespan);
      vw += (r.waste - s.mean_waste) * (r.waste - s.mean_waste);
    }
    s.stderr_makespan = std::sqrt(vm / (n - 1) / n);
    s.stderr_waste = std::sqrt(vw / (n - 1) / n);
  }
  s.runs = std::move(runs);
  return s;
}

ReplicationStats replicate(const PolicyConfig& policy, const TraceGenerator& generator,
                           double t_base, int n_reps, std::uint64_t base_seed,
                           double max_slowdown) {
  if (n_reps < 1) throw InvalidParameter("n_reps must be at least 1");
  SimOptions options;
  options.max_makespan = max_slowdown * t_base;
  const auto& cfg = generator.config();
  std::vector<SimResult> runs(static_cast<std::size_t>(n_reps));
  const double horizon = initial_horizon(t_base, cfg.platform);
  parallel_for(runs.size(), [&](std::size_t i) {
    const std::uint64_t seed = base_seed + i;
    TraceSource source(generator, seed, horizon);
    runs[i] = simulate(policy, source, t_base, cfg.platform, cfg.predictor,
                       CounterRng(seed).split("trust"), options);
  });
  return summarize(std::move(runs));
}

}  // namespace ckptwin
