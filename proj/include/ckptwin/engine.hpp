#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "ckptwin/core.hpp"
#include "ckptwin/rng.hpp"
#include "ckptwin/tracegen.hpp"

namespace ckptwin {

/// Thrown when a simulation runs past the part of the trace that is complete.
class TraceExhausted : public Error {
 public:
  explicit TraceExhausted(double at)
      : Error("trace exhausted at t=" + std::to_string(at)), at_(at) {}
  double at() const { return at_; }

 private:
  double at_;
};

/// Thrown when a run goes past SimOptions::max_makespan.
class MakespanLimit : public Error {
 public:
  explicit MakespanLimit(double limit)
      : Error("makespan exceeds " + std::to_string(limit)), limit_(limit) {}
  double limit() const { return limit_; }

 private:
  double limit_;
};

struct SimResult {
  double makespan = 0;
  double waste = 0;

  std::int64_t n_unpredicted_faults = 0;
  std::int64_t n_predicted_faults = 0;  ///< faults that had a true prediction
  std::int64_t n_true_predictions = 0;  ///< revealed before the job ended
  std::int64_t n_false_predictions = 0;
  std::int64_t n_predictions_trusted = 0;
  /// Trusted-by-draw predictions dropped because another one was being handled.
  std::int64_t n_predictions_overlapping = 0;
  std::int64_t n_no_time_branch = 0;
  std::int64_t n_regular_ckpts = 0;
  std::int64_t n_proactive_ckpts = 0;

  // Time decomposition: makespan = work_time + ckpt_time + downtime_time +
  // recovery_time + idle_time, and work_time = t_base + lost_work.
  double work_time = 0;
  double lost_work = 0;
  double ckpt_time = 0;
  double downtime_time = 0;
  double recovery_time = 0;
  double idle_time = 0;
  /// Work done between a busy reveal and the window start.
  double no_time_branch_work = 0;

  /// Longest stretch from a trusted reveal to the return to regular mode.
  double max_proactive_span = 0;
};

struct SimOptions {
  /// One line per state transition: `clock transition work_done`.
  std::ostream* log = nullptr;
  /// Give up once the clock would pass this time.
  double max_makespan = std::numeric_limits<double>::infinity();
};

/// Runs a job of t_base seconds of work under `policy` against `trace`.
/// Throws TraceExhausted if the job outlives trace.complete_until.
SimResult simulate(const PolicyConfig& policy, const Trace& trace, double t_base,
                   const Platform& platform, const Predictor& predictor,
                   const CounterRng& rng, const SimOptions& options = {});

/// Same, regrowing the source's trace until it covers the whole run.
SimResult simulate(const PolicyConfig& policy, TraceSource& source, double t_base,
                   const Platform& platform, const Predictor& predictor,
                   const CounterRng& rng, const SimOptions& options = {});

double waste_of(const SimResult& result, double t_base);

/// Initial trace horizon for a job: four times a rough makespan estimate.
double initial_horizon(double t_base, const Platform& platform);

struct ReplicationStats {
  double mean_makespan = 0;
  double stderr_makespan = 0;
  double mean_waste = 0;
  double stderr_waste = 0;
  std::vector<SimResult> runs;
};

ReplicationStats summarize(std::vector<SimResult> runs);

/// n_reps independent traces with seeds base_seed .. base_seed + n_reps - 1.
/// The trust draws of replication i use CounterRng(seed).split("trust").
/// A run longer than max_slowdown * t_base throws MakespanLimit.
ReplicationStats replicate(const PolicyConfig& policy, const TraceGenerator& generator,
                           double t_base, int n_reps, std::uint64_t base_seed,
                           double max_slowdown = std::numeric_limits<double>::infinity());

}  // namespace ckptwin
