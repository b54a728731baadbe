#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ckptwin/core.hpp"
#include "ckptwin/rng.hpp"

namespace ckptwin {

/// Inter-arrival law, parameterised by its mean.
class FaultDistribution {
 public:
  enum class Kind { Exponential, Weibull, Uniform };

  static FaultDistribution exponential(double mean);
  static FaultDistribution weibull(double shape, double mean);
  /// Uniform on [0, 2 * mean]. Only meant for false-prediction streams.
  static FaultDistribution uniform(double mean);

  Kind kind() const { return kind_; }
  double mean() const { return mean_; }
  double shape() const { return shape_; }
  /// Weibull scale lambda = mean / Gamma(1 + 1/k); the mean otherwise.
  double scale() const { return scale_; }

  /// Same family and shape, different mean.
  FaultDistribution with_mean(double mean) const;

  double cdf(double x) const;
  /// Inverse CDF; u in [0, 1).
  double quantile(double u) const;

  std::string describe() const;

 private:
  FaultDistribution(Kind kind, double shape, double mean);

  Kind kind_;
  double shape_;
  double mean_;
  double scale_;
};

double sample_interarrival(const FaultDistribution& dist, CounterRng& rng);

/// Renewal process on [0, horizon).
std::vector<double> gen_fault_times(const FaultDistribution& dist, double horizon,
                                    CounterRng& rng);

/// Superposition of `n_components` independent renewal processes, each with
/// inter-arrival law `component`, all started `age` seconds before time 0.
/// Component c draws from rng.split(c), so the output on [0, h) does not
/// depend on the horizon requested.
std::vector<double> gen_component_fault_times(const FaultDistribution& component,
                                              std::int64_t n_components, double age,
                                              double horizon, const CounterRng& rng);

/// Fault i is predicted iff rng.uniform_at(i) < r.
std::pair<std::vector<double>, std::vector<double>> label_predicted(
    const std::vector<double>& faults, double r, const CounterRng& rng);

enum class EventKind { UnpredictedFault = 0, TruePrediction = 1, FalsePrediction = 2 };

struct Event {
  double reveal_time = 0;
  EventKind kind = EventKind::UnpredictedFault;
  std::optional<double> window_start;  ///< predictions only
  std::optional<double> fault_time;    ///< faults only
  /// Window moved so that the reveal time is not negative.
  bool clipped = false;

  bool operator==(const Event&) const = default;
};

/// Fault at t gets the window [t - u, t - u + I], u ~ U(0, I), revealed Cp
/// before the window starts.
std::vector<Event> attach_windows(const std::vector<double>& predicted_faults,
                                  double i_window, double c_proactive,
                                  const CounterRng& rng);

/// False predictions as a renewal process of mean p*mu / (r*(1-p)), same
/// family as `family`. Empty when p = 1 or r = 0.
std::vector<Event> gen_false_predictions(const FaultDistribution& family, double p,
                                         double r, double mu, double i_window,
                                         double c_proactive, double horizon,
                                         CounterRng& rng);

struct Trace {
  std::vector<Event> events;  ///< sorted by reveal_time
  double horizon = 0;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;

  /// Events are complete up to this time (predictions of faults beyond the
  /// horizon could otherwise be revealed earlier).
  double complete_until = 0;

  bool operator==(const Trace&) const = default;
};

/// Stable merge by reveal time; ties ordered Unpredicted < True < False.
Trace merge(std::vector<Event> true_events, std::vector<Event> false_events,
            std::vector<Event> unpredicted);

enum class TraceModel {
  /// One renewal process at platform scale with mean mu.
  PlatformRenewal,
  /// N per-component renewal processes of mean mu_ind, observed from an age.
  PerComponent,
};

enum class FalsePredictionLaw { SameAsFaults, Uniform };

struct TraceConfig {
  Platform platform;
  Predictor predictor;
  FaultDistribution::Kind kind = FaultDistribution::Kind::Exponential;
  double weibull_shape = 1;
  TraceModel model = TraceModel::PlatformRenewal;
  double component_age = 0;  ///< PerComponent only
  FalsePredictionLaw false_law = FalsePredictionLaw::SameAsFaults;

  /// Platform-scale fault law.
  FaultDistribution platform_distribution() const;
  std::uint64_t hash() const;
  std::string describe() const;
};

/// Generates traces for one configuration. Streams "faults", "labels",
/// "windows" and "false" are independent children of the seed.
class TraceGenerator {
 public:
  explicit TraceGenerator(TraceConfig config);

  const TraceConfig& config() const { return config_; }

  Trace generate(std::uint64_t seed, double horizon) const;

  /// Fault times only, as used by generate().
  std::vector<double> fault_times(std::uint64_t seed, double horizon) const;

 private:
  TraceConfig config_;
};

/// A trace that can be regrown to a longer horizon on demand. Regrowing is
/// prefix-consistent: events before the old completeness bound are unchanged.
class TraceSource {
 public:
  TraceSource(TraceGenerator generator, std::uint64_t seed, double initial_horizon);

  const Trace& trace() const { return trace_; }
  const TraceGenerator& generator() const { return generator_; }
  std::uint64_t seed() const { return seed_; }

  /// Regenerate with at least `factor` times the horizon.
  void grow(double factor = 2.0);

 private:
  TraceGenerator generator_;
  std::uint64_t seed_;
  Trace trace_;
};

/// Text dump: header `# ckptwin-trace seed=.. config=.. horizon=.. complete=..`
/// then `reveal_time kind window_start fault_time` per line, `-` where absent.
void write_trace(std::ostream& out, const Trace& trace);
Trace read_trace(std::istream& in);

}  // namespace ckptwin
