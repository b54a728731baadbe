#pragma once

#include <cstdint>
#include <string_view>

#include "ckptwin/error.hpp"

namespace ckptwin {

// All times are seconds, stored as double.
inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kSecondsPerYear = 365.25 * kSecondsPerDay;

constexpr double days(double d) { return d * kSecondsPerDay; }
constexpr double years(double y) { return y * kSecondsPerYear; }
constexpr double to_days(double s) { return s / kSecondsPerDay; }

double platform_mtbf(double mu_ind, std::int64_t n_procs);

/// Hardware and checkpoint cost parameters of the platform.
struct Platform {
  std::int64_t n_procs = 1;
  double mu_ind = 0;       ///< MTBF of one component
  double c_regular = 0;    ///< C
  double c_proactive = 0;  ///< Cp
  double downtime = 0;     ///< D
  double recovery = 0;     ///< R

  /// Platform MTBF mu = mu_ind / N.
  double mtbf() const { return platform_mtbf(mu_ind, n_procs); }

  /// Throws InvalidParameter or ModelValidity (mu <= C).
  void validate() const;
};

/// Prediction quality and window size.
struct Predictor {
  double precision = 1;  ///< p in (0, 1]
  double recall = 0;     ///< r in [0, 1]
  double window = 0;     ///< I

  void validate() const;
};

/// Event rates derived from mu, p and r. Rates (not mean times) so that
/// r = 0 and r = 1 stay finite.
struct Rates {
  double rate_unpredicted = 0;  ///< 1 / mu_NP
  double rate_predicted = 0;    ///< 1 / mu_P (true and false predictions)
  double rate_events = 0;       ///< 1 / mu_e
};

Rates derived_rates(double mu, const Predictor& predictor);

enum class Strategy { Daly, RFO, Instant, NoCkptI, WithCkptI };

inline constexpr Strategy kAllStrategies[] = {
    Strategy::Daly, Strategy::RFO, Strategy::Instant, Strategy::NoCkptI,
    Strategy::WithCkptI};

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

/// True for the three strategies that act on predictions.
constexpr bool uses_predictions(Strategy s) {
  return s == Strategy::Instant || s == Strategy::NoCkptI ||
         s == Strategy::WithCkptI;
}

struct PolicyConfig {
  Strategy strategy = Strategy::Daly;
  double t_regular = 0;    ///< T_R
  double t_proactive = 0;  ///< T_P, WithCkptI only
  double trust_prob = 0;   ///< q

  /// Checks the fields that matter for `strategy`.
  void validate(const Platform& platform, const Predictor& predictor) const;
};

/// Expected position of the fault inside a prediction window (E_I^(f)).
class ExpectedFaultOffset {
 public:
  /// Midpoint of the window.
  static ExpectedFaultOffset midpoint(const Predictor& predictor) {
    return ExpectedFaultOffset(predictor.window / 2, predictor.window);
  }

  ExpectedFaultOffset(double value, double window);

  double value() const { return value_; }

 private:
  double value_;
};

}  // namespace ckptwin
