#pragma once

#include <optional>
#include <vector>

#include "ckptwin/core.hpp"

namespace ckptwin {

/// Waste and the matching slowdown T_Final / T_base.
struct WasteBreakdown {
  double waste = 0;
  double t_final_over_t_base = 1;

  /// From T_base / T_Final; throws ModelValidity unless the waste is in (0, 1).
  static WasteBreakdown from_base_over_final(double base_over_final);
};

/// Expected interval counts per unit of T_Final for the four interval types
/// (no event, unpredicted fault, false prediction, true prediction).
struct IntervalWeights {
  double w1 = 0, w2 = 0, w3 = 0, w4 = 0;
};

/// A period after clamping into its admissible range.
struct ClampedPeriod {
  double value = 0;
  bool clamped = false;
};

double young_period(double mu, double c);
double daly_period(double mu, double r_rec, double c);
/// sqrt(2 (mu - (D + R)) C), the minimiser of waste_nopred.
double rfo_period(double mu, double d, double r_rec, double c);
/// Optimal period with exact-date predictions: sqrt(2 mu C / (1 - r)).
double exact_prediction_period(double mu, double c, double r);

/// Waste of periodic checkpointing with period t_r when predictions are ignored.
WasteBreakdown waste_nopred(double t_r, const Platform& platform);

// Closed-form wastes of the prediction-aware strategies with q = 1.
WasteBreakdown waste_withckpt(double t_r, double t_p, const Platform& platform,
                              const Predictor& predictor, ExpectedFaultOffset e_fault);
WasteBreakdown waste_nockpt(double t_r, const Platform& platform, const Predictor& predictor,
                            ExpectedFaultOffset e_fault);
WasteBreakdown waste_instant(double t_r, const Platform& platform, const Predictor& predictor,
                             ExpectedFaultOffset e_fault);

/// sqrt(((1-p) I + p E) Cp / p) clamped into [Cp, I].
ClampedPeriod tp_extr(const Platform& platform, const Predictor& predictor,
                      ExpectedFaultOffset e_fault);
/// Regular period minimising the WithCkptI and NoCkptI wastes, clamped to >= C.
ClampedPeriod tr_extr_window(const Platform& platform, const Predictor& predictor,
                             ExpectedFaultOffset e_fault);
/// Regular period minimising the Instant waste, clamped to >= C.
ClampedPeriod tr_extr_instant(const Platform& platform, const Predictor& predictor,
                              ExpectedFaultOffset e_fault);

/// Interval weights for any trust probability q, from the per-interval time
/// spent / work done tables. Daly and RFO are treated as q = 0.
IntervalWeights interval_weights(Strategy strategy, double t_r, double t_p, double q,
                                 const Platform& platform, const Predictor& predictor,
                                 ExpectedFaultOffset e_fault);

/// Waste for any q, solving the time and work balance equations directly.
WasteBreakdown general_q_waste(Strategy strategy, double t_r, double t_p, double q,
                               const Platform& platform, const Predictor& predictor,
                               ExpectedFaultOffset e_fault);

/// Analytic period choice and waste of one strategy.
struct StrategyOptimum {
  PolicyConfig policy;
  WasteBreakdown waste;
  bool t_regular_clamped = false;
  bool t_proactive_clamped = false;
};

/// Periods the strategy would run with (Daly/RFO formulas, or the extrema of
/// the q = 1 wastes) and the matching analytic waste.
StrategyOptimum analytic_optimum(Strategy strategy, const Platform& platform,
                                 const Predictor& predictor, ExpectedFaultOffset e_fault);

/// Analytic waste of a given policy (q in {0, 1} uses the closed forms).
WasteBreakdown analytic_waste(const PolicyConfig& policy, const Platform& platform,
                              const Predictor& predictor, ExpectedFaultOffset e_fault);

struct PolicyChoice {
  StrategyOptimum best;
  /// One entry per strategy in kAllStrategies order; empty when excluded.
  std::vector<std::optional<StrategyOptimum>> candidates;
};

/// Best strategy by analytic waste; ties go to the earlier strategy in
/// Daly < RFO < Instant < NoCkptI < WithCkptI.
PolicyChoice optimal_policy(const Platform& platform, const Predictor& predictor,
                            ExpectedFaultOffset e_fault);

}  // namespace ckptwin
