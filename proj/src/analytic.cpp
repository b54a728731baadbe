#include "ckptwin/analytic.hpp"

#include <cmath>

namespace ckptwin {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParameter(what);
}

double mtbf_checked(const Platform& platform) {
  platform.validate();
  return platform.mtbf();
}

void check_regular_period(double t_r, const Platform& platform) {
  if (!(t_r > platform.c_regular) || !std::isfinite(t_r))
    throw ModelValidity("regular period must exceed the checkpoint cost", t_r);
}

// Terms shared by the three q = 1 closed forms.
struct PredictedTerms {
  double mu, p, r, i, e, c, cp, d_plus_r;
};

PredictedTerms terms(const Platform& platform, const Predictor& predictor,
                     ExpectedFaultOffset e_fault) {
  predictor.validate();
  return {mtbf_checked(platform), predictor.precision, predictor.recall, predictor.window,
          e_fault.value(),        platform.c_regular,  platform.c_proactive,
          platform.downtime + platform.recovery};
}

}  // namespace

WasteBreakdown WasteBreakdown::from_base_over_final(double base_over_final) {
  const double waste = 1 - base_over_final;
  if (!(waste > 0 && waste < 1) || !std::isfinite(waste))
    throw ModelValidity("waste outside (0, 1)", waste);
  return {waste, 1 / base_over_final};
}

double young_period(double mu, double c) {
  require(mu > 0 && c >= 0, "young_period: mu > 0 and c >= 0 required");
  return std::sqrt(2 * mu * c) + c;
}

double daly_period(double mu, double r_rec, double c) {
  require(mu > 0 && c >= 0 && r_rec >= 0, "daly_period: invalid arguments");
  return std::sqrt(2 * (mu + r_rec) * c) + c;
}

double rfo_period(double mu, double d, double r_rec, double c) {
  require(mu > 0 && c >= 0 && d >= 0 && r_rec >= 0, "rfo_period: invalid arguments");
  if (mu <= d + r_rec)
    throw ModelValidity("rfo_period: MTBF must exceed downtime plus recovery", mu);
  return std::sqrt(2 * (mu - (d + r_rec)) * c);
}

double exact_prediction_period(double mu, double c, double r) {
  require(mu > 0 && c >= 0, "exact_prediction_period: invalid arguments");
  require(r >= 0 && r < 1, "exact_prediction_period: recall must be in [0, 1)");
  return std::sqrt(2 * mu * c / (1 - r));
}

WasteBreakdown waste_nopred(double t_r, const Platform& platform) {
  const double mu = mtbf_checked(platform);
  check_regular_period(t_r, platform);
  const double lost = t_r / 2 + platform.downtime + platform.recovery;
  if (!(mu > lost)) throw ModelValidity("waste_nopred: MTBF below T_R/2 + D + R", mu);
  return WasteBreakdown::from_base_over_final((1 - platform.c_regular / t_r) * (1 - lost / mu));
}

WasteBreakdown waste_withckpt(double t_r, double t_p, const Platform& platform,
                              const Predictor& predictor, ExpectedFaultOffset e_fault) {
  const auto t = terms(platform, predictor, e_fault);
  check_regular_period(t_r, platform);
  if (t.i < t.cp) throw StrategyInapplicable("WithCkptI needs Cp <= I");
  require(t_p >= t.cp && t_p <= t.i, "waste_withckpt: T_P must lie in [Cp, I]");

  const double pmu = t.p * t.mu;
  const double window_term =
      t.r / pmu * (1 - t.cp / t_p) * ((1 - t.p) * t.i + t.p * (t.e - t_p));
  const double lost = t.p * t.d_plus_r + t.r * t.cp + (1 - t.r) * t.p * t_r / 2 +
                      t.r * ((1 - t.p) * t.i + t.p * t.e);
  return WasteBreakdown::from_base_over_final(window_term +
                                              (1 - t.c / t_r) * (1 - lost / pmu));
}

WasteBreakdown waste_nockpt(double t_r, const Platform& platform, const Predictor& predictor,
                            ExpectedFaultOffset e_fault) {
  const auto t = terms(platform, predictor, e_fault);
  check_regular_period(t_r, platform);
  const double pmu = t.p * t.mu;
  const double window_term = t.r / pmu * (1 - t.p) * t.i;
  const double lost = t.p * t.d_plus_r + t.r * t.cp + (1 - t.r) * t.p * t_r / 2 +
                      t.r * ((1 - t.p) * t.i + t.p * t.e);
  return WasteBreakdown::from_base_over_final(window_term +
                                              (1 - t.c / t_r) * (1 - lost / pmu));
}

WasteBreakdown waste_instant(double t_r, const Platform& platform, const Predictor& predictor,
                             ExpectedFaultOffset e_fault) {
  const auto t = terms(platform, predictor, e_fault);
  check_regular_period(t_r, platform);
  const double pmu = t.p * t.mu;
  const double lost = t.p * t.d_plus_r + t.r * t.cp + (1 - t.r) * t.p * t_r / 2 +
                      t.p * t.r * t.e;
  return WasteBreakdown::from_base_over_final((1 - t.c / t_r) * (1 - lost / pmu));
}

ClampedPeriod tp_extr(const Platform& platform, const Predictor& predictor,
                      ExpectedFaultOffset e_fault) {
  const auto t = terms(platform, predictor, e_fault);
  if (t.i < t.cp) throw StrategyInapplicable("WithCkptI needs Cp <= I");
  const double raw = std::sqrt(((1 - t.p) * t.i + t.p * t.e) * t.cp / t.p);
  if (raw < t.cp) return {t.cp, true};
  if (raw > t.i) return {t.i, true};
  return {raw, false};
}

namespace {

ClampedPeriod clamp_regular(double numerator_excess, const PredictedTerms& t) {
  // numerator_excess = p mu - (prediction overhead)
  if (numerator_excess < 0)
    throw ModelValidity("regular period radicand is negative", numerator_excess);
  const double raw = std::sqrt(2 * t.c * numerator_excess / (t.p * (1 - t.r)));
  if (raw <= t.c) return {t.c, true};
  return {raw, false};
}

}  // namespace

ClampedPeriod tr_extr_window(const Platform& platform, const Predictor& predictor,
                             ExpectedFaultOffset e_fault) {
  const auto t = terms(platform, predictor, e_fault);
  require(t.r < 1, "tr_extr_window: recall must be below 1");
  const double overhead =
      t.p * t.d_plus_r + t.r * (t.cp + ((1 - t.p) * t.i + t.p * t.e));
  return clamp_regular(t.p * t.mu - overhead, t);
}

ClampedPeriod tr_extr_instant(const Platform& platform, const Predictor& predictor,
                              ExpectedFaultOffset e_fault) {
  const auto t = terms(platform, predictor, e_fault);
  require(t.r < 1, "tr_extr_instant: recall must be below 1");
  const double overhead = t.p * t.d_plus_r + t.r * t.cp + t.p * t.r * t.e;
  return clamp_regular(t.p * t.mu - overhead, t);
}

namespace {

// Time spent and work done in intervals of types 2-4 (type 1 is T_R / T_R - C).
struct IntervalTable {
  double time2, time3, work3, time4, work4;
};

IntervalTable interval_table(Strategy strategy, double t_r, double t_p, double q,
                             const PredictedTerms& t) {
  IntervalTable tab;
  tab.time2 = t_r / 2 + t.d_plus_r;
  const double untrusted_true = (1 - q) * t_r / 2 + t.d_plus_r;
  const double trusted_true_time = t_r + t.e + t.cp;
  switch (strategy) {
    case Strategy::WithCkptI:
      tab.time3 = t_r + q * (t.i + t.cp);
      tab.work3 = t_r - t.c + q * (t.i - t.i / t_p * t.cp);
      tab.time4 = q * trusted_true_time + untrusted_true;
      tab.work4 = q * (t_r - t.c + (t.e / t_p - 1) * (t_p - t.cp));
      break;
    case Strategy::NoCkptI:
      tab.time3 = t_r + q * (t.i + t.cp);
      tab.work3 = t_r - t.c + q * t.i;
      tab.time4 = q * trusted_true_time + untrusted_true;
      tab.work4 = q * (t_r - t.c);
      break;
    case Strategy::Instant:
      tab.time3 = t_r + q * t.cp;
      tab.work3 = t_r - t.c;
      tab.time4 = q * trusted_true_time + untrusted_true;
      tab.work4 = q * (t_r - t.c);
      break;
    case Strategy::Daly:
    case Strategy::RFO:
      tab.time3 = t_r;
      tab.work3 = t_r - t.c;
      tab.time4 = t_r / 2 + t.d_plus_r;
      tab.work4 = 0;
      break;
  }
  return tab;
}

struct Balance {
  IntervalWeights weights;
  double final_over_base;
};

Balance solve_balance(Strategy strategy, double t_r, double t_p, double q,
                      const Platform& platform, const Predictor& predictor,
                      ExpectedFaultOffset e_fault) {
  const auto t = terms(platform, predictor, e_fault);
  check_regular_period(t_r, platform);
  require(q >= 0 && q <= 1, "trust probability must be in [0, 1]");
  if (!uses_predictions(strategy)) q = 0;
  if (strategy == Strategy::WithCkptI && q > 0) {
    if (t.i < t.cp) throw StrategyInapplicable("WithCkptI needs Cp <= I");
    require(t_p >= t.cp && t_p <= t.i, "T_P must lie in [Cp, I]");
  }
  const auto tab = interval_table(strategy, t_r, t_p, q, t);

  // Interval densities per unit of T_Final.
  IntervalWeights w;
  w.w2 = (1 - t.r) / t.mu;
  w.w3 = (1 - t.p) * t.r / (t.p * t.mu);
  w.w4 = t.r / t.mu;

  // Work balance: T_base = w1 (T_R - C) + w3 W3 + w4 W4, solved for w1 and
  // substituted into T_Final = w1 T_R + w2 T2 + w3 T3 + w4 T4.
  const double stretch = t_r / (t_r - t.c);
  const double denom = 1 + stretch * (w.w3 * tab.work3 + w.w4 * tab.work4) -
                       (w.w2 * tab.time2 + w.w3 * tab.time3 + w.w4 * tab.time4);
  if (!(denom > 0) || !std::isfinite(denom))
    throw ModelValidity("singular balance equations", denom);
  const double final_over_base = stretch / denom;
  w.w1 = (1 / final_over_base - w.w3 * tab.work3 - w.w4 * tab.work4) / (t_r - t.c);
  if (w.w1 < 0) throw ModelValidity("negative count of event-free intervals", w.w1);
  return {w, final_over_base};
}

}  // namespace

IntervalWeights interval_weights(Strategy strategy, double t_r, double t_p, double q,
                                 const Platform& platform, const Predictor& predictor,
                                 ExpectedFaultOffset e_fault) {
  return solve_balance(strategy, t_r, t_p, q, platform, predictor, e_fault).weights;
}

WasteBreakdown general_q_waste(Strategy strategy, double t_r, double t_p, double q,
                               const Platform& platform, const Predictor& predictor,
                               ExpectedFaultOffset e_fault) {
  const auto b = solve_balance(strategy, t_r, t_p, q, platform, predictor, e_fault);
  return WasteBreakdown::from_base_over_final(1 / b.final_over_base);
}

StrategyOptimum analytic_optimum(Strategy strategy, const Platform& platform,
                                 const Predictor& predictor, ExpectedFaultOffset e_fault) {
  platform.validate();
  const double mu = platform.mtbf();
  StrategyOptimum out;
  out.policy.strategy = strategy;
  switch (strategy) {
    case Strategy::Daly:
      out.policy.t_regular = daly_period(mu, platform.recovery, platform.c_regular);
      out.waste = waste_nopred(out.policy.t_regular, platform);
      break;
    case Strategy::RFO:
      out.policy.t_regular =
          rfo_period(mu, platform.downtime, platform.recovery, platform.c_regular);
      out.waste = waste_nopred(out.policy.t_regular, platform);
      break;
    case Strategy::Instant: {
      auto tr = tr_extr_instant(platform, predictor, e_fault);
      out.policy.t_regular = tr.value;
      out.t_regular_clamped = tr.clamped;
      out.policy.trust_prob = 1;
      out.waste = waste_instant(tr.value, platform, predictor, e_fault);
      break;
    }
    case Strategy::NoCkptI: {
      auto tr = tr_extr_window(platform, predictor, e_fault);
      out.policy.t_regular = tr.value;
      out.t_regular_clamped = tr.clamped;
      out.policy.trust_prob = 1;
      out.waste = waste_nockpt(tr.value, platform, predictor, e_fault);
      break;
    }
    case Strategy::WithCkptI: {
      auto tp = tp_extr(platform, predictor, e_fault);
      auto tr = tr_extr_window(platform, predictor, e_fault);
      out.policy.t_regular = tr.value;
      out.policy.t_proactive = tp.value;
      out.t_regular_clamped = tr.clamped;
      out.t_proactive_clamped = tp.clamped;
      out.policy.trust_prob = 1;
      out.waste = waste_withckpt(tr.value, tp.value, platform, predictor, e_fault);
      break;
    }
  }
  return out;
}

WasteBreakdown analytic_waste(const PolicyConfig& policy, const Platform& platform,
                              const Predictor& predictor, ExpectedFaultOffset e_fault) {
  if (!uses_predictions(policy.strategy) || policy.trust_prob == 0)
    return waste_nopred(policy.t_regular, platform);
  if (policy.trust_prob == 1) {
    switch (policy.strategy) {
      case Strategy::Instant:
        return waste_instant(policy.t_regular, platform, predictor, e_fault);
      case Strategy::NoCkptI:
        return waste_nockpt(policy.t_regular, platform, predictor, e_fault);
      case Strategy::WithCkptI:
        return waste_withckpt(policy.t_regular, policy.t_proactive, platform, predictor,
                              e_fault);
      default: break;
    }
  }
  return general_q_waste(policy.strategy, policy.t_regular, policy.t_proactive,
                         policy.trust_prob, platform, predictor, e_fault);
}

PolicyChoice optimal_policy(const Platform& platform, const Predictor& predictor,
                            ExpectedFaultOffset e_fault) {
  PolicyChoice choice;
  std::optional<StrategyOptimum> best;
  for (Strategy s : kAllStrategies) {
    std::optional<StrategyOptimum> cand;
    try {
      cand = analytic_optimum(s, platform, predictor, e_fault);
    } catch (const ModelValidity&) {
      if (s == Strategy::RFO) throw;
    } catch (const StrategyInapplicable&) {
    } catch (const InvalidParameter&) {
      if (!uses_predictions(s)) throw;
    }
    if (cand && (!best || cand->waste.waste < best->waste.waste)) best = cand;
    choice.candidates.push_back(cand);
  }
  choice.best = *best;
  return choice;
}

}  // namespace ckptwin
