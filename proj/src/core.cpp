#include "ckptwin/core.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace ckptwin {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParameter(what);
}

bool positive(double x) { return std::isfinite(x) && x > 0; }

}  // namespace

double platform_mtbf(double mu_ind, std::int64_t n_procs) {
  require(positive(mu_ind), "mu_ind must be positive");
  require(n_procs >= 1, "n_procs must be at least 1");
  return mu_ind / static_cast<double>(n_procs);
}

void Platform::validate() const {
  require(n_procs >= 1, "n_procs must be at least 1");
  require(positive(mu_ind), "mu_ind must be positive");
  require(positive(c_regular), "regular checkpoint cost must be positive");
  require(positive(c_proactive), "proactive checkpoint cost must be positive");
  require(positive(downtime), "downtime must be positive");
  require(positive(recovery), "recovery must be positive");
  if (mtbf() <= c_regular)
    throw ModelValidity("platform MTBF must exceed the checkpoint cost", mtbf());
}

void Predictor::validate() const {
  require(precision > 0 && precision <= 1, "precision must be in (0, 1]");
  require(recall >= 0 && recall <= 1, "recall must be in [0, 1]");
  require(positive(window), "prediction window must be positive");
}

Rates derived_rates(double mu, const Predictor& predictor) {
  require(positive(mu), "mu must be positive");
  require(predictor.precision > 0 && predictor.precision <= 1,
          "precision must be in (0, 1]");
  require(predictor.recall >= 0 && predictor.recall <= 1,
          "recall must be in [0, 1]");
  Rates rates;
  rates.rate_unpredicted = (1 - predictor.recall) / mu;
  rates.rate_predicted = predictor.recall / (predictor.precision * mu);
  rates.rate_events = rates.rate_unpredicted + rates.rate_predicted;
  return rates;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Daly: return "Daly";
    case Strategy::RFO: return "RFO";
    case Strategy::Instant: return "Instant";
    case Strategy::NoCkptI: return "NoCkptI";
    case Strategy::WithCkptI: return "WithCkptI";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    std::string_view ref = to_string(s);
    if (ref.size() != name.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < ref.size(); ++i)
      if (std::tolower(static_cast<unsigned char>(ref[i])) !=
          std::tolower(static_cast<unsigned char>(name[i])))
        same = false;
    if (same) return s;
  }
  throw InvalidParameter("unknown strategy '" + std::string(name) + "'");
}

void PolicyConfig::validate(const Platform& platform,
                            const Predictor& predictor) const {
  require(std::isfinite(t_regular) && t_regular > platform.c_regular,
          "regular period must exceed the checkpoint cost");
  require(trust_prob >= 0 && trust_prob <= 1, "trust probability must be in [0, 1]");
  if (!uses_predictions(strategy))
    require(trust_prob == 0, "Daly and RFO never trust predictions");
  if (strategy == Strategy::WithCkptI) {
    if (predictor.window < platform.c_proactive)
      throw StrategyInapplicable(
          "WithCkptI needs a window at least as long as a proactive checkpoint");
    require(t_proactive >= platform.c_proactive && t_proactive <= predictor.window,
            "proactive period must lie in [Cp, I]");
  }
}

ExpectedFaultOffset::ExpectedFaultOffset(double value, double window)
    : value_(value) {
  require(std::isfinite(value) && value >= 0 && value <= window,
          "expected fault offset must lie in [0, I]");
}

}  // namespace ckptwin
