#include "ckptwin/tracegen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace ckptwin {

namespace {

// Shortest text that reads back to the same double.
std::string fmt_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<Event> as_false_predictions(const std::vector<double>& times,
                                        double c_proactive) {
  std::vector<Event> events;
  events.reserve(times.size());
  for (double t : times) {
    Event e;
    e.kind = EventKind::FalsePrediction;
    e.window_start = t;
    e.reveal_time = t - c_proactive;
    if (e.reveal_time < 0) {
      e.reveal_time = 0;
      e.clipped = true;
    }
    events.push_back(e);
  }
  return events;
}

double false_prediction_scale(double p, double r) { return p / (r * (1 - p)); }

}  // namespace

FaultDistribution::FaultDistribution(Kind kind, double shape, double mean)
    : kind_(kind), shape_(shape), mean_(mean), scale_(mean) {
  if (!(mean > 0) || !std::isfinite(mean))
    throw InvalidParameter("distribution mean must be positive");
  if (kind == Kind::Weibull) {
    if (!(shape > 0) || !std::isfinite(shape))
      throw InvalidParameter("Weibull shape must be positive");
    scale_ = mean / std::tgamma(1 + 1 / shape);
  }
}

FaultDistribution FaultDistribution::exponential(double mean) {
  return FaultDistribution(Kind::Exponential, 1, mean);
}

FaultDistribution FaultDistribution::weibull(double shape, double mean) {
  return FaultDistribution(Kind::Weibull, shape, mean);
}

FaultDistribution FaultDistribution::uniform(double mean) {
  return FaultDistribution(Kind::Uniform, 1, mean);
}

FaultDistribution FaultDistribution::with_mean(double mean) const {
  return FaultDistribution(kind_, shape_, mean);
}

double FaultDistribution::cdf(double x) const {
  if (x <= 0) return 0;
  switch (kind_) {
    case Kind::Exponential: return -std::expm1(-x / mean_);
    case Kind::Weibull: return -std::expm1(-std::pow(x / scale_, shape_));
    case Kind::Uniform: return std::min(1.0, x / (2 * mean_));
  }
  return 0;
}

double FaultDistribution::quantile(double u) const {
  switch (kind_) {
    case Kind::Exponential: return -mean_ * std::log1p(-u);
    case Kind::Weibull: return scale_ * std::pow(-std::log1p(-u), 1 / shape_);
    case Kind::Uniform: return u * 2 * mean_;
  }
  return 0;
}

std::string FaultDistribution::describe() const {
  switch (kind_) {
    case Kind::Exponential: return "exp(mean=" + fmt_double(mean_) + ")";
    case Kind::Weibull:
      return "weibull(k=" + fmt_double(shape_) + ",mean=" + fmt_double(mean_) + ")";
    case Kind::Uniform: return "uniform(mean=" + fmt_double(mean_) + ")";
  }
  return "?";
}

double sample_interarrival(const FaultDistribution& dist, CounterRng& rng) {
  double u = rng.uniform_open();
  switch (dist.kind()) {
    case FaultDistribution::Kind::Exponential: return -dist.mean() * std::log(u);
    case FaultDistribution::Kind::Weibull:
      return dist.scale() * std::pow(-std::log(u), 1 / dist.shape());
    case FaultDistribution::Kind::Uniform: return u * 2 * dist.mean();
  }
  return 0;
}

std::vector<double> gen_fault_times(const FaultDistribution& dist, double horizon,
                                    CounterRng& rng) {
  if (!(horizon > 0)) throw InvalidParameter("horizon must be positive");
  std::vector<double> times;
  double t = sample_interarrival(dist, rng);
  while (t < horizon) {
    times.push_back(t);
    t += sample_interarrival(dist, rng);
  }
  return times;
}

std::vector<double> gen_component_fault_times(const FaultDistribution& component,
                                              std::int64_t n_components, double age,
                                              double horizon, const CounterRng& rng) {
  if (!(horizon > 0)) throw InvalidParameter("horizon must be positive");
  if (n_components < 1) throw InvalidParameter("need at least one component");
  if (!(age >= 0)) throw InvalidParameter("component age must be non-negative");

  // A component contributes only if its first failure lands before age+horizon.
  const double first_cut = component.cdf(age + horizon);
  std::vector<double> times;
  for (std::int64_t c = 0; c < n_components; ++c) {
    CounterRng sub = rng.split(static_cast<std::uint64_t>(c));
    double u = sub.uniform();
    if (u >= first_cut) continue;
    double t = component.quantile(u) - age;
    while (t < horizon) {
      if (t >= 0) times.push_back(t);
      t += component.quantile(sub.uniform());
    }
  }
  std::sort(times.begin(), times.end());
  return times;
}

std::pair<std::vector<double>, std::vector<double>> label_predicted(
    const std::vector<double>& faults, double r, const CounterRng& rng) {
  if (!(r >= 0 && r <= 1)) throw InvalidParameter("recall must be in [0, 1]");
  std::pair<std::vector<double>, std::vector<double>> out;
  for (std::size_t i = 0; i < faults.size(); ++i) {
    if (rng.uniform_at(i) < r)
      out.first.push_back(faults[i]);
    else
      out.second.push_back(faults[i]);
  }
  return out;
}

std::vector<Event> attach_windows(const std::vector<double>& predicted_faults,
                                  double i_window, double c_proactive,
                                  const CounterRng& rng) {
  if (!(i_window >= 0)) throw InvalidParameter("window must be non-negative");
  std::vector<Event> events;
  events.reserve(predicted_faults.size());
  for (std::size_t i = 0; i < predicted_faults.size(); ++i) {
    const double fault = predicted_faults[i];
    Event e;
    e.kind = EventKind::TruePrediction;
    e.fault_time = fault;
    double start = fault - i_window * rng.uniform_at(i);
    e.reveal_time = start - c_proactive;
    if (e.reveal_time < 0) {
      e.reveal_time = 0;
      start = std::min(c_proactive, fault);
      e.clipped = true;
    }
    e.window_start = start;
    events.push_back(e);
  }
  return events;
}

std::vector<Event> gen_false_predictions(const FaultDistribution& family, double p,
                                         double r, double mu, double i_window,
                                         double c_proactive, double horizon,
                                         CounterRng& rng) {
  (void)i_window;  // false windows start at the event time whatever their size
  if (!(p > 0 && p <= 1)) throw InvalidParameter("precision must be in (0, 1]");
  if (!(r >= 0 && r <= 1)) throw InvalidParameter("recall must be in [0, 1]");
  if (p == 1 || r == 0) return {};
  const double mean = mu * false_prediction_scale(p, r);
  auto times = gen_fault_times(family.with_mean(mean), horizon, rng);
  return as_false_predictions(times, c_proactive);
}

Trace merge(std::vector<Event> true_events, std::vector<Event> false_events,
            std::vector<Event> unpredicted) {
  Trace trace;
  auto& ev = trace.events;
  ev.reserve(true_events.size() + false_events.size() + unpredicted.size());
  ev.insert(ev.end(), unpredicted.begin(), unpredicted.end());
  ev.insert(ev.end(), true_events.begin(), true_events.end());
  ev.insert(ev.end(), false_events.begin(), false_events.end());
  std::stable_sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) {
    if (a.reveal_time != b.reveal_time) return a.reveal_time < b.reveal_time;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });
  return trace;
}

FaultDistribution TraceConfig::platform_distribution() const {
  const double mu = platform.mtbf();
  if (kind == FaultDistribution::Kind::Weibull)
    return FaultDistribution::weibull(weibull_shape, mu);
  if (kind == FaultDistribution::Kind::Uniform) return FaultDistribution::uniform(mu);
  return FaultDistribution::exponential(mu);
}

std::string TraceConfig::describe() const {
  std::ostringstream os;
  os << "N=" << platform.n_procs << " mu_ind=" << fmt_double(platform.mu_ind)
     << " Cp=" << fmt_double(platform.c_proactive) << " p=" << fmt_double(predictor.precision)
     << " r=" << fmt_double(predictor.recall) << " I=" << fmt_double(predictor.window)
     << " law=" << platform_distribution().describe()
     << " model=" << (model == TraceModel::PerComponent ? "per-component" : "platform")
     << " age=" << fmt_double(component_age)
     << " false=" << (false_law == FalsePredictionLaw::Uniform ? "uniform" : "same");
  return os.str();
}

std::uint64_t TraceConfig::hash() const { return CounterRng::hash(describe()); }

TraceGenerator::TraceGenerator(TraceConfig config) : config_(std::move(config)) {
  config_.platform.validate();
  config_.predictor.validate();
  if (config_.kind == FaultDistribution::Kind::Uniform)
    throw InvalidParameter("uniform law is reserved for false predictions");
  (void)config_.platform_distribution();
}

std::vector<double> TraceGenerator::fault_times(std::uint64_t seed, double horizon) const {
  const CounterRng root(seed);
  if (config_.model == TraceModel::PerComponent) {
    auto component = config_.platform_distribution().with_mean(config_.platform.mu_ind);
    return gen_component_fault_times(component, config_.platform.n_procs,
                                     config_.component_age, horizon, root.split("faults"));
  }
  CounterRng faults = root.split("faults");
  return gen_fault_times(config_.platform_distribution(), horizon, faults);
}

Trace TraceGenerator::generate(std::uint64_t seed, double horizon) const {
  const CounterRng root(seed);
  const auto& pred = config_.predictor;
  const double cp = config_.platform.c_proactive;

  auto faults = fault_times(seed, horizon);
  auto [predicted, unpredicted] = label_predicted(faults, pred.recall, root.split("labels"));
  auto true_events = attach_windows(predicted, pred.window, cp, root.split("windows"));

  std::vector<Event> false_events;
  CounterRng false_rng = root.split("false");
  if (pred.precision < 1 && pred.recall > 0) {
    if (config_.false_law == FalsePredictionLaw::Uniform) {
      false_events = gen_false_predictions(
          FaultDistribution::uniform(config_.platform.mtbf()), pred.precision, pred.recall,
          config_.platform.mtbf(), pred.window, cp, horizon, false_rng);
    } else if (config_.model == TraceModel::PerComponent) {
      // Same per-component process with its time axis stretched, so the
      // platform-scale mean becomes p*mu / (r*(1-p)).
      const double s = false_prediction_scale(pred.precision, pred.recall);
      auto component = config_.platform_distribution().with_mean(config_.platform.mu_ind * s);
      auto times = gen_component_fault_times(component, config_.platform.n_procs,
                                             config_.component_age * s, horizon, false_rng);
      false_events = as_false_predictions(times, cp);
    } else {
      false_events = gen_false_predictions(config_.platform_distribution(), pred.precision,
                                           pred.recall, config_.platform.mtbf(), pred.window,
                                           cp, horizon, false_rng);
    }
  }

  std::vector<Event> unpred_events;
  unpred_events.reserve(unpredicted.size());
  for (double t : unpredicted) {
    Event e;
    e.kind = EventKind::UnpredictedFault;
    e.reveal_time = t;
    e.fault_time = t;
    unpred_events.push_back(e);
  }

  Trace trace = merge(std::move(true_events), std::move(false_events), std::move(unpred_events));
  trace.horizon = horizon;
  trace.seed = seed;
  trace.config_hash = config_.hash();
  trace.complete_until = std::max(0.0, horizon - pred.window - cp);
  return trace;
}

TraceSource::TraceSource(TraceGenerator generator, std::uint64_t seed, double initial_horizon)
    : generator_(std::move(generator)), seed_(seed),
      trace_(generator_.generate(seed, initial_horizon)) {}

void TraceSource::grow(double factor) {
  trace_ = generator_.generate(seed_, trace_.horizon * std::max(factor, 1.0));
}

namespace {

char kind_token(EventKind k) {
  switch (k) {
    case EventKind::UnpredictedFault: return 'U';
    case EventKind::TruePrediction: return 'T';
    case EventKind::FalsePrediction: return 'F';
  }
  return '?';
}

std::optional<double> parse_field(const std::string& s) {
  if (s == "-") return std::nullopt;
  return std::stod(s);
}

}  // namespace

void write_trace(std::ostream& out, const Trace& trace) {
  out << "# ckptwin-trace seed=" << trace.seed << " config=" << trace.config_hash
      << " horizon=" << fmt_double(trace.horizon)
      << " complete=" << fmt_double(trace.complete_until) << '\n';
  for (const Event& e : trace.events) {
    out << fmt_double(e.reveal_time) << ' ' << kind_token(e.kind) << ' '
        << (e.window_start ? fmt_double(*e.window_start) : "-") << ' '
        << (e.fault_time ? fmt_double(*e.fault_time) : "-");
    if (e.clipped) out << " clipped";
    out << '\n';
  }
}

Trace read_trace(std::istream& in) {
  Trace trace;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ckptwin-trace", 0) != 0)
    throw InvalidParameter("trace: missing header line");
  {
    std::istringstream hs(line.substr(15));
    std::string tok;
    while (hs >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (key == "seed") trace.seed = std::stoull(val);
      else if (key == "config") trace.config_hash = std::stoull(val);
      else if (key == "horizon") trace.horizon = std::stod(val);
      else if (key == "complete") trace.complete_until = std::stod(val);
    }
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string reveal, kind, start, fault, flag;
    if (!(ls >> reveal >> kind >> start >> fault))
      throw InvalidParameter("trace: malformed line " + std::to_string(lineno));
    Event e;
    e.reveal_time = std::stod(reveal);
    if (kind == "U") e.kind = EventKind::UnpredictedFault;
    else if (kind == "T") e.kind = EventKind::TruePrediction;
    else if (kind == "F") e.kind = EventKind::FalsePrediction;
    else throw InvalidParameter("trace: unknown kind on line " + std::to_string(lineno));
    e.window_start = parse_field(start);
    e.fault_time = parse_field(fault);
    e.clipped = (ls >> flag) && flag == "clipped";
    trace.events.push_back(e);
  }
  return trace;
}

}  // namespace ckptwin
