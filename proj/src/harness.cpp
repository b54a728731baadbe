#include "ckptwin/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "ckptwin/analytic.hpp"
#include "ckptwin/engine.hpp"
#include "ckptwin/search.hpp"

namespace ckptwin {

using nlohmann::json;

std::string_view to_string(CpMode m) {
  switch (m) {
    case CpMode::Equal: return "eq";
    case CpMode::Tenth: return "0.1";
    case CpMode::Double: return "2";
  }
  return "?";
}

CpMode parse_cp_mode(std::string_view s) {
  if (s == "eq" || s == "1") return CpMode::Equal;
  if (s == "0.1") return CpMode::Tenth;
  if (s == "2") return CpMode::Double;
  throw InvalidParameter("unknown cp mode '" + std::string(s) + "' (expected eq, 0.1 or 2)");
}

double proactive_cost(CpMode m, double c_regular) {
  switch (m) {
    case CpMode::Equal: return c_regular;
    case CpMode::Tenth: return 0.1 * c_regular;
    case CpMode::Double: return 2 * c_regular;
  }
  return c_regular;
}

void ExperimentConfig::validate() const {
  if (n_procs.empty() || windows.empty() || strategies.empty())
    throw InvalidParameter("n_procs, windows and strategies must not be empty");
  for (auto n : n_procs)
    if (n < 1) throw InvalidParameter("n_procs entries must be positive");
  for (double w : windows)
    if (!(w > 0) || !std::isfinite(w)) throw InvalidParameter("windows must be positive");
  for (double t : t_regular_values)
    if (!(t > c_regular)) throw InvalidParameter("t_regular_values must exceed C");
  if (n_reps < 1) throw InvalidParameter("n_reps must be at least 1");
  if (search_traces < 1) throw InvalidParameter("search_traces must be at least 1");
  if (!(work_years > 0)) throw InvalidParameter("work_years must be positive");
  if (!(component_age >= 0)) throw InvalidParameter("component_age must be non-negative");
  if (dist == FaultDistribution::Kind::Weibull && !(weibull_shape > 0))
    throw InvalidParameter("Weibull shape must be positive");
  platform(n_procs.front()).validate();
  predictor_for(windows.front()).validate();
}

void ExperimentConfig::set_predictor_preset(const std::string& name) {
  if (name == "accurate") {
    precision = 0.82;
    recall = 0.85;
  } else if (name == "weak") {
    precision = 0.4;
    recall = 0.7;
  } else if (name != "custom") {
    throw InvalidParameter("unknown predictor '" + name + "' (expected accurate, weak or custom)");
  }
  predictor = name;
}

void ExperimentConfig::set_distribution(const std::string& spec) {
  if (spec == "exp" || spec == "exponential") {
    dist = FaultDistribution::Kind::Exponential;
    return;
  }
  if (spec == "weibull") {
    dist = FaultDistribution::Kind::Weibull;
    weibull_shape = 0.7;
    return;
  }
  if (spec.rfind("weibull:", 0) == 0) {
    const std::string k = spec.substr(8);
    std::size_t used = 0;
    double shape = 0;
    try {
      shape = std::stod(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != k.size() || !(shape > 0))
      throw InvalidParameter("bad Weibull shape in '" + spec + "'");
    dist = FaultDistribution::Kind::Weibull;
    weibull_shape = shape;
    return;
  }
  throw InvalidParameter("unknown distribution '" + spec + "' (expected exp or weibull:k)");
}

std::string ExperimentConfig::distribution_name() const {
  if (dist == FaultDistribution::Kind::Exponential) return "exp";
  char buf[40];
  std::snprintf(buf, sizeof buf, "weibull:%g", weibull_shape);
  return buf;
}

Platform ExperimentConfig::platform(std::int64_t n) const {
  return Platform{n, mu_ind, c_regular, proactive_cost(cp_mode, c_regular), downtime, recovery};
}

Predictor ExperimentConfig::predictor_for(double window) const {
  return Predictor{precision, recall, window};
}

double ExperimentConfig::t_base(std::int64_t n) const {
  return years(work_years) / static_cast<double>(n);
}

TraceConfig ExperimentConfig::trace_config(std::int64_t n, double window) const {
  TraceConfig tc;
  tc.platform = platform(n);
  tc.predictor = predictor_for(window);
  tc.kind = dist;
  tc.weibull_shape = weibull_shape;
  if (dist == FaultDistribution::Kind::Weibull) {
    tc.model = TraceModel::PerComponent;
    tc.component_age = component_age;
  }
  tc.false_law = uniform_false ? FalsePredictionLaw::Uniform : FalsePredictionLaw::SameAsFaults;
  return tc;
}

namespace {

json config_json(const ExperimentConfig& c, bool with_out) {
  json j;
  j["mu_ind"] = c.mu_ind;
  j["c_regular"] = c.c_regular;
  j["downtime"] = c.downtime;
  j["recovery"] = c.recovery;
  j["cp_mode"] = std::string(to_string(c.cp_mode));
  j["predictor"] = c.predictor;
  j["precision"] = c.precision;
  j["recall"] = c.recall;
  j["dist"] = c.distribution_name();
  j["uniform_false"] = c.uniform_false;
  j["component_age"] = c.component_age;
  j["n_procs"] = c.n_procs;
  j["windows"] = c.windows;
  std::vector<std::string> names;
  for (auto s : c.strategies) names.emplace_back(to_string(s));
  j["strategies"] = names;
  j["t_regular_values"] = c.t_regular_values;
  j["n_reps"] = c.n_reps;
  j["base_seed"] = c.base_seed;
  j["work_years"] = c.work_years;
  j["best_period"] = c.best_period;
  j["search_traces"] = c.search_traces;
  if (with_out) j["out"] = c.out;
  return j;
}

}  // namespace

std::string ExperimentConfig::to_json() const { return config_json(*this, true).dump(); }

std::uint64_t ExperimentConfig::hash() const {
  return CounterRng::hash(config_json(*this, false).dump());
}

ExperimentConfig preset_paper_defaults() { return ExperimentConfig{}; }

namespace {

// An explicit rate that differs from the preset turns the predictor custom.
void set_rate(ExperimentConfig& c, double& field, double value) {
  if (value != field) c.predictor = "custom";
  field = value;
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text, ExperimentConfig c) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidParameter("config must be a JSON object");
  try {
    // Presets first so that explicit fields override them.
    if (j.contains("predictor")) c.set_predictor_preset(j["predictor"].get<std::string>());
    if (j.contains("dist")) c.set_distribution(j["dist"].get<std::string>());
    for (const auto& [key, v] : j.items()) {
      if (key == "predictor" || key == "dist") continue;
      if (key == "mu_ind") c.mu_ind = v.get<double>();
      else if (key == "c_regular") c.c_regular = v.get<double>();
      else if (key == "downtime") c.downtime = v.get<double>();
      else if (key == "recovery") c.recovery = v.get<double>();
      else if (key == "cp_mode") c.cp_mode = parse_cp_mode(v.get<std::string>());
      else if (key == "precision") set_rate(c, c.precision, v.get<double>());
      else if (key == "recall") set_rate(c, c.recall, v.get<double>());
      else if (key == "weibull_shape") c.weibull_shape = v.get<double>();
      else if (key == "uniform_false") c.uniform_false = v.get<bool>();
      else if (key == "component_age") c.component_age = v.get<double>();
      else if (key == "n_procs") c.n_procs = v.get<std::vector<std::int64_t>>();
      else if (key == "windows") c.windows = v.get<std::vector<double>>();
      else if (key == "strategies") {
        c.strategies.clear();
        for (const auto& s : v.get<std::vector<std::string>>()) c.strategies.push_back(parse_strategy(s));
      }
      else if (key == "t_regular_values") c.t_regular_values = v.get<std::vector<double>>();
      else if (key == "n_reps") c.n_reps = v.get<int>();
      else if (key == "base_seed") c.base_seed = v.get<std::uint64_t>();
      else if (key == "work_years") c.work_years = v.get<double>();
      else if (key == "best_period") c.best_period = v.get<bool>();
      else if (key == "search_traces") c.search_traces = v.get<int>();
      else if (key == "out") c.out = v.get<std::string>();
      else throw InvalidParameter("unknown config field '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("bad config value: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream f(path);
  if (!f) throw InvalidParameter("cannot read config " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return config_from_json(ss.str(), std::move(base));
}

namespace {

// Published cells: makespan in days at N = 2^16 and N = 2^19.
struct PaperCell {
  double shape;
  const char* predictor;  // nullptr for the strategies that ignore predictions
  Strategy strategy;
  double window;  // 0 for the strategies that ignore predictions
  double days_16;
  double days_19;
};

const std::vector<PaperCell>& paper_cells() {
  using S = Strategy;
  static const std::vector<PaperCell> cells = {
      {0.7, nullptr, S::Daly, 0, 81.3, 31.0},
      {0.7, nullptr, S::RFO, 0, 80.2, 25.5},
      {0.7, "accurate", S::NoCkptI, 300, 66.4, 17.0},
      {0.7, "accurate", S::NoCkptI, 1200, 67.9, 20.2},
      {0.7, "accurate", S::NoCkptI, 3000, 71.0, 24.7},
      {0.7, "accurate", S::WithCkptI, 300, 66.4, 17.0},
      {0.7, "accurate", S::WithCkptI, 1200, 68.3, 20.6},
      {0.7, "accurate", S::WithCkptI, 3000, 70.6, 23.1},
      {0.7, "accurate", S::Instant, 300, 66.5, 17.0},
      {0.7, "accurate", S::Instant, 1200, 68.0, 20.3},
      {0.7, "accurate", S::Instant, 3000, 70.9, 24.1},
      {0.7, "weak", S::NoCkptI, 300, 70.2, 20.6},
      {0.7, "weak", S::NoCkptI, 1200, 71.8, 24.2},
      {0.7, "weak", S::NoCkptI, 3000, 75.0, 28.7},
      {0.7, "weak", S::WithCkptI, 300, 70.2, 20.6},
      {0.7, "weak", S::WithCkptI, 1200, 73.6, 25.5},
      {0.7, "weak", S::WithCkptI, 3000, 75.1, 26.6},
      {0.7, "weak", S::Instant, 300, 70.3, 20.9},
      {0.7, "weak", S::Instant, 1200, 72.0, 24.6},
      {0.7, "weak", S::Instant, 3000, 75.0, 27.7},
      {0.5, nullptr, S::Daly, 0, 125.7, 185.0},
      {0.5, nullptr, S::RFO, 0, 120.1, 114.8},
      {0.5, "accurate", S::NoCkptI, 300, 77.4, 44.9},
      {0.5, "accurate", S::NoCkptI, 1200, 81.8, 60.7},
      {0.5, "accurate", S::NoCkptI, 3000, 90.0, 71.5},
      {0.5, "accurate", S::WithCkptI, 300, 77.4, 44.9},
      {0.5, "accurate", S::WithCkptI, 1200, 83.6, 64.4},
      {0.5, "accurate", S::WithCkptI, 3000, 89.8, 66.2},
      {0.5, "accurate", S::Instant, 300, 77.4, 45.2},
      {0.5, "accurate", S::Instant, 1200, 82.0, 60.8},
      {0.5, "accurate", S::Instant, 3000, 89.7, 70.6},
      {0.5, "weak", S::NoCkptI, 300, 84.4, 58.3},
      {0.5, "weak", S::NoCkptI, 1200, 89.1, 76.8},
      {0.5, "weak", S::NoCkptI, 3000, 97.9, 83.7},
      {0.5, "weak", S::WithCkptI, 300, 84.4, 58.3},
      {0.5, "weak", S::WithCkptI, 1200, 93.8, 75.4},
      {0.5, "weak", S::WithCkptI, 3000, 97.8, 77.7},
      {0.5, "weak", S::Instant, 300, 84.5, 59.6},
      {0.5, "weak", S::Instant, 1200, 89.4, 76.64},
      {0.5, "weak", S::Instant, 3000, 97.7, 81.9},
  };
  return cells;
}

bool is_paper_setup(const ExperimentConfig& c) {
  const ExperimentConfig d;
  return c.dist == FaultDistribution::Kind::Weibull && c.cp_mode == CpMode::Equal &&
         !c.uniform_false && c.mu_ind == d.mu_ind && c.c_regular == d.c_regular &&
         c.downtime == d.downtime && c.recovery == d.recovery && c.work_years == d.work_years &&
         (c.predictor == "accurate" || c.predictor == "weak");
}

}  // namespace

std::optional<double> paper_reference_days(double weibull_shape, const std::string& predictor,
                                           std::int64_t n_procs, double window,
                                           Strategy strategy) {
  if (n_procs != (1 << 16) && n_procs != (1 << 19)) return std::nullopt;
  if (predictor != "accurate" && predictor != "weak") return std::nullopt;
  const bool ignores = !uses_predictions(strategy);
  if (!ignores && window != 300 && window != 1200 && window != 3000) return std::nullopt;
  for (const auto& c : paper_cells()) {
    if (c.shape != weibull_shape || c.strategy != strategy) continue;
    if (!ignores && (c.window != window || predictor != c.predictor)) continue;
    return n_procs == (1 << 16) ? c.days_16 : c.days_19;
  }
  return std::nullopt;
}

namespace {

ResultRow base_row(const ExperimentConfig& c, const std::string& kind, Strategy s,
                   std::int64_t n, double window) {
  ResultRow r;
  r.kind = kind;
  r.strategy = s;
  const Platform pl = c.platform(n);
  r.n_procs = n;
  r.window = window;
  r.precision = c.precision;
  r.recall = c.recall;
  r.c_regular = pl.c_regular;
  r.c_proactive = pl.c_proactive;
  r.downtime = pl.downtime;
  r.recovery = pl.recovery;
  r.mu_ind = pl.mu_ind;
  r.distribution = c.distribution_name();
  r.false_law = c.uniform_false ? "uniform" : "same";
  r.t_base = c.t_base(n);
  r.base_seed = c.base_seed;
  r.n_reps = c.n_reps;
  r.config_hash = c.hash();
  return r;
}

// T_R sweeps reach periods far above the MTBF, where a job practically never
// finishes; such cells stop at this slowdown.
constexpr double kSweepMaxSlowdown = 20;

std::string failure_status(const Error& e) {
  if (dynamic_cast<const StrategyInapplicable*>(&e)) return std::string("inapplicable: ") + e.what();
  if (dynamic_cast<const ModelValidity*>(&e)) return std::string("model-validity: ") + e.what();
  if (dynamic_cast<const MakespanLimit*>(&e)) return std::string("makespan-limit: ") + e.what();
  return std::string("error: ") + e.what();
}

void set_policy(ResultRow& r, const PolicyConfig& p) {
  r.t_regular = p.t_regular;
  r.trust_prob = p.trust_prob;
  if (p.strategy == Strategy::WithCkptI) r.t_proactive = p.t_proactive;
}

void set_optimum(ResultRow& r, const StrategyOptimum& opt) {
  set_policy(r, opt.policy);
  r.t_regular_clamped = opt.t_regular_clamped;
  r.t_proactive_clamped = opt.t_proactive_clamped;
  r.analytic_waste = opt.waste.waste;
}

void set_stats(ResultRow& r, const ReplicationStats& st, int n_reps) {
  r.n_reps = n_reps;
  r.makespan = st.mean_makespan;
  r.stderr_makespan = st.stderr_makespan;
  r.waste = st.mean_waste;
  r.stderr_waste = st.stderr_waste;
}

std::string search_label(const SearchSpec& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "grid=%d rounds=%dx%d traces=%zu range=[%.17g;%.17g] max_slowdown=%g",
                s.n_grid, s.refinement_rounds, s.refinement_points, s.traces.size(), s.low,
                s.high, s.max_slowdown);
  return buf;
}

// Daly makespan per N. Fault times do not depend on the predictor or the
// window, and Daly ignores predictions, so one run per N serves every cell.
class DalyCache {
 public:
  explicit DalyCache(const ExperimentConfig& c) : c_(c) {}

  std::optional<double> makespan(std::int64_t n, double window) {
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    std::optional<double> value;
    try {
      const Platform pl = c_.platform(n);
      const Predictor pr = c_.predictor_for(window);
      const auto opt = analytic_optimum(Strategy::Daly, pl, pr, ExpectedFaultOffset::midpoint(pr));
      value = replicate(opt.policy, TraceGenerator(c_.trace_config(n, window)), c_.t_base(n),
                        c_.n_reps, c_.base_seed)
                  .mean_makespan;
    } catch (const Error&) {
    }
    cache_[n] = value;
    return value;
  }

 private:
  const ExperimentConfig& c_;
  std::map<std::int64_t, std::optional<double>> cache_;
};

void set_gain(ResultRow& r, DalyCache& daly) {
  if (!r.makespan) return;
  if (const auto d = daly.makespan(r.n_procs, r.window))
    r.gain_vs_daly = (*d - *r.makespan) / *d * 100.0;
}

// Analytic optimum, simulation, gain and optional search for one cell.
ResultRow simulate_cell(const ExperimentConfig& c, const std::string& kind, Strategy s,
                        std::int64_t n, double window, DalyCache& daly, bool search) {
  ResultRow r = base_row(c, kind, s, n, window);
  const Platform pl = c.platform(n);
  const Predictor pr = c.predictor_for(window);
  try {
    const auto opt = analytic_optimum(s, pl, pr, ExpectedFaultOffset::midpoint(pr));
    set_optimum(r, opt);
    const TraceGenerator gen(c.trace_config(n, window));
    set_stats(r, replicate(opt.policy, gen, c.t_base(n), c.n_reps, c.base_seed), c.n_reps);
    set_gain(r, daly);
    if (search) {
      auto spec = default_search_spec(gen, c.t_base(n), c.search_traces, c.base_seed);
      const auto best = best_period(s, pl, pr, spec);
      r.best_t_regular = best.t_regular;
      r.best_waste = best.waste;
      r.search = search_label(spec);
    }
  } catch (const Error& e) {
    r.status = failure_status(e);
  }
  return r;
}

}  // namespace

std::vector<ResultRow> run_analytic(const ExperimentConfig& c) {
  c.validate();
  std::vector<ResultRow> rows;
  for (auto n : c.n_procs)
    for (double w : c.windows)
      for (Strategy s : c.strategies) {
        ResultRow r = base_row(c, "analytic", s, n, w);
        const Predictor pr = c.predictor_for(w);
        try {
          set_optimum(r, analytic_optimum(s, c.platform(n), pr, ExpectedFaultOffset::midpoint(pr)));
        } catch (const Error& e) {
          r.status = failure_status(e);
        }
        rows.push_back(std::move(r));
      }
  sort_rows(rows);
  return rows;
}

std::vector<ResultRow> run_table(const ExperimentConfig& c) {
  c.validate();
  DalyCache daly(c);
  const bool paper = is_paper_setup(c);
  std::vector<ResultRow> rows;
  for (auto n : c.n_procs)
    for (double w : c.windows)
      for (Strategy s : c.strategies) {
        ResultRow r = simulate_cell(c, "table", s, n, w, daly, false);
        if (paper) {
          r.paper_days = paper_reference_days(c.weibull_shape, c.predictor, n, w, s);
          if (r.paper_days && r.makespan)
            r.paper_abs_diff_days = std::abs(to_days(*r.makespan) - *r.paper_days);
        }
        rows.push_back(std::move(r));
      }
  sort_rows(rows);
  return rows;
}

SweepAxis parse_sweep_axis(std::string_view s) {
  if (s == "n") return SweepAxis::NProcs;
  if (s == "tr") return SweepAxis::TRegular;
  if (s == "i") return SweepAxis::Window;
  throw InvalidParameter("unknown sweep axis '" + std::string(s) + "' (expected n, tr or i)");
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& c, SweepAxis axis) {
  c.validate();
  DalyCache daly(c);
  std::vector<ResultRow> rows;
  const std::int64_t n0 = c.n_procs.front();
  const double w0 = c.windows.front();

  if (axis == SweepAxis::NProcs || axis == SweepAxis::Window) {
    const std::string kind = axis == SweepAxis::NProcs ? "sweep-n" : "sweep-i";
    std::vector<std::pair<std::int64_t, double>> cells;
    if (axis == SweepAxis::NProcs)
      for (auto n : c.n_procs) cells.emplace_back(n, w0);
    else
      for (double w : c.windows) cells.emplace_back(n0, w);
    for (const auto& [n, w] : cells)
      for (Strategy s : c.strategies)
        rows.push_back(simulate_cell(c, kind, s, n, w, daly, c.best_period));
    sort_rows(rows);
    return rows;
  }

  const Platform pl = c.platform(n0);
  const Predictor pr = c.predictor_for(w0);
  const double t_base = c.t_base(n0);
  std::vector<double> values = c.t_regular_values;
  if (values.empty())
    values = geometric_grid(1.1 * pl.c_regular, std::max(1.2 * pl.c_regular,
                                                          std::min(20 * pl.mtbf(), t_base)),
                            24);
  const TraceGenerator gen(c.trace_config(n0, w0));
  const auto e_fault = ExpectedFaultOffset::midpoint(pr);
  for (Strategy s : c.strategies)
    for (double t : values) {
      ResultRow r = base_row(c, "sweep-tr", s, n0, w0);
      std::vector<std::string> notes;
      try {
        const auto policy = search_policy(s, t, pl, pr);
        set_policy(r, policy);
        try {
          r.analytic_waste = analytic_waste(policy, pl, pr, e_fault).waste;
        } catch (const ModelValidity& e) {
          notes.push_back(std::string("analytic model-validity: ") + e.what());
        }
        set_stats(r, replicate(policy, gen, t_base, c.n_reps, c.base_seed, kSweepMaxSlowdown),
                  c.n_reps);
      } catch (const Error& e) {
        notes.push_back(failure_status(e));
      }
      if (!notes.empty()) {
        r.status.clear();
        for (const auto& note : notes) r.status += (r.status.empty() ? "" : "; ") + note;
      }
      rows.push_back(std::move(r));
    }
  sort_rows(rows);
  return rows;
}

std::vector<ResultRow> run_best_period(const ExperimentConfig& c) {
  c.validate();
  DalyCache daly(c);
  const std::int64_t n = c.n_procs.front();
  const double w = c.windows.front();
  const Platform pl = c.platform(n);
  const Predictor pr = c.predictor_for(w);
  const TraceGenerator gen(c.trace_config(n, w));
  std::vector<ResultRow> rows;
  for (Strategy s : c.strategies) {
    ResultRow r = base_row(c, "best-period", s, n, w);
    try {
      try {
        const auto opt = analytic_optimum(s, pl, pr, ExpectedFaultOffset::midpoint(pr));
        r.analytic_waste = opt.waste.waste;
      } catch (const ModelValidity&) {
      }
      auto spec = default_search_spec(gen, c.t_base(n), c.search_traces, c.base_seed);
      const auto best = best_period(s, pl, pr, spec);
      r.best_t_regular = best.t_regular;
      r.best_waste = best.waste;
      r.search = search_label(spec);
      set_policy(r, best.policy);
      set_stats(r, replicate(best.policy, gen, c.t_base(n), c.n_reps, c.base_seed), c.n_reps);
      set_gain(r, daly);
    } catch (const Error& e) {
      r.status = failure_status(e);
    }
    rows.push_back(std::move(r));
  }
  sort_rows(rows);
  return rows;
}

std::vector<std::string> csv_comments(const ExperimentConfig& c) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%llu", static_cast<unsigned long long>(c.hash()));
  return {
      "ckptwin results",
      "config " + config_json(c, false).dump(),
      std::string("config_hash ") + hash,
      "units: times in seconds; days = 86400 s; years = 365.25 days",
      "t_base = work_years * 365.25 * 86400 / n_procs",
      "replication i uses trace seed base_seed + i",
  };
}

void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    const double ta = a.kind == "sweep-tr" && a.t_regular ? *a.t_regular : 0;
    const double tb = b.kind == "sweep-tr" && b.t_regular ? *b.t_regular : 0;
    return std::make_tuple(a.kind, a.n_procs, a.window, static_cast<int>(a.strategy), ta) <
           std::make_tuple(b.kind, b.n_procs, b.window, static_cast<int>(b.strategy), tb);
  });
}

}  // namespace ckptwin
