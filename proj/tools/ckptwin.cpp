// Command-line front end: analytic periods, single simulations, table
// reproduction, sweeps and BestPeriod searches.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "ckptwin/analytic.hpp"
#include "ckptwin/engine.hpp"
#include "ckptwin/harness.hpp"

using namespace ckptwin;

namespace {

struct GlobalFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string dist;
  std::string predictor;
  std::string cp_mode;
  std::optional<int> reps;
  std::vector<std::int64_t> n_procs;
  std::vector<double> windows;
  std::vector<std::string> strategies;
  std::vector<double> tr_values;
  bool best_period = false;
  std::optional<int> search_traces;
  bool uniform_false = false;
};

ExperimentConfig build_config(const GlobalFlags& f) {
  ExperimentConfig c = preset_paper_defaults();
  if (!f.config_path.empty()) c = load_config(f.config_path, c);
  if (!f.predictor.empty()) c.set_predictor_preset(f.predictor);
  if (!f.dist.empty()) c.set_distribution(f.dist);
  if (!f.cp_mode.empty()) c.cp_mode = parse_cp_mode(f.cp_mode);
  if (f.seed) c.base_seed = *f.seed;
  if (f.reps) c.n_reps = *f.reps;
  if (!f.out.empty()) c.out = f.out;
  if (!f.n_procs.empty()) c.n_procs = f.n_procs;
  if (!f.windows.empty()) c.windows = f.windows;
  if (!f.strategies.empty()) {
    c.strategies.clear();
    for (const auto& s : f.strategies) c.strategies.push_back(parse_strategy(s));
  }
  if (!f.tr_values.empty()) c.t_regular_values = f.tr_values;
  if (f.best_period) c.best_period = true;
  if (f.search_traces) c.search_traces = *f.search_traces;
  if (f.uniform_false) c.uniform_false = true;
  c.validate();
  return c;
}

void write_rows(const ExperimentConfig& c, const std::vector<ResultRow>& rows) {
  if (c.out.empty())
    write_csv(std::cout, rows, csv_comments(c));
  else
    emit_csv(rows, c.out, csv_comments(c));
}

bool any_model_validity(const std::vector<ResultRow>& rows) {
  for (const auto& r : rows)
    if (r.status.rfind("model-validity", 0) == 0) return true;
  return false;
}

void report_paper_diffs(const std::vector<ResultRow>& rows) {
  for (const auto& r : rows) {
    if (!r.paper_days) continue;
    if (r.makespan)
      std::fprintf(stderr, "%-9s N=%-7lld I=%-5g sim=%7.2f d  paper=%7.2f d  |diff|=%6.2f d\n",
                   std::string(to_string(r.strategy)).c_str(), static_cast<long long>(r.n_procs),
                   r.window, to_days(*r.makespan), *r.paper_days, *r.paper_abs_diff_days);
    else
      std::fprintf(stderr, "%-9s N=%-7lld I=%-5g %s  paper=%7.2f d\n",
                   std::string(to_string(r.strategy)).c_str(), static_cast<long long>(r.n_procs),
                   r.window, r.status.c_str(), *r.paper_days);
  }
}

struct SimFlags {
  std::optional<double> t_regular;
  std::optional<double> t_proactive;
  std::optional<double> trust;
  bool log = false;
  std::string trace_out;
};

int run_simulate(const ExperimentConfig& c, const SimFlags& f) {
  const auto n = c.n_procs.front();
  const double w = c.windows.front();
  const Strategy s = c.strategies.front();
  const Platform pl = c.platform(n);
  const Predictor pr = c.predictor_for(w);
  PolicyConfig policy;
  if (f.t_regular) {
    policy.strategy = s;
    policy.t_regular = *f.t_regular;
    policy.trust_prob = uses_predictions(s) ? 1.0 : 0.0;
    if (s == Strategy::WithCkptI)
      policy.t_proactive = tp_extr(pl, pr, ExpectedFaultOffset::midpoint(pr)).value;
  } else {
    policy = analytic_optimum(s, pl, pr, ExpectedFaultOffset::midpoint(pr)).policy;
  }
  if (f.t_proactive) policy.t_proactive = *f.t_proactive;
  if (f.trust) policy.trust_prob = *f.trust;

  const double t_base = c.t_base(n);
  TraceSource source(TraceGenerator(c.trace_config(n, w)), c.base_seed, initial_horizon(t_base, pl));
  SimOptions options;
  if (f.log) options.log = &std::cerr;
  const SimResult r =
      simulate(policy, source, t_base, pl, pr, CounterRng(c.base_seed).split("trust"), options);
  if (!f.trace_out.empty()) {
    std::ofstream t(f.trace_out);
    if (!t) throw Error("cannot open " + f.trace_out + " for writing");
    write_trace(t, source.trace());
  }

  std::printf("strategy=%s n_procs=%lld window=%g seed=%llu\n", std::string(to_string(s)).c_str(),
              static_cast<long long>(n), w, static_cast<unsigned long long>(c.base_seed));
  std::printf("t_regular=%.17g t_proactive=%.17g trust_prob=%g\n", policy.t_regular,
              policy.t_proactive, policy.trust_prob);
  std::printf("t_base=%.17g makespan=%.17g makespan_days=%.6f waste=%.9f\n", t_base, r.makespan,
              to_days(r.makespan), r.waste);
  std::printf("unpredicted_faults=%lld predicted_faults=%lld true_predictions=%lld "
              "false_predictions=%lld trusted=%lld overlapping=%lld no_time_branch=%lld\n",
              static_cast<long long>(r.n_unpredicted_faults),
              static_cast<long long>(r.n_predicted_faults),
              static_cast<long long>(r.n_true_predictions),
              static_cast<long long>(r.n_false_predictions),
              static_cast<long long>(r.n_predictions_trusted),
              static_cast<long long>(r.n_predictions_overlapping),
              static_cast<long long>(r.n_no_time_branch));
  std::printf("regular_ckpts=%lld proactive_ckpts=%lld lost_work=%.6f ckpt_time=%.6f "
              "downtime=%.6f recovery=%.6f\n",
              static_cast<long long>(r.n_regular_ckpts),
              static_cast<long long>(r.n_proactive_ckpts), r.lost_work, r.ckpt_time,
              r.downtime_time, r.recovery_time);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checkpointing with fault prediction windows: analysis and simulation"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--config", g.config_path, "JSON config file (flags override it)");
  app.add_option("--seed", g.seed, "Base seed; replication i uses seed + i");
  app.add_option("--out", g.out, "Output CSV path (stdout when absent)");
  app.add_option("--dist", g.dist, "Fault law: exp, weibull or weibull:k");
  app.add_option("--predictor", g.predictor, "accurate, weak or custom");
  app.add_option("--cp-mode", g.cp_mode, "Proactive checkpoint cost: eq, 0.1 or 2 (times C)");
  app.add_option("--reps", g.reps, "Replications per cell");
  app.add_option("--n", g.n_procs, "Processor counts")->delimiter(',');
  app.add_option("--window", g.windows, "Prediction window sizes in seconds")->delimiter(',');
  app.add_option("--strategy", g.strategies, "Daly, RFO, Instant, NoCkptI, WithCkptI")
      ->delimiter(',');
  app.add_flag("--uniform-false", g.uniform_false, "Uniform law for false predictions");

  auto* analytic = app.add_subcommand("analytic", "Analytic periods and wastes");
  auto* simulate_cmd = app.add_subcommand("simulate", "Single simulation run");
  SimFlags sim;
  simulate_cmd->add_option("--tr", sim.t_regular, "Regular period (default: analytic optimum)");
  simulate_cmd->add_option("--tp", sim.t_proactive, "Proactive period (WithCkptI)");
  simulate_cmd->add_option("--q", sim.trust, "Trust probability");
  simulate_cmd->add_flag("--log", sim.log, "Event log on stderr");
  simulate_cmd->add_option("--trace-out", sim.trace_out, "Write the trace used");

  auto* table = app.add_subcommand("table", "Makespan table with gains against Daly");
  auto* sweep = app.add_subcommand("sweep", "Sweep one axis");
  std::string axis;
  sweep->add_option("--axis", axis, "n, tr or i")->required();
  sweep->add_option("--tr-values", g.tr_values, "Regular periods for --axis tr")->delimiter(',');
  sweep->add_flag("--best-period", g.best_period, "Add BestPeriod columns");
  sweep->add_option("--search-traces", g.search_traces, "Traces per BestPeriod search");
  auto* best = app.add_subcommand("best-period", "Brute-force search for the regular period");
  best->add_option("--search-traces", g.search_traces, "Traces per search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const ExperimentConfig c = build_config(g);
    if (*simulate_cmd) return run_simulate(c, sim);
    if (*analytic) {
      const auto rows = run_analytic(c);
      write_rows(c, rows);
      return any_model_validity(rows) ? 2 : 0;
    }
    if (*table) {
      const auto rows = run_table(c);
      write_rows(c, rows);
      report_paper_diffs(rows);
      return any_model_validity(rows) ? 2 : 0;
    }
    if (*sweep) {
      write_rows(c, run_sweep(c, parse_sweep_axis(axis)));
      return 0;
    }
    if (*best) {
      const auto rows = run_best_period(c);
      write_rows(c, rows);
      return any_model_validity(rows) ? 2 : 0;
    }
  } catch (const ModelValidity& e) {
    std::fprintf(stderr, "model validity: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
