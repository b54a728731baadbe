#pragma once

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "ckptwin/core.hpp"
#include "ckptwin/results.hpp"
#include "ckptwin/tracegen.hpp"

namespace ckptwin {

/// Proactive checkpoint cost relative to C.
enum class CpMode { Equal, Tenth, Double };

std::string_view to_string(CpMode m);
CpMode parse_cp_mode(std::string_view s);  ///< "eq", "0.1" or "2"
double proactive_cost(CpMode m, double c_regular);

struct ExperimentConfig {
  double mu_ind = years(125);
  double c_regular = 600;
  double downtime = 60;
  double recovery = 600;
  CpMode cp_mode = CpMode::Equal;

  std::string predictor = "accurate";  ///< accurate, weak or custom
  double precision = 0.82;
  double recall = 0.85;

  FaultDistribution::Kind dist = FaultDistribution::Kind::Weibull;
  double weibull_shape = 0.7;
  bool uniform_false = false;
  /// Weibull faults are drawn per component from this age; Exponential
  /// faults use a single platform process (the two coincide in law).
  double component_age = years(1);

  std::vector<std::int64_t> n_procs = {1 << 16, 1 << 17, 1 << 18, 1 << 19};
  std::vector<double> windows = {300, 600, 900, 1200, 3000};
  std::vector<Strategy> strategies = {std::begin(kAllStrategies), std::end(kAllStrategies)};
  std::vector<double> t_regular_values;  ///< T_R axis; empty selects a default grid

  int n_reps = 100;
  std::uint64_t base_seed = 1;
  double work_years = 10000;  ///< t_base = work_years / N
  bool best_period = false;   ///< add BestPeriod columns to sweeps
  int search_traces = 20;
  std::string out;

  /// Throws InvalidParameter on empty lists or out-of-range values.
  void validate() const;

  void set_predictor_preset(const std::string& name);
  void set_distribution(const std::string& spec);  ///< exp, weibull or weibull:k
  std::string distribution_name() const;

  Platform platform(std::int64_t n) const;
  Predictor predictor_for(double window) const;
  double t_base(std::int64_t n) const;
  TraceConfig trace_config(std::int64_t n, double window) const;

  std::string to_json() const;
  std::uint64_t hash() const;
};

/// C = R = 600 s, D = 60 s, Cp = C, mu_ind = 125 years, N = 2^16 .. 2^19,
/// t_base = 10000 years / N, I in {300, 600, 900, 1200, 3000} s, 100 reps,
/// accurate predictor, Weibull k = 0.7.
ExperimentConfig preset_paper_defaults();

/// Flat JSON object with ExperimentConfig field names; absent fields keep the
/// values already in `base`. Unknown fields throw InvalidParameter.
ExperimentConfig config_from_json(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

/// Published makespan in days for a Weibull table cell, when one exists.
std::optional<double> paper_reference_days(double weibull_shape, const std::string& predictor,
                                           std::int64_t n_procs, double window,
                                           Strategy strategy);

/// Analytic periods and wastes for every (N, I, strategy).
std::vector<ResultRow> run_analytic(const ExperimentConfig& config);

/// Simulated makespans at the analytic periods with gains against Daly on
/// the same seeds, for every (N, I, strategy).
std::vector<ResultRow> run_table(const ExperimentConfig& config);

enum class SweepAxis { NProcs, TRegular, Window };
SweepAxis parse_sweep_axis(std::string_view s);  ///< n, tr or i

/// One row per (strategy, axis value). Coordinates off the axis take the
/// first entry of their list. Per-cell failures become a status.
std::vector<ResultRow> run_sweep(const ExperimentConfig& config, SweepAxis axis);

/// BestPeriod search for every strategy at the first (N, I).
std::vector<ResultRow> run_best_period(const ExperimentConfig& config);

/// Comment lines echoed at the top of every CSV.
std::vector<std::string> csv_comments(const ExperimentConfig& config);

/// Rows ordered by (kind, N, I, T_R, strategy).
void sort_rows(std::vector<ResultRow>& rows);

}  // namespace ckptwin
