#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ckptwin/core.hpp"
#include "ckptwin/tracegen.hpp"

namespace ckptwin {

/// Brute-force search settings. Every candidate period is evaluated on the
/// same traces, so comparisons between candidates carry no sampling noise.
struct SearchSpec {
  double low = 0;   ///< smallest T_R tried
  double high = 0;  ///< largest T_R tried
  int n_grid = 64;
  int refinement_rounds = 3;
  int refinement_points = 16;

  double t_base = 0;
  std::vector<TraceSource> traces;
  /// A candidate is dropped once one of its runs exceeds this many times
  /// t_base (waste above 1 - 1/max_slowdown).
  double max_slowdown = 20;

  /// Throws InvalidParameter unless c < low < high and n_grid >= 3.
  void validate(double c) const;
};

/// Grid of 64 points over [1.1 C, min(20 mu, t_base)], 3 refinement rounds
/// of 16 points, and `n_traces` traces with seeds base_seed, base_seed + 1, ...
SearchSpec default_search_spec(const TraceGenerator& generator, double t_base,
                               int n_traces = 20, std::uint64_t base_seed = 1);

struct SearchResult {
  PolicyConfig policy;  ///< policy at the best period
  double t_regular = 0;
  double waste = 0;
  /// Every (T_R, waste) evaluated, in evaluation order.
  std::vector<std::pair<double, double>> evaluated;
};

/// Policy the search runs: q = 1 for prediction-aware strategies, and T_P
/// fixed to its analytic optimum for WithCkptI.
PolicyConfig search_policy(Strategy strategy, double t_regular, const Platform& platform,
                           const Predictor& predictor);

/// Mean simulated waste of `policy` over the spec's traces. Traces are
/// regrown in place when a run outlives them.
double mean_simulated_waste(const PolicyConfig& policy, SearchSpec& spec,
                            const Platform& platform, const Predictor& predictor);

/// Best T_R by mean simulated waste. Ties go to the larger period. Throws
/// SearchFailure if every candidate hits the slowdown cap.
SearchResult best_period(Strategy strategy, const Platform& platform, const Predictor& predictor,
                         SearchSpec& spec);

/// Same grid and refinement applied to the analytic waste (q = 1 closed forms,
/// or the no-prediction waste for Daly and RFO). Traces are not used.
SearchResult best_period_analytic(Strategy strategy, const Platform& platform,
                                  const Predictor& predictor, const SearchSpec& spec);

/// `n` points spaced geometrically from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int n);

}  // namespace ckptwin
