#include "ckptwin/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "ckptwin/analytic.hpp"
#include "ckptwin/engine.hpp"
#include "ckptwin/parallel.hpp"

namespace ckptwin {

void SearchSpec::validate(double c) const {
  if (!(low > c)) throw InvalidParameter("search range must start above C");
  if (!(high > low)) throw InvalidParameter("search range is empty");
  if (n_grid < 3) throw InvalidParameter("n_grid must be at least 3");
  if (refinement_rounds < 0) throw InvalidParameter("refinement_rounds must be non-negative");
  if (refinement_rounds > 0 && refinement_points < 3)
    throw InvalidParameter("refinement_points must be at least 3");
  if (!(max_slowdown > 1)) throw InvalidParameter("max_slowdown must exceed 1");
}

SearchSpec default_search_spec(const TraceGenerator& generator, double t_base, int n_traces,
                               std::uint64_t base_seed) {
  if (n_traces < 1) throw InvalidParameter("n_traces must be at least 1");
  const Platform& platform = generator.config().platform;
  SearchSpec spec;
  spec.low = 1.1 * platform.c_regular;
  spec.high = std::min(20 * platform.mtbf(), t_base);
  spec.t_base = t_base;
  const double horizon = initial_horizon(t_base, platform);
  spec.traces.reserve(static_cast<std::size_t>(n_traces));
  for (int i = 0; i < n_traces; ++i)
    spec.traces.emplace_back(generator, base_seed + static_cast<std::uint64_t>(i), horizon);
  return spec;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0 && hi >= lo) || n < 2) throw InvalidParameter("bad geometric grid");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double ratio = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

PolicyConfig search_policy(Strategy strategy, double t_regular, const Platform& platform,
                           const Predictor& predictor) {
  PolicyConfig policy;
  policy.strategy = strategy;
  policy.t_regular = t_regular;
  policy.trust_prob = uses_predictions(strategy) ? 1.0 : 0.0;
  if (strategy == Strategy::WithCkptI)
    policy.t_proactive =
        tp_extr(platform, predictor, ExpectedFaultOffset::midpoint(predictor)).value;
  return policy;
}

double mean_simulated_waste(const PolicyConfig& policy, SearchSpec& spec,
                            const Platform& platform, const Predictor& predictor) {
  std::vector<double> wastes(spec.traces.size());
  parallel_for(spec.traces.size(), [&](std::size_t i) {
    TraceSource& src = spec.traces[i];
    wastes[i] = simulate(policy, src, spec.t_base, platform, predictor,
                         CounterRng(src.seed()).split("trust"))
                    .waste;
  });
  double sum = 0;
  for (double w : wastes) sum += w;
  return sum / static_cast<double>(wastes.size());
}

namespace {

constexpr double kDropped = std::numeric_limits<double>::infinity();

// Waste per candidate; nullopt marks a candidate outside the model's domain.
using Objective = std::function<std::vector<std::optional<double>>(const std::vector<double>&)>;

SearchResult grid_search(const SearchSpec& spec, const Objective& objective) {
  SearchResult result;
  std::vector<double> grid = geometric_grid(spec.low, spec.high, spec.n_grid);
  std::optional<double> best_t;
  double best_w = 0;

  for (int round = 0;; ++round) {
    const auto values = objective(grid);
    std::optional<std::size_t> arg;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!values[i]) continue;
      result.evaluated.emplace_back(grid[i], *values[i]);
      if (!arg || *values[i] <= *values[*arg]) arg = i;
    }
    if (arg && (!best_t || *values[*arg] < best_w ||
                (*values[*arg] == best_w && grid[*arg] > *best_t))) {
      best_t = grid[*arg];
      best_w = *values[*arg];
    }
    if (!best_t) throw SearchFailure("no valid period in the search range");
    if (round == spec.refinement_rounds) break;

    // Bracket the incumbent between its neighbours on the current grid.
    const auto it = std::lower_bound(grid.begin(), grid.end(), *best_t);
    const std::size_t i = static_cast<std::size_t>(it - grid.begin());
    const double lo = grid[i == 0 ? 0 : i - 1];
    const double hi = grid[std::min(i + 1, grid.size() - 1)];
    if (!(hi > lo)) break;
    grid = geometric_grid(lo, hi, spec.refinement_points);
  }
  result.t_regular = *best_t;
  result.waste = best_w;
  return result;
}

}  // namespace

SearchResult best_period(Strategy strategy, const Platform& platform, const Predictor& predictor,
                         SearchSpec& spec) {
  spec.validate(platform.c_regular);
  if (spec.traces.empty()) throw InvalidParameter("search needs at least one trace");
  if (!(spec.t_base > 0)) throw InvalidParameter("t_base must be positive");
  search_policy(strategy, spec.high, platform, predictor).validate(platform, predictor);

  SimOptions options;
  options.max_makespan = spec.max_slowdown * spec.t_base;
  auto result = grid_search(spec, [&](const std::vector<double>& periods) {
    // One task per trace so that each trace source is only regrown by one thread.
    std::vector<std::vector<double>> per_trace(spec.traces.size(),
                                               std::vector<double>(periods.size()));
    parallel_for(spec.traces.size(), [&](std::size_t k) {
      TraceSource& src = spec.traces[k];
      const CounterRng trust = CounterRng(src.seed()).split("trust");
      for (std::size_t j = 0; j < periods.size(); ++j) {
        const auto policy = search_policy(strategy, periods[j], platform, predictor);
        try {
          per_trace[k][j] =
              simulate(policy, src, spec.t_base, platform, predictor, trust, options).waste;
        } catch (const MakespanLimit&) {
          per_trace[k][j] = kDropped;
        }
      }
    });
    std::vector<std::optional<double>> out(periods.size());
    for (std::size_t j = 0; j < periods.size(); ++j) {
      double sum = 0;
      for (const auto& row : per_trace) sum += row[j];
      if (std::isfinite(sum)) out[j] = sum / static_cast<double>(per_trace.size());
    }
    return out;
  });
  result.policy = search_policy(strategy, result.t_regular, platform, predictor);
  return result;
}

SearchResult best_period_analytic(Strategy strategy, const Platform& platform,
                                  const Predictor& predictor, const SearchSpec& spec) {
  spec.validate(platform.c_regular);
  const auto e_fault = ExpectedFaultOffset::midpoint(predictor);
  search_policy(strategy, spec.high, platform, predictor).validate(platform, predictor);

  auto result = grid_search(spec, [&](const std::vector<double>& periods) {
    std::vector<std::optional<double>> out(periods.size());
    for (std::size_t j = 0; j < periods.size(); ++j) {
      try {
        const auto policy = search_policy(strategy, periods[j], platform, predictor);
        out[j] = analytic_waste(policy, platform, predictor, e_fault).waste;
      } catch (const ModelValidity&) {
      }
    }
    return out;
  });
  result.policy = search_policy(strategy, result.t_regular, platform, predictor);
  return result;
}

}  // namespace ckptwin
