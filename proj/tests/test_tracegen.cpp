#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "ckptwin/tracegen.hpp"

using namespace ckptwin;

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<double> draws(const FaultDistribution& d, int n, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = sample_interarrival(d, rng);
  return v;
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i; else ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

TraceConfig base_config() {
  TraceConfig c;
  c.platform = Platform{1, 7500, 600, 600, 60, 600};
  c.predictor = Predictor{0.82, 0.85, 3000};
  return c;
}

}  // namespace

TEST_CASE("distribution parameters") {
  CHECK(FaultDistribution::weibull(1, 100).scale() == doctest::Approx(100).epsilon(1e-14));
  CHECK(FaultDistribution::weibull(0.5, 100).scale() == doctest::Approx(50).epsilon(1e-14));
  CHECK(FaultDistribution::weibull(0.7, 100).scale() ==
        doctest::Approx(100 / std::tgamma(1 + 1 / 0.7)).epsilon(1e-14));
  CHECK(FaultDistribution::exponential(5).scale() == 5);
  CHECK_THROWS_AS(FaultDistribution::exponential(0), InvalidParameter);
  CHECK_THROWS_AS(FaultDistribution::weibull(0, 10), InvalidParameter);
  CHECK_THROWS_AS(FaultDistribution::uniform(-1), InvalidParameter);

  const auto w = FaultDistribution::weibull(0.7, 100);
  for (double u : {0.01, 0.3, 0.5, 0.9, 0.999})
    CHECK(w.cdf(w.quantile(u)) == doctest::Approx(u).epsilon(1e-12));
  const auto m = w.with_mean(500);
  CHECK(m.kind() == FaultDistribution::Kind::Weibull);
  CHECK(m.shape() == 0.7);
  CHECK(m.mean() == 500);
}

TEST_CASE("sample means") {
  CHECK(mean_of(draws(FaultDistribution::exponential(240600), 1000000, 1)) ==
        doctest::Approx(240600).epsilon(0.01));
  CHECK(mean_of(draws(FaultDistribution::weibull(0.7, 1000), 1000000, 2)) ==
        doctest::Approx(1000).epsilon(0.01));
  CHECK(mean_of(draws(FaultDistribution::weibull(0.5, 1000), 1000000, 3)) ==
        doctest::Approx(1000).epsilon(0.02));
  const auto u = draws(FaultDistribution::uniform(50), 100000, 4);
  CHECK(mean_of(u) == doctest::Approx(50).epsilon(0.01));
  CHECK(*std::max_element(u.begin(), u.end()) <= 100);
}

TEST_CASE("Weibull with shape 1 is exponential") {
  const auto a = draws(FaultDistribution::weibull(1, 300), 20000, 5);
  const auto b = draws(FaultDistribution::exponential(300), 20000, 6);
  // Critical value at alpha = 0.001 for n = m = 20000.
  CHECK(ks_statistic(a, b) < 1.95 * std::sqrt(2.0 / 20000));
  // Same uniforms give the same values.
  CHECK(draws(FaultDistribution::weibull(1, 300), 100, 7) ==
        draws(FaultDistribution::exponential(300), 100, 7));
}

TEST_CASE("renewal fault times") {
  CounterRng rng(8);
  CHECK(gen_fault_times(FaultDistribution::exponential(1e12), 1, rng).empty());
  CHECK_THROWS_AS(gen_fault_times(FaultDistribution::exponential(1), 0, rng), InvalidParameter);

  const double mean = 100, horizon = 1e6;
  CounterRng a(9), b(9);
  const auto t = gen_fault_times(FaultDistribution::exponential(mean), horizon, a);
  CHECK(t == gen_fault_times(FaultDistribution::exponential(mean), horizon, b));
  CHECK(std::is_sorted(t.begin(), t.end()));
  CHECK(t.back() < horizon);
  const double expected = horizon / mean;
  CHECK(std::abs(double(t.size()) - expected) <= 3 * std::sqrt(expected));
}

TEST_CASE("per-component superposition") {
  const auto comp = FaultDistribution::weibull(0.7, 1e6);
  const CounterRng rng(10);
  const auto t = gen_component_fault_times(comp, 1000, 0, 1e6, rng);
  CHECK(std::is_sorted(t.begin(), t.end()));
  // Prefix consistency in the horizon.
  const auto shorter = gen_component_fault_times(comp, 1000, 0, 3e5, rng);
  const auto cut = std::lower_bound(t.begin(), t.end(), 3e5);
  CHECK(std::vector<double>(t.begin(), cut) == shorter);

  // Exponential components: the superposition is Poisson of rate N/mean.
  const auto e = gen_component_fault_times(FaultDistribution::exponential(1e6), 1000, 5e5,
                                           1e6, CounterRng(11));
  CHECK(std::abs(double(e.size()) - 1000.0) <= 3 * std::sqrt(1000.0));

  CHECK_THROWS_AS(gen_component_fault_times(comp, 0, 0, 1, rng), InvalidParameter);
  CHECK_THROWS_AS(gen_component_fault_times(comp, 1, -1, 1, rng), InvalidParameter);
}

TEST_CASE("labeling") {
  std::vector<double> faults(100000);
  std::iota(faults.begin(), faults.end(), 0.0);
  const CounterRng rng(12);
  CHECK(label_predicted(faults, 0, rng).first.empty());
  CHECK(label_predicted(faults, 1, rng).second.empty());
  const auto [pred, unpred] = label_predicted(faults, 0.85, rng);
  CHECK(pred.size() + unpred.size() == faults.size());
  const double frac = double(pred.size()) / faults.size();
  CHECK(frac >= 0.84);
  CHECK(frac <= 0.86);
  CHECK_THROWS_AS(label_predicted(faults, 1.1, rng), InvalidParameter);
}

TEST_CASE("window placement") {
  std::vector<double> faults(100000);
  for (std::size_t i = 0; i < faults.size(); ++i) faults[i] = 1e4 + 10.0 * i;
  const double i_window = 3000, cp = 600;
  const auto ev = attach_windows(faults, i_window, cp, CounterRng(13));
  REQUIRE(ev.size() == faults.size());
  double offset = 0;
  for (const auto& e : ev) {
    REQUIRE(e.window_start);
    REQUIRE(e.fault_time);
    CHECK(e.kind == EventKind::TruePrediction);
    CHECK(*e.window_start <= *e.fault_time);
    CHECK(*e.fault_time <= *e.window_start + i_window);
    CHECK(e.reveal_time == doctest::Approx(*e.window_start - cp).epsilon(1e-15));
    CHECK_FALSE(e.clipped);
    offset += *e.fault_time - *e.window_start;
  }
  CHECK(offset / ev.size() == doctest::Approx(i_window / 2).epsilon(0.01));
  CHECK(ev == attach_windows(faults, i_window, cp, CounterRng(13)));

  const auto exact = attach_windows(faults, 0, cp, CounterRng(13));
  for (const auto& e : exact) CHECK(*e.window_start == *e.fault_time);

  const auto early = attach_windows({100.0}, i_window, cp, CounterRng(14));
  CHECK(early[0].clipped);
  CHECK(early[0].reveal_time == 0);
  CHECK(*early[0].window_start <= *early[0].fault_time);
}

TEST_CASE("false predictions") {
  const auto fam = FaultDistribution::exponential(1);
  CounterRng rng(15);
  CHECK(gen_false_predictions(fam, 1, 0.85, 240600, 3000, 600, 1e9, rng).empty());
  CHECK(gen_false_predictions(fam, 0.82, 0, 240600, 3000, 600, 1e9, rng).empty());

  const double expected = 0.82 * 240600 / (0.85 * 0.18);
  CHECK(expected == doctest::Approx(1289490.196078431).epsilon(1e-12));
  const auto ev = gen_false_predictions(fam, 0.82, 0.85, 240600, 3000, 600, 1e11, rng);
  CHECK((ev.back().window_start.value() - ev.front().window_start.value()) / (ev.size() - 1) ==
        doctest::Approx(expected).epsilon(0.02));
  for (const auto& e : ev) {
    CHECK(e.kind == EventKind::FalsePrediction);
    CHECK_FALSE(e.fault_time);
    CHECK(e.reveal_time == doctest::Approx(*e.window_start - 600).epsilon(1e-15));
  }
  CHECK(0.4 * 7500 / (0.7 * 0.6) == doctest::Approx(7142.857142857143).epsilon(1e-14));
  const auto weak = gen_false_predictions(FaultDistribution::weibull(0.7, 1), 0.4, 0.7, 7500,
                                          300, 60, 1e9, rng);
  CHECK(1e9 / weak.size() == doctest::Approx(7142.857142857143).epsilon(0.02));
}

TEST_CASE("merge") {
  std::mt19937_64 gen(16);
  std::uniform_real_distribution<double> u(0, 100);
  auto make = [&](EventKind k, int n) {
    std::vector<Event> v(n);
    for (auto& e : v) {
      e.kind = k;
      e.reveal_time = std::floor(u(gen));  // force ties
    }
    std::sort(v.begin(), v.end(),
              [](const Event& a, const Event& b) { return a.reveal_time < b.reveal_time; });
    return v;
  };
  for (int rep = 0; rep < 50; ++rep) {
    auto a = make(EventKind::TruePrediction, 40);
    auto b = make(EventKind::FalsePrediction, 30);
    auto c = make(EventKind::UnpredictedFault, 50);
    const Trace t = merge(a, b, c);
    CHECK(t.events.size() == 120);
    CHECK(std::is_sorted(t.events.begin(), t.events.end(), [](const Event& x, const Event& y) {
      if (x.reveal_time != y.reveal_time) return x.reveal_time < y.reveal_time;
      return static_cast<int>(x.kind) < static_cast<int>(y.kind);
    }));
  }
  const auto a = make(EventKind::TruePrediction, 10);
  CHECK(merge(a, {}, {}).events == a);
}

TEST_CASE("trace generation: recall, precision and event rate") {
  TraceConfig c = base_config();
  const TraceGenerator gen(c);
  const Trace t = gen.generate(17, 2e9);
  std::size_t tp = 0, fp = 0, un = 0;
  for (const auto& e : t.events) {
    if (e.kind == EventKind::TruePrediction) ++tp;
    if (e.kind == EventKind::FalsePrediction) ++fp;
    if (e.kind == EventKind::UnpredictedFault) ++un;
  }
  CHECK(double(tp) / (tp + un) == doctest::Approx(0.85).epsilon(0.02));
  CHECK(double(tp) / (tp + fp) == doctest::Approx(0.82).epsilon(0.02));
  const auto rates = derived_rates(7500, c.predictor);
  CHECK(t.events.size() / t.horizon == doctest::Approx(rates.rate_events).epsilon(0.02));
  CHECK(std::is_sorted(t.events.begin(), t.events.end(), [](const Event& x, const Event& y) {
    return x.reveal_time < y.reveal_time;
  }));
}

TEST_CASE("per-component traces keep precision") {
  TraceConfig c = base_config();
  c.platform = Platform{1 << 16, years(125), 600, 600, 60, 600};
  c.kind = FaultDistribution::Kind::Weibull;
  c.weibull_shape = 0.7;
  c.model = TraceModel::PerComponent;
  c.component_age = years(1);
  const Trace t = TraceGenerator(c).generate(18, 3e8);
  std::size_t tp = 0, fp = 0;
  for (const auto& e : t.events) {
    if (e.kind == EventKind::TruePrediction) ++tp;
    if (e.kind == EventKind::FalsePrediction) ++fp;
  }
  CHECK(double(tp) / (tp + fp) == doctest::Approx(0.82).epsilon(0.03));
}

TEST_CASE("reproducibility and prefix consistency") {
  TraceConfig c = base_config();
  c.kind = FaultDistribution::Kind::Weibull;
  c.weibull_shape = 0.7;
  const TraceGenerator gen(c);
  const Trace a = gen.generate(19, 1e7);
  CHECK(a == gen.generate(19, 1e7));
  CHECK_FALSE(a == gen.generate(20, 1e7));
  CHECK(a.seed == 19);
  CHECK(a.config_hash == c.hash());

  std::ostringstream sa, sb;
  write_trace(sa, a);
  write_trace(sb, gen.generate(19, 1e7));
  CHECK(sa.str() == sb.str());

  TraceSource src(gen, 19, 1e7);
  src.grow();
  CHECK(src.trace().horizon == 2e7);
  std::vector<Event> prefix;
  for (const auto& e : src.trace().events)
    if (e.reveal_time < a.complete_until) prefix.push_back(e);
  std::vector<Event> original;
  for (const auto& e : a.events)
    if (e.reveal_time < a.complete_until) original.push_back(e);
  CHECK(prefix == original);
}

TEST_CASE("trace text round trip") {
  const TraceGenerator gen(base_config());
  const Trace t = gen.generate(21, 1e6);
  std::stringstream s;
  write_trace(s, t);
  const Trace back = read_trace(s);
  CHECK(back == t);

  std::istringstream bad("not a trace\n");
  CHECK_THROWS(read_trace(bad));
}

TEST_CASE("generator validation") {
  TraceConfig c = base_config();
  c.kind = FaultDistribution::Kind::Uniform;
  CHECK_THROWS_AS(TraceGenerator{c}, InvalidParameter);
}
