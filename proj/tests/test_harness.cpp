#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ckptwin/harness.hpp"

using namespace ckptwin;

namespace {

std::string csv_text(const std::vector<ResultRow>& rows, const ExperimentConfig& c) {
  std::ostringstream out;
  write_csv(out, rows, csv_comments(c));
  return out.str();
}

ExperimentConfig quick_config() {
  ExperimentConfig c = preset_paper_defaults();
  c.n_procs = {1 << 16};
  c.windows = {300};
  c.n_reps = 3;
  c.work_years = 1000;
  return c;
}

}  // namespace

TEST_CASE("default experiment preset") {
  const auto c = preset_paper_defaults();
  CHECK(c.c_regular == 600);
  CHECK(c.recovery == 600);
  CHECK(c.downtime == 60);
  CHECK(c.n_reps == 100);
  CHECK(c.n_procs == std::vector<std::int64_t>{1 << 16, 1 << 17, 1 << 18, 1 << 19});
  CHECK(c.windows == std::vector<double>{300, 600, 900, 1200, 3000});
  CHECK(c.platform(1 << 16).mtbf() == doctest::Approx(60191.3452148).epsilon(1e-10));
  CHECK(c.platform(1 << 19).mtbf() / 60 == doctest::Approx(125.4).epsilon(1e-3));
  CHECK(c.t_base(1 << 19) / 86400 == doctest::Approx(6.966590881347656).epsilon(1e-12));
  CHECK(c.platform(1 << 16).c_proactive == 600);
  CHECK(c.predictor_for(300).precision == 0.82);
  CHECK(c.predictor_for(300).recall == 0.85);

  CHECK(proactive_cost(parse_cp_mode("0.1"), 600) == doctest::Approx(60));
  CHECK(proactive_cost(parse_cp_mode("2"), 600) == 1200);
  CHECK(proactive_cost(parse_cp_mode("eq"), 600) == 600);
  CHECK_THROWS_AS(parse_cp_mode("3"), InvalidParameter);
}

TEST_CASE("presets and distributions") {
  ExperimentConfig c;
  c.set_predictor_preset("weak");
  CHECK(c.precision == 0.4);
  CHECK(c.recall == 0.7);
  c.set_predictor_preset("accurate");
  CHECK(c.precision == 0.82);
  CHECK_THROWS_AS(c.set_predictor_preset("psychic"), InvalidParameter);

  c.set_distribution("exp");
  CHECK(c.dist == FaultDistribution::Kind::Exponential);
  CHECK(c.trace_config(1 << 16, 300).model == TraceModel::PlatformRenewal);
  c.set_distribution("weibull:0.5");
  CHECK(c.dist == FaultDistribution::Kind::Weibull);
  CHECK(c.weibull_shape == 0.5);
  CHECK(c.trace_config(1 << 16, 300).model == TraceModel::PerComponent);
  CHECK_THROWS_AS(c.set_distribution("weibull:-1"), InvalidParameter);
  CHECK_THROWS_AS(c.set_distribution("gamma"), InvalidParameter);
}

TEST_CASE("config validation and JSON") {
  ExperimentConfig c = preset_paper_defaults();
  CHECK_NOTHROW(c.validate());
  c.windows.clear();
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c = preset_paper_defaults();
  c.n_procs.clear();
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c = preset_paper_defaults();
  c.strategies.clear();
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c = preset_paper_defaults();
  c.n_reps = 0;
  CHECK_THROWS_AS(c.validate(), InvalidParameter);

  c = preset_paper_defaults();
  c.cp_mode = CpMode::Tenth;
  c.windows = {600, 900};
  c.n_reps = 7;
  c.set_distribution("weibull:0.5");
  const auto back = config_from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(back.hash() == c.hash());

  ExperimentConfig other = c;
  other.out = "elsewhere.csv";
  CHECK(other.hash() == c.hash());
  other.base_seed = 2;
  CHECK(other.hash() != c.hash());

  const auto partial = config_from_json(R"({"predictor": "weak", "n_reps": 5})");
  CHECK(partial.precision == 0.4);
  CHECK(partial.n_reps == 5);
  CHECK(partial.c_regular == 600);
  CHECK_THROWS_AS(config_from_json(R"({"bogus": 1})"), InvalidParameter);
  CHECK_THROWS_AS(config_from_json("not json"), InvalidParameter);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), Error);
}

TEST_CASE("published reference cells") {
  CHECK(paper_reference_days(0.7, "accurate", 1 << 16, 300, Strategy::Daly) == 81.3);
  CHECK(paper_reference_days(0.7, "accurate", 1 << 19, 3000, Strategy::Daly) == 31.0);
  CHECK(paper_reference_days(0.7, "weak", 1 << 19, 600, Strategy::RFO) == 25.5);
  CHECK(paper_reference_days(0.7, "accurate", 1 << 16, 300, Strategy::NoCkptI) == 66.4);
  CHECK(paper_reference_days(0.7, "accurate", 1 << 19, 300, Strategy::NoCkptI) == 17.0);
  CHECK(paper_reference_days(0.7, "accurate", 1 << 19, 3000, Strategy::WithCkptI) == 23.1);
  CHECK(paper_reference_days(0.5, "accurate", 1 << 19, 300, Strategy::Daly) == 185.0);
  CHECK(paper_reference_days(0.5, "accurate", 1 << 19, 300, Strategy::NoCkptI) == 44.9);
  CHECK_FALSE(paper_reference_days(0.7, "accurate", 1 << 16, 450, Strategy::NoCkptI));
  CHECK_FALSE(paper_reference_days(1.0, "accurate", 1 << 16, 300, Strategy::Daly));
}

TEST_CASE("analytic rows") {
  ExperimentConfig c = quick_config();
  const auto rows = run_analytic(c);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) {
    CHECK(r.kind == "analytic");
    CHECK(r.config_hash == c.hash());
    if (r.strategy == Strategy::WithCkptI) {
      CHECK(r.status.rfind("inapplicable", 0) == 0);
      CHECK_FALSE(r.analytic_waste);
    } else {
      CHECK(r.status == "ok");
      REQUIRE(r.analytic_waste);
      CHECK(*r.analytic_waste > 0);
      CHECK_FALSE(r.makespan);  // nothing simulated
    }
  }
}

TEST_CASE("table rows and paired gains") {
  ExperimentConfig c = quick_config();
  const auto rows = run_table(c);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) {
    CHECK(r.base_seed == c.base_seed);
    CHECK(r.n_reps == c.n_reps);
    CHECK(r.config_hash == c.hash());
    if (r.strategy == Strategy::Daly) {
      REQUIRE(r.gain_vs_daly);
      CHECK(*r.gain_vs_daly == 0);
    }
    if (r.strategy == Strategy::WithCkptI) {
      CHECK(r.status.rfind("inapplicable", 0) == 0);
      CHECK_FALSE(r.makespan);
    } else {
      REQUIRE(r.makespan);
      CHECK(*r.makespan >= c.t_base(1 << 16));
    }
    // Not the published job size, so no reference column.
    CHECK_FALSE(r.paper_days);
  }
}

TEST_CASE("table reproduction is deterministic") {
  ExperimentConfig c = quick_config();
  c.strategies = {Strategy::Daly, Strategy::NoCkptI};
  CHECK(csv_text(run_table(c), c) == csv_text(run_table(c), c));
}

TEST_CASE("CSV round trip") {
  ExperimentConfig c = quick_config();
  c.windows = {300, 3000};
  auto rows = run_table(c);
  rows.back().status = "note, with \"quotes\"\nand a newline";
  std::stringstream s;
  write_csv(s, rows, csv_comments(c));
  CHECK(s.str().rfind("# ", 0) == 0);
  CHECK(s.str().find("86400") != std::string::npos);
  CHECK(parse_csv(s) == rows);

  std::ostringstream empty;
  write_csv(empty, {});
  std::string header;
  for (const auto& col : csv_columns()) header += (header.empty() ? "" : ",") + col;
  CHECK(empty.str() == header + "\n");

  const std::string path = "harness_roundtrip_test.csv";
  emit_csv(rows, path, {"x"});
  std::ifstream in(path);
  CHECK(parse_csv(in) == rows);
  std::remove(path.c_str());
  CHECK_THROWS_AS(emit_csv(rows, "/nonexistent/dir/out.csv"), Error);

  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("sweep axes") {
  CHECK(parse_sweep_axis("n") == SweepAxis::NProcs);
  CHECK(parse_sweep_axis("tr") == SweepAxis::TRegular);
  CHECK(parse_sweep_axis("i") == SweepAxis::Window);
  CHECK_THROWS_AS(parse_sweep_axis("q"), InvalidParameter);

  ExperimentConfig c = quick_config();
  c.strategies = {Strategy::Daly};
  const auto one = run_sweep(c, SweepAxis::NProcs);
  REQUIRE(one.size() == 1);
  CHECK(one[0].kind == "sweep-n");
}

TEST_CASE("window sweep: smaller windows are better") {
  ExperimentConfig c = preset_paper_defaults();
  c.n_procs = {1 << 16};
  c.n_reps = 20;
  c.strategies = {Strategy::Instant, Strategy::NoCkptI, Strategy::WithCkptI};
  const auto rows = run_sweep(c, SweepAxis::Window);
  std::map<Strategy, std::vector<const ResultRow*>> by;
  for (const auto& r : rows)
    if (r.status == "ok") by[r.strategy].push_back(&r);
  for (const auto& [s, v] : by) {
    CAPTURE(to_string(s));
    for (std::size_t i = 1; i < v.size(); ++i) {
      CHECK(v[i]->window > v[i - 1]->window);
      CHECK(*v[i]->analytic_waste >= *v[i - 1]->analytic_waste);
      // Simulated waste on paired seeds, with a little room for noise.
      CHECK(*v[i]->waste >= *v[i - 1]->waste - 0.003);
    }
  }
}

TEST_CASE("period sweep: prediction-aware curves are flatter") {
  ExperimentConfig c = preset_paper_defaults();
  c.n_procs = {1 << 16};
  c.windows = {300};
  c.n_reps = 10;
  c.strategies = {Strategy::RFO, Strategy::NoCkptI};
  for (int i = 0; i < 12; ++i) c.t_regular_values.push_back(3000 * std::pow(2.0, i * 0.5));
  const auto rows = run_sweep(c, SweepAxis::TRegular);
  REQUIRE(rows.size() == 24);
  // Periods where both policies finished within the sweep's slowdown cap.
  std::map<double, int> finished;
  for (const auto& r : rows)
    if (r.waste) ++finished[*r.t_regular];
  auto spread_after_min = [&](Strategy s) {
    std::vector<double> w;
    for (const auto& r : rows)
      if (r.strategy == s && finished[*r.t_regular] == 2) w.push_back(*r.waste);
    REQUIRE(w.size() >= 8);
    const auto it = std::min_element(w.begin(), w.end());
    return *std::max_element(it, w.end()) - *it;
  };
  CHECK(spread_after_min(Strategy::NoCkptI) < 0.2 * spread_after_min(Strategy::RFO));
}

TEST_CASE("period sweep caps hopeless cells") {
  ExperimentConfig c = quick_config();
  c.set_distribution("exp");
  c.n_procs = {1 << 19};
  c.strategies = {Strategy::Daly};
  c.t_regular_values = {5000, 200000};
  const auto rows = run_sweep(c, SweepAxis::TRegular);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].status == "ok");
  CHECK(rows[1].status.find("makespan-limit") != std::string::npos);
  CHECK_FALSE(rows[1].waste);
}
