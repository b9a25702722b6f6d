#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fracsim/scenario.hpp"

using namespace fracsim;

TEST_CASE("profile library") {
  CHECK(make_profile("x1")({0.3, -0.7}, 0.0) == doctest::Approx(0.3));
  CHECK(make_profile("x2")({0.3, -0.7}, 0.0) == doctest::Approx(-0.7));
  CHECK(make_profile("x1x2")({0.5, 0.5}, 0.0) == doctest::Approx(0.25));
  CHECK(make_profile("pm1")({0.5, 0.5}, 0.0) == 1.0);
  CHECK(make_profile("pm1")({0.5, -0.5}, 0.0) == -1.0);
  CHECK(make_profile("pm1")({0.5, 0.0}, -1.0) == -1.0);  // side-aware on the slit
  CHECK_THROWS_AS(make_profile("nope"), ConfigError);
}

TEST_CASE("scenario config round-trips through JSON") {
  const ScenarioConfig cfg = midline_scenario();
  const std::string text = cfg.to_json();
  const ScenarioConfig back = ScenarioConfig::from_json(text);
  CHECK(back.problem.initial == cfg.problem.initial);
  CHECK(back.problem.pool == cfg.problem.pool);
  CHECK(back.problem.max_components == cfg.problem.max_components);
  CHECK(back.problem.mesh.h == cfg.problem.mesh.h);
  CHECK(back.problem.model.mu == cfg.problem.model.mu);
  CHECK(back.grid.t_end == cfg.grid.t_end);
  CHECK(back.grid.n_steps == cfg.grid.n_steps);
  CHECK(back.profile_names == cfg.profile_names);
  // Same weights at sampled times.
  for (double t : {0.0, 0.7, 2.0})
    CHECK(back.problem.program.terms[0].weight_at(t) ==
          cfg.problem.program.terms[0].weight_at(t));
}

TEST_CASE("malformed configs are rejected with ConfigError") {
  CHECK_THROWS_AS(ScenarioConfig::from_json("not json"), ConfigError);
  CHECK_THROWS_AS(ScenarioConfig::from_json("{}"), ConfigError);
  ScenarioConfig cfg = midline_scenario();
  std::string text = cfg.to_json();
  const auto pos = text.find("\"x2\"");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 4, "\"zz\"");
  CHECK_THROWS_AS(ScenarioConfig::from_json(text), ConfigError);
}

TEST_CASE("running the midline scenario yields a deterministic CSV") {
  const ScenarioConfig cfg = midline_scenario(0.25, 0.75, 1.0 / 16.0, 1.0 / 16.0, 2.0, 4);
  const ScenarioResult a = run_scenario(cfg);
  const ScenarioResult b = run_scenario(cfg, ExecPolicy::Serial);
  CHECK(a.csv == b.csv);

  std::istringstream is(a.csv);
  std::string header;
  std::getline(is, header);
  CHECK(header == "t,bulk,surface,total,work_cumulative,component_count,crack_length");
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == cfg.grid.n_steps + 1);

  // Surface never decreases; the crack eventually grows under tension.
  const auto& steps = a.trace.steps;
  for (std::size_t i = 1; i < steps.size(); ++i)
    CHECK(steps[i].energy.surface >= steps[i - 1].energy.surface);
  CHECK(crack_length(steps.back().crack) > crack_length(steps.front().crack));
}

TEST_CASE("oscillating study error decays with n") {
  const OscillatingStudy st = oscillating_limit_study({2, 4, 8}, 1.0 / 16.0, 2);
  REQUIRE(st.l2_errors.size() == 3);
  CHECK(st.l2_errors[1] < st.l2_errors[0]);
  CHECK(st.l2_errors[2] < st.l2_errors[1]);
}

TEST_CASE("transmission estimate is in the expected range") {
  const TransmissionEstimate est = transmission_estimate(3, 1.0 / 32.0, 1.0 / 256.0);
  CHECK(est.c > 0.5);
  CHECK(est.c < 4.0);
  CHECK(est.flux_density.size() == est.mean_jump.size());
  for (double d : est.mean_jump) CHECK(d > 0.0);
}
