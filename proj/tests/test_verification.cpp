#include "wick/errors.hpp"
#include "wick/verification.hpp"

#include <doctest.h>

#include <cmath>

using namespace wick;

namespace {

Scenario trivial(std::string name, double measured, double tol) {
  return {std::move(name), "test", {}, "fixed", std::nullopt, [measured, tol](const Overrides&) {
            ScenarioOutcome o;
            o.measured_error = measured;
            o.tolerance = tol;
            return o;
          }};
}

}  // namespace

TEST_CASE("registry bookkeeping") {
  Registry r;
  CHECK(r.size() == 0);
  CHECK(r.run_all().empty());
  r.add(trivial("a", 0.5, 1.0));
  r.add(trivial("b", 2.0, 1.0));
  CHECK_THROWS_AS(r.add(trivial("a", 0.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(r.add(trivial("", 0.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(r.find("missing"), UsageError);
  CHECK(r.names() == std::vector<std::string>{"a", "b"});
  const auto all = r.run_all();
  REQUIRE(all.size() == 2);
  CHECK(all[0].passed);
  CHECK(!all[1].passed);
  r.add(trivial("c", 0.0, 0.0));
  CHECK_THROWS_AS(r.run("c"), std::logic_error);
}

TEST_CASE("non-finite measurements fail") {
  Registry r;
  r.add(trivial("nan", std::nan(""), 1.0));
  CHECK(!r.run("nan").passed);
}

TEST_CASE("built-in scenarios carry metadata") {
  const Registry& r = default_registry();
  CHECK(r.size() >= 30);
  for (const auto& name : r.names()) {
    const Scenario& s = r.find(name);
    CHECK(!s.description.empty());
    CHECK(!s.tolerance_spec.empty());
    CHECK(static_cast<bool>(s.run));
    const Json d = describe(s);
    CHECK(d["name"] == name);
  }
  CHECK(r.find("langevin-ou-moments").seed == kPublishedSeed);
  CHECK_THROWS_AS(run_scenario("no-such-scenario"), UsageError);
}

TEST_CASE("reports are deterministic") {
  Json a = to_json(run_scenario("feynman-kac-harmonic"));
  Json b = to_json(run_scenario("feynman-kac-harmonic"));
  a.erase("runtime_seconds");
  b.erase("runtime_seconds");
  CHECK(a == b);
  CHECK(a["passed"] == true);
  Overrides o;
  o.seed = 7;
  Json c = to_json(run_scenario("feynman-kac-harmonic", o));
  CHECK(c["measured_error"] != a["measured_error"]);
}

TEST_CASE("discrepancy notes are recorded") {
  const auto cont = run_scenario("swr-harmonic-continuation");
  CHECK(cont.passed);
  REQUIRE(!cont.notes.empty());
  CHECK(cont.notes.front().find("oefficient") != std::string::npos);
  const auto vel = run_scenario("velocity-literal");
  REQUIRE(!vel.notes.empty());
  CHECK(vel.details.contains("velocity_literal"));
  CHECK(vel.details.contains("velocity_mean_drift"));
}

TEST_CASE("a corrupted short-time kernel is caught") {
  // Flip the sign of the potential in the lattice factor.
  const GeneratorSpec flipped{1.0, PotentialLike{Potential::polynomial({0.0, 0.0, -0.5})}};
  Overrides o;
  o.short_time_kernel = [flipped](double to, double from, double dt, double t) {
    return short_time_euclid_kernel(to, from, dt, flipped, t);
  };
  CHECK(run_scenario("lattice-harmonic-accuracy").passed);
  CHECK(!run_scenario("lattice-harmonic-accuracy", o).passed);
  CHECK(!run_scenario("lattice-harmonic-convergence", o).passed);
}

TEST_CASE("fitted order") {
  CHECK(fitted_order({0.4, 0.2, 0.1}, {1.0, 0.25, 0.0625}) == doctest::Approx(2.0));
  CHECK(fitted_order({0.2, 0.1}, {3.0, 1.5}) == doctest::Approx(1.0));
  CHECK_THROWS(fitted_order({0.1}, {1.0}));
}
