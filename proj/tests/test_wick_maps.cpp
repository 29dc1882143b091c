#include "wick/wick_maps.hpp"

#include <doctest.h>

#include <cmath>

using namespace wick;

TEST_CASE("polynomial potential") {
  const Potential p = Potential::polynomial({1.0, -2.0, 3.0, 0.0, 0.0});
  CHECK(p.coefficients().size() == 3);
  CHECK(p(2.0) == doctest::Approx(1.0 - 4.0 + 12.0));
  const Potential d = p.derivative();
  CHECK(d.coefficients() == std::vector<double>{-2.0, 6.0});
  CHECK(p.scaled(0.5)(2.0) == doctest::Approx(4.5));
  CHECK(Potential::zero().is_zero());
  CHECK(Potential::polynomial({0.0, 0.0}).is_zero());
  CHECK(Potential::polynomial({5.0}).derivative().is_zero());
}

TEST_CASE("custom potential") {
  const Potential p = Potential::custom([](double x, double t) { return std::sin(x) + t; }, true);
  CHECK(p.time_dependent());
  CHECK(!p.is_polynomial());
  CHECK(p(0.3, 2.0) == doctest::Approx(std::sin(0.3) + 2.0));
  CHECK(p.derivative()(0.3) == doctest::Approx(std::cos(0.3)).epsilon(1e-8));
  CHECK(p.scaled(2.0)(0.3, 1.0) == doctest::Approx(2.0 * (std::sin(0.3) + 1.0)));
}

TEST_CASE("special Wick rotation keeps parameters") {
  const HamiltonianSpec h = HamiltonianSpec::harmonic(2.0, 3.0, 0.5);
  CHECK(h.mu_h == doctest::Approx(4.0));
  CHECK(h.mass() == doctest::Approx(2.0));
  const GeneratorSpec g = swr_map(h);
  CHECK(g.mu == h.mu_h);
  const auto& W = std::get<PotentialLike>(g.form).W;
  CHECK(W(1.7) == doctest::Approx(h.V_h(1.7)));
  CHECK(g.diffusion() == doctest::Approx(micro_diffusion_coefficient(2.0, 0.5)));
  CHECK(micro_diffusion_coefficient(2.0, 0.5) == doctest::Approx(0.125));
}

TEST_CASE("general Wick rotation, macro mode") {
  const HamiltonianSpec h = HamiltonianSpec::harmonic(1.0, 2.0);  // V_h = 2 x^2, u = 2 x^2
  const GeneratorSpec g = gwr_map(h, GwrMacro{0.25});
  CHECK(g.mu == doctest::Approx(2.0));
  CHECK(std::get<PotentialLike>(g.form).W(1.0) == doctest::Approx(2.0 * 2.0));
  const GeneratorSpec s = gwr_map(h, SwrMicro{});
  CHECK(s.mu == h.mu_h);
  CHECK_THROWS_AS(gwr_map(h, GwrMacro{-1.0}), std::invalid_argument);
}

TEST_CASE("general Wick rotation, strong damping") {
  const HamiltonianSpec h = HamiltonianSpec::harmonic(1.0, 2.0, 0.5);  // V = hbar V_h = 2 x^2
  const GeneratorSpec g = gwr_map(h, GwrStrongDamping{1.5, 4.0});
  CHECK(g.mu == doctest::Approx(1.0 / 3.0));
  const auto& d = std::get<DriftForm>(g.form);
  CHECK(d.m_gamma == 4.0);
  CHECK(d.Vprime(1.0) == doctest::Approx(1.0 * 2.0 * 2.0));  // V' = m w^2 x
  const auto e = classify(g);
  REQUIRE(e);
  const auto& ou = std::get<OrnsteinUhlenbeck>(*e);
  CHECK(ou.D == doctest::Approx(1.5));
  CHECK(ou.eta == doctest::Approx(1.0));  // m w^2 / (m gamma)
}

TEST_CASE("micro friction makes the macro coefficient equal the micro one") {
  const Units u{0.3, 2.0, 1.0};
  const double T = 1.7;
  const double gamma = micro_friction(T, u);
  CHECK(gamma == doctest::Approx(2.0 * T / 0.3));
  CHECK(macro_diffusion_coefficient(T, u.mass * gamma, u) == doctest::Approx(micro_diffusion_coefficient(2.0, 0.3)));
}

TEST_CASE("classification") {
  CHECK(std::holds_alternative<Brown>(*classify(swr_map(HamiltonianSpec::free(2.0)))));
  const auto h = classify(swr_map(HamiltonianSpec::harmonic(1.5, 0.7)));
  REQUIRE(h);
  CHECK(std::get<HarmonicEuclid>(*h).mu == doctest::Approx(1.5));
  CHECK(std::get<HarmonicEuclid>(*h).omega == doctest::Approx(0.7));
  const GeneratorSpec drift{0.5, DriftForm{Potential::polynomial({-4.0}), 2.0}};
  const auto db = classify(drift);
  REQUIRE(db);
  CHECK(std::get<DriftBrown>(*db).v == doctest::Approx(2.0));
  const GeneratorSpec quartic{1.0, PotentialLike{Potential::polynomial({0, 0, 0, 0, 1.0})}};
  CHECK(!classify(quartic));
  CHECK(std::holds_alternative<HarmonicOscillator>(*classify(HamiltonianSpec::harmonic(1.0, 1.0))));
  CHECK(std::holds_alternative<FreeParticle>(*classify(HamiltonianSpec::free(1.0))));
}

TEST_CASE("continuation check") {
  const auto r = continuation_check(HarmonicOscillator{1.0, 1.0, 1.0}, -0.5, 0.3, 0.7);
  CHECK(r.euclid == doctest::Approx(0.283707909495383918).epsilon(1e-14));
  CHECK(r.abs_error < 1e-14);
  const auto f = continuation_check(FreeParticle{2.0, 0.5}, 0.1, -0.3, 0.4);
  CHECK(f.abs_error < 1e-14);
  CHECK_THROWS_AS(continuation_check(FreeParticle{1.0, 1.0}, 0.0, 0.0, -1.0), std::domain_error);
}

TEST_CASE("Euclidean Lagrangians") {
  const GeneratorSpec g{2.0, PotentialLike{Potential::polynomial({0, 0, 1.0})}};
  CHECK(euclid_lagrangian(g)(1.0, 3.0) == doctest::Approx(0.5 * 2.0 * 9.0 + 1.0));
  const GeneratorSpec d{2.0, DriftForm{Potential::polynomial({0, 2.0}), 4.0}};
  CHECK(euclid_lagrangian(d)(1.0, 3.0) == doctest::Approx(0.5 * 2.0 * 3.5 * 3.5));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS((GeneratorSpec{-1.0, PotentialLike{}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GeneratorSpec{1.0, DriftForm{Potential::zero(), 0.0}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS(HamiltonianSpec::harmonic(1.0, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS(Units{0.0, 1.0, 1.0}.validate());
}
