#include "wick/spec_io.hpp"

#include <doctest.h>

#include <sstream>

using namespace wick;

TEST_CASE("hamiltonian round trip") {
  const HamiltonianSpec h = HamiltonianSpec::harmonic(2.0, 0.5, 0.25);
  const auto back = std::get<HamiltonianSpec>(parse_system(to_json(h)));
  CHECK(back.mu_h == doctest::Approx(h.mu_h));
  CHECK(back.hbar == doctest::Approx(0.25));
  CHECK(back.V_h.coefficients() == h.V_h.coefficients());
  const auto from_mass = std::get<HamiltonianSpec>(parse_system(Json::parse(
      R"({"type":"hamiltonian","mass":3.0,"hbar":2.0,"potential":"zero"})")));
  CHECK(from_mass.mu_h == doctest::Approx(1.5));
}

TEST_CASE("generator round trip") {
  const GeneratorSpec d{0.5, DriftForm{Potential::polynomial({0.0, 0.5}), 2.0}};
  const auto back = std::get<GeneratorSpec>(parse_system(to_json(d)));
  CHECK(back.mu == 0.5);
  CHECK(std::get<DriftForm>(back.form).m_gamma == 2.0);
  const auto g = std::get<GeneratorSpec>(parse_system(Json::parse(
      R"({"type":"generator","D":0.25,"form":"potential","W":{"polynomial":[0,0,1]}})")));
  CHECK(g.mu == doctest::Approx(2.0));
}

TEST_CASE("kernel spec round trips") {
  for (const QuantumKernelSpec& q : {QuantumKernelSpec{FreeParticle{1.0, 2.0}}, QuantumKernelSpec{HarmonicOscillator{1.0, 1.0, 3.0}}}) {
    CHECK(to_json(std::get<QuantumKernelSpec>(parse_system(to_json(q)))) == to_json(q));
  }
  for (const EuclideanKernelSpec& e : {EuclideanKernelSpec{Brown{1.0}}, EuclideanKernelSpec{DriftBrown{1.0, 2.0}},
                                       EuclideanKernelSpec{HarmonicEuclid{1.0, 0.5}},
                                       EuclideanKernelSpec{OrnsteinUhlenbeck{1.0, 0.5}}}) {
    CHECK(to_json(std::get<EuclideanKernelSpec>(parse_system(to_json(e)))) == to_json(e));
  }
}

TEST_CASE("wick modes") {
  CHECK(std::holds_alternative<SwrMicro>(parse_wick_mode(to_json(WickMode{SwrMicro{}}))));
  const auto m = std::get<GwrStrongDamping>(parse_wick_mode(to_json(WickMode{GwrStrongDamping{2.0, 3.0}})));
  CHECK(m.D == 2.0);
  CHECK(m.m_gamma == 3.0);
  const Json doc = Json::parse(R"({"type":"hamiltonian","mu_h":1,"wick":{"mode":"gwr_macro","D":0.5}})");
  CHECK(std::get<GwrMacro>(*attached_wick_mode(doc)).D == 0.5);
  CHECK(!attached_wick_mode(Json::parse(R"({"type":"hamiltonian","mu_h":1})")));
}

TEST_CASE("malformed documents") {
  std::istringstream bad("{not json");
  CHECK_THROWS_AS(load_system(bad), std::invalid_argument);
  CHECK_THROWS_AS(parse_system(Json::parse(R"({"type":"nonsense"})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_system(Json::parse(R"({"type":"euclidean","kind":"ou","D":1})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_system(Json::parse(R"({"type":"generator","mu":1,"form":"drift","m_gamma":1})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_system(Json::parse(R"({"type":"euclidean","kind":"brown","D":-1})")), std::invalid_argument);
  CHECK_THROWS_AS(to_json(Potential::custom([](double x, double) { return x; })), std::invalid_argument);
}
