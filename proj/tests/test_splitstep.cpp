#include "wick/splitstep.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace wick;

TEST_CASE("wave numbers in FFT order") {
  const Grid1D g(0.0, 0.7, 8);  // dx = 0.1, period 0.8
  const Eigen::VectorXd k = wave_numbers(g);
  const double base = 2.0 * std::numbers::pi / 0.8;
  CHECK(k[0] == 0.0);
  CHECK(k[1] == doctest::Approx(base));
  CHECK(std::abs(k[4]) == doctest::Approx(4.0 * base));
  CHECK(k[7] == doctest::Approx(-base));
}

TEST_CASE("analytic states are normalized") {
  const Grid1D g(-30.0, 30.0, 3001);
  for (double t : {0.0, 1.0, 3.0}) {
    const ComplexField p = ComplexField::sample(g, [&](double x) { return free_packet(x, t, 1.5, 0.8, -2.0, 1.0); });
    CHECK(l2_norm_sq(p) == doctest::Approx(1.0).epsilon(1e-12));
    const ComplexField c = ComplexField::sample(g, [&](double x) { return coherent_state(x, t, 1.0, 2.0, 1.0); });
    CHECK(l2_norm_sq(c) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("free packet propagation is exact up to rounding") {
  const Grid1D g(-30.0, 30.0, 1024);
  auto packet = [&](double t) {
    return ComplexField::sample(g, [&](double x) { return free_packet(x, t, 2.0, 1.0, -3.0, 1.5); });
  };
  for (auto order : {SplittingOrder::kFirst, SplittingOrder::kStrang}) {
    const ComplexField psi = splitstep_quantum_propagate(packet(0.0), HamiltonianSpec::free(2.0),
                                                         TimeSlicing::with_steps(0.0, 3.0, 10), order);
    CHECK(phase_aligned_l2_error(psi, packet(3.0)) < 1e-12);
    // Free evolution carries no stray global phase.
    CHECK(std::abs(psi.values().dot(packet(3.0).values()) * g.dx() - 1.0) < 1e-12);
  }
}

TEST_CASE("norm is preserved step by step") {
  const Grid1D g(-10.0, 10.0, 128);
  const ComplexField init = ComplexField::sample(g, [](double x) { return coherent_state(x, 0.0, 1.0, 1.0, 1.5); });
  const double n0 = init.values().squaredNorm();
  double worst = 0.0;
  splitstep_quantum_propagate(init, HamiltonianSpec::harmonic(1.0, 1.0), TimeSlicing::with_steps(0.0, 2.0, 100),
                              SplittingOrder::kFirst, [&](Eigen::Index, const ComplexField& psi) {
                                worst = std::max(worst, std::abs(psi.values().squaredNorm() - n0) / n0);
                              });
  CHECK(worst < 1e-13);
}

TEST_CASE("Strang splitting is second order against the coherent state") {
  const Grid1D g(-10.0, 10.0, 256);
  const HamiltonianSpec h = HamiltonianSpec::harmonic(1.0, 1.0);
  auto coherent = [&](double t) {
    return ComplexField::sample(g, [&](double x) { return coherent_state(x, t, 1.0, 1.0, 1.0); });
  };
  auto err = [&](Eigen::Index n) {
    return phase_aligned_l2_error(
        splitstep_quantum_propagate(coherent(0.0), h, TimeSlicing::with_steps(0.0, 1.0, n), SplittingOrder::kStrang),
        coherent(1.0));
  };
  CHECK(std::log2(err(20) / err(40)) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("time-dependent potential uses the step times") {
  // V_h(x, t) = c(t) uniform in x only changes the global phase by -int c dt.
  const Grid1D g(-20.0, 20.0, 512);
  HamiltonianSpec h = HamiltonianSpec::free(1.0);
  h.V_h = Potential::custom([](double, double t) { return t; }, true);
  const ComplexField init = ComplexField::sample(g, [](double x) { return free_packet(x, 0.0, 1.0, 1.0, 0.0, 0.0); });
  const ComplexField ref = ComplexField::sample(g, [](double x) { return free_packet(x, 1.0, 1.0, 1.0, 0.0, 0.0); });
  const ComplexField psi =
      splitstep_quantum_propagate(init, h, TimeSlicing::with_steps(0.0, 1.0, 4), SplittingOrder::kStrang);
  // Strang with endpoint half steps integrates a linear c(t) exactly: phase -1/2.
  const Complex overlap = ref.values().dot(psi.values()) * g.dx();
  CHECK(std::arg(overlap) == doctest::Approx(-0.5).epsilon(1e-10));
}

TEST_CASE("phase-aligned error ignores global phase") {
  const Grid1D g(-5.0, 5.0, 64);
  const ComplexField a = ComplexField::sample(g, [](double x) { return Complex(std::exp(-x * x), 0.0); });
  CHECK(phase_aligned_l2_error(a, a.scaled(std::polar(1.0, 0.7))) < 1e-7);
  CHECK_THROWS(phase_aligned_l2_error(a, ComplexField::zero(Grid1D(-5.0, 5.0, 32))));
}
