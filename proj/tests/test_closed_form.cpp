#include "wick/closed_form.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace wick;

namespace {

// Independent reference values (computed separately at 30 digits).
constexpr double kHarmonicAt07 = 0.283707909495383918;     // mu=w=1, x_a=0.3, x_b=-0.5, tau=0.7
constexpr double kFreeAt2Pi = 0.1125395395196383;          // re = -im, m=hbar=1, x_b=x_a, t=2 pi
constexpr double kHarmonicMass = 0.868635521456;           // mass over x_b at x_a=0.3, t=0.7
constexpr double kTwoOverE = 0.7357588823428846;           // 2 e^{-1}
constexpr double kTwoOneMinusInvE = 1.2642411176571154;    // 2 (1 - e^{-1})

template <typename F>
double riemann(F f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += f(lo + (i + 0.5) * h);
  return s * h;
}

}  // namespace

TEST_CASE("harmonic Euclidean kernel reference value") {
  CHECK(harmonic_euclid_kernel(1.0, 1.0, -0.5, 0.3, 0.7) == doctest::Approx(kHarmonicAt07).epsilon(1e-14));
  // Symmetric in its endpoints.
  CHECK(harmonic_euclid_kernel(1.3, 0.8, 0.4, -1.1, 0.9) ==
        doctest::Approx(harmonic_euclid_kernel(1.3, 0.8, -1.1, 0.4, 0.9)).epsilon(1e-15));
}

TEST_CASE("quantum kernels at imaginary time") {
  const auto q = quantum_harmonic_kernel(1.0, 1.0, 1.0, -0.5, 0.3, std::complex<double>(0.0, -0.7));
  CHECK(q.real() == doctest::Approx(kHarmonicAt07).epsilon(1e-13));
  CHECK(std::abs(q.imag()) < 1e-14);
  const auto f = quantum_free_kernel(1.0, 1.0, 0.2, -0.4, std::complex<double>(0.0, -1.3));
  CHECK(f.real() == doctest::Approx(brown_kernel(0.5, 0.2, -0.4, 1.3)).epsilon(1e-14));
}

TEST_CASE("free quantum kernel at real time") {
  const auto k = quantum_free_kernel(1.0, 1.0, 0.7, 0.7, 2.0 * std::numbers::pi);
  CHECK(k.real() == doctest::Approx(kFreeAt2Pi).epsilon(1e-14));
  CHECK(k.imag() == doctest::Approx(-kFreeAt2Pi).epsilon(1e-14));
  CHECK_THROWS_AS(quantum_free_kernel(1.0, 1.0, 0.0, 0.0, 0.0), SingularityError);
}

TEST_CASE("harmonic quantum kernel caustic") {
  CHECK_THROWS_AS(quantum_harmonic_kernel(1.0, 1.0, 1.0, 0.1, 0.2, std::numbers::pi), CausticError);
  CHECK_THROWS_AS(quantum_harmonic_kernel(1.0, 1.0, 2.0, 0.1, 0.2, std::numbers::pi), CausticError);
  CHECK_NOTHROW(quantum_harmonic_kernel(1.0, 1.0, 1.0, 0.1, 0.2, 1.0));
}

TEST_CASE("harmonic kernel tends to the free kernel at small time") {
  // Mehler amplitude vs free amplitude, t -> 0 with fixed endpoints.
  const double t = 1e-3;
  const auto h = quantum_harmonic_kernel(1.0, 1.0, 1.0, 0.01, 0.0, t);
  const auto f = quantum_free_kernel(1.0, 1.0, 0.01, 0.0, t);
  CHECK(std::abs(h - f) / std::abs(f) < 1e-5);
}

TEST_CASE("heat and OU kernels integrate to one") {
  CHECK(riemann([](double x) { return brown_kernel(0.7, x, 0.3, 1.1); }, -20, 20, 40000) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(riemann([](double x) { return ou_kernel(1.0, 0.5, x, 2.0, 1.0); }, -20, 20, 40000) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(riemann([](double x) { return drift_brown_pdf(1.0, 2.0, x, 1.0); }, -20, 25, 45000) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("OU moments") {
  CHECK(ou_mean(2.0, 0.5, 2.0) == doctest::Approx(kTwoOverE).epsilon(1e-15));
  CHECK(ou_variance(1.0, 0.5, 1.0) == doctest::Approx(kTwoOneMinusInvE).epsilon(1e-15));
  const double m = riemann([](double x) { return x * ou_kernel(1.0, 0.5, x, 2.0, 2.0); }, -20, 20, 40000);
  CHECK(m == doctest::Approx(kTwoOverE).epsilon(1e-12));
  const auto g = ou_evolved_gaussian({1.0, 0.04}, 1.0, 0.5, 1.0);
  CHECK(g.mean == doctest::Approx(std::exp(-0.5)));
  CHECK(g.variance == doctest::Approx(0.04 * std::exp(-1.0) + kTwoOneMinusInvE));
}

TEST_CASE("harmonic kernel mass is below one") {
  const double mass = riemann([](double x) { return harmonic_euclid_kernel(1.0, 1.0, x, 0.3, 0.7); }, -20, 20, 40000);
  CHECK(mass == doctest::Approx(kHarmonicMass).epsilon(1e-11));
  CHECK(harmonic_euclid_mass(1.0, 1.0, 0.3, 0.7) == doctest::Approx(kHarmonicMass).epsilon(1e-11));
  CHECK(euclid_kernel_mass(HarmonicEuclid{1.0, 1.0}, 0.3, 0.7) == doctest::Approx(kHarmonicMass).epsilon(1e-11));
  CHECK(euclid_kernel_mass(Brown{1.0}, 0.3, 0.7) == 1.0);
}

TEST_CASE("zero-frequency limits") {
  for (double x : {-1.0, 0.0, 0.8}) {
    const double b = brown_kernel(0.5, x, 0.2, 0.9);
    CHECK(std::abs(harmonic_euclid_kernel(1.0, 1e-6, x, 0.2, 0.9) - b) / b < 1e-6);
    const double b1 = brown_kernel(1.0, x, 0.2, 0.9);
    CHECK(std::abs(ou_kernel(1.0, 1e-9, x, 0.2, 0.9) - b1) / b1 < 1e-6);
  }
}

TEST_CASE("composition law by brute-force quadrature") {
  const double direct = harmonic_euclid_kernel(1.0, 1.0, 0.4, -0.2, 1.0);
  const double composed = riemann(
      [](double y) { return harmonic_euclid_kernel(1.0, 1.0, 0.4, y, 0.4) * harmonic_euclid_kernel(1.0, 1.0, y, -0.2, 0.6); },
      -20, 20, 40000);
  CHECK(composed == doctest::Approx(direct).epsilon(1e-11));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(brown_kernel(1.0, 0.0, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(harmonic_euclid_kernel(1.0, 1.0, 0.0, 0.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(brown_kernel(-1.0, 0.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS(validate(EuclideanKernelSpec{OrnsteinUhlenbeck{1.0, -0.5}}));
}

TEST_CASE("single precision instantiation") {
  const float k = harmonic_euclid_kernel(1.0f, 1.0f, -0.5f, 0.3f, 0.7f);
  CHECK(k == doctest::Approx(kHarmonicAt07).epsilon(1e-6));
}

TEST_CASE("partition function closed form") {
  CHECK(harmonic_partition_exact(1.0, 2.0) == doctest::Approx(0.42545906411966077).epsilon(1e-15));
}

TEST_CASE("variant dispatch") {
  CHECK(euclid_kernel(DriftBrown{1.0, 2.0}, 2.5, 0.5, 1.0) == doctest::Approx(drift_brown_pdf(1.0, 2.0, 2.0, 1.0)));
  CHECK(euclid_kernel(OrnsteinUhlenbeck{1.0, 0.5}, 0.1, 0.2, 1.0) == ou_kernel(1.0, 0.5, 0.1, 0.2, 1.0));
  CHECK(quantum_kernel(FreeParticle{1.0, 1.0}, 0.1, 0.2, {1.0, 0.0}) == quantum_free_kernel(1.0, 1.0, 0.1, 0.2, 1.0));
}
