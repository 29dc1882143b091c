#pragma once

// Analytic propagators: quantum transition amplitudes and the Euclidean
// transition kernels they continue to. These are the oracles every numerical
// engine in the library is checked against.

#include "wick/errors.hpp"

#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

namespace wick {

struct FreeParticle {
  double mass = 1.0;
  double hbar = 1.0;
};

struct HarmonicOscillator {
  double mass = 1.0;
  double hbar = 1.0;
  double omega = 1.0;
};

using QuantumKernelSpec = std::variant<FreeParticle, HarmonicOscillator>;

struct Brown {
  double D = 0.5;
};

struct DriftBrown {
  double D = 0.5;
  double v = 0.0;
};

/// Euclidean harmonic kernel in the inverse-diffusion-mass form.
struct HarmonicEuclid {
  double mu = 1.0;
  double omega = 1.0;
};

struct OrnsteinUhlenbeck {
  double D = 1.0;
  double eta = 1.0;
};

using EuclideanKernelSpec = std::variant<Brown, DriftBrown, HarmonicEuclid, OrnsteinUhlenbeck>;

/// Threshold on |sin(omega t)| below which the harmonic amplitude is refused.
inline constexpr double kCausticTolerance = 1e-12;

namespace detail {

template <std::floating_point T>
void require_positive_time(T t) {
  if (!(t > T(0))) throw std::domain_error("Euclidean kernel requires t > 0");
}

template <std::floating_point T>
void require_positive(T value, const char* what) {
  if (!(value > T(0))) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace detail

inline void validate(const QuantumKernelSpec& spec) {
  std::visit(
      [](const auto& s) {
        detail::require_positive(s.mass, "mass");
        detail::require_positive(s.hbar, "hbar");
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, HarmonicOscillator>) {
          detail::require_positive(s.omega, "omega");
        }
      },
      spec);
}

inline void validate(const EuclideanKernelSpec& spec) {
  std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, HarmonicEuclid>) {
          detail::require_positive(s.mu, "mu");
          detail::require_positive(s.omega, "omega");
        } else {
          detail::require_positive(s.D, "diffusion coefficient");
          if constexpr (std::is_same_v<S, OrnsteinUhlenbeck>) detail::require_positive(s.eta, "eta");
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// Quantum side. Complex time is accepted so the same code evaluates the
// Wick-continued amplitude at t = -i tau.

/// Free-particle amplitude sqrt(m / (2 pi i hbar t)) exp(i m (x_b - x_a)^2 / (2 hbar t)),
/// principal branch of the square root.
template <std::floating_point T>
std::complex<T> quantum_free_kernel(T mass, T hbar, T x_b, T x_a, std::complex<T> t) {
  detail::require_positive(mass, "mass");
  detail::require_positive(hbar, "hbar");
  if (t == std::complex<T>(0)) throw SingularityError("free-particle kernel is singular at t = 0");
  const std::complex<T> i(0, 1);
  const T d = x_b - x_a;
  const auto pref = std::sqrt(mass / (T(2) * std::numbers::pi_v<T> * i * hbar * t));
  return pref * std::exp(i * mass * d * d / (T(2) * hbar * t));
}

template <std::floating_point T>
std::complex<T> quantum_free_kernel(T mass, T hbar, T x_b, T x_a, T t) {
  return quantum_free_kernel(mass, hbar, x_b, x_a, std::complex<T>(t));
}

/// Harmonic-oscillator amplitude (Mehler form). Throws CausticError when
/// |sin(omega t)| < kCausticTolerance.
template <std::floating_point T>
std::complex<T> quantum_harmonic_kernel(T mass, T hbar, T omega, T x_b, T x_a, std::complex<T> t) {
  detail::require_positive(mass, "mass");
  detail::require_positive(hbar, "hbar");
  detail::require_positive(omega, "omega");
  const std::complex<T> i(0, 1);
  const std::complex<T> wt = omega * t;
  const std::complex<T> s = std::sin(wt);
  if (std::abs(s) < T(kCausticTolerance)) {
    throw CausticError("harmonic kernel evaluated at a caustic (sin(omega t) = 0)");
  }
  // (x_b^2 + x_a^2) cos - 2 x_a x_b, rearranged so omega -> 0 does not cancel.
  const std::complex<T> half = std::sin(wt / T(2));
  const std::complex<T> cos_minus_one = T(-2) * half * half;
  const T d = x_b - x_a;
  const std::complex<T> bracket = d * d * (cos_minus_one + T(1)) + T(2) * x_a * x_b * cos_minus_one;
  const auto pref = std::sqrt(mass * omega / (T(2) * std::numbers::pi_v<T> * i * hbar * s));
  return pref * std::exp(i * mass * omega / (T(2) * hbar * s) * bracket);
}

template <std::floating_point T>
std::complex<T> quantum_harmonic_kernel(T mass, T hbar, T omega, T x_b, T x_a, T t) {
  return quantum_harmonic_kernel(mass, hbar, omega, x_b, x_a, std::complex<T>(t));
}

inline std::complex<double> quantum_kernel(const QuantumKernelSpec& spec, double x_b, double x_a,
                                           std::complex<double> t) {
  return std::visit(
      [&](const auto& s) -> std::complex<double> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, FreeParticle>) {
          return quantum_free_kernel(s.mass, s.hbar, x_b, x_a, t);
        } else {
          return quantum_harmonic_kernel(s.mass, s.hbar, s.omega, x_b, x_a, t);
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// Euclidean side. Real time only.

/// Heat kernel (4 pi D t)^{-1/2} exp(-(x_b - x_a)^2 / (4 D t)).
template <std::floating_point T>
T brown_kernel(T D, T x_b, T x_a, T t) {
  detail::require_positive(D, "diffusion coefficient");
  detail::require_positive_time(t);
  const T d = x_b - x_a;
  return std::exp(-d * d / (T(4) * D * t)) / std::sqrt(T(4) * std::numbers::pi_v<T> * D * t);
}

/// Brownian density started at 0 with constant drift v.
template <std::floating_point T>
T drift_brown_pdf(T D, T v, T x, T t) {
  detail::require_positive(D, "diffusion coefficient");
  detail::require_positive_time(t);
  const T d = x - v * t;
  return std::exp(-d * d / (T(4) * D * t)) / std::sqrt(T(4) * std::numbers::pi_v<T> * D * t);
}

/// Continued harmonic kernel
///   sqrt(mu w / (2 pi sinh wt)) exp(-(mu w / (2 sinh wt)) [(x_b^2 + x_a^2) cosh wt - 2 x_a x_b]).
/// Not mass-preserving: see harmonic_euclid_mass.
template <std::floating_point T>
T harmonic_euclid_kernel(T mu, T omega, T x_b, T x_a, T t) {
  detail::require_positive(mu, "mu");
  detail::require_positive(omega, "omega");
  detail::require_positive_time(t);
  const T wt = omega * t;
  const T s = std::sinh(wt);
  const T half = std::sinh(wt / T(2));
  const T cosh_minus_one = T(2) * half * half;
  const T d = x_b - x_a;
  const T bracket = d * d * (cosh_minus_one + T(1)) + T(2) * x_a * x_b * cosh_minus_one;
  return std::sqrt(mu * omega / (T(2) * std::numbers::pi_v<T> * s)) *
         std::exp(-mu * omega / (T(2) * s) * bracket);
}

/// Integral of harmonic_euclid_kernel over x_b:
/// exp(-(mu w / 2) tanh(wt) x_a^2) / sqrt(cosh wt).
template <std::floating_point T>
T harmonic_euclid_mass(T mu, T omega, T x_a, T t) {
  detail::require_positive_time(t);
  const T wt = omega * t;
  return std::exp(-T(0.5) * mu * omega * std::tanh(wt) * x_a * x_a) / std::sqrt(std::cosh(wt));
}

template <std::floating_point T>
T ou_mean(T x_a, T eta, T t) {
  return x_a * std::exp(-eta * t);
}

/// (D / eta)(1 - e^{-2 eta t}), evaluated with expm1 so eta -> 0 stays accurate.
template <std::floating_point T>
T ou_variance(T D, T eta, T t) {
  detail::require_positive(eta, "eta");
  return -(D / eta) * std::expm1(T(-2) * eta * t);
}

template <std::floating_point T>
T ou_kernel(T D, T eta, T x_b, T x_a, T t) {
  detail::require_positive(D, "diffusion coefficient");
  detail::require_positive_time(t);
  const T var = ou_variance(D, eta, t);
  const T d = x_b - ou_mean(x_a, eta, t);
  return std::exp(-d * d / (T(2) * var)) / std::sqrt(T(2) * std::numbers::pi_v<T> * var);
}

template <std::floating_point T>
T brown_absolute_pdf(T D, T x, T t) {
  return brown_kernel(D, x, T(0), t);
}

template <std::floating_point T>
T ou_absolute_pdf(T D, T eta, T x, T t) {
  return ou_kernel(D, eta, x, T(0), t);
}

/// Mean and variance of an OU density whose initial condition is Gaussian.
struct GaussianState {
  double mean = 0.0;
  double variance = 0.0;
};

inline GaussianState ou_evolved_gaussian(GaussianState initial, double D, double eta, double t) {
  const double decay = std::exp(-eta * t);
  return {initial.mean * decay, initial.variance * decay * decay + ou_variance(D, eta, t)};
}

inline double gaussian_pdf(double x, const GaussianState& g) {
  const double d = x - g.mean;
  return std::exp(-d * d / (2.0 * g.variance)) / std::sqrt(2.0 * std::numbers::pi * g.variance);
}

inline double euclid_kernel(const EuclideanKernelSpec& spec, double x_b, double x_a, double t) {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Brown>) {
          return brown_kernel(s.D, x_b, x_a, t);
        } else if constexpr (std::is_same_v<S, DriftBrown>) {
          return drift_brown_pdf(s.D, s.v, x_b - x_a, t);
        } else if constexpr (std::is_same_v<S, HarmonicEuclid>) {
          return harmonic_euclid_kernel(s.mu, s.omega, x_b, x_a, t);
        } else {
          return ou_kernel(s.D, s.eta, x_b, x_a, t);
        }
      },
      spec);
}

/// Exact integral of euclid_kernel over x_b.
inline double euclid_kernel_mass(const EuclideanKernelSpec& spec, double x_a, double t) {
  if (const auto* h = std::get_if<HarmonicEuclid>(&spec)) {
    return harmonic_euclid_mass(h->mu, h->omega, x_a, t);
  }
  return 1.0;
}

/// Partition function of the harmonic oscillator, 1 / (2 sinh(beta hbar omega / 2)).
inline double harmonic_partition_exact(double omega, double beta_hbar) {
  return 1.0 / (2.0 * std::sinh(0.5 * beta_hbar * omega));
}

}  // namespace wick
