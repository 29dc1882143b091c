#pragma once

// Special and General Wick rotations as transforms on system descriptions.
// A HamiltonianSpec describes a quantum system with hbar folded into the
// inverse-diffusion mass mu_h = m / hbar; a GeneratorSpec describes the
// Euclidean generator G = kappa^2 / (2 mu) - W (or the strong-damping drift
// form). The operator substitution k -> i kappa happens at this level, and
// its numerical content is checked through continuation_check and the
// lattice propagator.

#include "wick/closed_form.hpp"
#include "wick/grid.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace wick {

/// Real function of (x, t). Polynomials in x are stored by coefficient so they
/// can be serialized and differentiated exactly; anything else is a callable.
class Potential {
 public:
  using Fn = std::function<double(double x, double t)>;

  Potential() = default;

  static Potential zero() { return {}; }
  /// c0 + c1 x + c2 x^2 + ...
  static Potential polynomial(std::vector<double> coefficients);
  static Potential custom(Fn fn, bool time_dependent = false);

  double operator()(double x, double t = 0.0) const;

  /// d/dx. Exact for polynomials, central difference otherwise.
  Potential derivative() const;
  Potential scaled(double factor) const;

  bool is_polynomial() const { return !fn_; }
  bool is_zero() const { return is_polynomial() && coeffs_.empty(); }
  /// Coefficients with trailing zeros removed; empty for the zero polynomial.
  const std::vector<double>& coefficients() const { return coeffs_; }
  bool time_dependent() const { return time_dependent_; }

 private:
  std::vector<double> coeffs_;
  Fn fn_;
  bool time_dependent_ = false;
};

struct HamiltonianSpec {
  double mu_h = 1.0;  ///< m / hbar
  Potential V_h;      ///< V / hbar = mu_h u(x)
  double hbar = 1.0;

  static HamiltonianSpec free(double mass, double hbar = 1.0);
  static HamiltonianSpec harmonic(double mass, double omega, double hbar = 1.0);

  double mass() const { return mu_h * hbar; }
  bool time_dependent() const { return V_h.time_dependent(); }
  void validate() const;
};

struct PotentialLike {
  Potential W;
};

/// Strong-damping form: drift -V'(x) / (m gamma).
struct DriftForm {
  Potential Vprime;
  double m_gamma = 1.0;
};

struct GeneratorSpec {
  double mu = 1.0;  ///< mu_hbar or mu_D = 1 / (2 D)
  std::variant<PotentialLike, DriftForm> form;

  double diffusion() const { return 0.5 / mu; }
  bool time_dependent() const;
  void validate() const;
};

struct SwrMicro {};
struct GwrMacro {
  double D = 1.0;
};
struct GwrStrongDamping {
  double D = 1.0;
  double m_gamma = 1.0;
};

using WickMode = std::variant<SwrMicro, GwrMacro, GwrStrongDamping>;

/// it -> t with identical parameters: mu = mu_h, W = V_h.
GeneratorSpec swr_map(const HamiltonianSpec& h);

/// SwrMicro delegates to swr_map; GwrMacro rescales the potential to
/// W = mu_D u(x); GwrStrongDamping produces the drift form with V' = hbar V_h'.
GeneratorSpec gwr_map(const HamiltonianSpec& h, const WickMode& mode);

/// D_hbar = hbar / (2 m).
double micro_diffusion_coefficient(double mass, double hbar);

/// D = k_B T / (m gamma).
double macro_diffusion_coefficient(double temperature, double m_gamma, const Units& units = {});

/// gamma = 2 k_B T / hbar, the friction at which D = D_hbar.
double micro_friction(double temperature, const Units& units = {});

/// L_e(x, xdot) = (mu/2) xdot^2 + W(x) or (mu/2)(xdot + V'(x)/(m gamma))^2.
std::function<double(double x, double xdot)> euclid_lagrangian(const GeneratorSpec& g, double t = 0.0);

/// Closed-form kernel family of a generator, when it has one.
std::optional<EuclideanKernelSpec> classify(const GeneratorSpec& g);
std::optional<QuantumKernelSpec> classify(const HamiltonianSpec& h);

HamiltonianSpec hamiltonian_for(const QuantumKernelSpec& q);

struct ContinuationResult {
  std::complex<double> quantum_at_imag_t;
  double euclid = 0.0;
  double abs_error = 0.0;
};

/// Quantum amplitude at t = -i tau against the SWR-mapped Euclidean kernel at tau.
ContinuationResult continuation_check(const QuantumKernelSpec& q, double x_b, double x_a, double tau);

}  // namespace wick
