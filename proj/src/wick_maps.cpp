#include "wick/wick_maps.hpp"

#include <cmath>
#include <stdexcept>

namespace wick {

namespace {

void trim(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
}

}  // namespace

Potential Potential::polynomial(std::vector<double> coefficients) {
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw std::invalid_argument("polynomial coefficients must be finite");
  }
  Potential p;
  p.coeffs_ = std::move(coefficients);
  trim(p.coeffs_);
  return p;
}

Potential Potential::custom(Fn fn, bool time_dependent) {
  if (!fn) throw std::invalid_argument("custom potential needs a callable");
  Potential p;
  p.fn_ = std::move(fn);
  p.time_dependent_ = time_dependent;
  return p;
}

double Potential::operator()(double x, double t) const {
  if (fn_) return fn_(x, t);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Potential Potential::derivative() const {
  if (fn_) {
    return custom(
        [f = fn_](double x, double t) {
          const double h = 1e-5 * (1.0 + std::abs(x));
          return (f(x + h, t) - f(x - h, t)) / (2.0 * h);
        },
        time_dependent_);
  }
  std::vector<double> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(static_cast<double>(k) * coeffs_[k]);
  return polynomial(std::move(d));
}

Potential Potential::scaled(double factor) const {
  if (fn_) {
    return custom([f = fn_, factor](double x, double t) { return factor * f(x, t); }, time_dependent_);
  }
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= factor;
  return polynomial(std::move(c));
}

HamiltonianSpec HamiltonianSpec::free(double mass, double hbar) {
  HamiltonianSpec h{mass / hbar, Potential::zero(), hbar};
  h.validate();
  return h;
}

HamiltonianSpec HamiltonianSpec::harmonic(double mass, double omega, double hbar) {
  if (!(omega > 0)) throw std::invalid_argument("omega must be positive");
  const double mu = mass / hbar;
  HamiltonianSpec h{mu, Potential::polynomial({0.0, 0.0, 0.5 * mu * omega * omega}), hbar};
  h.validate();
  return h;
}

void HamiltonianSpec::validate() const {
  if (!(mu_h > 0)) throw std::invalid_argument("mu_h must be positive");
  if (!(hbar > 0)) throw std::invalid_argument("hbar must be positive");
}

bool GeneratorSpec::time_dependent() const {
  return std::visit(
      [](const auto& f) {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, PotentialLike>) {
          return f.W.time_dependent();
        } else {
          return f.Vprime.time_dependent();
        }
      },
      form);
}

void GeneratorSpec::validate() const {
  if (!(mu > 0)) throw std::invalid_argument("generator mu must be positive");
  if (const auto* d = std::get_if<DriftForm>(&form); d && !(d->m_gamma > 0)) {
    throw std::invalid_argument("m_gamma must be positive");
  }
}

GeneratorSpec swr_map(const HamiltonianSpec& h) {
  h.validate();
  return {h.mu_h, PotentialLike{h.V_h}};
}

GeneratorSpec gwr_map(const HamiltonianSpec& h, const WickMode& mode) {
  h.validate();
  return std::visit(
      [&](const auto& m) -> GeneratorSpec {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, SwrMicro>) {
          return swr_map(h);
        } else if constexpr (std::is_same_v<M, GwrMacro>) {
          if (!(m.D > 0)) throw std::invalid_argument("GWR diffusion coefficient must be positive");
          const double mu_d = 0.5 / m.D;
          // W = mu_D u with u = V_h / mu_h.
          return {mu_d, PotentialLike{h.V_h.scaled(mu_d / h.mu_h)}};
        } else {
          if (!(m.D > 0) || !(m.m_gamma > 0)) {
            throw std::invalid_argument("strong damping needs D > 0 and m_gamma > 0");
          }
          return {0.5 / m.D, DriftForm{h.V_h.scaled(h.hbar).derivative(), m.m_gamma}};
        }
      },
      mode);
}

double micro_diffusion_coefficient(double mass, double hbar) {
  if (!(mass > 0) || !(hbar > 0)) throw std::invalid_argument("mass and hbar must be positive");
  return hbar / (2.0 * mass);
}

double macro_diffusion_coefficient(double temperature, double m_gamma, const Units& units) {
  units.validate();
  if (!(temperature > 0) || !(m_gamma > 0)) {
    throw std::invalid_argument("temperature and m_gamma must be positive");
  }
  return units.k_B * temperature / m_gamma;
}

double micro_friction(double temperature, const Units& units) {
  units.validate();
  if (!(temperature > 0)) throw std::invalid_argument("temperature must be positive");
  return 2.0 * units.k_B * temperature / units.hbar;
}

std::function<double(double, double)> euclid_lagrangian(const GeneratorSpec& g, double t) {
  g.validate();
  const double mu = g.mu;
  if (const auto* p = std::get_if<PotentialLike>(&g.form)) {
    return [mu, W = p->W, t](double x, double xdot) { return 0.5 * mu * xdot * xdot + W(x, t); };
  }
  const auto& d = std::get<DriftForm>(g.form);
  return [mu, Vp = d.Vprime, mg = d.m_gamma, t](double x, double xdot) {
    const double u = xdot + Vp(x, t) / mg;
    return 0.5 * mu * u * u;
  };
}

std::optional<EuclideanKernelSpec> classify(const GeneratorSpec& g) {
  g.validate();
  const double D = g.diffusion();
  if (const auto* p = std::get_if<PotentialLike>(&g.form)) {
    if (!p->W.is_polynomial()) return std::nullopt;
    const auto& c = p->W.coefficients();
    if (c.empty()) return Brown{D};
    if (c.size() == 3 && c[0] == 0.0 && c[1] == 0.0 && c[2] > 0.0) {
      return HarmonicEuclid{g.mu, std::sqrt(2.0 * c[2] / g.mu)};
    }
    return std::nullopt;
  }
  const auto& d = std::get<DriftForm>(g.form);
  if (!d.Vprime.is_polynomial()) return std::nullopt;
  const auto& c = d.Vprime.coefficients();
  if (c.empty()) return Brown{D};
  if (c.size() == 1) return DriftBrown{D, -c[0] / d.m_gamma};
  if (c.size() == 2 && c[0] == 0.0 && c[1] > 0.0) return OrnsteinUhlenbeck{D, c[1] / d.m_gamma};
  return std::nullopt;
}

std::optional<QuantumKernelSpec> classify(const HamiltonianSpec& h) {
  h.validate();
  if (!h.V_h.is_polynomial()) return std::nullopt;
  const auto& c = h.V_h.coefficients();
  if (c.empty()) return FreeParticle{h.mass(), h.hbar};
  if (c.size() == 3 && c[0] == 0.0 && c[1] == 0.0 && c[2] > 0.0) {
    return HarmonicOscillator{h.mass(), h.hbar, std::sqrt(2.0 * c[2] / h.mu_h)};
  }
  return std::nullopt;
}

HamiltonianSpec hamiltonian_for(const QuantumKernelSpec& q) {
  validate(q);
  return std::visit(
      [](const auto& s) -> HamiltonianSpec {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, FreeParticle>) {
          return HamiltonianSpec::free(s.mass, s.hbar);
        } else {
          return HamiltonianSpec::harmonic(s.mass, s.omega, s.hbar);
        }
      },
      q);
}

ContinuationResult continuation_check(const QuantumKernelSpec& q, double x_b, double x_a, double tau) {
  if (!(tau > 0)) throw std::domain_error("continuation check requires tau > 0");
  const auto euclid_spec = classify(swr_map(hamiltonian_for(q)));
  if (!euclid_spec) throw UnsupportedSpecError("quantum spec has no closed-form Euclidean image");
  ContinuationResult r;
  r.quantum_at_imag_t = quantum_kernel(q, x_b, x_a, std::complex<double>(0.0, -tau));
  r.euclid = euclid_kernel(*euclid_spec, x_b, x_a, tau);
  r.abs_error = std::abs(r.quantum_at_imag_t - r.euclid);
  return r;
}

}  // namespace wick
