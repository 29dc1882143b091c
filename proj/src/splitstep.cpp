#include "wick/splitstep.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>

namespace wick {

Eigen::VectorXd wave_numbers(const Grid1D& grid) {
  const Eigen::Index n = grid.size();
  const double base = 2.0 * std::numbers::pi / (static_cast<double>(n) * grid.dx());
  Eigen::VectorXd k(n);
  for (Eigen::Index j = 0; j < n; ++j) k[j] = base * static_cast<double>(j < (n + 1) / 2 ? j : j - n);
  return k;
}

SplitStepPlan SplitStepPlan::build(const Grid1D& grid, double dt, const HamiltonianSpec& h, SplittingOrder order) {
  h.validate();
  if (!(dt > 0)) throw std::domain_error("split-step requires dt > 0");
  const Eigen::VectorXd k = wave_numbers(grid);
  Eigen::VectorXcd phase(grid.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    phase[j] = std::exp(Complex(0.0, -k[j] * k[j] * dt / (2.0 * h.mu_h)));
  }
  return {grid, dt, order, std::move(phase)};
}

Eigen::VectorXcd SplitStepPlan::potential_phase(const HamiltonianSpec& h, double t, double fraction) const {
  Eigen::VectorXcd phase(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    phase[i] = std::exp(Complex(0.0, -h.V_h(grid.node(i), t) * fraction * dt));
  }
  return phase;
}

ComplexField splitstep_quantum_propagate(const ComplexField& init, const HamiltonianSpec& h,
                                         const TimeSlicing& slicing, SplittingOrder order,
                                         const AmplitudeObserver& observer) {
  slicing.validate();
  const Grid1D& grid = init.grid();
  const SplitStepPlan plan = SplitStepPlan::build(grid, slicing.dt(), h, order);
  const bool td = h.time_dependent();

  Eigen::FFT<double> fft;
  std::vector<Complex> psi(init.values().data(), init.values().data() + grid.size());
  std::vector<Complex> spec;
  auto kinetic = [&] {
    fft.fwd(spec, psi);
    for (Eigen::Index j = 0; j < grid.size(); ++j) spec[j] *= plan.kinetic_phase[j];
    fft.inv(psi, spec);
  };
  auto potential = [&](const Eigen::VectorXcd& phase) {
    for (Eigen::Index i = 0; i < grid.size(); ++i) psi[i] *= phase[i];
  };

  Eigen::VectorXcd full, half;
  if (!td) {
    full = plan.potential_phase(h, slicing.t_a, 1.0);
    half = plan.potential_phase(h, slicing.t_a, 0.5);
  }
  for (Eigen::Index n = 1; n <= slicing.steps(); ++n) {
    const double t_prev = slicing.time(n - 1);
    const double t_next = slicing.time(n);
    if (order == SplittingOrder::kFirst) {
      kinetic();
      potential(td ? plan.potential_phase(h, t_next, 1.0) : full);
    } else {
      potential(td ? plan.potential_phase(h, t_prev, 0.5) : half);
      kinetic();
      potential(td ? plan.potential_phase(h, t_next, 0.5) : half);
    }
    if (observer) {
      observer(n, ComplexField(grid, Eigen::Map<const Eigen::VectorXcd>(psi.data(), grid.size())));
    }
  }
  return ComplexField(grid, Eigen::Map<const Eigen::VectorXcd>(psi.data(), grid.size()));
}

Complex free_packet(double x, double t, double mu_h, double sigma, double x0, double k0) {
  const double v = k0 / mu_h;
  const Complex s(1.0, t / (2.0 * mu_h * sigma * sigma));
  const double d = x - x0 - v * t;
  const double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
  return norm / std::sqrt(s) *
         std::exp(-d * d / (4.0 * sigma * sigma * s) + Complex(0.0, k0 * (x - 0.5 * v * t)));
}

Complex coherent_state(double x, double t, double mu_h, double omega, double x0) {
  const double a = mu_h * omega;
  const double c = x - x0 * std::cos(omega * t);
  const double norm = std::pow(a / std::numbers::pi, 0.25);
  return norm * std::exp(Complex(-0.5 * a * c * c, -a * x0 * std::sin(omega * t) * x));
}

double phase_aligned_l2_error(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid())) throw UsageError("phase_aligned_l2_error: fields live on different grids");
  const double dx = a.grid().dx();
  const double na = a.values().squaredNorm() * dx;
  const double nb = b.values().squaredNorm() * dx;
  const double overlap = std::abs(a.values().dot(b.values())) * dx;
  return std::sqrt(std::max(0.0, na + nb - 2.0 * overlap));
}

}  // namespace wick
