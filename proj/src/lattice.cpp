#include "wick/lattice.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace wick {

TimeSlicing TimeSlicing::with_steps(double t_a, double t_b, Eigen::Index steps) {
  if (steps < 1) throw std::invalid_argument("time slicing needs at least one step");
  TimeSlicing s{t_a, t_b, steps - 1};
  s.validate();
  return s;
}

void TimeSlicing::validate() const {
  if (!(t_b > t_a)) throw std::invalid_argument("time slicing requires t_b > t_a");
  if (interior < 0) throw std::invalid_argument("interior slice count must be non-negative");
}

double short_time_euclid_kernel(double x_to, double x_from, double dt, const GeneratorSpec& g, double t,
                                DriftRule rule) {
  if (!(dt > 0)) throw std::domain_error("short-time kernel requires dt > 0");
  const double mu = g.mu;
  const double pref = std::sqrt(mu / (2.0 * std::numbers::pi * dt));
  const double velocity = (x_to - x_from) / dt;
  if (const auto* p = std::get_if<PotentialLike>(&g.form)) {
    return pref * std::exp(-0.5 * mu * dt * velocity * velocity - p->W(x_to, t) * dt);
  }
  const auto& d = std::get<DriftForm>(g.form);
  const double u = velocity + d.Vprime(x_to, t) / d.m_gamma;
  const double gaussian = pref * std::exp(-0.5 * mu * dt * u * u);
  if (rule == DriftRule::kLiteral) return gaussian;
  // Second derivative by polynomial differentiation or central difference.
  const double curvature = d.Vprime.derivative()(x_to, t);
  const double jacobian = 1.0 + dt * curvature / d.m_gamma;
  if (jacobian <= 0.0) {
    throw std::domain_error("time step too large for the drift curvature (non-monotone post-point map)");
  }
  return jacobian * gaussian;
}

ShortTimeKernel short_time_kernel_for(const GeneratorSpec& g, DriftRule rule) {
  g.validate();
  return [g, rule](double x_to, double x_from, double dt, double t) {
    return short_time_euclid_kernel(x_to, x_from, dt, g, t, rule);
  };
}

TransferMatrix build_transfer_matrix(const Grid1D& grid, double dt, const ShortTimeKernel& kernel, double t) {
  if (!(dt > 0)) throw std::domain_error("transfer matrix requires dt > 0");
  const Eigen::Index n = grid.size();
  Eigen::MatrixXd T(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double x_from = grid.node(j);
    for (Eigen::Index i = 0; i < n; ++i) T(i, j) = kernel(grid.node(i), x_from, dt, t) * grid.dx();
  }
  return {grid, dt, std::move(T)};
}

TransferMatrix build_transfer_matrix(const Grid1D& grid, double dt, const GeneratorSpec& g, double t,
                                     DriftRule rule) {
  g.validate();
  if (std::holds_alternative<PotentialLike>(g.form) || rule == DriftRule::kLiteral) {
    return build_transfer_matrix(grid, dt, short_time_kernel_for(g, rule), t);
  }
  // Drift form: hoist V' and V'' out of the inner loop.
  const auto& d = std::get<DriftForm>(g.form);
  const Potential curvature = d.Vprime.derivative();
  const Eigen::Index n = grid.size();
  const double pref = std::sqrt(g.mu / (2.0 * std::numbers::pi * dt)) * grid.dx();
  Eigen::MatrixXd T(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x_to = grid.node(i);
    const double shift = d.Vprime(x_to, t) / d.m_gamma;
    const double jacobian = 1.0 + dt * curvature(x_to, t) / d.m_gamma;
    if (jacobian <= 0.0) {
      throw std::domain_error("time step too large for the drift curvature (non-monotone post-point map)");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double u = (x_to - grid.node(j)) / dt + shift;
      T(i, j) = jacobian * pref * std::exp(-0.5 * g.mu * dt * u * u);
    }
  }
  return {grid, dt, std::move(T)};
}

RealField euclid_propagate(const RealField& init, const ShortTimeKernel& kernel, bool time_dependent,
                           const TimeSlicing& slicing) {
  slicing.validate();
  const Grid1D& grid = init.grid();
  const double dt = slicing.dt();
  Eigen::VectorXd p = init.values();
  if (!time_dependent) {
    const TransferMatrix T = build_transfer_matrix(grid, dt, kernel, slicing.t_a);
    for (Eigen::Index n = 1; n <= slicing.steps(); ++n) p = T.entries * p;
  } else {
    for (Eigen::Index n = 1; n <= slicing.steps(); ++n) {
      p = build_transfer_matrix(grid, dt, kernel, slicing.time(n)).entries * p;
    }
  }
  return RealField(grid, std::move(p));
}

RealField euclid_propagate(const RealField& init, const GeneratorSpec& g, const TimeSlicing& slicing,
                           DriftRule rule) {
  g.validate();
  slicing.validate();
  if (!g.time_dependent()) {
    const TransferMatrix T = build_transfer_matrix(init.grid(), slicing.dt(), g, slicing.t_a, rule);
    Eigen::VectorXd p = init.values();
    for (Eigen::Index n = 1; n <= slicing.steps(); ++n) p = T.entries * p;
    return RealField(init.grid(), std::move(p));
  }
  return euclid_propagate(init, short_time_kernel_for(g, rule), true, slicing);
}

namespace {

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& base, Eigen::Index exponent) {
  Eigen::MatrixXd result;
  Eigen::MatrixXd square = base;
  bool have_result = false;
  while (exponent > 0) {
    if (exponent & 1) {
      result = have_result ? Eigen::MatrixXd(square * result) : square;
      have_result = true;
    }
    exponent >>= 1;
    if (exponent > 0) square = square * square;
  }
  return result;
}

KernelMatrix compose_slices(const Grid1D& grid, const TimeSlicing& slicing, bool time_dependent,
                            const std::function<TransferMatrix(double)>& transfer_at) {
  slicing.validate();
  Eigen::MatrixXd K;
  if (!time_dependent) {
    K = matrix_power(transfer_at(slicing.t_a).entries, slicing.steps());
  } else {
    K = transfer_at(slicing.time(1)).entries;
    for (Eigen::Index n = 2; n <= slicing.steps(); ++n) K = transfer_at(slicing.time(n)).entries * K;
  }
  K /= grid.dx();
  return {grid, slicing.t_a, slicing.t_b, std::move(K)};
}

}  // namespace

KernelMatrix euclid_kernel_matrix(const GeneratorSpec& g, const Grid1D& grid, const TimeSlicing& slicing,
                                  DriftRule rule) {
  g.validate();
  const double dt = slicing.dt();
  return compose_slices(grid, slicing, g.time_dependent(),
                        [&](double t) { return build_transfer_matrix(grid, dt, g, t, rule); });
}

KernelMatrix euclid_kernel_matrix(const ShortTimeKernel& kernel, bool time_dependent, const Grid1D& grid,
                                  const TimeSlicing& slicing) {
  const double dt = slicing.dt();
  return compose_slices(grid, slicing, time_dependent,
                        [&](double t) { return build_transfer_matrix(grid, dt, kernel, t); });
}

KernelMatrix sample_kernel_matrix(const Grid1D& grid, double t_a, double t_b, const KernelFn& kernel) {
  const Eigen::Index n = grid.size();
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) K(i, j) = kernel(grid.node(i), grid.node(j));
  }
  return {grid, t_a, t_b, std::move(K)};
}

KernelMatrix identity_kernel_matrix(const Grid1D& grid, double t) {
  return {grid, t, t, Eigen::MatrixXd::Identity(grid.size(), grid.size()) / grid.dx()};
}

std::vector<Eigen::Index> policy_columns(const Grid1D& grid, const KernelFn& reference, double threshold) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double x_a = grid.node(j);
    double peak = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) peak = std::max(peak, reference(grid.node(i), x_a));
    if (peak <= 0.0) continue;
    if (reference(grid.x_min(), x_a) <= threshold * peak && reference(grid.x_max(), x_a) <= threshold * peak) {
      cols.push_back(j);
    }
  }
  return cols;
}

double sup_error(const KernelMatrix& k, const KernelFn& reference, const std::vector<Eigen::Index>& columns) {
  if (columns.empty()) throw std::domain_error("no kernel column satisfies the edge-truncation policy");
  double err = 0.0;
  for (Eigen::Index j : columns) {
    const double x_a = k.grid.node(j);
    for (Eigen::Index i = 0; i < k.grid.size(); ++i) {
      err = std::max(err, std::abs(k.entries(i, j) - reference(k.grid.node(i), x_a)));
    }
  }
  return err;
}

Eigen::VectorXd column_masses(const KernelMatrix& k) {
  Eigen::VectorXd m(k.grid.size());
  for (Eigen::Index j = 0; j < k.grid.size(); ++j) m[j] = trapezoid(k.entries.col(j), k.grid.dx());
  return m;
}

void write_kernel_csv(std::ostream& os, const KernelMatrix& k) {
  os << "x_to,x_from,value\n" << std::setprecision(17);
  for (Eigen::Index j = 0; j < k.grid.size(); ++j) {
    for (Eigen::Index i = 0; i < k.grid.size(); ++i) {
      os << k.grid.node(i) << ',' << k.grid.node(j) << ',' << k.entries(i, j) << '\n';
    }
  }
}

Json kernel_summary_json(const KernelMatrix& k, const std::optional<KernelFn>& reference) {
  const Eigen::VectorXd masses = column_masses(k);
  Json j{{"grid", {{"x_min", k.grid.x_min()}, {"x_max", k.grid.x_max()}, {"n", k.grid.size()}}},
         {"t_a", k.t_a},
         {"t_b", k.t_b},
         {"min_entry", k.entries.minCoeff()},
         {"max_column_mass", masses.maxCoeff()},
         {"min_column_mass", masses.minCoeff()}};
  if (reference) {
    const auto cols = policy_columns(k.grid, *reference);
    j["policy_columns"] = cols.size();
    if (!cols.empty()) j["sup_error"] = sup_error(k, *reference, cols);
  }
  return j;
}

}  // namespace wick
