#include "wick/master.hpp"

#include "wick/errors.hpp"

#include <algorithm>
#include <cmath>

namespace wick {

void FokkerPlanckSpec::validate() const {
  if (!(D > 0) || !std::isfinite(D)) throw std::invalid_argument("Fokker-Planck diffusion D must be positive");
}

FokkerPlanckSpec SmoluchowskiSpec::to_fokker_planck() const {
  if (!(m_gamma > 0)) throw std::invalid_argument("m_gamma must be positive");
  return {Vprime.scaled(-1.0 / m_gamma), Potential::polynomial({1.0}), D, Potential::zero()};
}

FokkerPlanckSpec fokker_planck_for(const GeneratorSpec& g) {
  g.validate();
  if (const auto* d = std::get_if<DriftForm>(&g.form)) {
    return SmoluchowskiSpec{g.diffusion(), d->Vprime, d->m_gamma}.to_fokker_planck();
  }
  return {Potential::zero(), Potential::polynomial({1.0}), g.diffusion(), std::get<PotentialLike>(g.form).W};
}

Eigen::VectorXd TridiagonalOperator::apply(const Eigen::VectorXd& p) const {
  const Eigen::Index n = p.size();
  Eigen::VectorXd out = diag.cwiseProduct(p);
  out.head(n - 1) += upper.head(n - 1).cwiseProduct(p.tail(n - 1));
  out.tail(n - 1) += lower.tail(n - 1).cwiseProduct(p.head(n - 1));
  return out;
}

TridiagonalOperator fokker_planck_operator(const Grid1D& grid, const FokkerPlanckSpec& spec, double t,
                                           Boundary boundary) {
  spec.validate();
  const Eigen::Index n = grid.size();
  const double dx = grid.dx();
  // Interface flux J_{i+1/2} = alpha_i P_i + beta_i P_{i+1}.
  Eigen::VectorXd alpha(n - 1), beta(n - 1), b2(n), sink(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double b = spec.B(grid.node(i), t);
    b2[i] = b * b;
    sink[i] = spec.sink(grid.node(i), t);
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double a = spec.A(grid.node(i) + 0.5 * dx, t);
    alpha[i] = 0.5 * a + spec.D * b2[i] / dx;
    beta[i] = 0.5 * a - spec.D * b2[i + 1] / dx;
  }
  if (!alpha.allFinite() || !beta.allFinite() || !sink.allFinite()) {
    throw UnsupportedSpecError("Fokker-Planck coefficients are not finite on the grid");
  }

  TridiagonalOperator L{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 * dx : dx;
    if (i + 1 < n) {
      L.diag[i] -= alpha[i] / w;
      L.upper[i] = -beta[i] / w;
    }
    if (i > 0) {
      L.diag[i] += beta[i - 1] / w;
      L.lower[i] = alpha[i - 1] / w;
    }
    L.diag[i] -= sink[i];
  }
  if (boundary == Boundary::kDirichlet) {
    for (Eigen::Index i : {Eigen::Index{0}, n - 1}) L.lower[i] = L.diag[i] = L.upper[i] = 0.0;
  }
  return L;
}

Eigen::VectorXd solve_tridiagonal(const Eigen::VectorXd& lower, const Eigen::VectorXd& diag,
                                  const Eigen::VectorXd& upper, const Eigen::VectorXd& rhs) {
  const Eigen::Index n = diag.size();
  Eigen::VectorXd c(n), d(n);
  double denom = diag[0];
  if (denom == 0.0) throw std::domain_error("singular tridiagonal system");
  c[0] = upper[0] / denom;
  d[0] = rhs[0] / denom;
  for (Eigen::Index i = 1; i < n; ++i) {
    denom = diag[i] - lower[i] * c[i - 1];
    if (denom == 0.0) throw std::domain_error("singular tridiagonal system");
    c[i] = i + 1 < n ? upper[i] / denom : 0.0;
    d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
  }
  Eigen::VectorXd x(n);
  x[n - 1] = d[n - 1];
  for (Eigen::Index i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

CrankNicolsonResult evolve_crank_nicolson(const RealField& init, const FokkerPlanckSpec& spec, double t0,
                                          double t_final, const SolverConfig& config, const SnapshotFn& snapshot,
                                          Eigen::Index snapshot_every) {
  spec.validate();
  if (!(config.dt > 0)) throw std::invalid_argument("solver dt must be positive");
  if (!(t_final >= t0)) throw std::invalid_argument("t_final must not precede t0");
  const Grid1D& grid = init.grid();
  const Eigen::Index steps = std::max<Eigen::Index>(
      t_final > t0 ? 1 : 0, static_cast<Eigen::Index>(std::ceil((t_final - t0) / config.dt - 1e-9)));
  const double dt = steps > 0 ? (t_final - t0) / static_cast<double>(steps) : 0.0;

  Eigen::VectorXd p = init.values();
  if (config.boundary == Boundary::kDirichlet) p[0] = p[p.size() - 1] = 0.0;
  CrankNicolsonResult r{init, t_final, steps, dt, trapezoid(p, grid.dx()), 0.0, p.minCoeff()};

  TridiagonalOperator L;
  Eigen::VectorXd lo, di, up;
  auto prepare = [&](double t_mid) {
    L = fokker_planck_operator(grid, spec, t_mid, config.boundary);
    lo = -0.5 * dt * L.lower;
    di = Eigen::VectorXd::Ones(p.size()) - 0.5 * dt * L.diag;
    up = -0.5 * dt * L.upper;
  };
  if (!spec.time_dependent() && steps > 0) prepare(t0 + 0.5 * dt);
  for (Eigen::Index s = 1; s <= steps; ++s) {
    if (spec.time_dependent()) prepare(t0 + (static_cast<double>(s) - 0.5) * dt);
    const Eigen::VectorXd rhs = p + 0.5 * dt * L.apply(p);
    p = solve_tridiagonal(lo, di, up, rhs);
    if (!p.allFinite()) throw std::domain_error("Crank-Nicolson produced non-finite values");
    r.max_mass_drift = std::max(r.max_mass_drift, std::abs(trapezoid(p, grid.dx()) - r.mass_initial));
    r.min_value = std::min(r.min_value, p.minCoeff());
    if (snapshot && snapshot_every > 0 && (s % snapshot_every == 0 || s == steps)) {
      snapshot(s, t0 + static_cast<double>(s) * dt, RealField(grid, p));
    }
  }
  r.density = RealField(grid, std::move(p));
  return r;
}

RealField mollify_delta(const Grid1D& grid, double x0) {
  if (!grid.contains(x0)) throw std::domain_error("delta position lies outside the grid");
  RealField g = gaussian_field(grid, x0, 3.0 * grid.dx());
  return g.scaled(1.0 / integrate(g));
}

Json crank_nicolson_report_json(const CrankNicolsonResult& r) {
  return {{"t_final", r.t_final},       {"steps", r.steps},
          {"dt", r.dt},                 {"mass_initial", r.mass_initial},
          {"mass_final", integrate(r.density)}, {"max_mass_drift", r.max_mass_drift},
          {"min_value", r.min_value}};
}

}  // namespace wick
