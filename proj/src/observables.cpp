#include "wick/observables.hpp"

#include "wick/closed_form.hpp"
#include "wick/errors.hpp"
#include "wick/wick_maps.hpp"

#include <cmath>

namespace wick {

MomentReport moments(const RealField& field) {
  const Eigen::VectorXd& p = field.values();
  const Eigen::VectorXd x = field.grid().nodes();
  const double dx = field.grid().dx();
  const double mass = trapezoid(p, dx);
  if (!(std::abs(mass) >= 1e-12)) throw DegenerateFieldError("field mass below 1e-12");
  const double mean = trapezoid(p.cwiseProduct(x), dx) / mass;
  const Eigen::VectorXd c = (x.array() - mean).matrix();
  const double var = trapezoid(p.cwiseProduct(c.cwiseProduct(c)), dx) / mass;
  return {mean, std::max(0.0, var), mass};
}

double velocity_via_mean_drift(const RealField& before, const RealField& after, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("velocity_via_mean_drift requires delta > 0");
  return (moments(after).mean - moments(before).mean) / (2.0 * delta);
}

double velocity_operator_literal(const RealField& density, double mu) {
  if (!(mu > 0)) throw std::invalid_argument("mu must be positive");
  const Eigen::VectorXd& p = density.values();
  const Eigen::Index n = p.size();
  const double dx = density.grid().dx();
  if (n < 3) throw std::invalid_argument("velocity_operator_literal needs at least three nodes");
  Eigen::VectorXd dp(n);
  dp[0] = (p[1] - p[0]) / dx;
  dp[n - 1] = (p[n - 1] - p[n - 2]) / dx;
  for (Eigen::Index i = 1; i + 1 < n; ++i) dp[i] = (p[i + 1] - p[i - 1]) / (2.0 * dx);
  return -trapezoid(dp, dx) / mu;
}

double partition_function(double mu, double omega, double beta_hbar, const Grid1D& grid) {
  if (!(beta_hbar > 0)) throw std::invalid_argument("beta_hbar must be positive");
  const RealField diag =
      RealField::sample(grid, [&](double x) { return harmonic_euclid_kernel(mu, omega, x, x, beta_hbar); });
  return integrate(diag);
}

double lattice_partition_function(double mu, double omega, double beta_hbar, const Grid1D& grid,
                                  Eigen::Index steps) {
  if (!(beta_hbar > 0)) throw std::invalid_argument("beta_hbar must be positive");
  const GeneratorSpec g = swr_map(HamiltonianSpec::harmonic(mu, omega));
  const KernelMatrix k = euclid_kernel_matrix(g, grid, TimeSlicing::with_steps(0.0, beta_hbar, steps));
  return trapezoid(k.entries.diagonal(), grid.dx());
}

std::vector<PartitionRefinementRow> partition_refinement(double mu, double omega, double beta_hbar,
                                                         const Grid1D& grid,
                                                         const std::vector<Eigen::Index>& steps) {
  const double exact = harmonic_partition_exact(omega, beta_hbar);
  std::vector<PartitionRefinementRow> rows;
  for (Eigen::Index s : steps) {
    PartitionRefinementRow r{s, beta_hbar / static_cast<double>(s), 0.0, 0.0, 0.0};
    r.value = lattice_partition_function(mu, omega, beta_hbar, grid, s);
    r.error = std::abs(r.value - exact);
    if (!rows.empty()) r.order = std::log(rows.back().error / r.error) / std::log(rows.back().dt / r.dt);
    rows.push_back(r);
  }
  return rows;
}

Json to_json(const MomentReport& m) { return {{"mean", m.mean}, {"variance", m.variance}, {"mass", m.mass}}; }

Json to_json(const std::vector<PartitionRefinementRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"steps", r.steps}, {"dt", r.dt}, {"value", r.value}, {"error", r.error}, {"order", r.order}});
  }
  return out;
}

}  // namespace wick
