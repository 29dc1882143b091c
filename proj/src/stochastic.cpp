#include "wick/stochastic.hpp"

#include "wick/closed_form.hpp"
#include "wick/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace wick {

void LangevinSpec::validate() const {
  if (!(D > 0) || !std::isfinite(D)) throw std::invalid_argument("Langevin diffusion D must be positive");
}

double euler_maruyama_step(double y, double t, double dt, const LangevinSpec& spec, double xi) {
  if (!(dt > 0)) throw std::domain_error("Euler-Maruyama step requires dt > 0");
  return y + spec.A(y, t) * dt + spec.B(y, t) * std::sqrt(2.0 * spec.D * dt) * xi;
}

std::mt19937_64 path_stream(std::uint64_t seed, std::uint64_t path) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)};
  return std::mt19937_64(seq);
}

Eigen::Index PathEnsemble::column_of(Eigen::Index step) const {
  const auto it = std::lower_bound(recorded_steps.begin(), recorded_steps.end(), step);
  if (it == recorded_steps.end() || *it != step) {
    throw UsageError("step " + std::to_string(step) + " was not recorded in this ensemble");
  }
  return static_cast<Eigen::Index>(it - recorded_steps.begin());
}

PathEnsemble simulate_ensemble(const LangevinSpec& spec, double y0, double t_final, Eigen::Index n_steps,
                               Eigen::Index n_paths, std::uint64_t seed, std::vector<Eigen::Index> record) {
  spec.validate();
  if (!(t_final > 0) || n_steps < 1 || n_paths < 1) {
    throw std::invalid_argument("simulate_ensemble: t_final, n_steps and n_paths must be positive");
  }
  if (record.empty()) {
    record.resize(static_cast<std::size_t>(n_steps + 1));
    for (Eigen::Index s = 0; s <= n_steps; ++s) record[static_cast<std::size_t>(s)] = s;
  }
  std::sort(record.begin(), record.end());
  record.erase(std::unique(record.begin(), record.end()), record.end());
  if (record.front() < 0 || record.back() > n_steps) throw std::invalid_argument("recorded step out of range");

  PathEnsemble e{n_paths, n_steps, t_final / static_cast<double>(n_steps), seed, record,
                 Eigen::MatrixXd(n_paths, static_cast<Eigen::Index>(record.size()))};
  const double dt = e.dt;
  const double amp = std::sqrt(2.0 * spec.D * dt);
  for (Eigen::Index p = 0; p < n_paths; ++p) {
    std::mt19937_64 rng = path_stream(seed, static_cast<std::uint64_t>(p));
    std::normal_distribution<double> normal;
    double y = y0;
    std::size_t next = 0;
    if (record[0] == 0) e.positions(p, static_cast<Eigen::Index>(next++)) = y;
    for (Eigen::Index s = 1; s <= n_steps; ++s) {
      const double t = static_cast<double>(s - 1) * dt;
      y += spec.A(y, t) * dt + spec.B(y, t) * amp * normal(rng);
      if (next < record.size() && record[next] == s) e.positions(p, static_cast<Eigen::Index>(next++)) = y;
    }
  }
  return e;
}

SampleMoments sample_moments(const Eigen::Ref<const Eigen::VectorXd>& samples) {
  const double n = static_cast<double>(samples.size());
  if (samples.size() < 2) throw std::invalid_argument("sample_moments needs at least two samples");
  const double mean = samples.mean();
  const Eigen::ArrayXd c = samples.array() - mean;
  const double m2 = c.square().mean();
  const double m4 = c.square().square().mean();
  const double var = m2 * n / (n - 1.0);
  return {mean, var, std::sqrt(var / n), std::sqrt(std::max(0.0, m4 - m2 * m2) / n)};
}

EmpiricalPdf empirical_pdf(const PathEnsemble& ensemble, const Grid1D& grid, Eigen::Index step) {
  const auto col = ensemble.at_step(step);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(grid.size());
  Eigen::Index off = 0;
  for (Eigen::Index p = 0; p < col.size(); ++p) {
    const double u = std::floor((col[p] - grid.x_min()) / grid.dx() + 0.5);
    if (u < 0 || u >= static_cast<double>(grid.size())) {
      ++off;
      continue;
    }
    counts[static_cast<Eigen::Index>(u)] += 1.0;
  }
  const double n = static_cast<double>(col.size());
  EmpiricalPdf out{RealField(grid, counts / (n * grid.dx())), static_cast<double>(off) / n, false};
  out.coverage_warning = out.off_grid_fraction > 0.01;
  return out;
}

Eigen::VectorXd sample_brownian_bridge(double x_a, double x_b, double tau, Eigen::Index n_steps, double D,
                                       std::mt19937_64& rng) {
  if (!(tau > 0) || n_steps < 1) throw std::invalid_argument("bridge requires tau > 0 and n_steps >= 1");
  if (D < 0) throw std::invalid_argument("bridge diffusion must be non-negative");
  Eigen::VectorXd x(n_steps + 1);
  x[0] = x_a;
  x[n_steps] = x_b;
  const double dt = tau / static_cast<double>(n_steps);
  std::normal_distribution<double> normal;
  for (Eigen::Index n = 1; n < n_steps; ++n) {
    const double remaining = static_cast<double>(n_steps - n) * dt;
    const double frac = dt / (remaining + dt);
    const double mean = x[n - 1] + (x_b - x[n - 1]) * frac;
    const double var = 2.0 * D * dt * remaining / (remaining + dt);
    x[n] = mean + std::sqrt(var) * normal(rng);
  }
  return x;
}

FKEstimate feynman_kac_estimate(double x_a, double x_b, double tau, const GeneratorSpec& g, Eigen::Index n_steps,
                                Eigen::Index n_samples, std::uint64_t seed) {
  g.validate();
  const auto* pl = std::get_if<PotentialLike>(&g.form);
  if (!pl) throw UnsupportedSpecError("Feynman-Kac estimator needs a potential-form generator");
  if (!(tau > 0) || n_steps < 1 || n_samples < 1) {
    throw std::invalid_argument("feynman_kac_estimate: tau, n_steps and n_samples must be positive");
  }
  const double D = g.diffusion();
  const double dt = tau / static_cast<double>(n_steps);
  std::mt19937_64 rng = path_stream(seed, 0);
  // Welford accumulation: constant weights give exactly zero spread.
  double mean = 0.0, m2 = 0.0;
  for (Eigen::Index s = 1; s <= n_samples; ++s) {
    const Eigen::VectorXd path = sample_brownian_bridge(x_a, x_b, tau, n_steps, D, rng);
    double action = 0.0;
    for (Eigen::Index n = 1; n <= n_steps; ++n) action += pl->W(path[n], static_cast<double>(n) * dt);
    const double w = std::exp(-action * dt);
    const double delta = w - mean;
    mean += delta / static_cast<double>(s);
    m2 += delta * (w - mean);
  }
  const double free = brown_kernel(D, x_b, x_a, tau);
  const double sd = n_samples > 1 ? std::sqrt(m2 / static_cast<double>(n_samples - 1)) : 0.0;
  return {free * mean, free * sd / std::sqrt(static_cast<double>(n_samples)), n_samples, n_steps, seed};
}

Json to_json(const FKEstimate& e) {
  return {{"value", e.value}, {"std_err", e.std_err}, {"n_samples", e.n_samples}, {"n_steps", e.n_steps},
          {"seed", e.seed}};
}

Json ensemble_summary_json(const PathEnsemble& e) {
  Json steps = Json::array();
  for (Eigen::Index s : e.recorded_steps) {
    const SampleMoments m = sample_moments(e.at_step(s));
    steps.push_back({{"step", s},
                     {"t", static_cast<double>(s) * e.dt},
                     {"mean", m.mean},
                     {"variance", m.variance},
                     {"se_mean", m.se_mean},
                     {"se_variance", m.se_variance}});
  }
  return {{"n_paths", e.n_paths}, {"n_steps", e.n_steps}, {"dt", e.dt}, {"seed", e.seed}, {"steps", steps}};
}

void write_ensemble_csv(std::ostream& os, const PathEnsemble& e) {
  os << "path_id,step,x\n" << std::setprecision(17);
  for (Eigen::Index p = 0; p < e.n_paths; ++p) {
    for (std::size_t c = 0; c < e.recorded_steps.size(); ++c) {
      os << p << ',' << e.recorded_steps[c] << ',' << e.positions(p, static_cast<Eigen::Index>(c)) << '\n';
    }
  }
}

}  // namespace wick
