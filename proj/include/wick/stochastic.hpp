#pragma once

// Trajectory Monte Carlo: Euler-Maruyama paths of dy = A dt + B dW with
// <dW dW> = 2 D dt, and a Feynman-Kac estimator that samples exact Brownian
// bridges and weights them by exp(-sum W(x_n) dt).

#include "wick/grid.hpp"
#include "wick/spec_io.hpp"
#include "wick/wick_maps.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

namespace wick {

struct LangevinSpec {
  Potential A;
  Potential B = Potential::polynomial({1.0});
  double D = 1.0;

  void validate() const;
};

/// y + A(y,t) dt + B(y,t) sqrt(2 D dt) xi.
double euler_maruyama_step(double y, double t, double dt, const LangevinSpec& spec, double xi);

/// Independent generator for one path, derived from (seed, path index).
std::mt19937_64 path_stream(std::uint64_t seed, std::uint64_t path);

struct PathEnsemble {
  Eigen::Index n_paths = 0;
  Eigen::Index n_steps = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  std::vector<Eigen::Index> recorded_steps;  ///< ascending step indices in 0..n_steps
  Eigen::MatrixXd positions;                 ///< n_paths x recorded_steps.size()

  /// Column of `positions` holding step `step`; usage error if not recorded.
  Eigen::Index column_of(Eigen::Index step) const;
  auto at_step(Eigen::Index step) const { return positions.col(column_of(step)); }
};

/// Simulates n_paths paths of n_steps Euler-Maruyama steps from y0 to t_final.
/// `record` selects the stored steps; empty stores all of them.
PathEnsemble simulate_ensemble(const LangevinSpec& spec, double y0, double t_final, Eigen::Index n_steps,
                               Eigen::Index n_paths, std::uint64_t seed, std::vector<Eigen::Index> record = {});

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
  double se_mean = 0.0;
  double se_variance = 0.0;  ///< sqrt((m4 - s^4) / n)
};

SampleMoments sample_moments(const Eigen::Ref<const Eigen::VectorXd>& samples);

struct EmpiricalPdf {
  RealField density;
  double off_grid_fraction = 0.0;
  bool coverage_warning = false;  ///< more than 1% of samples fell off the grid
};

/// Histogram on node-centred bins of width dx, normalized by n_paths * dx.
EmpiricalPdf empirical_pdf(const PathEnsemble& ensemble, const Grid1D& grid, Eigen::Index step);

/// Exact discrete Brownian bridge x_0 = x_a, ..., x_{n_steps} = x_b.
Eigen::VectorXd sample_brownian_bridge(double x_a, double x_b, double tau, Eigen::Index n_steps, double D,
                                       std::mt19937_64& rng);

struct FKEstimate {
  double value = 0.0;
  double std_err = 0.0;
  Eigen::Index n_samples = 0;
  Eigen::Index n_steps = 0;
  std::uint64_t seed = 0;
};

/// Bridge-sampled estimate of the Euclidean kernel of a potential-form generator.
/// n_steps is the number of slices; W is applied at x_1 .. x_{n_steps}.
FKEstimate feynman_kac_estimate(double x_a, double x_b, double tau, const GeneratorSpec& g, Eigen::Index n_steps,
                                Eigen::Index n_samples, std::uint64_t seed);

Json to_json(const FKEstimate& e);
Json ensemble_summary_json(const PathEnsemble& e);

/// CSV rows `path_id,step,x` for every recorded step.
void write_ensemble_csv(std::ostream& os, const PathEnsemble& e);

}  // namespace wick
