#pragma once

// Physical quantities read off fields and kernels.

#include "wick/grid.hpp"
#include "wick/lattice.hpp"
#include "wick/spec_io.hpp"

#include <vector>

namespace wick {

struct MomentReport {
  double mean = 0.0;
  double variance = 0.0;
  double mass = 0.0;
};

/// Quadrature mass, and mean and central variance of field / mass.
/// DegenerateFieldError when the mass is below 1e-12.
MomentReport moments(const RealField& field);

/// (mean(t + delta) - mean(t - delta)) / (2 delta).
double velocity_via_mean_drift(const RealField& before, const RealField& after, double delta);

/// Quadrature of -(1/mu) dP/dx. A total derivative: zero for decaying densities.
double velocity_operator_literal(const RealField& density, double mu);

/// Trapezoid integral of the closed-form harmonic kernel diagonal over the grid.
double partition_function(double mu, double omega, double beta_hbar, const Grid1D& grid);

/// Trace quadrature of the lattice kernel for the harmonic Euclidean generator
/// with `steps` slices over [0, beta_hbar].
double lattice_partition_function(double mu, double omega, double beta_hbar, const Grid1D& grid,
                                  Eigen::Index steps);

struct PartitionRefinementRow {
  Eigen::Index steps = 0;
  double dt = 0.0;
  double value = 0.0;
  double error = 0.0;  ///< |value - exact|
  double order = 0.0;  ///< log2 of the error ratio against the previous row; 0 on the first
};

/// Lattice partition function for each slice count, with observed orders.
std::vector<PartitionRefinementRow> partition_refinement(double mu, double omega, double beta_hbar,
                                                         const Grid1D& grid,
                                                         const std::vector<Eigen::Index>& steps);

Json to_json(const MomentReport& m);
Json to_json(const std::vector<PartitionRefinementRow>& rows);

}  // namespace wick
