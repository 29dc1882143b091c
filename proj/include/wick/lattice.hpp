#pragma once

// Time-sliced Euclidean path integral on a grid. One slice is the
// Gaussian-integrated short-time kernel with the potential (or drift)
// evaluated at the post-point x_n; composing N+1 slices by matrix product is
// the lattice version of the transition probability.

#include "wick/errors.hpp"
#include "wick/grid.hpp"
#include "wick/spec_io.hpp"
#include "wick/wick_maps.hpp"

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace wick {

/// [t_a, t_b] cut into N+1 equal slices.
struct TimeSlicing {
  double t_a = 0.0;
  double t_b = 1.0;
  Eigen::Index interior = 0;  ///< N

  static TimeSlicing with_steps(double t_a, double t_b, Eigen::Index steps);

  Eigen::Index steps() const { return interior + 1; }
  double dt() const { return (t_b - t_a) / static_cast<double>(interior + 1); }
  double time(Eigen::Index n) const { return t_a + static_cast<double>(n) * dt(); }
  void validate() const;
};

/// Post-point treatment of the strong-damping drift.
enum class DriftRule {
  /// Includes the change-of-variables factor 1 + dt V''(x_n) / (m gamma),
  /// which keeps each slice normalized over x_n.
  kJacobian,
  /// The bare Gaussian in (x_n - x_{n-1}) / dt + V'(x_n) / (m gamma); loses
  /// mass at rate V'' / (m gamma).
  kLiteral,
};

using ShortTimeKernel = std::function<double(double x_to, double x_from, double dt, double t)>;

/// Short-time kernel of one slice ending at time t (where W or V' is evaluated).
double short_time_euclid_kernel(double x_to, double x_from, double dt, const GeneratorSpec& g,
                                double t = 0.0, DriftRule rule = DriftRule::kJacobian);

ShortTimeKernel short_time_kernel_for(const GeneratorSpec& g, DriftRule rule = DriftRule::kJacobian);

/// T[i][j] = short-time kernel(x_i <- x_j) * dx. Column sums are left as built.
struct TransferMatrix {
  Grid1D grid;
  double dt;
  Eigen::MatrixXd entries;

  Eigen::VectorXd column_sums() const { return entries.colwise().sum().transpose(); }
  double max_column_sum_defect() const { return (column_sums().array() - 1.0).abs().maxCoeff(); }
};

TransferMatrix build_transfer_matrix(const Grid1D& grid, double dt, const GeneratorSpec& g, double t = 0.0,
                                     DriftRule rule = DriftRule::kJacobian);
TransferMatrix build_transfer_matrix(const Grid1D& grid, double dt, const ShortTimeKernel& kernel, double t = 0.0);

/// K[i][j] approximates the kernel from x_j at t_a to x_i at t_b.
template <typename Scalar>
struct BasicKernelMatrix {
  Grid1D grid;
  double t_a;
  double t_b;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> entries;
};

using KernelMatrix = BasicKernelMatrix<double>;

RealField euclid_propagate(const RealField& init, const GeneratorSpec& g, const TimeSlicing& slicing,
                           DriftRule rule = DriftRule::kJacobian);
RealField euclid_propagate(const RealField& init, const ShortTimeKernel& kernel, bool time_dependent,
                           const TimeSlicing& slicing);

/// (T)^{N+1} / dx. Time-independent generators use repeated squaring.
KernelMatrix euclid_kernel_matrix(const GeneratorSpec& g, const Grid1D& grid, const TimeSlicing& slicing,
                                  DriftRule rule = DriftRule::kJacobian);
KernelMatrix euclid_kernel_matrix(const ShortTimeKernel& kernel, bool time_dependent, const Grid1D& grid,
                                  const TimeSlicing& slicing);

using KernelFn = std::function<double(double x_b, double x_a)>;

/// Closed-form kernel sampled at every node pair.
KernelMatrix sample_kernel_matrix(const Grid1D& grid, double t_a, double t_b, const KernelFn& kernel);

/// Zero-duration kernel: identity / dx.
KernelMatrix identity_kernel_matrix(const Grid1D& grid, double t);

/// K(x_b, t_b | x_a, t_a) = sum_x later(x_b | x) earlier(x | x_a) dx.
template <typename Scalar>
BasicKernelMatrix<Scalar> chapman_compose(const BasicKernelMatrix<Scalar>& later,
                                          const BasicKernelMatrix<Scalar>& earlier) {
  if (!(later.grid == earlier.grid)) throw UsageError("chapman_compose: kernels live on different grids");
  if (std::abs(later.t_a - earlier.t_b) > 1e-12 * (1.0 + std::abs(later.t_a))) {
    throw UsageError("chapman_compose: later.t_a must equal earlier.t_b");
  }
  return {later.grid, earlier.t_a, later.t_b, (later.entries * earlier.entries) * later.grid.dx()};
}

/// Columns j whose reference kernel at both grid edges is below `threshold`
/// times the column peak, i.e. columns the truncated grid can represent.
std::vector<Eigen::Index> policy_columns(const Grid1D& grid, const KernelFn& reference, double threshold = 1e-12);

/// max |K[i][j] - reference(x_i, x_j)| over all rows and the given columns.
/// std::domain_error when `columns` is empty.
double sup_error(const KernelMatrix& k, const KernelFn& reference, const std::vector<Eigen::Index>& columns);

/// Trapezoid integral of each column over x_b.
Eigen::VectorXd column_masses(const KernelMatrix& k);

/// CSV triplets `x_to,x_from,value`.
void write_kernel_csv(std::ostream& os, const KernelMatrix& k);

/// Grid, times, mass and positivity diagnostics; sup error against an optional reference.
Json kernel_summary_json(const KernelMatrix& k, const std::optional<KernelFn>& reference = std::nullopt);

}  // namespace wick
