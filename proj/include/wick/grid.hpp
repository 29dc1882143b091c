#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace wick {

using Complex = std::complex<double>;

/// Uniform 1-D grid with nodes x_i = x_min + i * dx, i = 0..n-1.
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, Eigen::Index n);

  /// Grid with spacing no larger than `max_dx` on [x_min, x_max].
  static Grid1D with_spacing(double x_min, double x_max, double max_dx);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  Eigen::Index size() const { return n_; }
  double dx() const { return dx_; }
  double node(Eigen::Index i) const { return x_min_ + static_cast<double>(i) * dx_; }
  Eigen::VectorXd nodes() const;

  /// Index of the node nearest to x (clamped to the grid).
  Eigen::Index nearest(double x) const;
  bool contains(double x) const { return x >= x_min_ && x <= x_max_; }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double x_min_;
  double x_max_;
  Eigen::Index n_;
  double dx_;
};

/// Node values of a real density or a complex amplitude on a grid.
template <typename Scalar>
class Field {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Field(Grid1D grid, Vector values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw std::invalid_argument("field length does not match grid size");
    }
    if (!values_.allFinite()) {
      throw std::invalid_argument("field values must be finite");
    }
  }

  static Field zero(const Grid1D& grid) { return Field(grid, Vector::Zero(grid.size())); }

  /// Samples f at every node.
  template <typename Fn>
  static Field sample(const Grid1D& grid, Fn&& f) {
    Vector v(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) v[i] = f(grid.node(i));
    return Field(grid, std::move(v));
  }

  const Grid1D& grid() const { return grid_; }
  const Vector& values() const { return values_; }
  Scalar operator[](Eigen::Index i) const { return values_[i]; }

  Field scaled(Scalar c) const { return Field(grid_, values_ * c); }

 private:
  Grid1D grid_;
  Vector values_;
};

using RealField = Field<double>;
using ComplexField = Field<Complex>;

/// Physical constants; every entry strictly positive.
struct Units {
  double hbar = 1.0;
  double mass = 1.0;
  double k_B = 1.0;

  void validate() const;
};

/// Trapezoid weights times values, summed.
template <typename Derived>
typename Derived::Scalar trapezoid(const Eigen::MatrixBase<Derived>& values, double dx) {
  const Eigen::Index n = values.size();
  using S = typename Derived::Scalar;
  if (n == 0) return S(0);
  S sum = values.sum() - S(0.5) * (values[0] + values[n - 1]);
  return sum * dx;
}

template <typename Scalar>
Scalar integrate(const Field<Scalar>& field) {
  return trapezoid(field.values(), field.grid().dx());
}

double l2_norm_sq(const ComplexField& field);

/// Quadrature of f(x) P(x). Warns on stderr when P is not normalized to 1e-6.
double expectation(const RealField& field, const std::function<double(double)>& observable);

/// Single-node spike of height 1/dx at the node nearest x0.
RealField delta_on_grid(const Grid1D& grid, double x0);

/// Normalized Gaussian density sampled on the grid.
RealField gaussian_field(const Grid1D& grid, double mean, double sigma);

/// Half-width |mean| + 8 std that keeps a Gaussian tail below ~1e-14 of its peak.
inline double recommended_half_width(double mean, double std_dev) {
  return std::abs(mean) + 8.0 * std_dev;
}

// CSV: header `x,value` (real) or `x,re,im` (complex), 17 significant digits.
void write_csv(std::ostream& os, const RealField& field);
void write_csv(std::ostream& os, const ComplexField& field);
RealField read_real_csv(std::istream& is);
ComplexField read_complex_csv(std::istream& is);

}  // namespace wick
