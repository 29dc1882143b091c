#include "wick/grid.hpp"

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

namespace wick {

Grid1D::Grid1D(double x_min, double x_max, Eigen::Index n) : x_min_(x_min), x_max_(x_max), n_(n) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 nodes");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw std::invalid_argument("grid requires finite x_min < x_max");
  }
  dx_ = (x_max - x_min) / static_cast<double>(n - 1);
}

Grid1D Grid1D::with_spacing(double x_min, double x_max, double max_dx) {
  if (!(max_dx > 0)) throw std::invalid_argument("grid spacing must be positive");
  const auto cells = static_cast<Eigen::Index>(std::ceil((x_max - x_min) / max_dx - 1e-9));
  return Grid1D(x_min, x_max, std::max<Eigen::Index>(cells, 1) + 1);
}

Eigen::VectorXd Grid1D::nodes() const {
  Eigen::VectorXd x(n_);
  for (Eigen::Index i = 0; i < n_; ++i) x[i] = node(i);
  return x;
}

Eigen::Index Grid1D::nearest(double x) const {
  const double r = std::round((x - x_min_) / dx_);
  return static_cast<Eigen::Index>(std::clamp(r, 0.0, static_cast<double>(n_ - 1)));
}

void Units::validate() const {
  if (!(hbar > 0) || !(mass > 0) || !(k_B > 0)) {
    throw std::invalid_argument("units must be strictly positive");
  }
}

double l2_norm_sq(const ComplexField& field) {
  return trapezoid(field.values().cwiseAbs2(), field.grid().dx());
}

double expectation(const RealField& field, const std::function<double(double)>& observable) {
  const double mass = integrate(field);
  if (std::abs(mass - 1.0) > 1e-6) {
    std::cerr << "wick: expectation over a density with mass " << mass << " (not normalized)\n";
  }
  const auto& g = field.grid();
  Eigen::VectorXd f(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) f[i] = observable(g.node(i)) * field[i];
  return trapezoid(f, g.dx());
}

RealField delta_on_grid(const Grid1D& grid, double x0) {
  if (!grid.contains(x0)) throw std::domain_error("delta location outside the grid");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(grid.size());
  v[grid.nearest(x0)] = 1.0 / grid.dx();
  return RealField(grid, std::move(v));
}

RealField gaussian_field(const Grid1D& grid, double mean, double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("gaussian width must be positive");
  const double norm = 1.0 / (std::sqrt(2.0 * M_PI) * sigma);
  return RealField::sample(grid, [&](double x) {
    const double z = (x - mean) / sigma;
    return norm * std::exp(-0.5 * z * z);
  });
}

void write_csv(std::ostream& os, const RealField& field) {
  os << "x,value\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < field.grid().size(); ++i) {
    os << field.grid().node(i) << ',' << field[i] << '\n';
  }
}

void write_csv(std::ostream& os, const ComplexField& field) {
  os << "x,re,im\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < field.grid().size(); ++i) {
    os << field.grid().node(i) << ',' << field[i].real() << ',' << field[i].imag() << '\n';
  }
}

namespace {

std::vector<std::vector<double>> read_rows(std::istream& is, std::size_t columns,
                                           const std::string& header) {
  std::string line;
  if (!std::getline(is, line) || line != header) {
    throw std::invalid_argument("expected CSV header '" + header + "'");
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != columns) throw std::invalid_argument("malformed CSV row: " + line);
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw std::invalid_argument("CSV field needs at least 2 rows");
  return rows;
}

Grid1D grid_from_rows(const std::vector<std::vector<double>>& rows) {
  Grid1D g(rows.front()[0], rows.back()[0], static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::abs(rows[i][0] - g.node(static_cast<Eigen::Index>(i))) > 1e-9 * (1.0 + std::abs(rows[i][0]))) {
      throw std::invalid_argument("CSV x column is not a uniform grid");
    }
  }
  return g;
}

}  // namespace

RealField read_real_csv(std::istream& is) {
  const auto rows = read_rows(is, 2, "x,value");
  Eigen::VectorXd v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) v[static_cast<Eigen::Index>(i)] = rows[i][1];
  return RealField(grid_from_rows(rows), std::move(v));
}

ComplexField read_complex_csv(std::istream& is) {
  const auto rows = read_rows(is, 3, "x,re,im");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = Complex(rows[i][1], rows[i][2]);
  }
  return ComplexField(grid_from_rows(rows), std::move(v));
}

}  // namespace wick
