#include "wick/closed_form.hpp"
#include "wick/errors.hpp"
#include "wick/master.hpp"

#include <doctest.h>

#include <cmath>

using namespace wick;

TEST_CASE("tridiagonal solve matches a dense solve") {
  const Eigen::Index n = 7;
  Eigen::VectorXd lo = Eigen::VectorXd::LinSpaced(n, 0.1, 0.7), up = Eigen::VectorXd::LinSpaced(n, -0.3, 0.2);
  Eigen::VectorXd di = Eigen::VectorXd::Constant(n, 3.0), rhs = Eigen::VectorXd::LinSpaced(n, -1.0, 2.0);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, i) = di[i];
    if (i > 0) A(i, i - 1) = lo[i];
    if (i + 1 < n) A(i, i + 1) = up[i];
  }
  const Eigen::VectorXd x = solve_tridiagonal(lo, di, up, rhs);
  CHECK((A * x - rhs).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("zero-flux operator conserves trapezoid mass") {
  const Grid1D grid(-3.0, 3.0, 61);
  const FokkerPlanckSpec spec{Potential::custom([](double x, double) { return -std::sin(x); }),
                              Potential::custom([](double x, double) { return 1.0 + 0.2 * x * x; }), 0.7, {}};
  const TridiagonalOperator L = fokker_planck_operator(grid, spec, 0.0, Boundary::kZeroFlux);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(grid.size(), grid.dx());
  w[0] = w[grid.size() - 1] = 0.5 * grid.dx();
  const Eigen::VectorXd p = Eigen::VectorXd::LinSpaced(grid.size(), 0.1, 2.0);
  CHECK(std::abs(w.dot(L.apply(p))) < 1e-12);
}

TEST_CASE("Crank-Nicolson heat equation") {
  const Grid1D grid(-10.0, 10.0, 801);
  const RealField init = gaussian_field(grid, 0.0, 0.5);
  const FokkerPlanckSpec spec{Potential::zero(), Potential::polynomial({1.0}), 1.0, {}};
  const auto r = evolve_crank_nicolson(init, spec, 0.0, 1.0, SolverConfig{1e-3});
  const RealField ref = gaussian_field(grid, 0.0, std::sqrt(0.25 + 2.0));
  CHECK((r.density.values() - ref.values()).cwiseAbs().maxCoeff() < 1e-5);
  CHECK(r.max_mass_drift < 1e-12);
  CHECK(r.steps == 1000);
}

TEST_CASE("OU stationary density is preserved") {
  const Grid1D grid(-8.0, 8.0, 401);
  const FokkerPlanckSpec spec = SmoluchowskiSpec{1.0, Potential::polynomial({0.0, 1.0}), 2.0}.to_fokker_planck();
  // eta = 0.5, stationary variance D / eta = 2.
  const RealField stat = gaussian_field(grid, 0.0, std::sqrt(2.0));
  const auto r = evolve_crank_nicolson(stat, spec, 0.0, 2.0, SolverConfig{1e-2});
  CHECK((r.density.values() - stat.values()).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("drift-form generators map to Smoluchowski") {
  const GeneratorSpec g{0.25, DriftForm{Potential::polynomial({0.0, 3.0}), 1.5}};
  const FokkerPlanckSpec f = fokker_planck_for(g);
  CHECK(f.D == doctest::Approx(2.0));
  CHECK(f.A(1.0) == doctest::Approx(-2.0));
  const FokkerPlanckSpec k = fokker_planck_for(GeneratorSpec{1.0, PotentialLike{Potential::polynomial({0.3})}});
  CHECK(k.sink(0.0) == doctest::Approx(0.3));
}

TEST_CASE("uniform sink decays mass exponentially") {
  const Grid1D grid(-10.0, 10.0, 401);
  const FokkerPlanckSpec spec{Potential::zero(), Potential::polynomial({1.0}), 0.5, Potential::polynomial({0.4})};
  const auto r = evolve_crank_nicolson(gaussian_field(grid, 0.0, 1.0), spec, 0.0, 1.0, SolverConfig{1e-3});
  CHECK(integrate(r.density) == doctest::Approx(std::exp(-0.4)).epsilon(1e-6));
}

TEST_CASE("time-dependent drift is sampled at mid-steps") {
  // A(t) = t shifts the mean by t^2 / 2.
  const Grid1D grid(-8.0, 8.0, 801);
  const FokkerPlanckSpec spec{Potential::custom([](double, double t) { return t; }, true),
                              Potential::polynomial({1.0}), 0.1, {}};
  const auto r = evolve_crank_nicolson(gaussian_field(grid, 0.0, 0.5), spec, 0.0, 2.0, SolverConfig{1e-2});
  const double mean = integrate(RealField::sample(grid, [&](double x) { return x * r.density[grid.nearest(x)]; }));
  CHECK(mean == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("Dirichlet walls absorb") {
  const Grid1D grid(-2.0, 2.0, 81);
  const FokkerPlanckSpec spec{Potential::zero(), Potential::polynomial({1.0}), 1.0, {}};
  const auto r = evolve_crank_nicolson(gaussian_field(grid, 0.0, 0.5), spec, 0.0, 0.5,
                                       SolverConfig{1e-3, Boundary::kDirichlet});
  CHECK(r.density[0] == 0.0);
  CHECK(r.density[80] == 0.0);
  CHECK(integrate(r.density) < 0.9);
}

TEST_CASE("snapshots and errors") {
  const Grid1D grid(-5.0, 5.0, 101);
  const FokkerPlanckSpec spec{Potential::zero(), Potential::polynomial({1.0}), 1.0, {}};
  std::vector<Eigen::Index> seen;
  evolve_crank_nicolson(mollify_delta(grid, 0.0), spec, 0.0, 0.1, SolverConfig{0.01},
                        [&](Eigen::Index s, double, const RealField&) { seen.push_back(s); }, 3);
  CHECK(seen == std::vector<Eigen::Index>{3, 6, 9, 10});
  const FokkerPlanckSpec bad{Potential::custom([](double x, double) { return x > 2.0 ? std::nan("") : 0.0; }), Potential::polynomial({1.0}), 1.0, {}};
  CHECK_THROWS_AS(evolve_crank_nicolson(mollify_delta(grid, 1.0), bad, 0.0, 0.1, SolverConfig{0.01}),
                  UnsupportedSpecError);
  CHECK_THROWS_AS(mollify_delta(grid, 7.0), std::domain_error);
  CHECK(integrate(mollify_delta(grid, 0.3)) == doctest::Approx(1.0).epsilon(1e-14));
}
