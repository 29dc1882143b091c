#pragma once

// Crank-Nicolson solver for the Fokker-Planck / Smoluchowski equation
//   dP/dt = -d/dx (A P) + D d^2/dx^2 (B^2 P) - S P
// in flux form on a finite-volume grid whose two end nodes own half cells,
// so that the trapezoid mass is what the zero-flux scheme conserves.

#include "wick/grid.hpp"
#include "wick/spec_io.hpp"
#include "wick/wick_maps.hpp"

#include <functional>

namespace wick {

struct FokkerPlanckSpec {
  Potential A;                                    ///< drift
  Potential B = Potential::polynomial({1.0});     ///< noise amplitude
  double D = 1.0;
  Potential sink;                                 ///< killing rate S(x, t); zero keeps mass

  bool time_dependent() const { return A.time_dependent() || B.time_dependent() || sink.time_dependent(); }
  void validate() const;
};

/// Overdamped motion in V: A = -V'(x) / (m gamma), B = 1.
struct SmoluchowskiSpec {
  double D = 1.0;
  Potential Vprime;
  double m_gamma = 1.0;

  FokkerPlanckSpec to_fokker_planck() const;
};

/// Drift form maps to Smoluchowski with D = 1 / (2 mu); potential form maps
/// to pure diffusion with sink W.
FokkerPlanckSpec fokker_planck_for(const GeneratorSpec& g);

enum class Boundary { kZeroFlux, kDirichlet };

struct SolverConfig {
  double dt = 1e-3;
  Boundary boundary = Boundary::kZeroFlux;
};

/// Tridiagonal operator L with dP/dt = L P, rows indexed by node.
struct TridiagonalOperator {
  Eigen::VectorXd lower;  ///< lower[i] multiplies P[i-1]; lower[0] unused
  Eigen::VectorXd diag;
  Eigen::VectorXd upper;  ///< upper[i] multiplies P[i+1]; upper[n-1] unused

  Eigen::VectorXd apply(const Eigen::VectorXd& p) const;
};

TridiagonalOperator fokker_planck_operator(const Grid1D& grid, const FokkerPlanckSpec& spec, double t,
                                           Boundary boundary);

/// Solves the tridiagonal system by forward elimination and back substitution.
Eigen::VectorXd solve_tridiagonal(const Eigen::VectorXd& lower, const Eigen::VectorXd& diag,
                                  const Eigen::VectorXd& upper, const Eigen::VectorXd& rhs);

struct CrankNicolsonResult {
  RealField density;
  double t_final = 0.0;
  Eigen::Index steps = 0;
  double dt = 0.0;
  double mass_initial = 0.0;
  double max_mass_drift = 0.0;  ///< max over steps of |mass - mass_initial|
  double min_value = 0.0;       ///< smallest node value seen
};

using SnapshotFn = std::function<void(Eigen::Index step, double t, const RealField& density)>;

/// Integrates from t0 to t_final with a step no larger than config.dt.
/// `snapshot` (if set) receives every `snapshot_every`-th step and the last.
CrankNicolsonResult evolve_crank_nicolson(const RealField& init, const FokkerPlanckSpec& spec, double t0,
                                          double t_final, const SolverConfig& config,
                                          const SnapshotFn& snapshot = {}, Eigen::Index snapshot_every = 0);

/// Gaussian of width 3 dx at x0, normalized on the grid. Stands in for a delta
/// start so that Crank-Nicolson does not ring.
RealField mollify_delta(const Grid1D& grid, double x0);

Json crank_nicolson_report_json(const CrankNicolsonResult& r);

}  // namespace wick
