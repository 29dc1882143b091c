#pragma once

// Split-step Fourier propagation of the Schrödinger amplitude on a periodic
// grid. The grid period is n * dx; fields must be negligible at the edges.

#include "wick/grid.hpp"
#include "wick/lattice.hpp"
#include "wick/wick_maps.hpp"

#include <Eigen/Dense>

#include <functional>

namespace wick {

enum class SplittingOrder {
  kFirst,  ///< kinetic step then potential step at the post-point time
  kStrang,  ///< half potential, kinetic, half potential
};

/// Angular wave numbers in FFT order for period n * dx.
Eigen::VectorXd wave_numbers(const Grid1D& grid);

struct SplitStepPlan {
  Grid1D grid;
  double dt;
  SplittingOrder order;
  Eigen::VectorXcd kinetic_phase;  ///< exp(-i k^2 dt / (2 mu_h))

  static SplitStepPlan build(const Grid1D& grid, double dt, const HamiltonianSpec& h, SplittingOrder order);

  /// exp(-i V_h(x, t) * fraction * dt) at every node.
  Eigen::VectorXcd potential_phase(const HamiltonianSpec& h, double t, double fraction) const;
};

using AmplitudeObserver = std::function<void(Eigen::Index step, const ComplexField& psi)>;

ComplexField splitstep_quantum_propagate(const ComplexField& init, const HamiltonianSpec& h,
                                         const TimeSlicing& slicing, SplittingOrder order,
                                         const AmplitudeObserver& observer = {});

/// Free Gaussian packet of width sigma centred at x0 with wave number k0, at time t.
Complex free_packet(double x, double t, double mu_h, double sigma, double x0, double k0);

/// Displaced ground state of the oscillator released from x0 at rest.
Complex coherent_state(double x, double t, double mu_h, double omega, double x0);

/// sqrt(|a|^2 + |b|^2 - 2 |<a|b>|): L2 distance up to a global phase.
double phase_aligned_l2_error(const ComplexField& a, const ComplexField& b);

}  // namespace wick
