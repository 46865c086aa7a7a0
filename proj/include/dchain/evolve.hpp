#pragma once

#include <functional>
#include <vector>

#include "dchain/spectra.hpp"

namespace dchain {

enum class PropagatorMethod { EigenExponential, EigenbasisOde, DirectRk4 };

struct PropagatorPlan {
  PropagatorMethod method = PropagatorMethod::EigenbasisOde;
  double dt = 0.0;    // step-size hint; 0 picks a default from the schedule
  double tol = 1e-8;  // norm-drift tolerance at reported times
};

/// Time-dependent Hamiltonian of the form H(t) = constant + g(t) * coupling.
/// Every protocol in this project (ramps and square pulses) has this shape.
struct DriveSplit {
  RealOperator constant;
  RealOperator coupling;
  std::function<double(double)> g;
};

/// psi' = sum_n e^{-i eps_n dt} <n|psi> |n>, exact for a constant Hamiltonian.
template <typename Scalar>
StateVector apply_exponential(const EigenSystem<Scalar>& es, double dt, const StateVector& psi);

/// Convenience overload that diagonalizes first.
template <typename Scalar>
StateVector apply_exponential(const Operator<Scalar>& h, double dt, const StateVector& psi);

struct EvolveResult {
  StateVector state;
  double norm_drift = 0.0;  // max | ||psi|| - 1 | seen during the run
  double dt_used = 0.0;
  long steps = 0;
  bool drift_warning = false;
};

struct TrajectoryResult {
  std::vector<StateVector> states;  // at the requested times, original basis
  double norm_drift = 0.0;
  double dt_used = 0.0;
  long steps = 0;
};

/// Integrates the eigenbasis coefficient equation
///   i dc_n/dt = eps_n c_n + g(t) sum_m Xtilde_nm c_m,
/// where eps_n, |n> come from the reference (final) Hamiltonian and
/// Xtilde = V^T coupling V. Classical RK4 on the coefficients; the
/// instantaneous mean energy is integrated analytically as a global phase,
/// which keeps the step size tied to the populated bandwidth instead of the
/// full spectral width. If the norm drift at the end exceeds plan.tol the
/// step is halved and the run repeated; persistent failure throws
/// NumericError with the drift attained.
TrajectoryResult evolve_eigenbasis_ode(const EigenSystem<double>& reference,
                                       const RealOperator& coupling,
                                       const std::function<double(double)>& g,
                                       const StateVector& psi0, const RealVector& t_grid,
                                       const PropagatorPlan& plan = {});

/// Plain 4th-order Runge-Kutta on i d psi/dt = H(t) psi in the given basis.
/// Cross-validation oracle; dt should resolve ||H|| (dt * ||H|| < 0.1).
EvolveResult evolve_rk4(const DriveSplit& split, const StateVector& psi0, double t0, double t1,
                        const PropagatorPlan& plan = {});

/// Exponential midpoint stepping: psi <- exp(-i dt H(t_mid)) psi with a dense
/// eigendecomposition per step. Exactly norm-preserving; second order in dt
/// for time-dependent H, exact for constant H.
EvolveResult evolve_expm_midpoint(const DriveSplit& split, const StateVector& psi0, double t0,
                                  double t1, const PropagatorPlan& plan = {});

/// Largest-magnitude eigenvalue bound from Gershgorin row sums.
double spectral_bound(const RealOperator& op);

}  // namespace dchain
