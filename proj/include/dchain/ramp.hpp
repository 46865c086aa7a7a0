#pragma once

#include <optional>
#include <string>

#include "dchain/evolve.hpp"
#include "dchain/models.hpp"

namespace dchain {

/// Ramp schedules. Degenerate kinds ramp the transverse field h through the
/// degeneracy at h = 0; PXP kinds ramp the longitudinal field lambda around
/// the critical value lambda_c = -1.31 w.
enum class RampKind { LinearDegen, CosineDegen, LinearPxp, CosinePxp };

struct RampProtocol {
  RampKind kind = RampKind::LinearDegen;
  double amplitude = 1.0;  // h0 or lambda0
  double offset = 0.0;     // 0 for degenerate kinds, lambda_c for PXP kinds
  double tau = 1.0;
  double t_start = 0.0;
  double t_end = 1.0;  // half-ramps stop at tau/2
};

RampProtocol linear_degenerate_ramp(double h0, double tau, std::optional<double> t_end = {});
RampProtocol cosine_degenerate_ramp(double h0, double tau, std::optional<double> t_end = {});
RampProtocol linear_pxp_ramp(double lambda0, double w, double tau,
                             std::optional<double> t_end = {});
RampProtocol cosine_pxp_ramp(double lambda0, double w, double tau,
                             std::optional<double> t_end = {});

/// Instantaneous ramped field (h(t) or lambda(t)); t must lie in [0, tau].
double protocol_field(const RampProtocol& p, double t);

/// H(field) = field_independent + field * field_coupling.
/// Degenerate chain: field = h, coupling = -sum sigma^x, constant = repulsion.
/// PXP sector: field = lambda, coupling = sum sigma^z / 2, constant = flips.
struct RampSystem {
  RealOperator field_independent;
  RealOperator field_coupling;
  int num_sites = 0;
  BasisKind basis_kind = BasisKind::Full;
};

RampSystem degenerate_ramp_system(const SpinBasis& basis, double v0);
RampSystem pxp_ramp_system(const ConstrainedSubspace& sub, double w);

RealOperator hamiltonian_at_field(const RampSystem& system, double field);

/// Fidelity / residual-energy record along one ramp, sampled uniformly in t.
/// F = ln |<psi|psi_G>|^2 <= 0; when the instantaneous ground level is
/// degenerate within tolerance the overlap is taken with the projector onto
/// the ground manifold and the sample is flagged.
struct RampTrace {
  RealVector times;
  RealVector fidelity_log;    // F(t)
  RealVector residual_energy; // Q(t)
  RealVector ground_energy;   // E_G(t)
  std::vector<bool> ground_degenerate;
  double norm_drift = 0.0;
  double dt_used = 0.0;
};

inline constexpr int kDefaultRampSamples = 201;
inline constexpr double kLogOverlapFloor = -690.0;  // ln of anything below 1e-300

RampTrace run_ramp(const RampSystem& system, const RampProtocol& protocol,
                   int n_samples = kDefaultRampSamples, const PropagatorPlan& plan = {});

struct SweepPoint {
  double tau = 0.0;
  double fidelity_log = 0.0;
  double residual_energy = 0.0;
  double residual_energy_per_site = 0.0;
  bool ground_degenerate = false;
  double norm_drift = 0.0;
  bool ok = false;
  std::string error;
};

/// Terminal observables versus ramp time. `endpoint` rescales t_end = endpoint
/// * tau (0.5 reproduces the half-ramp protocols). Points run on a worker
/// pool; failures are recorded per point and do not abort the sweep. The
/// optional callback fires once per completed point (from worker threads, in
/// completion order) for checkpointing.
using SweepCallback = std::function<void(std::size_t index, const SweepPoint&)>;
std::vector<SweepPoint> sweep_tau(const RampSystem& system, const RampProtocol& prototype,
                                  const std::vector<double>& tau_list, double endpoint,
                                  const PropagatorPlan& plan = {}, int workers = 0,
                                  const SweepCallback& on_point = {});

/// Log-spaced grid helper for sweeps (default sweep: 40 points, 4 decades).
std::vector<double> log_spaced(double tau_min, double tau_max, int n);

}  // namespace dchain
