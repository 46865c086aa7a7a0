#include "dchain/ramp.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace dchain {

namespace {

constexpr double kPi = 3.14159265358979323846;

RampProtocol make_protocol(RampKind kind, double amplitude, double offset, double tau,
                           std::optional<double> t_end) {
  if (!(tau > 0.0)) throw ConfigError("ramp protocol: tau must be > 0");
  RampProtocol p;
  p.kind = kind;
  p.amplitude = amplitude;
  p.offset = offset;
  p.tau = tau;
  p.t_start = 0.0;
  p.t_end = t_end.value_or(tau);
  if (!(p.t_start < p.t_end) || p.t_end > tau * (1.0 + 1e-12))
    throw ConfigError("ramp protocol: need t_start < t_end <= tau");
  return p;
}

}  // namespace

RampProtocol linear_degenerate_ramp(double h0, double tau, std::optional<double> t_end) {
  return make_protocol(RampKind::LinearDegen, h0, 0.0, tau, t_end);
}

RampProtocol cosine_degenerate_ramp(double h0, double tau, std::optional<double> t_end) {
  return make_protocol(RampKind::CosineDegen, h0, 0.0, tau, t_end);
}

RampProtocol linear_pxp_ramp(double lambda0, double w, double tau, std::optional<double> t_end) {
  return make_protocol(RampKind::LinearPxp, lambda0, pxp_lambda_critical(w), tau, t_end);
}

RampProtocol cosine_pxp_ramp(double lambda0, double w, double tau, std::optional<double> t_end) {
  return make_protocol(RampKind::CosinePxp, lambda0, pxp_lambda_critical(w), tau, t_end);
}

double protocol_field(const RampProtocol& p, double t) {
  if (t < -1e-12 || t > p.tau * (1.0 + 1e-12))
    throw ConfigError("protocol_field: t outside [0, tau]");
  switch (p.kind) {
    case RampKind::LinearDegen:
    case RampKind::LinearPxp:
      return p.offset + p.amplitude * (2.0 * t / p.tau - 1.0);
    case RampKind::CosineDegen:
    case RampKind::CosinePxp:
      return p.offset + p.amplitude * std::cos(2.0 * kPi * t / p.tau);
  }
  throw ConfigError("protocol_field: unknown kind");
}

RampSystem degenerate_ramp_system(const SpinBasis& basis, double v0) {
  RampSystem sys;
  sys.field_independent = pair_repulsion(basis, v0);
  RealOperator x = total_sx(basis);
  sys.field_coupling = make_operator(Eigen::SparseMatrix<double>(-x.mat), true);
  sys.num_sites = basis.num_sites;
  sys.basis_kind = BasisKind::Full;
  return sys;
}

RampSystem pxp_ramp_system(const ConstrainedSubspace& sub, double w) {
  RampSystem sys;
  sys.field_independent = pxp_hamiltonian(sub, PxpParams{w, 0.0});
  // lambda couples through sum_j sigma^z_j / 2, diagonal in the sector
  const Eigen::Index d = sub.dim();
  std::vector<Eigen::Triplet<double>> trips;
  for (Eigen::Index i = 0; i < d; ++i) {
    const int ups = __builtin_popcount(sub.states[i]);
    trips.emplace_back(i, i, 0.5 * (2.0 * ups - sub.num_sites));
  }
  Eigen::SparseMatrix<double> m(d, d);
  m.setFromTriplets(trips.begin(), trips.end());
  sys.field_coupling = make_operator(std::move(m), true);
  sys.num_sites = sub.num_sites;
  sys.basis_kind = BasisKind::Constrained;
  return sys;
}

RealOperator hamiltonian_at_field(const RampSystem& system, double field) {
  return make_operator(
      Eigen::SparseMatrix<double>(system.field_independent.mat + field * system.field_coupling.mat),
      true);
}

namespace {

struct SampleObservables {
  double fidelity_log;
  double residual_energy;
  double ground_energy;
  bool degenerate;
};

SampleObservables observe(const RealOperator& h, const EigenSystem<double>& es,
                          const StateVector& psi) {
  SampleObservables out;
  out.ground_energy = es.values(0);
  out.residual_energy = expectation(h, psi) - out.ground_energy;
  const double tol = default_degeneracy_tol(es);
  const auto [weight, manifold] = ground_manifold_weight(es, psi, tol);
  out.degenerate = manifold > 1;
  out.fidelity_log = weight < 1e-300 ? kLogOverlapFloor : std::log(weight);
  return out;
}

}  // namespace

RampTrace run_ramp(const RampSystem& system, const RampProtocol& protocol, int n_samples,
                   const PropagatorPlan& plan) {
  if (n_samples < 2) throw ConfigError("run_ramp: need at least 2 samples");

  const double f_start = protocol_field(protocol, protocol.t_start);
  const double f_end = protocol_field(protocol, protocol.t_end);

  const RealOperator h_start = hamiltonian_at_field(system, f_start);
  const EigenSystem<double> es_start = diagonalize(h_start);
  const StateVector psi0 = ground_state(es_start, system.basis_kind);

  RealVector t_grid(n_samples);
  for (int i = 0; i < n_samples; ++i)
    t_grid(i) = protocol.t_start +
                (protocol.t_end - protocol.t_start) * double(i) / double(n_samples - 1);

  std::vector<StateVector> states;
  double drift = 0.0;
  double dt_used = 0.0;
  switch (plan.method) {
    case PropagatorMethod::EigenbasisOde: {
      const RealOperator h_end = hamiltonian_at_field(system, f_end);
      const EigenSystem<double> es_end = diagonalize(h_end);
      auto g = [&protocol, f_end](double t) { return protocol_field(protocol, t) - f_end; };
      TrajectoryResult traj =
          evolve_eigenbasis_ode(es_end, system.field_coupling, g, psi0, t_grid, plan);
      states = std::move(traj.states);
      drift = traj.norm_drift;
      dt_used = traj.dt_used;
      break;
    }
    case PropagatorMethod::DirectRk4:
    case PropagatorMethod::EigenExponential: {
      DriveSplit split{system.field_independent, system.field_coupling,
                       [&protocol](double t) { return protocol_field(protocol, t); }};
      StateVector psi = psi0;
      states.push_back(psi);
      for (int i = 0; i + 1 < n_samples; ++i) {
        EvolveResult r = plan.method == PropagatorMethod::DirectRk4
                             ? evolve_rk4(split, psi, t_grid(i), t_grid(i + 1), plan)
                             : evolve_expm_midpoint(split, psi, t_grid(i), t_grid(i + 1), plan);
        psi = std::move(r.state);
        drift = std::max(drift, r.norm_drift);
        dt_used = r.dt_used;
        states.push_back(psi);
      }
      break;
    }
  }

  RampTrace trace;
  trace.times = t_grid;
  trace.fidelity_log.resize(n_samples);
  trace.residual_energy.resize(n_samples);
  trace.ground_energy.resize(n_samples);
  trace.ground_degenerate.resize(n_samples);
  trace.norm_drift = drift;
  trace.dt_used = dt_used;

  for (int i = 0; i < n_samples; ++i) {
    const double f = protocol_field(protocol, t_grid(i));
    const RealOperator h = hamiltonian_at_field(system, f);
    const EigenSystem<double> es = i == 0 ? es_start : diagonalize(h);
    const SampleObservables obs = observe(h, es, states[i]);
    trace.fidelity_log(i) = obs.fidelity_log;
    trace.residual_energy(i) = obs.residual_energy;
    trace.ground_energy(i) = obs.ground_energy;
    trace.ground_degenerate[i] = obs.degenerate;
  }
  return trace;
}

std::vector<SweepPoint> sweep_tau(const RampSystem& system, const RampProtocol& prototype,
                                  const std::vector<double>& tau_list, double endpoint,
                                  const PropagatorPlan& plan, int workers,
                                  const SweepCallback& on_point) {
  if (tau_list.empty()) throw ConfigError("sweep_tau: empty tau list");
  for (std::size_t i = 1; i < tau_list.size(); ++i)
    if (!(tau_list[i] > tau_list[i - 1]))
      throw ConfigError("sweep_tau: tau list must be ascending");
  if (!(endpoint > 0.0 && endpoint <= 1.0))
    throw ConfigError("sweep_tau: endpoint fraction must be in (0, 1]");

  // start and end fields do not depend on tau, so the eigensystems are shared
  RampProtocol probe = prototype;
  probe.tau = tau_list.front();
  probe.t_end = endpoint * probe.tau;
  const double f_start = protocol_field(probe, 0.0);
  const double f_end = protocol_field(probe, probe.t_end);

  const RealOperator h_start = hamiltonian_at_field(system, f_start);
  const EigenSystem<double> es_start = diagonalize(h_start);
  const StateVector psi0 = ground_state(es_start, system.basis_kind);
  const RealOperator h_end = hamiltonian_at_field(system, f_end);
  const EigenSystem<double> es_end = diagonalize(h_end);
  const double end_tol = default_degeneracy_tol(es_end);

  std::vector<SweepPoint> points(tau_list.size());
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tau_list.size()) return;
      SweepPoint& pt = points[i];
      pt.tau = tau_list[i];
      try {
        RampProtocol p = prototype;
        p.tau = tau_list[i];
        p.t_start = 0.0;
        p.t_end = endpoint * p.tau;
        RealVector t_grid(2);
        t_grid << 0.0, p.t_end;
        auto g = [&p, f_end](double t) { return protocol_field(p, t) - f_end; };
        TrajectoryResult traj =
            evolve_eigenbasis_ode(es_end, system.field_coupling, g, psi0, t_grid, plan);
        const StateVector& psi = traj.states.back();

        const auto [weight, manifold] = ground_manifold_weight(es_end, psi, end_tol);
        pt.ground_degenerate = manifold > 1;
        pt.fidelity_log = weight < 1e-300 ? kLogOverlapFloor : std::log(weight);
        pt.residual_energy = expectation(h_end, psi) - es_end.values(0);
        pt.residual_energy_per_site = pt.residual_energy / system.num_sites;
        pt.norm_drift = traj.norm_drift;
        pt.ok = true;
      } catch (const std::exception& e) {
        pt.ok = false;
        pt.error = e.what();
      }
      if (on_point) on_point(i, pt);
    }
  };

  const int n_threads =
      workers > 0 ? workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (n_threads == 1 || tau_list.size() == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return points;
}

std::vector<double> log_spaced(double tau_min, double tau_max, int n) {
  if (!(tau_min > 0.0) || !(tau_max > tau_min) || n < 2)
    throw ConfigError("log_spaced: need 0 < tau_min < tau_max and n >= 2");
  std::vector<double> out(n);
  const double l0 = std::log(tau_min);
  const double l1 = std::log(tau_max);
  for (int i = 0; i < n; ++i) out[i] = std::exp(l0 + (l1 - l0) * double(i) / double(n - 1));
  return out;
}

}  // namespace dchain
