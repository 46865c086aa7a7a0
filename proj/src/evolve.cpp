#include "dchain/evolve.hpp"

#include <cmath>

namespace dchain {

template <typename Scalar>
StateVector apply_exponential(const EigenSystem<Scalar>& es, double dt, const StateVector& psi) {
  if (es.dim() != psi.amplitudes.size())
    throw ConfigError("apply_exponential: dimension mismatch");
  ComplexVector coeffs;
  if constexpr (std::is_same_v<Scalar, double>) {
    coeffs = real_mat_t_vec(es.vectors, psi.amplitudes);
  } else {
    coeffs = es.vectors.adjoint() * psi.amplitudes;
  }
  for (Eigen::Index n = 0; n < coeffs.size(); ++n)
    coeffs(n) *= std::exp(Complex(0.0, -es.values(n) * dt));
  StateVector out;
  out.basis = psi.basis;
  if constexpr (std::is_same_v<Scalar, double>) {
    out.amplitudes = real_mat_vec(es.vectors, coeffs);
  } else {
    out.amplitudes = es.vectors * coeffs;
  }
  return out;
}

template StateVector apply_exponential(const EigenSystem<double>&, double, const StateVector&);
template StateVector apply_exponential(const EigenSystem<Complex>&, double, const StateVector&);

template <typename Scalar>
StateVector apply_exponential(const Operator<Scalar>& h, double dt, const StateVector& psi) {
  return apply_exponential(diagonalize(h), dt, psi);
}

template StateVector apply_exponential(const Operator<double>&, double, const StateVector&);
template StateVector apply_exponential(const Operator<Complex>&, double, const StateVector&);

double spectral_bound(const RealOperator& op) {
  RealVector row_sums = RealVector::Zero(op.dim);
  for (int k = 0; k < op.mat.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.mat, k); it; ++it)
      row_sums(it.row()) += std::abs(it.value());
  return op.dim == 0 ? 0.0 : row_sums.maxCoeff();
}

namespace {

// One RK4 step of i c' = (D + g(t) X - mu) c in the rotated basis, where X is
// the dense rotated coupling, D the reference eigenvalues and mu the mean
// energy at the step start. Shifting by mu and accumulating it as a phase is
// exact; it only reconditions the equation.
class EigenbasisStepper {
 public:
  EigenbasisStepper(const RealVector& d, const RealMatrix& x,
                    const std::function<double(double)>& g)
      : d_(d), x_(x), g_(g) {}

  // y = (D + g X) v without the shift
  ComplexVector generator(double gval, const ComplexVector& v) const {
    const RealVector vr = v.real();
    const RealVector vi = v.imag();
    ComplexVector y(v.size());
    y.real() = d_.cwiseProduct(vr) + gval * (x_ * vr);
    y.imag() = d_.cwiseProduct(vi) + gval * (x_ * vi);
    return y;
  }

  // advances c across [t, t+dt]; accumulates the analytic phase in *phase
  void step(double t, double dt, ComplexVector& c, double* phase) const {
    const Complex mi(0.0, -1.0);
    const double g1 = g_(t);
    ComplexVector y1 = generator(g1, c);
    const double nrm2 = c.squaredNorm();
    const double mu = nrm2 > 0.0 ? c.dot(y1).real() / nrm2 : 0.0;
    const ComplexVector k1 = mi * (y1 - mu * c);

    const double gm = g_(t + 0.5 * dt);
    ComplexVector v2 = c + (0.5 * dt) * k1;
    const ComplexVector k2 = mi * (generator(gm, v2) - mu * v2);
    ComplexVector v3 = c + (0.5 * dt) * k2;
    const ComplexVector k3 = mi * (generator(gm, v3) - mu * v3);
    const double g4 = g_(t + dt);
    ComplexVector v4 = c + dt * k3;
    const ComplexVector k4 = mi * (generator(g4, v4) - mu * v4);

    c += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    *phase += mu * dt;
  }

 private:
  const RealVector& d_;
  const RealMatrix& x_;
  const std::function<double(double)>& g_;
};

}  // namespace

TrajectoryResult evolve_eigenbasis_ode(const EigenSystem<double>& reference,
                                       const RealOperator& coupling,
                                       const std::function<double(double)>& g,
                                       const StateVector& psi0, const RealVector& t_grid,
                                       const PropagatorPlan& plan) {
  const Eigen::Index dim = reference.dim();
  if (coupling.dim != dim || psi0.amplitudes.size() != dim)
    throw ConfigError("evolve_eigenbasis_ode: dimension mismatch");
  if (t_grid.size() < 1) throw ConfigError("evolve_eigenbasis_ode: empty time grid");
  for (Eigen::Index i = 1; i < t_grid.size(); ++i)
    if (!(t_grid(i) > t_grid(i - 1)))
      throw ConfigError("evolve_eigenbasis_ode: time grid must be ascending");

  const double t0 = t_grid(0);
  const double t1 = t_grid(t_grid.size() - 1);
  const double duration = t1 - t0;

  // rotated coupling and initial coefficients
  const RealMatrix xv = coupling.mat * reference.vectors;
  const RealMatrix x_rot = reference.vectors.transpose() * xv;
  const ComplexVector c0 = real_mat_t_vec(reference.vectors, psi0.amplitudes);

  // worst-case spectral radius over the schedule, for RK4 stability
  double g_max = 0.0;
  for (int i = 0; i <= 256; ++i)
    g_max = std::max(g_max, std::abs(g(t0 + duration * i / 256.0)));
  const double d_half_spread =
      0.5 * (reference.values(dim - 1) - reference.values(0));
  const double rho = d_half_spread + g_max * spectral_bound(coupling) + 1e-300;

  double dt_target = plan.dt > 0.0 ? plan.dt : duration / 5000.0;
  dt_target = std::min(dt_target, 1.5 / rho);

  const EigenbasisStepper stepper(reference.values, x_rot, g);

  TrajectoryResult result;
  const int max_halvings = 8;
  for (int attempt = 0;; ++attempt) {
    ComplexVector c = c0;
    double phase = 0.0;
    double max_drift = std::abs(c.norm() - 1.0);
    long steps = 0;
    result.states.clear();

    auto record = [&](const ComplexVector& cc, double ph) {
      StateVector s;
      s.basis = psi0.basis;
      const ComplexVector shifted = std::exp(Complex(0.0, -ph)) * cc;
      s.amplitudes = real_mat_vec(reference.vectors, shifted);
      result.states.push_back(std::move(s));
    };
    record(c, phase);

    for (Eigen::Index seg = 0; seg + 1 < t_grid.size(); ++seg) {
      const double ta = t_grid(seg);
      const double tb = t_grid(seg + 1);
      const long n = std::max<long>(1, static_cast<long>(std::ceil((tb - ta) / dt_target)));
      const double dt = (tb - ta) / n;
      for (long k = 0; k < n; ++k) stepper.step(ta + k * dt, dt, c, &phase);
      steps += n;
      max_drift = std::max(max_drift, std::abs(c.norm() - 1.0));
      record(c, phase);
    }

    result.norm_drift = max_drift;
    result.dt_used = dt_target;
    result.steps = steps;
    if (max_drift <= plan.tol || duration == 0.0) break;
    if (attempt >= max_halvings)
      throw NumericError("evolve_eigenbasis_ode: norm drift " + std::to_string(max_drift) +
                         " exceeds tolerance after " + std::to_string(max_halvings) +
                         " step halvings");
    dt_target *= 0.5;
  }
  return result;
}

EvolveResult evolve_rk4(const DriveSplit& split, const StateVector& psi0, double t0, double t1,
                        const PropagatorPlan& plan) {
  if (split.constant.dim != psi0.amplitudes.size() ||
      split.coupling.dim != psi0.amplitudes.size())
    throw ConfigError("evolve_rk4: dimension mismatch");
  const double duration = t1 - t0;

  double g_max = 0.0;
  for (int i = 0; i <= 256; ++i)
    g_max = std::max(g_max, std::abs(split.g(t0 + duration * i / 256.0)));
  const double rho =
      spectral_bound(split.constant) + g_max * spectral_bound(split.coupling) + 1e-300;
  const double dt_target = plan.dt > 0.0 ? plan.dt : 0.05 / rho;

  auto rhs = [&](double t, const ComplexVector& v) -> ComplexVector {
    const double gval = split.g(t);
    const RealVector vr = v.real();
    const RealVector vi = v.imag();
    ComplexVector y(v.size());
    y.real() = split.constant.mat * vr + gval * (split.coupling.mat * vr);
    y.imag() = split.constant.mat * vi + gval * (split.coupling.mat * vi);
    return Complex(0.0, -1.0) * y;
  };

  const long n = duration > 0.0
                     ? std::max<long>(1, static_cast<long>(std::ceil(duration / dt_target)))
                     : 0;
  const double dt = n > 0 ? duration / n : 0.0;
  ComplexVector v = psi0.amplitudes;
  for (long k = 0; k < n; ++k) {
    const double t = t0 + k * dt;
    const ComplexVector k1 = rhs(t, v);
    const ComplexVector k2 = rhs(t + 0.5 * dt, v + (0.5 * dt) * k1);
    const ComplexVector k3 = rhs(t + 0.5 * dt, v + (0.5 * dt) * k2);
    const ComplexVector k4 = rhs(t + dt, v + dt * k3);
    v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  EvolveResult res;
  res.state.basis = psi0.basis;
  res.state.amplitudes = std::move(v);
  res.norm_drift = std::abs(res.state.amplitudes.norm() - 1.0);
  res.dt_used = dt;
  res.steps = n;
  res.drift_warning = res.norm_drift > 1e-6;
  return res;
}

EvolveResult evolve_expm_midpoint(const DriveSplit& split, const StateVector& psi0, double t0,
                                  double t1, const PropagatorPlan& plan) {
  if (split.constant.dim != psi0.amplitudes.size() ||
      split.coupling.dim != psi0.amplitudes.size())
    throw ConfigError("evolve_expm_midpoint: dimension mismatch");
  const double duration = t1 - t0;
  const double dt_target = plan.dt > 0.0 ? plan.dt : duration / 1000.0;
  const long n = duration > 0.0
                     ? std::max<long>(1, static_cast<long>(std::ceil(duration / dt_target)))
                     : 0;
  const double dt = n > 0 ? duration / n : 0.0;

  StateVector psi = psi0;
  for (long k = 0; k < n; ++k) {
    const double t_mid = t0 + (k + 0.5) * dt;
    RealOperator h = make_operator(
        Eigen::SparseMatrix<double>(split.constant.mat + split.g(t_mid) * split.coupling.mat),
        true);
    psi = apply_exponential(h, dt, psi);
  }

  EvolveResult res;
  res.state = std::move(psi);
  res.norm_drift = std::abs(res.state.amplitudes.norm() - 1.0);
  res.dt_used = dt;
  res.steps = n;
  res.drift_warning = res.norm_drift > 1e-6;
  return res;
}

}  // namespace dchain
