#include "dchain/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace dchain {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void validate_drive(const DriveConfig& config) {
  if (!(config.h0 > 0.0)) throw ConfigError("drive: h0 must be > 0");
  if (!(config.omega_d > 0.0)) throw ConfigError("drive: omega_d must be > 0");
  if (config.p_special) {
    const double y = config.h0 * config.period();
    if (std::abs(y - 2.0 * kPi * (*config.p_special)) >= 1e-12)
      throw ConfigError("drive: omega_d is not the claimed special frequency h0/p");
  }
}

double special_frequency(double h0, int p) {
  if (!(h0 > 0.0) || p < 1) throw ConfigError("special_frequency: need h0 > 0 and p >= 1");
  return h0 / p;
}

ComplexMatrix expm_hermitian(const EigenSystem<double>& es, double t) {
  const Eigen::Index n = es.dim();
  RealVector c(n), s(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    c(k) = std::cos(es.values(k) * t);
    s(k) = std::sin(es.values(k) * t);
  }
  // V diag(e^{-i eps t}) V^T via two real products
  const RealMatrix vc = es.vectors * c.asDiagonal();
  const RealMatrix vs = es.vectors * s.asDiagonal();
  ComplexMatrix out(n, n);
  out.real() = vc * es.vectors.transpose();
  out.imag() = -(vs * es.vectors.transpose());
  return out;
}

FloquetOperator build_floquet(const RealOperator& h_first, const RealOperator& h_second,
                              double period) {
  if (h_first.dim != h_second.dim) throw ConfigError("build_floquet: dimension mismatch");
  if (!(period > 0.0)) throw ConfigError("build_floquet: period must be > 0");
  const EigenSystem<double> es1 = diagonalize(h_first);
  const EigenSystem<double> es2 = diagonalize(h_second);
  FloquetOperator op;
  op.period = period;
  op.u = expm_hermitian(es2, 0.5 * period) * expm_hermitian(es1, 0.5 * period);
  return op;
}

double unitarity_defect(const FloquetOperator& op) {
  const Eigen::Index n = op.u.rows();
  ComplexMatrix d = op.u.adjoint() * op.u;
  d -= ComplexMatrix::Identity(n, n);
  return max_abs(d);
}

QuasiSpectrum quasi_spectrum(const FloquetOperator& op) {
  const double defect = unitarity_defect(op);
  if (defect > 1e-10)
    throw NumericError("quasi_spectrum: operator is not unitary, defect = " +
                       std::to_string(defect));
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(op.u);
  if (solver.info() != Eigen::Success) throw NumericError("quasi_spectrum: solver failed");

  const Eigen::Index n = op.u.rows();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  RealVector raw_phases(n);
  for (Eigen::Index k = 0; k < n; ++k) raw_phases(k) = std::arg(solver.eigenvalues()(k));
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return raw_phases(a) < raw_phases(b); });

  QuasiSpectrum qs;
  qs.phases.resize(n);
  qs.quasienergies.resize(n);
  qs.arccos_form.resize(n);
  qs.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[k];
    const Complex lambda = solver.eigenvalues()(src);
    qs.phases(k) = std::arg(lambda);
    qs.quasienergies(k) = -qs.phases(k) / op.period;
    qs.arccos_form(k) = -std::acos(std::clamp(lambda.real(), -1.0, 1.0)) / op.period;
    qs.vectors.col(k) = solver.eigenvectors().col(src);
  }
  return qs;
}

StateVector plus_product_state(const SpinBasis& basis) {
  StateVector psi;
  psi.basis = BasisKind::Full;
  psi.amplitudes =
      ComplexVector::Constant(basis.dim, Complex(std::pow(2.0, -0.5 * basis.num_sites), 0.0));
  return psi;
}

StateVector superposed_initial_state(const SpinBasis& basis, double theta) {
  if (theta < 0.0 || theta > 0.5 * kPi + 1e-12)
    throw ConfigError("superposed_initial_state: theta must be in [0, pi/2]");
  StateVector psi = plus_product_state(basis);
  psi.amplitudes *= std::cos(theta);
  psi.amplitudes(basis.dim - 1) += std::sin(theta);  // |up...up> is the last index
  psi.amplitudes /= psi.amplitudes.norm();
  return psi;
}

RealOperator zz_minus_yy(const SpinBasis& basis) {
  const int L = basis.num_sites;
  const std::uint32_t mask = (1u << L) - 1;
  std::vector<Eigen::Triplet<double>> trips;
  for (Eigen::Index s = 0; s < basis.dim; ++s) {
    const std::uint32_t u = static_cast<std::uint32_t>(s);
    // zz: diagonal, +1 per aligned bond, -1 per anti-aligned bond
    const std::uint32_t rot = ((u << 1) | (u >> (L - 1))) & mask;
    const int anti = __builtin_popcount((u ^ rot) & mask);
    trips.emplace_back(s, s, double(L - anti) - double(anti));
    // yy: flips both sites of a bond; matrix element -1 if the two spins are
    // aligned before the flip, +1 if anti-aligned
    for (int j = 0; j < L; ++j) {
      const int jn = (j + 1) % L;
      const bool bj = (u >> j) & 1u;
      const bool bn = (u >> jn) & 1u;
      const std::uint32_t target = u ^ (1u << j) ^ (1u << jn);
      const double yy = (bj == bn) ? -1.0 : 1.0;
      trips.emplace_back(static_cast<Eigen::Index>(target), s, -yy);
    }
  }
  Eigen::SparseMatrix<double> m(basis.dim, basis.dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return make_operator(std::move(m), true);
}

StroboscopicTrace stroboscopic_run(const FloquetOperator& op, const StateVector& psi0,
                                   int m_max, const RealOperator& observable) {
  if (m_max < 1) throw ConfigError("stroboscopic_run: m_max must be >= 1");
  if (op.u.rows() != psi0.amplitudes.size() || observable.dim != psi0.amplitudes.size())
    throw ConfigError("stroboscopic_run: dimension mismatch");

  StroboscopicTrace trace;
  trace.periods.resize(m_max + 1);
  trace.values.resize(m_max + 1);
  StateVector psi = psi0;
  for (int m = 0; m <= m_max; ++m) {
    trace.periods[m] = m;
    trace.values(m) = expectation(observable, psi);
    const double defect = std::abs(psi.amplitudes.norm() - 1.0);
    trace.max_norm_defect = std::max(trace.max_norm_defect, defect);
    if (trace.max_norm_defect > 1e-6)
      throw NumericError("stroboscopic_run: accumulated norm defect " +
                         std::to_string(trace.max_norm_defect) + " at period " +
                         std::to_string(m));
    if (m < m_max) psi.amplitudes = op.u * psi.amplitudes;
  }
  return trace;
}

double long_time_average(const StroboscopicTrace& trace, int m0, int window, int stride) {
  if (m0 < 0 || window < stride || stride < 1)
    throw ConfigError("long_time_average: bad sampling parameters");
  const int m_last = trace.periods.empty() ? -1 : trace.periods.back();
  if (m0 + window > m_last)
    throw ConfigError("long_time_average: window exceeds the recorded trace");
  double sum = 0.0;
  int count = 0;
  for (int m = m0 + stride; m <= m0 + window; m += stride) {
    sum += trace.values(m);
    ++count;
  }
  return sum / count;
}

}  // namespace dchain
