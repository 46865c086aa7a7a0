#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace dchain {

using Complex = std::complex<double>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<Complex>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr const char* kVersion = "dchain 0.1.0";

/// Thrown for invalid run parameters (maps to CLI exit status 2).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numeric tolerance cannot be met (maps to CLI exit status 1).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operator on a finite Hilbert space. Built sparse, densified on demand.
/// The hermitian flag is a claim of the constructor; validate() enforces it.
template <typename Scalar>
struct Operator {
  Eigen::Index dim = 0;
  Eigen::SparseMatrix<Scalar> mat;
  bool hermitian = false;

  DenseMatrix<Scalar> dense() const { return DenseMatrix<Scalar>(mat); }
};

using RealOperator = Operator<double>;
using ComplexOperator = Operator<Complex>;

template <typename Scalar>
Operator<Scalar> make_operator(Eigen::SparseMatrix<Scalar> m, bool hermitian) {
  Operator<Scalar> op;
  op.dim = m.rows();
  op.mat = std::move(m);
  op.mat.makeCompressed();
  op.hermitian = hermitian;
  return op;
}

template <typename Scalar>
Operator<Scalar> make_operator(const DenseMatrix<Scalar>& m, bool hermitian) {
  return make_operator(Eigen::SparseMatrix<Scalar>(m.sparseView()), hermitian);
}

inline ComplexOperator to_complex(const RealOperator& op) {
  ComplexOperator out;
  out.dim = op.dim;
  out.mat = op.mat.template cast<Complex>();
  out.hermitian = op.hermitian;
  return out;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.rows() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Scalar>
double max_abs(const Eigen::SparseMatrix<Scalar>& m) {
  double v = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(m, k); it; ++it)
      v = std::max(v, std::abs(it.value()));
  return v;
}

/// max_ij |A - A^dagger|.
template <typename Scalar>
double hermiticity_defect(const Operator<Scalar>& op) {
  Eigen::SparseMatrix<Scalar> d = op.mat - Eigen::SparseMatrix<Scalar>(op.mat.adjoint());
  return max_abs(d);
}

/// Validates the hermitian tag against the entries (tolerance 1e-12).
template <typename Scalar>
void validate_hermitian(const Operator<Scalar>& op) {
  if (!op.hermitian) throw ConfigError("operator is not tagged hermitian");
  const double defect = hermiticity_defect(op);
  if (defect >= 1e-12)
    throw NumericError("hermitian tag violated, |A - A^dagger| = " + std::to_string(defect));
}

enum class BasisKind { Full, Constrained };

/// Normalized amplitude vector in either the full computational basis or a
/// constrained (blockaded-sector) basis.
struct StateVector {
  ComplexVector amplitudes;
  BasisKind basis = BasisKind::Full;
};

inline double norm(const StateVector& psi) { return psi.amplitudes.norm(); }

inline StateVector normalized(StateVector psi) {
  psi.amplitudes /= psi.amplitudes.norm();
  return psi;
}

/// |<a|b>|^2
inline double fidelity(const StateVector& a, const StateVector& b) {
  const Complex ov = a.amplitudes.dot(b.amplitudes);
  return std::norm(ov);
}

/// op |v>. Real operators act on the real and imaginary parts separately so
/// no complex copy of the matrix is ever made.
inline ComplexVector apply(const RealOperator& op, const ComplexVector& v) {
  const RealVector vr = v.real();
  const RealVector vi = v.imag();
  ComplexVector out(v.size());
  out.real() = op.mat * vr;
  out.imag() = op.mat * vi;
  return out;
}

inline ComplexVector apply(const ComplexOperator& op, const ComplexVector& v) {
  return op.mat * v;
}

/// m * v and m^T * v for a dense real matrix and a complex vector, without
/// materializing a complex copy of the matrix.
inline ComplexVector real_mat_vec(const RealMatrix& m, const ComplexVector& v) {
  const RealVector vr = v.real();
  const RealVector vi = v.imag();
  ComplexVector out(m.rows());
  out.real() = m * vr;
  out.imag() = m * vi;
  return out;
}

inline ComplexVector real_mat_t_vec(const RealMatrix& m, const ComplexVector& v) {
  const RealVector vr = v.real();
  const RealVector vi = v.imag();
  ComplexVector out(m.cols());
  out.real() = m.transpose() * vr;
  out.imag() = m.transpose() * vi;
  return out;
}

/// <psi|op|psi>; the imaginary part of a Hermitian expectation is rounding
/// noise and is dropped.
template <typename Scalar>
double expectation(const Operator<Scalar>& op, const StateVector& psi) {
  if (op.dim != psi.amplitudes.size()) throw ConfigError("expectation: dimension mismatch");
  return psi.amplitudes.dot(apply(op, psi.amplitudes)).real();
}

}  // namespace dchain
