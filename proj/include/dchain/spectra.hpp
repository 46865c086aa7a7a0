#pragma once

#include <vector>

#include "dchain/core.hpp"
#include "dchain/hilbert.hpp"

namespace dchain {

/// Full eigensystem of a Hermitian operator: values ascending, orthonormal
/// columns, each column's largest-magnitude component made real positive so
/// overlaps are reproducible run to run.
template <typename Scalar>
struct EigenSystem {
  RealVector values;
  DenseMatrix<Scalar> vectors;
  Eigen::Index dim() const { return values.size(); }
};

inline constexpr Eigen::Index kDenseDiagonalizationCap = Eigen::Index(1) << 14;

template <typename Scalar>
EigenSystem<Scalar> diagonalize(const Operator<Scalar>& op,
                                Eigen::Index max_dim = kDenseDiagonalizationCap);

struct DegeneracyReport {
  double target_energy = 0.0;
  double tol = 0.0;
  int count = 0;
  std::vector<Eigen::Index> members;
};

template <typename Scalar>
DegeneracyReport degeneracy_count(const EigenSystem<Scalar>& es, double energy, double tol);

/// 1e-10 * max(1, ||H||) with ||H|| the largest eigenvalue magnitude.
template <typename Scalar>
double default_degeneracy_tol(const EigenSystem<Scalar>& es) {
  const double scale = es.values.size() ? es.values.cwiseAbs().maxCoeff() : 0.0;
  return 1e-10 * std::max(1.0, scale);
}

template <typename Scalar>
StateVector ground_state(const EigenSystem<Scalar>& es,
                         BasisKind basis = BasisKind::Full) {
  StateVector psi;
  psi.amplitudes = es.vectors.col(0).template cast<Complex>();
  psi.basis = basis;
  return psi;
}

/// ||P_G psi||^2 where P_G projects onto all eigenvectors within tol of the
/// lowest eigenvalue. Returns the squared overlap and the manifold size.
template <typename Scalar>
std::pair<double, int> ground_manifold_weight(const EigenSystem<Scalar>& es,
                                              const StateVector& psi, double tol);

/// Sorted eigenvalues of the chain Hamiltonian on a grid of field values.
/// energies(i, n) is the n-th eigenvalue at h_values(i).
struct SpectrumScan {
  RealVector h_values;
  RealMatrix energies;
};

SpectrumScan spectrum_scan(const SpinBasis& basis, double v0, const RealVector& h_grid,
                           int workers = 0);

}  // namespace dchain
