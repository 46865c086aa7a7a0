#include "dchain/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include <Eigen/Eigenvalues>

#include "dchain/models.hpp"

namespace dchain {

namespace {

template <typename Scalar>
bool is_diagonal(const Eigen::SparseMatrix<Scalar>& m) {
  for (int k = 0; k < m.outerSize(); ++k)
    for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(m, k); it; ++it)
      if (it.row() != it.col() && std::abs(it.value()) != 0.0) return false;
  return true;
}

template <typename Scalar>
void fix_column_phases(DenseMatrix<Scalar>& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index imax = 0;
    v.col(c).cwiseAbs().maxCoeff(&imax);
    const Scalar pivot = v(imax, c);
    if constexpr (std::is_same_v<Scalar, double>) {
      if (pivot < 0.0) v.col(c) = -v.col(c);
    } else {
      const double mag = std::abs(pivot);
      if (mag > 0.0) v.col(c) *= std::conj(pivot) / mag;
    }
  }
}

}  // namespace

template <typename Scalar>
EigenSystem<Scalar> diagonalize(const Operator<Scalar>& op, Eigen::Index max_dim) {
  if (op.dim > max_dim)
    throw ConfigError("diagonalize: dimension " + std::to_string(op.dim) +
                      " exceeds the dense cap " + std::to_string(max_dim));
  validate_hermitian(op);

  EigenSystem<Scalar> es;
  if (is_diagonal(op.mat)) {
    // Diagonal operators (e.g. the chain at h = 0) skip the dense solver.
    RealVector diag = RealVector::Zero(op.dim);
    for (int k = 0; k < op.mat.outerSize(); ++k)
      for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(op.mat, k); it; ++it)
        if (it.row() == it.col()) diag(it.row()) = std::real(it.value());
    std::vector<Eigen::Index> order(op.dim);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return diag(a) < diag(b); });
    es.values.resize(op.dim);
    es.vectors = DenseMatrix<Scalar>::Zero(op.dim, op.dim);
    for (Eigen::Index c = 0; c < op.dim; ++c) {
      es.values(c) = diag(order[c]);
      es.vectors(order[c], c) = Scalar(1.0);
    }
    return es;
  }

  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(op.dense());
  if (solver.info() != Eigen::Success) throw NumericError("diagonalize: solver failed");
  es.values = solver.eigenvalues();
  es.vectors = solver.eigenvectors();
  fix_column_phases(es.vectors);
  return es;
}

template EigenSystem<double> diagonalize(const Operator<double>&, Eigen::Index);
template EigenSystem<Complex> diagonalize(const Operator<Complex>&, Eigen::Index);

template <typename Scalar>
DegeneracyReport degeneracy_count(const EigenSystem<Scalar>& es, double energy, double tol) {
  if (!(tol > 0.0)) throw ConfigError("degeneracy_count: tol must be > 0");
  DegeneracyReport report;
  report.target_energy = energy;
  report.tol = tol;
  for (Eigen::Index n = 0; n < es.values.size(); ++n)
    if (std::abs(es.values(n) - energy) <= tol) report.members.push_back(n);
  report.count = static_cast<int>(report.members.size());
  return report;
}

template DegeneracyReport degeneracy_count(const EigenSystem<double>&, double, double);
template DegeneracyReport degeneracy_count(const EigenSystem<Complex>&, double, double);

template <typename Scalar>
std::pair<double, int> ground_manifold_weight(const EigenSystem<Scalar>& es,
                                              const StateVector& psi, double tol) {
  const double e0 = es.values(0);
  double weight = 0.0;
  int count = 0;
  for (Eigen::Index n = 0; n < es.values.size(); ++n) {
    if (es.values(n) - e0 > tol) break;
    const Complex ov = es.vectors.col(n).template cast<Complex>().dot(psi.amplitudes);
    weight += std::norm(ov);
    ++count;
  }
  return {weight, count};
}

template std::pair<double, int> ground_manifold_weight(const EigenSystem<double>&,
                                                       const StateVector&, double);
template std::pair<double, int> ground_manifold_weight(const EigenSystem<Complex>&,
                                                       const StateVector&, double);

SpectrumScan spectrum_scan(const SpinBasis& basis, double v0, const RealVector& h_grid,
                           int workers) {
  if (h_grid.size() == 0) throw ConfigError("spectrum_scan: empty grid");
  SpectrumScan scan;
  scan.h_values = h_grid;
  scan.energies.resize(h_grid.size(), basis.dim);

  const int n_threads = workers > 0
                            ? workers
                            : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<Eigen::Index> next{0};
  auto work = [&]() {
    for (;;) {
      const Eigen::Index i = next.fetch_add(1);
      if (i >= h_grid.size()) return;
      const RealOperator h = chain_hamiltonian(basis, ChainParams{h_grid(i), v0});
      scan.energies.row(i) = diagonalize(h).values.transpose();
    }
  };
  if (n_threads == 1 || h_grid.size() == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return scan;
}

}  // namespace dchain
