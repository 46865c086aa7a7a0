#include "dchain/hilbert.hpp"

#include <array>
#include <cmath>

namespace dchain {

SpinBasis build_basis(int num_sites, int max_sites) {
  if (num_sites < 3 || num_sites > max_sites)
    throw ConfigError("build_basis: L must be in [3, " + std::to_string(max_sites) +
                      "], got " + std::to_string(num_sites));
  SpinBasis b;
  b.num_sites = num_sites;
  b.dim = Eigen::Index(1) << num_sites;
  return b;
}

namespace {

// Accumulate triplets for one single-site Pauli acting on every basis state.
void pauli_triplets(const SpinBasis& basis, int site, Axis axis,
                    std::vector<Eigen::Triplet<Complex>>& out) {
  const Eigen::Index dim = basis.dim;
  const std::uint32_t bit = 1u << site;
  for (Eigen::Index s = 0; s < dim; ++s) {
    const bool up = (static_cast<std::uint32_t>(s) & bit) != 0;
    switch (axis) {
      case Axis::Z:
        out.emplace_back(s, s, up ? 1.0 : -1.0);
        break;
      case Axis::X:
        out.emplace_back(static_cast<Eigen::Index>(s ^ bit), s, 1.0);
        break;
      case Axis::Y:
        // sigma^y |down> = -i |up>, sigma^y |up> = i |down>
        out.emplace_back(static_cast<Eigen::Index>(s ^ bit), s,
                         up ? Complex(0.0, 1.0) : Complex(0.0, -1.0));
        break;
    }
  }
}

}  // namespace

ComplexOperator pauli_op(const SpinBasis& basis, int site, Axis axis) {
  if (site < 0 || site >= basis.num_sites)
    throw ConfigError("pauli_op: site out of range");
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(basis.dim);
  pauli_triplets(basis, site, axis, trips);
  Eigen::SparseMatrix<Complex> m(basis.dim, basis.dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return make_operator(std::move(m), true);
}

RealOperator total_sx(const SpinBasis& basis) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(basis.dim * basis.num_sites);
  for (Eigen::Index s = 0; s < basis.dim; ++s)
    for (int j = 0; j < basis.num_sites; ++j)
      trips.emplace_back(s ^ (Eigen::Index(1) << j), s, 1.0);
  Eigen::SparseMatrix<double> m(basis.dim, basis.dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return make_operator(std::move(m), true);
}

RealOperator total_sz(const SpinBasis& basis) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(basis.dim);
  const int L = basis.num_sites;
  for (Eigen::Index s = 0; s < basis.dim; ++s) {
    const int ups = __builtin_popcount(static_cast<std::uint32_t>(s));
    trips.emplace_back(s, s, 2.0 * ups - L);
  }
  Eigen::SparseMatrix<double> m(basis.dim, basis.dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return make_operator(std::move(m), true);
}

ComplexOperator pauli_string(const SpinBasis& basis,
                             const std::vector<std::pair<int, Axis>>& factors) {
  Eigen::SparseMatrix<Complex> m(basis.dim, basis.dim);
  m.setIdentity();
  for (const auto& [site, axis] : factors) {
    const ComplexOperator p = pauli_op(basis, site, axis);
    m = (p.mat * m).eval();
  }
  bool hermitian = hermiticity_defect(ComplexOperator{basis.dim, m, false}) < 1e-12;
  return make_operator(std::move(m), hermitian);
}

std::int64_t count_blockaded(int num_sites) {
  if (num_sites < 2) throw ConfigError("count_blockaded: L must be >= 2");
  // trace of [[1,1],[1,0]]^L via binary exponentiation
  std::array<std::int64_t, 4> r = {1, 0, 0, 1};  // identity, row-major
  std::array<std::int64_t, 4> t = {1, 1, 1, 0};
  int n = num_sites;
  auto mul = [](const std::array<std::int64_t, 4>& a, const std::array<std::int64_t, 4>& b) {
    return std::array<std::int64_t, 4>{
        a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  };
  while (n > 0) {
    if (n & 1) r = mul(r, t);
    t = mul(t, t);
    n >>= 1;
  }
  return r[0] + r[3];
}

std::int64_t count_blockaded_formula(int num_sites) {
  if (num_sites < 2) throw ConfigError("count_blockaded_formula: L must be >= 2");
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const double value = std::pow(phi, num_sites) + std::pow(-1.0 / phi, num_sites);
  return static_cast<std::int64_t>(std::llround(value));
}

ConstrainedSubspace enumerate_blockaded(const SpinBasis& basis) {
  ConstrainedSubspace sub;
  sub.num_sites = basis.num_sites;
  const int L = basis.num_sites;
  const std::uint32_t mask = (1u << L) - 1;
  for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(basis.dim); ++s) {
    const std::uint32_t rot = ((s << 1) | (s >> (L - 1))) & mask;
    if ((s & rot) == 0) sub.states.push_back(s);
  }
  return sub;
}

template <typename Scalar>
Operator<Scalar> project_operator(const Operator<Scalar>& op, const ConstrainedSubspace& sub) {
  const Eigen::Index full_dim = Eigen::Index(1) << sub.num_sites;
  if (op.dim != full_dim) throw ConfigError("project_operator: dimension mismatch");
  const Eigen::Index d = sub.dim();
  // position of each kept index in the sector, -1 otherwise
  std::vector<Eigen::Index> pos(full_dim, -1);
  for (Eigen::Index i = 0; i < d; ++i) pos[sub.states[i]] = i;
  std::vector<Eigen::Triplet<Scalar>> trips;
  for (int k = 0; k < op.mat.outerSize(); ++k) {
    const Eigen::Index col = pos[k];
    if (col < 0) continue;
    for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(op.mat, k); it; ++it) {
      const Eigen::Index row = pos[it.row()];
      if (row >= 0) trips.emplace_back(row, col, it.value());
    }
  }
  Eigen::SparseMatrix<Scalar> m(d, d);
  m.setFromTriplets(trips.begin(), trips.end());
  return make_operator(std::move(m), op.hermitian);
}

template Operator<double> project_operator(const Operator<double>&, const ConstrainedSubspace&);
template Operator<Complex> project_operator(const Operator<Complex>&, const ConstrainedSubspace&);

}  // namespace dchain
