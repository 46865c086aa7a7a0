#include "dchain/models.hpp"

namespace dchain {

namespace {

int adjacent_up_bonds(std::uint32_t s, int L) {
  const std::uint32_t mask = (1u << L) - 1;
  const std::uint32_t rot = ((s << 1) | (s >> (L - 1))) & mask;
  return __builtin_popcount(s & rot);
}

}  // namespace

RealOperator pair_repulsion(const SpinBasis& basis, double v0) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(basis.dim);
  for (Eigen::Index s = 0; s < basis.dim; ++s) {
    const int bonds = adjacent_up_bonds(static_cast<std::uint32_t>(s), basis.num_sites);
    if (bonds > 0) trips.emplace_back(s, s, v0 * bonds);
  }
  Eigen::SparseMatrix<double> m(basis.dim, basis.dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return make_operator(std::move(m), true);
}

RealOperator chain_hamiltonian(const SpinBasis& basis, const ChainParams& params) {
  const RealOperator x = total_sx(basis);
  const RealOperator rep = pair_repulsion(basis, params.v0);
  Eigen::SparseMatrix<double> m = rep.mat - params.h * x.mat;
  return make_operator(std::move(m), true);
}

RealOperator pxp_hamiltonian(const ConstrainedSubspace& sub, const PxpParams& params) {
  const int L = sub.num_sites;
  const Eigen::Index d = sub.dim();
  const std::uint32_t mask = (1u << L) - 1;
  const Eigen::Index full_dim = Eigen::Index(1) << L;
  std::vector<Eigen::Index> pos(full_dim, -1);
  for (Eigen::Index i = 0; i < d; ++i) pos[sub.states[i]] = i;

  std::vector<Eigen::Triplet<double>> trips;
  for (Eigen::Index i = 0; i < d; ++i) {
    const std::uint32_t s = sub.states[i];
    // longitudinal field: (lambda/2) * sum_j sigma^z_j
    const int ups = __builtin_popcount(s);
    const double diag = 0.5 * params.lambda * (2.0 * ups - L);
    if (diag != 0.0) trips.emplace_back(i, i, diag);
    // constrained flips: both neighbors down
    for (int j = 0; j < L; ++j) {
      const std::uint32_t left = 1u << ((j + L - 1) % L);
      const std::uint32_t right = 1u << ((j + 1) % L);
      if ((s & left) || (s & right)) continue;
      const std::uint32_t t = (s ^ (1u << j)) & mask;
      trips.emplace_back(pos[t], i, -params.w);
    }
  }
  Eigen::SparseMatrix<double> m(d, d);
  m.setFromTriplets(trips.begin(), trips.end());
  return make_operator(std::move(m), true);
}

std::pair<RealOperator, RealOperator> square_pulse_segments(const SpinBasis& basis, double h0,
                                                            double v0) {
  if (h0 <= 0.0) throw ConfigError("square_pulse_segments: h0 must be > 0");
  const RealOperator x = total_sx(basis);
  const RealOperator rep = pair_repulsion(basis, v0);
  RealOperator first = make_operator(Eigen::SparseMatrix<double>(rep.mat + h0 * x.mat), true);
  RealOperator second = make_operator(Eigen::SparseMatrix<double>(rep.mat - h0 * x.mat), true);
  return {std::move(first), std::move(second)};
}

}  // namespace dchain
