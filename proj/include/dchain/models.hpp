#pragma once

#include <utility>

#include "dchain/hilbert.hpp"

namespace dchain {

/// Transverse-field chain with nearest-neighbor excitation repulsion,
///   H = -h * sum_j sigma^x_j + (v0/4) * sum_j (1+sigma^z_j)(1+sigma^z_{j+1}),
/// extensively degenerate at h = 0.
struct ChainParams {
  double h = 0.0;
  double v0 = 1.0;
};

/// PXP chain in a longitudinal field, restricted to the blockaded sector:
///   H' = sum_j (-w P_{j-1} sigma^x_j P_{j+1} + lambda sigma^z_j / 2),
/// with an Ising critical point at lambda = -1.31 w.
struct PxpParams {
  double w = 1.0;
  double lambda = 0.0;
};

inline double pxp_lambda_critical(double w) { return -1.31 * w; }

/// Repulsion term (v0/4) sum_j (1+sigma^z_j)(1+sigma^z_{j+1}); diagonal, entry =
/// v0 * (number of adjacent up-up bonds on the ring). Its kernel is exactly the
/// blockaded subspace.
RealOperator pair_repulsion(const SpinBasis& basis, double v0);

RealOperator chain_hamiltonian(const SpinBasis& basis, const ChainParams& params);

/// Sector operator; site flips allowed only when both ring neighbors are down.
RealOperator pxp_hamiltonian(const ConstrainedSubspace& sub, const PxpParams& params);

/// The two constant Hamiltonians of one square-pulse period:
/// first half (field -h0): +h0 * sum sigma^x + repulsion;
/// second half (field +h0): -h0 * sum sigma^x + repulsion.
std::pair<RealOperator, RealOperator> square_pulse_segments(const SpinBasis& basis, double h0,
                                                            double v0);

}  // namespace dchain
