#pragma once

#include <cstdint>
#include <vector>

#include "dchain/core.hpp"

namespace dchain {

inline constexpr int kDefaultMaxSites = 14;

/// Computational basis of a periodic chain of L spin-1/2 sites.
/// Bit j of a basis-state index holds the spin at site j:
/// bit 1 means sigma^z eigenvalue +1 ("up", one Rydberg excitation),
/// so the excitation density n_j = (1 + sigma^z_j)/2 equals the bit value.
struct SpinBasis {
  int num_sites = 0;
  Eigen::Index dim = 0;
};

enum class Axis { X, Y, Z };

/// L in [3, max_sites]; L >= 3 keeps the two bonds of every periodic pair distinct.
SpinBasis build_basis(int num_sites, int max_sites = kDefaultMaxSites);

/// Single-site Pauli operator (Hermitian, unitary, traceless).
ComplexOperator pauli_op(const SpinBasis& basis, int site, Axis axis);

/// Sum over sites of sigma^x (the transverse-drive operator).
RealOperator total_sx(const SpinBasis& basis);

/// Sum over sites of sigma^z.
RealOperator total_sz(const SpinBasis& basis);

/// Product of single-site Paulis on distinct sites, e.g. {{0,Z},{1,Y}}.
ComplexOperator pauli_string(const SpinBasis& basis,
                             const std::vector<std::pair<int, Axis>>& factors);

/// Configurations with no two adjacent up spins on the ring, ascending by index.
struct ConstrainedSubspace {
  int num_sites = 0;
  std::vector<std::uint32_t> states;
  Eigen::Index dim() const { return static_cast<Eigen::Index>(states.size()); }
};

/// Number of ring configurations without adjacent up pairs, by the trace of
/// the 2x2 transfer-matrix power (exact integer arithmetic). L >= 2.
std::int64_t count_blockaded(int num_sites);

/// Same count from the golden-ratio closed form, rounded to integer.
std::int64_t count_blockaded_formula(int num_sites);

ConstrainedSubspace enumerate_blockaded(const SpinBasis& basis);

/// Restriction of a full-space operator to the rows/columns of the subspace.
template <typename Scalar>
Operator<Scalar> project_operator(const Operator<Scalar>& op, const ConstrainedSubspace& sub);

}  // namespace dchain
