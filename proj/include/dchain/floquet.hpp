#pragma once

#include <optional>
#include <vector>

#include "dchain/evolve.hpp"
#include "dchain/models.hpp"

namespace dchain {

/// Square-pulse drive: field -h0 for the first half period, +h0 for the
/// second. At omega_d = h0/p (integer p) the first-order Floquet Hamiltonian
/// acquires the emergent U(1) symmetry.
struct DriveConfig {
  double h0 = 1.0;
  double omega_d = 1.0;
  double v0 = 1.0;
  std::optional<int> p_special;
  double period() const { return 2.0 * 3.14159265358979323846 / omega_d; }
};

void validate_drive(const DriveConfig& config);

/// omega_p* = h0 / p
double special_frequency(double h0, int p);

struct FloquetOperator {
  ComplexMatrix u;
  double period = 0.0;
};

/// exp(-i H t) for a pre-diagonalized real symmetric H.
ComplexMatrix expm_hermitian(const EigenSystem<double>& es, double t);

/// U = exp(-i H_second T/2) exp(-i H_first T/2); the first segment acts first.
FloquetOperator build_floquet(const RealOperator& h_first, const RealOperator& h_second,
                              double period);

/// max |U^dagger U - I|
double unitarity_defect(const FloquetOperator& op);

/// Eigenphases of U sorted ascending in (-pi, pi]. quasienergies = -theta/T is
/// the invertible principal-branch convention; arccos_form = -arccos(Re
/// lambda)/T is reported alongside (it discards the sign of theta).
struct QuasiSpectrum {
  RealVector phases;
  RealVector quasienergies;
  RealVector arccos_form;
  ComplexMatrix vectors;
};

QuasiSpectrum quasi_spectrum(const FloquetOperator& op);

/// Product state of sigma^x eigenstates |+>^L.
StateVector plus_product_state(const SpinBasis& basis);

/// Normalized cos(theta)|+...+> + sin(theta)|up...up> (the two components are
/// not orthogonal; their overlap is 2^{-L/2}).
StateVector superposed_initial_state(const SpinBasis& basis, double theta);

/// sum_j (sigma^z_j sigma^z_{j+1} - sigma^y_j sigma^y_{j+1}); both terms have
/// real matrix elements, so the operator is real symmetric.
RealOperator zz_minus_yy(const SpinBasis& basis);

struct StroboscopicTrace {
  std::vector<int> periods;  // m = 0..m_max
  RealVector values;         // observable at t = m T
  double max_norm_defect = 0.0;
};

/// Applies U repeatedly, evaluating the observable every period. Errors if the
/// accumulated norm defect exceeds 1e-6.
StroboscopicTrace stroboscopic_run(const FloquetOperator& op, const StateVector& psi0,
                                   int m_max, const RealOperator& observable);

/// Mean over stroboscopic samples m = m0+stride, m0+2*stride, ..., m0+window.
/// Defaults give 200 samples.
double long_time_average(const StroboscopicTrace& trace, int m0 = 1500, int window = 1000,
                         int stride = 5);

}  // namespace dchain
