#pragma once

#include <array>
#include <optional>

#include "dchain/floquet.hpp"
#include "dchain/hilbert.hpp"

namespace dchain {

// Floquet perturbation theory for the square-pulse drive, treating the
// repulsion as the perturbation. The interaction splits into five harmonics
// O_m (m = -2..2) of the drive rotation, [sum sigma^x, O_m] = 2m O_m, and the
// perturbative orders are assembled from ordered time integrals of the
// rotating-frame phases. Raising/lowering combinations live in the y-z plane:
// sigma^z -+ i sigma^y raises/lowers the sigma^x quantum number by one.

/// The five interaction harmonics; their sum is the repulsion term exactly.
struct DriveHarmonics {
  std::array<ComplexOperator, 5> ops;  // index m + 2
  const ComplexOperator& at(int m) const { return ops.at(static_cast<std::size_t>(m + 2)); }
};

DriveHarmonics interaction_harmonics(const SpinBasis& basis, double v0);

/// I_m = integral over one period of the rotating-frame phase of harmonic m;
/// equals T for m = 0 and -(i/(m h0)) (e^{i m h0 T} - 1) otherwise.
Complex drive_phase_integral(int m, double h0, double period);

/// Ordered double integral c_mn over 0 <= t2 <= t1 <= T, evaluated in closed
/// form by splitting the simplex across the two half-periods.
Complex ordered_pair_integral(int m, int n, double h0, double period);

/// The reduced closed form c_mn = I_m I_n / 2 (valid for this drive because
/// the phases satisfy f(T - t) = f(t)).
Complex pair_coefficient(int m, int n, double h0, double period);

/// Ordered triple integral c_mnk over 0 <= t3 <= t2 <= t1 <= T, closed form.
Complex ordered_triple_integral(int m, int n, int k, double h0, double period);

/// Gauss-Legendre cross-checks of the ordered integrals (independent of the
/// closed-form path).
Complex ordered_pair_integral_quadrature(int m, int n, double h0, double period,
                                         int nodes = 48);
Complex ordered_triple_integral_quadrature(int m, int n, int k, double h0, double period,
                                           int nodes = 48);
Complex drive_phase_integral_quadrature(int m, double h0, double period, int nodes = 48);

/// First-order Floquet Hamiltonian, from the harmonic sum (1/T) sum_m I_m O_m.
ComplexMatrix floquet_order1_sum(const DriveHarmonics& harmonics, double h0, double period);

/// Same operator from the explicit closed form in the y-z Pauli basis.
ComplexMatrix floquet_order1_closed(const SpinBasis& basis, double v0, double h0,
                                    double period);

struct FloquetOrderResult {
  ComplexMatrix op;
  double route_disagreement = 0.0;  // max element difference of the two routes
  double hermiticity = 0.0;
};

FloquetOrderResult floquet_order1(const SpinBasis& basis, double v0, double h0, double period);

/// max |U_2 - U_1^2/2| with U_2 built from the ordered pair integrals; the
/// second-order Floquet Hamiltonian vanishes identically for this drive.
double second_order_residual(const DriveHarmonics& harmonics, double h0, double period);

/// Third order, assembled (a) from the ordered operator products
/// (i/T)(U_3 - U_1 U_2 + U_1^3/3) and (b) from the double-commutator form;
/// returns route (a) and the two routes' disagreement.
FloquetOrderResult floquet_order3(const DriveHarmonics& harmonics, double h0, double period);

/// The (m = n = 0, k = 1) double-commutator block of the third order.
ComplexMatrix floquet_order3_block_001(const DriveHarmonics& harmonics, double h0,
                                       double period);

/// Reference form of the same block as an explicit three-site Pauli-string
/// sum with prefactor -(1/(4 h0^2) + i T/(8 h0)) (V0/4)^3; valid at the
/// special frequencies h0 T = 2 pi p.
ComplexMatrix floquet_order3_block_001_reference(const SpinBasis& basis, double v0, double h0,
                                                 double period);

struct ExactFloquetResult {
  ComplexMatrix h;            // (i/T) log U on the principal branch
  bool branch_warning = false;  // some eigenphase within 1e-9 of +-pi
  double min_gap_to_pi = 0.0;
};

ExactFloquetResult exact_floquet_hamiltonian(const FloquetOperator& op);

struct ParityCheckResult {
  double inverse_defect = 0.0;  // max |U(-V0) U(V0) - I|
  double odd_defect = 0.0;      // max |H_F(-V0) + H_F(V0)|
  bool branch_warning = false;
  bool passed = false;
};

/// U(V0)^{-1} = U(-V0): the exact Floquet Hamiltonian is odd in V0.
ParityCheckResult interaction_parity_check(const SpinBasis& basis, double h0, double period,
                                           double v0);

/// Residuals of every identity the expansion relies on, evaluated at one
/// parameter point. All entries are max-element norms.
struct IdentityReport {
  double harmonic_sum = 0.0;        // sum_m O_m vs the repulsion term
  double harmonic_ladder = 0.0;     // [sum sigma^x, O_m] - 2m O_m
  double pair_symmetry = 0.0;       // c_mn + c_nm - I_m I_n
  double pair_closed_form = 0.0;    // c_mn - I_m I_n / 2
  double second_order = 0.0;        // U_2 - U_1^2/2
  double triple_reversal = 0.0;     // c_mnk - c_knm
  double triple_cyclic = 0.0;       // c_mnk + c_kmn + c_nkm - I_m I_n I_k / 2
  double order1_routes = 0.0;       // harmonic sum vs closed form
  double order3_routes = 0.0;       // product form vs commutator form
  std::optional<double> block_001;  // explicit block check, special freq only
  double parity_inverse = 0.0;      // U(-V0) U(V0) - I
  double parity_odd = 0.0;          // H_F(-V0) + H_F(V0)
  double order1_commutator_x = 0.0; // [H_F^(1), sum sigma^x]
  double order3_commutator_x = 0.0;
  bool branch_warning = false;
};

IdentityReport identity_report(const SpinBasis& basis, double v0, double h0, double period);

}  // namespace dchain
