#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "dchain/floquet.hpp"
#include "dchain/fpt.hpp"

using namespace dchain;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("drive config validation and special frequencies") {
  CHECK(special_frequency(25.0, 1) == doctest::Approx(25.0));
  CHECK(special_frequency(25.0, 2) == doctest::Approx(12.5));
  CHECK(special_frequency(25.0, 3) == doctest::Approx(25.0 / 3.0));
  CHECK(special_frequency(25.0, 4) == doctest::Approx(6.25));
  CHECK_THROWS_AS(special_frequency(-1.0, 1), ConfigError);

  DriveConfig config{25.0, 25.0, 1.0, 1};
  validate_drive(config);  // omega_1* = h0
  config.omega_d = 10.0;
  CHECK_THROWS_AS(validate_drive(config), ConfigError);
}

TEST_CASE("floquet operator construction") {
  const SpinBasis basis = build_basis(4);
  const double T = 0.9;

  SUBCASE("no interaction: the two halves cancel, U = I") {
    const auto [first, second] = square_pulse_segments(basis, 2.0, 0.0);
    const FloquetOperator u = build_floquet(first, second, T);
    CHECK(max_abs(ComplexMatrix(u.u - ComplexMatrix::Identity(basis.dim, basis.dim))) <
          1e-13);
    CHECK(unitarity_defect(u) < 1e-13);
  }

  SUBCASE("zero field: U = exp(-i H_1 T)") {
    const RealOperator rep = pair_repulsion(basis, 1.0);
    const FloquetOperator u = build_floquet(rep, rep, T);
    const ComplexMatrix expected = expm_hermitian(diagonalize(rep), T);
    CHECK(max_abs(ComplexMatrix(u.u - expected)) < 1e-13);
  }

  SUBCASE("matches the fine-step rk4 product at a special frequency") {
    const double h0 = 2.0, v0 = 0.05;
    const double Ts = 2.0 * kPi / h0;  // h0 T = 2 pi
    const auto [first, second] = square_pulse_segments(basis, h0, v0);
    const FloquetOperator u = build_floquet(first, second, Ts);
    CHECK(unitarity_defect(u) < 1e-12);

    std::mt19937 rng(9);
    std::normal_distribution<double> gauss;
    StateVector psi;
    psi.amplitudes.resize(basis.dim);
    for (Eigen::Index i = 0; i < basis.dim; ++i)
      psi.amplitudes(i) = Complex(gauss(rng), gauss(rng));
    psi.amplitudes /= psi.amplitudes.norm();

    PropagatorPlan fine;
    fine.dt = 1e-4;
    RealOperator zero = make_operator(Eigen::SparseMatrix<double>(basis.dim, basis.dim), true);
    auto constant = [](double) { return 0.0; };
    const EvolveResult leg1 =
        evolve_rk4(DriveSplit{first, zero, constant}, psi, 0.0, 0.5 * Ts, fine);
    const EvolveResult leg2 =
        evolve_rk4(DriveSplit{second, zero, constant}, leg1.state, 0.5 * Ts, Ts, fine);

    StateVector via_u;
    via_u.amplitudes = u.u * psi.amplitudes;
    CHECK(fidelity(via_u, leg2.state) > 1.0 - 1e-7);
  }

  const auto [first, second] = square_pulse_segments(basis, 1.0, 1.0);
  const SpinBasis b3 = build_basis(3);
  const auto [f3, s3] = square_pulse_segments(b3, 1.0, 1.0);
  CHECK_THROWS_AS(build_floquet(first, s3, T), ConfigError);
}

TEST_CASE("quasi spectrum") {
  const SpinBasis basis = build_basis(4);

  SUBCASE("identity operator: all phases zero") {
    FloquetOperator ident{ComplexMatrix::Identity(basis.dim, basis.dim), 0.7};
    const QuasiSpectrum qs = quasi_spectrum(ident);
    CHECK(qs.phases.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(qs.quasienergies.cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("interaction-free drive: all quasienergies zero") {
    const auto [first, second] = square_pulse_segments(basis, 2.0, 0.0);
    const FloquetOperator u = build_floquet(first, second, 1.1);
    const QuasiSpectrum qs = quasi_spectrum(u);
    CHECK(qs.quasienergies.cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("eigenpairs satisfy the eigenvalue equation") {
    const auto [first, second] = square_pulse_segments(basis, 1.3, 0.8);
    const FloquetOperator u = build_floquet(first, second, 1.7);
    const QuasiSpectrum qs = quasi_spectrum(u);
    for (Eigen::Index k = 0; k < basis.dim; ++k) {
      const Complex lambda = std::exp(Complex(0.0, qs.phases(k)));
      CHECK((u.u * qs.vectors.col(k) - lambda * qs.vectors.col(k)).norm() < 1e-9);
      // phases sorted ascending, arccos column matches up to the sign loss
      CHECK(std::abs(qs.arccos_form(k)) ==
            doctest::Approx(std::abs(qs.quasienergies(k))).epsilon(1e-9));
      if (k > 0) CHECK(qs.phases(k) >= qs.phases(k - 1));
    }
  }
}

TEST_CASE("quasienergy multiset flips sign with the interaction sign") {
  const SpinBasis basis = build_basis(3);
  const double h0 = 1.2, T = 1.9, v0 = 0.7;
  auto phases_for = [&](double v) {
    const auto [first, second] = square_pulse_segments(basis, h0, v);
    QuasiSpectrum qs = quasi_spectrum(build_floquet(first, second, T));
    std::vector<double> ph(qs.phases.data(), qs.phases.data() + qs.phases.size());
    std::sort(ph.begin(), ph.end());
    return ph;
  };
  const std::vector<double> plus = phases_for(v0);
  std::vector<double> minus = phases_for(-v0);
  std::reverse(minus.begin(), minus.end());
  for (std::size_t k = 0; k < plus.size(); ++k)
    CHECK(plus[k] == doctest::Approx(-minus[k]).epsilon(1e-9));
}

TEST_CASE("product and superposed initial states") {
  const SpinBasis basis = build_basis(4);

  const StateVector plus = plus_product_state(basis);
  CHECK(std::abs(norm(plus) - 1.0) < 1e-14);
  CHECK(expectation(total_sx(basis), plus) == doctest::Approx(4.0).epsilon(1e-12));

  const StateVector up = superposed_initial_state(basis, 0.5 * kPi);
  CHECK(expectation(total_sz(basis), up) == doctest::Approx(4.0).epsilon(1e-12));

  // theta = 0 reduces to the plus product state
  const StateVector theta0 = superposed_initial_state(basis, 0.0);
  CHECK((theta0.amplitudes - plus.amplitudes).norm() < 1e-14);

  // the two components overlap by 2^{-L/2}; the renormalization follows
  const double theta = 0.25 * kPi;
  ComplexVector raw = std::cos(theta) * plus.amplitudes;
  raw(basis.dim - 1) += std::sin(theta);
  const double overlap = (plus.amplitudes(basis.dim - 1)).real();  // <up...up|+...+>
  CHECK(overlap == doctest::Approx(std::pow(2.0, -2.0)).epsilon(1e-14));
  CHECK(raw.norm() ==
        doctest::Approx(std::sqrt(1.0 + 2.0 * std::sin(theta) * std::cos(theta) * overlap))
            .epsilon(1e-13));
  const StateVector mixed = superposed_initial_state(basis, theta);
  CHECK((mixed.amplitudes - raw / raw.norm()).norm() < 1e-14);

  CHECK_THROWS_AS(superposed_initial_state(basis, -0.1), ConfigError);
}

TEST_CASE("zz - yy correlator") {
  const SpinBasis basis = build_basis(3);
  const RealOperator dc = zz_minus_yy(basis);
  CHECK(hermiticity_defect(dc) == 0.0);

  // |+...+>: zero by the U(1) symmetry of the observable pair
  CHECK(std::abs(expectation(dc, plus_product_state(basis))) < 1e-13);

  // |up...up>: C_zz = L, C_yy = 0
  StateVector up;
  up.amplitudes = ComplexVector::Zero(basis.dim);
  up.amplitudes(basis.dim - 1) = 1.0;
  CHECK(expectation(dc, up) == doctest::Approx(3.0).epsilon(1e-13));

  // random state against an independent dense oracle built from pauli strings
  std::mt19937 rng(17);
  std::normal_distribution<double> gauss;
  StateVector psi;
  psi.amplitudes.resize(basis.dim);
  for (Eigen::Index i = 0; i < basis.dim; ++i)
    psi.amplitudes(i) = Complex(gauss(rng), gauss(rng));
  psi.amplitudes /= psi.amplitudes.norm();
  ComplexMatrix oracle = ComplexMatrix::Zero(basis.dim, basis.dim);
  for (int j = 0; j < 3; ++j) {
    const int jn = (j + 1) % 3;
    oracle += pauli_string(basis, {{j, Axis::Z}, {jn, Axis::Z}}).dense();
    oracle -= pauli_string(basis, {{j, Axis::Y}, {jn, Axis::Y}}).dense();
  }
  const Complex expected = psi.amplitudes.dot(oracle * psi.amplitudes);
  CHECK(std::abs(expectation(dc, psi) - expected.real()) < 1e-12);
  CHECK(std::abs(expected.imag()) < 1e-12);

  // states rotated about x from |+...+> keep the correlator at zero
  const RealOperator x = total_sx(basis);
  for (double angle : {0.3, 1.1, 2.7}) {
    const StateVector rotated =
        apply_exponential(to_complex(x), angle, plus_product_state(basis));
    CHECK(std::abs(expectation(dc, rotated)) < 1e-12);
  }
}

TEST_CASE("stroboscopic run and the long-time average") {
  const SpinBasis basis = build_basis(3);
  const RealOperator dc = zz_minus_yy(basis);

  SUBCASE("identity evolution keeps the trace constant") {
    FloquetOperator ident{ComplexMatrix::Identity(basis.dim, basis.dim), 1.0};
    StateVector up;
    up.amplitudes = ComplexVector::Zero(basis.dim);
    up.amplitudes(basis.dim - 1) = 1.0;
    const StroboscopicTrace trace = stroboscopic_run(ident, up, 50, dc);
    CHECK(trace.values.minCoeff() == doctest::Approx(3.0));
    CHECK(trace.values.maxCoeff() == doctest::Approx(3.0));
    CHECK(trace.max_norm_defect < 1e-14);
  }

  SUBCASE("sampling convention of the average") {
    StroboscopicTrace trace;
    trace.periods.resize(2501);
    trace.values.resize(2501);
    for (int m = 0; m <= 2500; ++m) {
      trace.periods[m] = m;
      trace.values(m) = m;  // linear ramp makes the sample set visible
    }
    // samples 1505, 1510, ..., 2500: mean = 1500 + 502.5
    CHECK(long_time_average(trace) == doctest::Approx(2002.5));
    CHECK(long_time_average(trace, 0, 10, 5) == doctest::Approx(7.5));
    CHECK_THROWS_AS(long_time_average(trace, 2000, 1000, 5), ConfigError);
  }

  SUBCASE("norm drift guard") {
    FloquetOperator shrink{0.999 * ComplexMatrix::Identity(basis.dim, basis.dim), 1.0};
    StateVector psi = plus_product_state(basis);
    CHECK_THROWS_AS(stroboscopic_run(shrink, psi, 100, dc), NumericError);
  }
}

TEST_CASE("emergent conservation window grows as the interaction weakens") {
  // at omega_1* the first-order Floquet Hamiltonian commutes with sum sigma^x,
  // so <X> stays near L for a prethermal window set by the neglected orders
  const SpinBasis basis = build_basis(6);
  const double h0 = 4.0;
  const double T = 2.0 * kPi / h0;
  const RealOperator x = total_sx(basis);
  const StateVector plus = plus_product_state(basis);
  const int m_max = 4000;

  struct Probe {
    int window;       // first period where <X> sags below L - 0.3
    double max_sag;   // worst deviation of <X> from L over the horizon
  };
  auto probe = [&](double v0) {
    const auto [first, second] = square_pulse_segments(basis, h0, v0);
    const FloquetOperator u = build_floquet(first, second, T);
    const StroboscopicTrace trace = stroboscopic_run(u, plus, m_max, x);
    Probe p{m_max + 1, 0.0};
    for (int m = 0; m <= m_max; ++m) {
      const double sag = 6.0 - trace.values(m);
      p.max_sag = std::max(p.max_sag, sag);
      if (sag > 0.3 && p.window > m_max) p.window = m;
    }
    return p;
  };

  const Probe strong = probe(0.8);
  const Probe mid = probe(0.4);
  const Probe weak = probe(0.2);
  CHECK(strong.window < mid.window);      // 0.8 breaks down inside the horizon
  CHECK(strong.max_sag > mid.max_sag);    // weaker coupling stays closer to L
  CHECK(mid.max_sag > weak.max_sag);
  CHECK(weak.max_sag < 0.3);              // still conserved at the horizon end
}
