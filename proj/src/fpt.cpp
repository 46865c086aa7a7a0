#include "dchain/fpt.hpp"

#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "dchain/models.hpp"

namespace dchain {

namespace {

constexpr double kPi = 3.14159265358979323846;

// --- exponential-polynomial algebra ----------------------------------------
// A term is c * t^p * exp(i r h0 t) with integer r, so resonances (r = 0) are
// detected exactly and every ordered integral evaluates in closed form.

struct Term {
  Complex c;
  int p;
  int r;
};

using Poly = std::vector<Term>;

Poly normalized(Poly f) {
  std::map<std::pair<int, int>, Complex> acc;
  for (const Term& t : f) acc[{t.p, t.r}] += t.c;
  Poly out;
  for (const auto& [key, c] : acc)
    if (c != Complex(0.0, 0.0)) out.push_back({c, key.first, key.second});
  return out;
}

Poly product(const Poly& a, const Poly& b) {
  Poly out;
  out.reserve(a.size() * b.size());
  for (const Term& ta : a)
    for (const Term& tb : b) out.push_back({ta.c * tb.c, ta.p + tb.p, ta.r + tb.r});
  return normalized(std::move(out));
}

Poly antiderivative(const Poly& f, double h0) {
  Poly out;
  for (const Term& t : f) {
    if (t.r == 0) {
      out.push_back({t.c / double(t.p + 1), t.p + 1, 0});
    } else {
      const Complex mu(0.0, t.r * h0);
      Complex cur = t.c / mu;
      for (int q = t.p;; --q) {
        out.push_back({cur, q, t.r});
        if (q == 0) break;
        cur *= -double(q) / mu;
      }
    }
  }
  return normalized(std::move(out));
}

Complex eval(const Poly& f, double t, double h0) {
  Complex s(0.0, 0.0);
  for (const Term& term : f)
    s += term.c * std::pow(t, term.p) * std::exp(Complex(0.0, term.r * h0 * t));
  return s;
}

// piecewise over the two half-periods [0, T/2] and [T/2, T]
struct Piecewise {
  Poly first, second;
};

Piecewise harmonic_phase(int m, double h0, double period) {
  Piecewise f;
  f.first = {{Complex(1.0, 0.0), 0, 2 * m}};
  f.second = {{std::exp(Complex(0.0, 2.0 * m * h0 * period)), 0, -2 * m}};
  return f;
}

Piecewise product(const Piecewise& a, const Piecewise& b) {
  return {product(a.first, b.first), product(a.second, b.second)};
}

/// F(t) = integral of f from 0 to t, as a piecewise exponential polynomial.
Piecewise cumulative(const Piecewise& f, double h0, double period) {
  Piecewise out;
  const Poly aa = antiderivative(f.first, h0);
  const Complex a0 = eval(aa, 0.0, h0);
  out.first = aa;
  out.first.push_back({-a0, 0, 0});
  out.first = normalized(std::move(out.first));

  const Complex mid = eval(aa, 0.5 * period, h0) - a0;
  const Poly ab = antiderivative(f.second, h0);
  const Complex b0 = eval(ab, 0.5 * period, h0);
  out.second = ab;
  out.second.push_back({mid - b0, 0, 0});
  out.second = normalized(std::move(out.second));
  return out;
}

Complex integrate_period(const Piecewise& f, double h0, double period) {
  const Poly aa = antiderivative(f.first, h0);
  const Poly ab = antiderivative(f.second, h0);
  return (eval(aa, 0.5 * period, h0) - eval(aa, 0.0, h0)) +
         (eval(ab, period, h0) - eval(ab, 0.5 * period, h0));
}

// --- Gauss-Legendre quadrature (closed-form cross-check) --------------------

struct GaussRule {
  std::vector<double> x, w;  // nodes and weights on [-1, 1]
};

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    rule.x[i] = x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

template <typename F>
Complex gl_integrate(const F& f, double a, double b, const GaussRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < rule.x.size(); ++i)
    s += rule.w[i] * f(mid + half * rule.x[i]);
  return half * s;
}

Complex harmonic_value(int m, double t, double h0, double period) {
  const double arg = t <= 0.5 * period ? t : period - t;
  return std::exp(Complex(0.0, 2.0 * m * h0 * arg));
}

// integral of the harmonic phase over [0, t], splitting at the pulse edge
template <typename F>
Complex gl_integrate_split(const F& f, double a, double b, double edge, const GaussRule& rule) {
  if (a < edge && edge < b)
    return gl_integrate(f, a, edge, rule) + gl_integrate(f, edge, b, rule);
  return gl_integrate(f, a, b, rule);
}

}  // namespace

Complex drive_phase_integral(int m, double h0, double period) {
  if (!(h0 > 0.0) || !(period > 0.0))
    throw ConfigError("drive_phase_integral: h0 and period must be > 0");
  if (m == 0) return Complex(period, 0.0);
  const Complex i(0.0, 1.0);
  return -i / (m * h0) * (std::exp(i * (m * h0 * period)) - 1.0);
}

Complex ordered_pair_integral(int m, int n, double h0, double period) {
  const Piecewise fm = harmonic_phase(m, h0, period);
  const Piecewise fn = harmonic_phase(n, h0, period);
  const Piecewise inner = cumulative(fn, h0, period);
  return integrate_period(product(fm, inner), h0, period);
}

Complex pair_coefficient(int m, int n, double h0, double period) {
  return 0.5 * drive_phase_integral(m, h0, period) * drive_phase_integral(n, h0, period);
}

Complex ordered_triple_integral(int m, int n, int k, double h0, double period) {
  const Piecewise fk = harmonic_phase(k, h0, period);
  const Piecewise fn = harmonic_phase(n, h0, period);
  const Piecewise fm = harmonic_phase(m, h0, period);
  const Piecewise g = cumulative(product(fn, cumulative(fk, h0, period)), h0, period);
  return integrate_period(product(fm, g), h0, period);
}

Complex drive_phase_integral_quadrature(int m, double h0, double period, int nodes) {
  const GaussRule rule = gauss_legendre(nodes);
  auto f = [&](double t) { return harmonic_value(m, t, h0, period); };
  return gl_integrate_split(f, 0.0, period, 0.5 * period, rule);
}

Complex ordered_pair_integral_quadrature(int m, int n, double h0, double period, int nodes) {
  const GaussRule rule = gauss_legendre(nodes);
  const double edge = 0.5 * period;
  auto fn_cum = [&](double t1) {
    auto fn = [&](double t) { return harmonic_value(n, t, h0, period); };
    return gl_integrate_split(fn, 0.0, t1, edge, rule);
  };
  auto outer = [&](double t1) { return harmonic_value(m, t1, h0, period) * fn_cum(t1); };
  return gl_integrate_split(outer, 0.0, period, edge, rule);
}

Complex ordered_triple_integral_quadrature(int m, int n, int k, double h0, double period,
                                           int nodes) {
  const GaussRule rule = gauss_legendre(nodes);
  const double edge = 0.5 * period;
  auto fk_cum = [&](double t2) {
    auto fk = [&](double t) { return harmonic_value(k, t, h0, period); };
    return gl_integrate_split(fk, 0.0, t2, edge, rule);
  };
  auto g = [&](double t1) {
    auto mid = [&](double t2) { return harmonic_value(n, t2, h0, period) * fk_cum(t2); };
    return gl_integrate_split(mid, 0.0, t1, edge, rule);
  };
  auto outer = [&](double t1) { return harmonic_value(m, t1, h0, period) * g(t1); };
  return gl_integrate_split(outer, 0.0, period, edge, rule);
}

// --- interaction harmonics ---------------------------------------------------

DriveHarmonics interaction_harmonics(const SpinBasis& basis, double v0) {
  const int L = basis.num_sites;
  const double q = 0.25 * v0;
  using Sparse = Eigen::SparseMatrix<Complex>;

  auto op = [&](int site, Axis axis) { return pauli_op(basis, ((site % L) + L) % L, axis).mat; };

  Sparse ident(basis.dim, basis.dim);
  ident.setIdentity();

  Sparse o0 = Complex(q * L) * ident;
  Sparse o1(basis.dim, basis.dim), om1(basis.dim, basis.dim);
  Sparse o2(basis.dim, basis.dim), om2(basis.dim, basis.dim);
  const Complex i(0.0, 1.0);
  for (int j = 0; j < L; ++j) {
    const Sparse zj = op(j, Axis::Z), yj = op(j, Axis::Y);
    const Sparse zn = op(j + 1, Axis::Z), yn = op(j + 1, Axis::Y);
    const Sparse zz = zj * zn, yy = yj * yn, zy = zj * yn, yz = yj * zn;
    o0 += q * 0.5 * (zz + yy);
    o1 += q * (zj - i * yj);
    om1 += q * (zj + i * yj);
    o2 += q * 0.25 * (zz - yy - i * zy - i * yz);
    om2 += q * 0.25 * (zz - yy + i * zy + i * yz);
  }

  DriveHarmonics h;
  h.ops[0] = make_operator(std::move(om2), false);
  h.ops[1] = make_operator(std::move(om1), false);
  h.ops[2] = make_operator(std::move(o0), true);
  h.ops[3] = make_operator(std::move(o1), false);
  h.ops[4] = make_operator(std::move(o2), false);
  return h;
}

// --- perturbative orders -----------------------------------------------------

ComplexMatrix floquet_order1_sum(const DriveHarmonics& harmonics, double h0, double period) {
  const Eigen::Index n = harmonics.at(0).dim;
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int m = -2; m <= 2; ++m)
    out += (drive_phase_integral(m, h0, period) / period) * harmonics.at(m).dense();
  return out;
}

ComplexMatrix floquet_order1_closed(const SpinBasis& basis, double v0, double h0,
                                    double period) {
  const int L = basis.num_sites;
  const double y = h0 * period;
  const double cz = 2.0 * std::sin(y) / y;
  const double cy = 2.0 * (1.0 - std::cos(y)) / y;
  const double czz = 0.5 + std::sin(2.0 * y) / (4.0 * y);
  const double cyy = 0.5 - std::sin(2.0 * y) / (4.0 * y);
  const double cmix = (1.0 - std::cos(2.0 * y)) / (4.0 * y);

  using Sparse = Eigen::SparseMatrix<Complex>;
  auto op = [&](int site, Axis axis) { return pauli_op(basis, ((site % L) + L) % L, axis).mat; };
  Sparse ident(basis.dim, basis.dim);
  ident.setIdentity();
  Sparse acc = Complex(double(L)) * ident;
  for (int j = 0; j < L; ++j) {
    const Sparse zj = op(j, Axis::Z), yj = op(j, Axis::Y);
    const Sparse zn = op(j + 1, Axis::Z), yn = op(j + 1, Axis::Y);
    acc += Complex(czz) * (zj * zn) + Complex(cyy) * (yj * yn);
    acc += Complex(cz) * zj + Complex(cy) * yj;
    acc += Complex(cmix) * (zj * yn + yj * zn);
  }
  return 0.25 * v0 * ComplexMatrix(acc);
}

FloquetOrderResult floquet_order1(const SpinBasis& basis, double v0, double h0, double period) {
  const DriveHarmonics harmonics = interaction_harmonics(basis, v0);
  FloquetOrderResult res;
  res.op = floquet_order1_sum(harmonics, h0, period);
  const ComplexMatrix closed = floquet_order1_closed(basis, v0, h0, period);
  res.route_disagreement = max_abs(ComplexMatrix(res.op - closed));
  res.hermiticity = max_abs(ComplexMatrix(res.op - res.op.adjoint()));
  return res;
}

namespace {

std::array<ComplexMatrix, 5> dense_harmonics(const DriveHarmonics& harmonics) {
  std::array<ComplexMatrix, 5> o;
  for (int m = -2; m <= 2; ++m) o[m + 2] = harmonics.at(m).dense();
  return o;
}

ComplexMatrix first_order_amplitude(const std::array<ComplexMatrix, 5>& o, double h0,
                                    double period) {
  const Eigen::Index n = o[0].rows();
  ComplexMatrix u1 = ComplexMatrix::Zero(n, n);
  for (int m = -2; m <= 2; ++m)
    u1 += Complex(0.0, -1.0) * drive_phase_integral(m, h0, period) * o[m + 2];
  return u1;
}

ComplexMatrix second_order_amplitude(const std::array<ComplexMatrix, 5>& o, double h0,
                                     double period) {
  const Eigen::Index n = o[0].rows();
  ComplexMatrix u2 = ComplexMatrix::Zero(n, n);
  for (int m = -2; m <= 2; ++m)
    for (int k = -2; k <= 2; ++k)
      u2 -= ordered_pair_integral(m, k, h0, period) * (o[m + 2] * o[k + 2]);
  return u2;
}

}  // namespace

double second_order_residual(const DriveHarmonics& harmonics, double h0, double period) {
  const auto o = dense_harmonics(harmonics);
  const ComplexMatrix u1 = first_order_amplitude(o, h0, period);
  const ComplexMatrix u2 = second_order_amplitude(o, h0, period);
  return max_abs(ComplexMatrix(u2 - 0.5 * u1 * u1));
}

FloquetOrderResult floquet_order3(const DriveHarmonics& harmonics, double h0, double period) {
  const auto o = dense_harmonics(harmonics);
  const Eigen::Index n = o[0].rows();

  Complex c3[5][5][5];
  for (int m = -2; m <= 2; ++m)
    for (int k = -2; k <= 2; ++k)
      for (int l = -2; l <= 2; ++l)
        c3[m + 2][k + 2][l + 2] = ordered_triple_integral(m, k, l, h0, period);

  // pair products reused by the 125 triples
  ComplexMatrix pair[5][5];
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) pair[a][b] = o[a] * o[b];

  ComplexMatrix u3 = ComplexMatrix::Zero(n, n);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c) u3 += Complex(0.0, 1.0) * c3[a][b][c] * (pair[a][b] * o[c]);

  const ComplexMatrix u1 = first_order_amplitude(o, h0, period);
  const ComplexMatrix u2 = second_order_amplitude(o, h0, period);

  FloquetOrderResult res;
  res.op = Complex(0.0, 1.0) / period * (u3 - u1 * u2 + (u1 * u1 * u1) / 3.0);

  // double-commutator form
  auto comm = [](const ComplexMatrix& a, const ComplexMatrix& b) -> ComplexMatrix {
    return a * b - b * a;
  };
  ComplexMatrix alt = ComplexMatrix::Zero(n, n);
  for (int m = -2; m <= 2; ++m)
    for (int k = -2; k <= 2; ++k) {
      if (m == k) continue;
      const Complex w = c3[m + 2][m + 2][k + 2] - c3[m + 2][k + 2][m + 2];
      alt += w * comm(comm(o[k + 2], o[m + 2]), o[m + 2]);
    }
  for (int m = -2; m <= 2; ++m)
    for (int k = -2; k <= 2; ++k)
      for (int l = -2; l <= 2; ++l) {
        if (m == k || k == l || m == l) continue;
        alt += c3[m + 2][k + 2][l + 2] * comm(comm(o[m + 2], o[k + 2]), o[l + 2]);
      }
  alt *= -1.0 / (3.0 * period);

  res.route_disagreement = max_abs(ComplexMatrix(res.op - alt));
  res.hermiticity = max_abs(ComplexMatrix(res.op - res.op.adjoint()));
  return res;
}

ComplexMatrix floquet_order3_block_001(const DriveHarmonics& harmonics, double h0,
                                       double period) {
  const ComplexMatrix o0 = harmonics.at(0).dense();
  const ComplexMatrix o1 = harmonics.at(1).dense();
  const Complex w = ordered_triple_integral(0, 0, 1, h0, period) -
                    ordered_triple_integral(0, 1, 0, h0, period);
  const ComplexMatrix inner = o1 * o0 - o0 * o1;
  return (-w / (3.0 * period)) * (inner * o0 - o0 * inner);
}

ComplexMatrix floquet_order3_block_001_reference(const SpinBasis& basis, double v0, double h0,
                                                 double period) {
  const int L = basis.num_sites;
  const Complex pref = -(1.0 / (4.0 * h0 * h0) + Complex(0.0, 1.0) * period / (8.0 * h0)) *
                       std::pow(0.25 * v0, 3);
  const Complex i(0.0, 1.0);
  ComplexMatrix acc = ComplexMatrix::Zero(basis.dim, basis.dim);
  auto str = [&](std::vector<std::pair<int, Axis>> factors) {
    for (auto& f : factors) f.first = ((f.first % L) + L) % L;
    return ComplexMatrix(pauli_string(basis, factors).dense());
  };
  for (int j = 0; j < L; ++j) {
    acc += i * str({{j - 1, Axis::Z}, {j, Axis::Z}, {j + 1, Axis::Y}});
    acc += i * str({{j - 1, Axis::Y}, {j, Axis::Z}, {j + 1, Axis::Z}});
    acc += -2.0 * i * str({{j - 1, Axis::Z}, {j, Axis::Y}, {j + 1, Axis::Z}});
    acc -= str({{j - 1, Axis::Z}, {j, Axis::Y}, {j + 1, Axis::Y}});
    acc -= str({{j - 1, Axis::Y}, {j, Axis::Y}, {j + 1, Axis::Z}});
    acc += 2.0 * str({{j - 1, Axis::Y}, {j, Axis::Z}, {j + 1, Axis::Y}});
    // single-site remainder of the double commutator: each bond leaves
    // sigma^z - i sigma^y on both of its sites, 2 per site in total
    acc += 2.0 * str({{j, Axis::Z}});
    acc += -2.0 * i * str({{j, Axis::Y}});
    // (sigma^z - i sigma^y) next to an x-x pair, from commuting the bond
    // adjacent to the inner-commutator support
    acc += str({{j - 1, Axis::Z}, {j, Axis::X}, {j + 1, Axis::X}});
    acc += -i * str({{j - 1, Axis::Y}, {j, Axis::X}, {j + 1, Axis::X}});
    acc += str({{j - 1, Axis::X}, {j, Axis::X}, {j + 1, Axis::Z}});
    acc += -i * str({{j - 1, Axis::X}, {j, Axis::X}, {j + 1, Axis::Y}});
  }
  return pref * acc;
}

// --- exact Floquet Hamiltonian and the V0 parity -----------------------------

ExactFloquetResult exact_floquet_hamiltonian(const FloquetOperator& op) {
  const double defect = unitarity_defect(op);
  if (defect > 1e-10)
    throw NumericError("exact_floquet_hamiltonian: input not unitary, defect = " +
                       std::to_string(defect));
  // Schur of a unitary (normal) matrix: triangular factor is diagonal up to
  // rounding, and the basis stays orthonormal.
  Eigen::ComplexSchur<ComplexMatrix> schur(op.u);
  if (schur.info() != Eigen::Success)
    throw NumericError("exact_floquet_hamiltonian: Schur decomposition failed");
  const Eigen::Index n = op.u.rows();
  RealVector eps(n);
  double min_gap = kPi;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double theta = std::arg(schur.matrixT()(k, k));
    eps(k) = -theta / op.period;
    min_gap = std::min(min_gap, kPi - std::abs(theta));
  }
  ExactFloquetResult res;
  const ComplexMatrix q = schur.matrixU();
  res.h = q * eps.asDiagonal() * q.adjoint();
  res.h = 0.5 * (res.h + res.h.adjoint()).eval();
  res.min_gap_to_pi = min_gap;
  res.branch_warning = min_gap < 1e-9;
  return res;
}

ParityCheckResult interaction_parity_check(const SpinBasis& basis, double h0, double period,
                                           double v0) {
  auto floquet_for = [&](double v) {
    const auto [first, second] = square_pulse_segments(basis, h0, v);
    return build_floquet(first, second, period);
  };
  const FloquetOperator u_plus = floquet_for(v0);
  const FloquetOperator u_minus = floquet_for(-v0);

  ParityCheckResult res;
  ComplexMatrix prod = u_minus.u * u_plus.u;
  prod -= ComplexMatrix::Identity(prod.rows(), prod.cols());
  res.inverse_defect = max_abs(prod);

  const ExactFloquetResult h_plus = exact_floquet_hamiltonian(u_plus);
  const ExactFloquetResult h_minus = exact_floquet_hamiltonian(u_minus);
  res.odd_defect = max_abs(ComplexMatrix(h_plus.h + h_minus.h));
  res.branch_warning = h_plus.branch_warning || h_minus.branch_warning;
  res.passed = res.inverse_defect <= 1e-10 && res.odd_defect <= 1e-9;
  return res;
}

// --- identity report ---------------------------------------------------------

IdentityReport identity_report(const SpinBasis& basis, double v0, double h0, double period) {
  IdentityReport rep;
  const DriveHarmonics harmonics = interaction_harmonics(basis, v0);
  const auto o = dense_harmonics(harmonics);

  const ComplexMatrix repulsion = to_complex(pair_repulsion(basis, v0)).dense();
  ComplexMatrix sum = ComplexMatrix::Zero(basis.dim, basis.dim);
  for (int m = -2; m <= 2; ++m) sum += o[m + 2];
  rep.harmonic_sum = max_abs(ComplexMatrix(sum - repulsion));

  const ComplexMatrix x = to_complex(total_sx(basis)).dense();
  for (int m = -2; m <= 2; ++m) {
    const ComplexMatrix lhs = x * o[m + 2] - o[m + 2] * x - 2.0 * double(m) * o[m + 2];
    rep.harmonic_ladder = std::max(rep.harmonic_ladder, max_abs(lhs));
  }

  Complex c2[5][5];
  Complex im[5];
  for (int m = -2; m <= 2; ++m) im[m + 2] = drive_phase_integral(m, h0, period);
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n) c2[m + 2][n + 2] = ordered_pair_integral(m, n, h0, period);
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n) {
      rep.pair_symmetry = std::max(
          rep.pair_symmetry, std::abs(c2[m + 2][n + 2] + c2[n + 2][m + 2] - im[m + 2] * im[n + 2]));
      rep.pair_closed_form =
          std::max(rep.pair_closed_form,
                   std::abs(c2[m + 2][n + 2] - pair_coefficient(m, n, h0, period)));
    }

  rep.second_order = second_order_residual(harmonics, h0, period);

  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n)
      for (int k = -2; k <= 2; ++k) {
        const Complex cmnk = ordered_triple_integral(m, n, k, h0, period);
        const Complex cknm = ordered_triple_integral(k, n, m, h0, period);
        const Complex ckmn = ordered_triple_integral(k, m, n, h0, period);
        const Complex cnkm = ordered_triple_integral(n, k, m, h0, period);
        rep.triple_reversal = std::max(rep.triple_reversal, std::abs(cmnk - cknm));
        rep.triple_cyclic =
            std::max(rep.triple_cyclic,
                     std::abs(cmnk + ckmn + cnkm - 0.5 * im[m + 2] * im[n + 2] * im[k + 2]));
      }

  const FloquetOrderResult hf1 = floquet_order1(basis, v0, h0, period);
  rep.order1_routes = hf1.route_disagreement;
  rep.order1_commutator_x = max_abs(ComplexMatrix(hf1.op * x - x * hf1.op));

  const FloquetOrderResult hf3 = floquet_order3(harmonics, h0, period);
  rep.order3_routes = hf3.route_disagreement;
  rep.order3_commutator_x = max_abs(ComplexMatrix(hf3.op * x - x * hf3.op));

  const double y = h0 * period;
  const double p_nearest = std::round(y / (2.0 * kPi));
  if (p_nearest >= 1.0 && std::abs(y - 2.0 * kPi * p_nearest) < 1e-9) {
    const ComplexMatrix block = floquet_order3_block_001(harmonics, h0, period);
    const ComplexMatrix ref = floquet_order3_block_001_reference(basis, v0, h0, period);
    rep.block_001 = max_abs(ComplexMatrix(block - ref));
  }

  const ParityCheckResult parity = interaction_parity_check(basis, h0, period, v0);
  rep.parity_inverse = parity.inverse_defect;
  rep.parity_odd = parity.odd_defect;
  rep.branch_warning = parity.branch_warning;
  return rep;
}

}  // namespace dchain
