#include <cmath>
#include <vector>

#include "doctest.h"

#include "dchain/analysis.hpp"
#include "dchain/ramp.hpp"

using namespace dchain;

TEST_CASE("power-law fits on synthetic data") {
  const std::vector<double> taus = log_spaced(0.1, 100.0, 40);

  SUBCASE("pure inverse square") {
    std::vector<double> q;
    for (double t : taus) q.push_back(5.0 / (t * t));
    const PowerLawFit fit = fit_power_law(taus, q, 0.1, 100.0);
    CHECK(fit.a == doctest::Approx(5.0).epsilon(1e-10));
    CHECK(fit.b == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("shallow exponent") {
    std::vector<double> q;
    for (double t : taus) q.push_back(0.14 / std::pow(t, 1.02));
    const PowerLawFit fit = fit_power_law(taus, q, 0.1, 100.0);
    CHECK(fit.a == doctest::Approx(0.14).epsilon(1e-10));
    CHECK(fit.b == doctest::Approx(1.02).epsilon(1e-10));
  }

  SUBCASE("constant series has exponent zero") {
    std::vector<double> q(taus.size(), 3.7);
    const PowerLawFit fit = fit_power_law(taus, q, 0.1, 100.0);
    CHECK(std::abs(fit.b) < 1e-12);
    CHECK(fit.a == doctest::Approx(3.7));
  }

  SUBCASE("scale equivariance") {
    std::vector<double> q, q_scaled;
    for (double t : taus) {
      q.push_back(2.0 / std::pow(t, 1.3));
      q_scaled.push_back(10.0 * q.back());
    }
    const PowerLawFit f1 = fit_power_law(taus, q, 0.1, 100.0);
    const PowerLawFit f2 = fit_power_law(taus, q_scaled, 0.1, 100.0);
    CHECK(f2.b == doctest::Approx(f1.b).epsilon(1e-12));
    CHECK(f2.a == doctest::Approx(10.0 * f1.a).epsilon(1e-12));
  }

  SUBCASE("guard rails") {
    std::vector<double> q(taus.size(), 1.0);
    q[5] = -1.0;
    CHECK_THROWS_AS(fit_power_law(taus, q, 0.1, 100.0), ConfigError);
    std::vector<double> ok(taus.size(), 1.0);
    CHECK_THROWS_AS(fit_power_law(taus, ok, 0.1, 0.12), ConfigError);  // < 4 points
  }
}

TEST_CASE("oscillation metric") {
  SUBCASE("monotone series has no extrema") {
    std::vector<double> tau, q;
    for (int i = 0; i < 30; ++i) {
      tau.push_back(1.0 + i);
      q.push_back(10.0 / (1.0 + i));
    }
    const OscillationMetric m = oscillation_metric(tau, q);
    CHECK(m.n_extrema == 0);
  }

  SUBCASE("three full periods give six extrema") {
    std::vector<double> tau, q;
    const int n = 61;
    for (int i = 0; i < n; ++i) {
      tau.push_back(1.0 + i);
      q.push_back(1.0 + 0.3 * std::sin(2.0 * M_PI * 3.0 * i / (n - 1.0)));
    }
    const OscillationMetric m = oscillation_metric(tau, q);
    CHECK(m.n_extrema == 6);
    CHECK(m.relative_amplitude > 0.3);
  }

  SUBCASE("relative amplitude is scale invariant") {
    std::vector<double> tau, q1, q2;
    for (int i = 0; i < 40; ++i) {
      tau.push_back(1.0 + i);
      const double v = 2.0 + std::sin(0.7 * i);
      q1.push_back(v);
      q2.push_back(100.0 * v);
    }
    const OscillationMetric a = oscillation_metric(tau, q1);
    const OscillationMetric b = oscillation_metric(tau, q2);
    CHECK(a.relative_amplitude == doctest::Approx(b.relative_amplitude).epsilon(1e-12));
    CHECK(a.n_extrema == b.n_extrema);
  }

  std::vector<double> tiny_tau{1, 2, 3}, tiny_q{1, 2, 1};
  CHECK_THROWS_AS(oscillation_metric(tiny_tau, tiny_q), ConfigError);
}

TEST_CASE("decade segmentation") {
  SUBCASE("plateau then inverse-square labels 0 then 2 with one boundary") {
    const std::vector<double> taus = log_spaced(0.01, 100.0, 60);
    std::vector<double> q;
    for (double t : taus) q.push_back(t < 1.0 ? 2.0 : 2.0 / (t * t));
    const auto segments = segment_decades(taus, q);
    REQUIRE(segments.size() == 4);
    CHECK(segments[0].label == 0.0);
    CHECK(segments[1].label == 0.0);
    CHECK(segments[2].label == 2.0);
    CHECK(segments[3].label == 2.0);
    const auto boundaries = crossover_boundaries(segments);
    REQUIRE(boundaries.size() == 1);
    CHECK(boundaries[0] == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("shallow-then-steep labels 1 then 2") {
    const std::vector<double> taus = log_spaced(0.1, 1000.0, 80);
    std::vector<double> q;
    for (double t : taus) q.push_back(t < 10.0 ? 1.0 / t : 10.0 / (t * t));
    const auto segments = segment_decades(taus, q);
    REQUIRE(segments.size() == 4);
    CHECK(segments[0].label == 1.0);
    CHECK(segments[1].label == 1.0);
    CHECK(segments[2].label == 2.0);
    CHECK(segments[3].label == 2.0);
  }

  SUBCASE("span shorter than three decades is rejected") {
    const std::vector<double> taus = log_spaced(1.0, 50.0, 20);
    std::vector<double> q(taus.size(), 1.0);
    CHECK_THROWS_AS(segment_decades(taus, q), ConfigError);
  }
}
