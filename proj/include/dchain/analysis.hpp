#pragma once

#include <vector>

#include "dchain/core.hpp"

namespace dchain {

/// Least-squares fit of Q ~ a / tau^b on (ln tau, ln Q) inside the window.
struct PowerLawFit {
  double a = 0.0;
  double b = 0.0;
  double tau_min = 0.0;
  double tau_max = 0.0;
  double r2 = 0.0;
  int n_points = 0;
};

PowerLawFit fit_power_law(const std::vector<double>& tau, const std::vector<double>& q,
                          double window_lo, double window_hi);

/// Count of interior local extrema (after a centered 3-point median smoothing)
/// and the mean consecutive peak-to-trough swing relative to the series mean.
/// Differencing adjacent extrema detrends without a window choice. Raw
/// (unsmoothed) extrema are reported alongside.
struct OscillationMetric {
  int n_extrema = 0;
  int n_extrema_raw = 0;
  double relative_amplitude = 0.0;
};

OscillationMetric oscillation_metric(const std::vector<double>& tau,
                                     const std::vector<double>& q);

/// One decade of a log-log sweep, labeled with the nearest candidate exponent.
struct DecadeSegment {
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  double fitted_b = 0.0;
  double label = 0.0;
  int n_points = 0;
};

/// Splits the sweep into decades starting at the smallest tau, fits each, and
/// labels it with the nearest of the candidate exponents. Requires a span of
/// at least 3 decades.
std::vector<DecadeSegment> segment_decades(const std::vector<double>& tau,
                                           const std::vector<double>& q,
                                           const std::vector<double>& candidates = {2.0, 1.0,
                                                                                    0.0});

/// tau values where the decade label changes.
std::vector<double> crossover_boundaries(const std::vector<DecadeSegment>& segments);

}  // namespace dchain
