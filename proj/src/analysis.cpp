#include "dchain/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace dchain {

PowerLawFit fit_power_law(const std::vector<double>& tau, const std::vector<double>& q,
                          double window_lo, double window_hi) {
  if (tau.size() != q.size()) throw ConfigError("fit_power_law: size mismatch");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] < window_lo || tau[i] > window_hi) continue;
    if (!(q[i] > 0.0))
      throw ConfigError("fit_power_law: nonpositive Q inside the fit window");
    x.push_back(std::log(tau[i]));
    y.push_back(std::log(q[i]));
  }
  const int n = static_cast<int>(x.size());
  if (n < 4) throw ConfigError("fit_power_law: need at least 4 points in the window");

  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("fit_power_law: window is a single tau value");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;

  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    ss_res += r * r;
  }

  PowerLawFit fit;
  fit.a = std::exp(intercept);
  fit.b = -slope;
  fit.tau_min = window_lo;
  fit.tau_max = window_hi;
  fit.r2 = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
  fit.n_points = n;
  return fit;
}

namespace {

std::vector<double> median3(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> out(v);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double a = v[i - 1], b = v[i], c = v[i + 1];
    out[i] = std::max(std::min(a, b), std::min(std::max(a, b), c));
  }
  return out;
}

// Interior extrema as direction reversals of the sequence; runs of equal
// values (median-filtered peaks become short plateaus) count once.
std::vector<std::size_t> interior_extrema(const std::vector<double>& v) {
  std::vector<std::size_t> idx;
  int direction = 0;  // sign of the last nonzero step
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double step = v[i] - v[i - 1];
    if (step == 0.0) continue;
    const int s = step > 0.0 ? 1 : -1;
    if (direction != 0 && s != direction) idx.push_back(i - 1);
    direction = s;
  }
  return idx;
}

}  // namespace

OscillationMetric oscillation_metric(const std::vector<double>& tau,
                                     const std::vector<double>& q) {
  if (tau.size() != q.size()) throw ConfigError("oscillation_metric: size mismatch");
  if (tau.size() < 8) throw ConfigError("oscillation_metric: need at least 8 points");
  for (std::size_t i = 1; i < tau.size(); ++i)
    if (!(tau[i] > tau[i - 1]))
      throw ConfigError("oscillation_metric: tau must be strictly ascending");

  OscillationMetric metric;
  metric.n_extrema_raw = static_cast<int>(interior_extrema(q).size());
  const std::vector<double> smooth = median3(q);
  const std::vector<std::size_t> extrema = interior_extrema(smooth);
  metric.n_extrema = static_cast<int>(extrema.size());

  // amplitude: mean swing between consecutive extrema. Differencing adjacent
  // extrema removes the slow trend without any window choice.
  double mean_abs = 0.0;
  for (double v : q) mean_abs += std::abs(v);
  mean_abs /= static_cast<double>(q.size());
  double swing = 0.0;
  if (extrema.size() >= 2) {
    for (std::size_t k = 1; k < extrema.size(); ++k)
      swing += std::abs(smooth[extrema[k]] - smooth[extrema[k - 1]]);
    swing /= static_cast<double>(extrema.size() - 1);
  }
  metric.relative_amplitude = mean_abs > 0.0 ? swing / mean_abs : 0.0;
  return metric;
}

std::vector<DecadeSegment> segment_decades(const std::vector<double>& tau,
                                           const std::vector<double>& q,
                                           const std::vector<double>& candidates) {
  if (tau.size() != q.size() || tau.empty()) throw ConfigError("segment_decades: bad input");
  if (candidates.empty()) throw ConfigError("segment_decades: no candidate exponents");
  const double span = std::log10(tau.back() / tau.front());
  if (span < 3.0 - 1e-9)
    throw ConfigError("segment_decades: sweep must span at least 3 decades");

  std::vector<DecadeSegment> segments;
  const int n_decades = static_cast<int>(std::ceil(span - 1e-9));
  for (int d = 0; d < n_decades; ++d) {
    DecadeSegment seg;
    seg.tau_lo = tau.front() * std::pow(10.0, d);
    seg.tau_hi = seg.tau_lo * 10.0;
    try {
      // slight slack keeps grid points on the boundary inside exactly one decade
      const PowerLawFit fit =
          fit_power_law(tau, q, seg.tau_lo * (1.0 - 1e-12), seg.tau_hi * (1.0 - 1e-9));
      seg.fitted_b = fit.b;
      seg.n_points = fit.n_points;
    } catch (const ConfigError&) {
      continue;  // decade with too few usable points
    }
    double best = candidates.front();
    for (double c : candidates)
      if (std::abs(seg.fitted_b - c) < std::abs(seg.fitted_b - best)) best = c;
    seg.label = best;
    segments.push_back(seg);
  }
  if (segments.empty()) throw ConfigError("segment_decades: no decade had enough points");
  return segments;
}

std::vector<double> crossover_boundaries(const std::vector<DecadeSegment>& segments) {
  std::vector<double> out;
  for (std::size_t i = 1; i < segments.size(); ++i)
    if (segments[i].label != segments[i - 1].label) out.push_back(segments[i].tau_lo);
  return out;
}

}  // namespace dchain
