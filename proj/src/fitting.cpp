/**
 * Copyright (c) the dvfsinfer contributors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "dvfsinfer/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "dvfsinfer/errors.hpp"

namespace dvfsinfer {

namespace {

constexpr double kGridLow = 0.05;  // exclusive
constexpr double kGridHigh = 4.0;  // inclusive, the exponent cap
constexpr int kGridPoints = 400;
constexpr double kRefineTol = 1e-7; // bracket width on b

void check_series(const TraceSeries &series) {
  for (const TracePoint &p : series.points) {
    if (!(p.freq_ghz > 0.0))
      throw std::domain_error("trace frequency must be positive");
    if (p.latency_ms < 0.0)
      throw std::domain_error("trace latency must be nonnegative");
  }
}

size_t distinct_frequencies(const TraceSeries &series) {
  std::set<double> freqs;
  for (const TracePoint &p : series.points)
    freqs.insert(p.freq_ghz);
  return freqs.size();
}

double mean_latency(const TraceSeries &series) {
  double sum = 0.0;
  for (const TracePoint &p : series.points)
    sum += p.latency_ms;
  return sum / static_cast<double>(series.points.size());
}

double sse_about_mean(const TraceSeries &series) {
  const double mean = mean_latency(series);
  double sse = 0.0;
  for (const TracePoint &p : series.points) {
    const double r = p.latency_ms - mean;
    sse += r * r;
  }
  return sse;
}

double power_law_sse(const TraceSeries &series, double a, double b, double c) {
  double sse = 0.0;
  for (const TracePoint &p : series.points) {
    const double r = a * std::pow(p.freq_ghz, -b) + c - p.latency_ms;
    sse += r * r;
  }
  return sse;
}

GoodnessOfFit goodness_from_sse(const TraceSeries &series, double sse) {
  GoodnessOfFit g;
  g.rmse = std::sqrt(sse / static_cast<double>(series.points.size()));
  const double ss_tot = sse_about_mean(series);
  if (ss_tot > 0.0)
    g.r_squared = 1.0 - sse / ss_tot;
  else
    g.r_squared = sse == 0.0 ? 1.0 : -std::numeric_limits<double>::infinity();
  return g;
}

} // namespace

namespace detail {

const std::vector<double> &power_law_exponent_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g(kGridPoints);
    const double lo = std::log(kGridLow);
    const double hi = std::log(kGridHigh);
    for (int i = 0; i < kGridPoints; ++i)
      g[static_cast<size_t>(i)] =
          std::exp(lo + (hi - lo) * static_cast<double>(i + 1) /
                            static_cast<double>(kGridPoints));
    g.back() = kGridHigh;
    return g;
  }();
  return grid;
}

LinearTermsSolution fit_linear_terms_at_exponent(const TraceSeries &series,
                                                 double b) {
  const double n = static_cast<double>(series.points.size());
  double sx = 0.0, sxx = 0.0, sxt = 0.0, st = 0.0;
  for (const TracePoint &p : series.points) {
    const double x = std::pow(p.freq_ghz, -b);
    sx += x;
    sxx += x * x;
    sxt += x * p.latency_ms;
    st += p.latency_ms;
  }

  const double det = n * sxx - sx * sx;
  if (det > 0.0) {
    const double a = (n * sxt - sx * st) / det;
    const double c = (sxx * st - sx * sxt) / det;
    if (a >= 0.0 && c >= 0.0)
      return {a, c, power_law_sse(series, a, b, c)};
  }

  // Unconstrained optimum is outside the quadrant (or x degenerate): the
  // constrained optimum lies on a boundary, and both boundary solutions are
  // nonnegative by themselves since t >= 0 and x > 0.
  const double c_only = std::max(0.0, st / n);
  const double sse_c = power_law_sse(series, 0.0, b, c_only);
  const double a_only = sxx > 0.0 ? std::max(0.0, sxt / sxx) : 0.0;
  const double sse_a = power_law_sse(series, a_only, b, 0.0);
  if (sse_a < sse_c)
    return {a_only, 0.0, sse_a};
  return {0.0, c_only, sse_c};
}

} // namespace detail

PowerLawFit fit_power_law(const TraceSeries &series) {
  check_series(series);
  if (distinct_frequencies(series) < 3)
    throw InsufficientDataError(
        "power-law fit needs at least 3 distinct frequencies");

  const std::vector<double> &grid = detail::power_law_exponent_grid();

  double best_b = grid.front();
  detail::LinearTermsSolution best =
      detail::fit_linear_terms_at_exponent(series, best_b);
  for (size_t i = 1; i < grid.size(); ++i) {
    const detail::LinearTermsSolution sol =
        detail::fit_linear_terms_at_exponent(series, grid[i]);
    if (sol.sse < best.sse) {
      best = sol;
      best_b = grid[i];
    }
  }

  const double sse_const = sse_about_mean(series);
  if (!(best.sse < sse_const * (1.0 - 1e-12))) {
    // No exponent explains the data better than a constant: the workload
    // term is pinned to zero and b carries no information.
    PowerLawFit fit;
    fit.model = {0.0, 1.0, std::max(0.0, mean_latency(series))};
    fit.exponent_unidentifiable = true;
    const GoodnessOfFit g = goodness_from_sse(series, sse_const);
    fit.rmse = g.rmse;
    fit.r_squared = g.r_squared;
    return fit;
  }

  // Golden-section refinement between the grid neighbours of the winner.
  const size_t idx = static_cast<size_t>(
      std::lower_bound(grid.begin(), grid.end(), best_b) - grid.begin());
  double lo = grid[idx > 0 ? idx - 1 : 0];
  double hi = grid[std::min(idx + 1, grid.size() - 1)];
  constexpr double kGolden = 0.6180339887498949;
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  detail::LinearTermsSolution s1 =
      detail::fit_linear_terms_at_exponent(series, x1);
  detail::LinearTermsSolution s2 =
      detail::fit_linear_terms_at_exponent(series, x2);
  auto consider = [&](double b, const detail::LinearTermsSolution &sol) {
    if (sol.sse < best.sse) {
      best = sol;
      best_b = b;
    }
  };
  consider(x1, s1);
  consider(x2, s2);
  while (hi - lo > kRefineTol) {
    if (s1.sse <= s2.sse) {
      hi = x2;
      x2 = x1;
      s2 = s1;
      x1 = hi - kGolden * (hi - lo);
      s1 = detail::fit_linear_terms_at_exponent(series, x1);
      consider(x1, s1);
    } else {
      lo = x1;
      x1 = x2;
      s1 = s2;
      x2 = lo + kGolden * (hi - lo);
      s2 = detail::fit_linear_terms_at_exponent(series, x2);
      consider(x2, s2);
    }
  }

  PowerLawFit fit;
  fit.model = {best.a, best_b, best.c};
  const GoodnessOfFit g = goodness_from_sse(series, best.sse);
  fit.rmse = g.rmse;
  fit.r_squared = g.r_squared;
  return fit;
}

CpuDvfsFit fit_cpu_dvfs(const TraceSeries &series) {
  check_series(series);
  if (series.points.empty())
    throw InsufficientDataError("cpu-dvfs fit needs at least one sample");

  double num = 0.0, den = 0.0;
  for (const TracePoint &p : series.points) {
    num += p.latency_ms / p.freq_ghz;
    den += 1.0 / (p.freq_ghz * p.freq_ghz);
  }
  CpuDvfsFit fit;
  fit.model.coeff = std::max(0.0, num / den);
  const GoodnessOfFit g = fit_goodness(series, fit.model);
  fit.rmse = g.rmse;
  fit.r_squared = g.r_squared;
  return fit;
}

LinearFit fit_linear_flops(const std::vector<FlopsLatencyPoint> &points) {
  if (points.size() < 2)
    throw InsufficientDataError("linear fit needs at least 2 points");
  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const FlopsLatencyPoint &p : points) {
    sx += p.flops;
    sy += p.latency_ms;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const FlopsLatencyPoint &p : points) {
    const double dx = p.flops - mx;
    const double dy = p.latency_ms - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0))
    throw std::domain_error("flops values are identical; slope undefined");

  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.pearson_r = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 0.0;
  return fit;
}

GoodnessOfFit fit_goodness(const TraceSeries &series, const PowerLawModel &m) {
  return goodness_from_sse(series, power_law_sse(series, m.a, m.b, m.c));
}

GoodnessOfFit fit_goodness(const TraceSeries &series, const CpuDvfsModel &m) {
  double sse = 0.0;
  for (const TracePoint &p : series.points) {
    const double r = m.coeff / p.freq_ghz - p.latency_ms;
    sse += r * r;
  }
  return goodness_from_sse(series, sse);
}

} // namespace dvfsinfer
