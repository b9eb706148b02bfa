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
#ifndef DVFSINFER_FITTING_HPP
#define DVFSINFER_FITTING_HPP

#include <utility>
#include <vector>

#include "dvfsinfer/models.hpp"

namespace dvfsinfer {

struct TracePoint {
  double freq_ghz = 0.0;
  double latency_ms = 0.0;
};

/// Measured (frequency, latency) samples of one block or of a whole
/// network. Power-law fitting needs at least 3 distinct frequencies,
/// cpu-dvfs fitting needs 1; latencies must be nonnegative.
struct TraceSeries {
  std::vector<TracePoint> points;
};

struct GoodnessOfFit {
  double rmse = 0.0;      // ms
  double r_squared = 0.0; // 1 - SS_res/SS_tot, defined as 1 for 0/0
};

struct PowerLawFit {
  PowerLawModel model;
  double rmse = 0.0;
  double r_squared = 0.0;
  /// Set when the data gives the exponent nothing to bite on (the
  /// constrained solution pins a = 0 for every candidate b); the model is
  /// then reported with b = 1 by convention.
  bool exponent_unidentifiable = false;
};

struct CpuDvfsFit {
  CpuDvfsModel model;
  double rmse = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of t = a * f^-b + c with a >= 0, c >= 0, b in (0, 4].
///
/// Variable projection: for fixed b the model is linear in (a, c) and the
/// nonnegativity-constrained solution has a closed form, so the search
/// reduces to one dimension. b is scanned on a fixed log-spaced grid and
/// the best grid point is refined by golden section. Deterministic;
/// derivative-free; needs no initial guess.
PowerLawFit fit_power_law(const TraceSeries &series);

/// Closed-form least squares for t = coeff / f:
/// coeff = sum(t_i/f_i) / sum(1/f_i^2), clamped at 0.
CpuDvfsFit fit_cpu_dvfs(const TraceSeries &series);

struct FlopsLatencyPoint {
  double flops = 0.0;
  double latency_ms = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double pearson_r = 0.0;
};

/// Ordinary least-squares line through (flops, latency) points plus the
/// Pearson correlation coefficient. Needs >= 2 points with non-identical
/// flops values.
LinearFit fit_linear_flops(const std::vector<FlopsLatencyPoint> &points);

GoodnessOfFit fit_goodness(const TraceSeries &series, const PowerLawModel &m);
GoodnessOfFit fit_goodness(const TraceSeries &series, const CpuDvfsModel &m);

namespace detail {

/// The exponent search grid: 400 log-spaced points in (0.05, 4].
const std::vector<double> &power_law_exponent_grid();

struct LinearTermsSolution {
  double a = 0.0;
  double c = 0.0;
  double sse = 0.0;
};

/// Nonnegativity-constrained least squares for (a, c) at a fixed exponent.
LinearTermsSolution fit_linear_terms_at_exponent(const TraceSeries &series,
                                                 double b);

} // namespace detail

} // namespace dvfsinfer

#endif // DVFSINFER_FITTING_HPP
