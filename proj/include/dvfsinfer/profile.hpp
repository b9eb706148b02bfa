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
#ifndef DVFSINFER_PROFILE_HPP
#define DVFSINFER_PROFILE_HPP

#include <optional>
#include <string>
#include <vector>

#include "dvfsinfer/models.hpp"

namespace dvfsinfer {

/// One partitionable unit of a network: a contiguous group of layers with a
/// fitted latency model. `output_bytes` is the size of the feature map this
/// block emits; it is optional because not every profile has measured it,
/// but partition planning requires it.
struct BlockProfile {
  std::string name;
  double flops = 0.0;
  std::optional<double> output_bytes;
  PowerLawModel model;
  std::optional<CpuDvfsModel> cpu_dvfs;
};

/// A serial chain of M blocks. Partition indices m in {0, ..., M} are
/// meaningful: m = 0 offloads the raw input, m = M runs fully local.
struct NetworkProfile {
  std::string name;
  double input_bytes = 0.0;
  std::vector<BlockProfile> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }
};

/// The device side: the discrete DVFS frequency scale it exposes, its
/// dynamic-energy coefficient, and (optionally) its transmit power.
struct DeviceProfile {
  static constexpr double kDefaultTxPowerW = 1.0;

  std::string name;
  std::vector<double> freq_scale_ghz; // strictly increasing, all positive
  EnergyCoefficient kappa;
  std::optional<double> tx_power_w;

  double tx_power_or_default() const {
    return tx_power_w.value_or(kDefaultTxPowerW);
  }
  Frequency min_frequency() const { return Frequency{freq_scale_ghz.front()}; }
  Frequency max_frequency() const { return Frequency{freq_scale_ghz.back()}; }
};

/// Per-block execution latency on the edge server, aligned with the
/// network's block list. Always user-supplied; there is no default.
struct EdgeProfile {
  std::string name;
  std::vector<double> block_latency_ms;
};

/// `n` frequencies uniformly spaced over [lo, hi] inclusive. The shipped
/// device files use a 15-point grid over [0.12, 1.10] GHz.
std::vector<double> uniform_frequency_scale(double lo_ghz, double hi_ghz,
                                            int n);

/// Latency of one block under the chosen model family. Throws ConfigError
/// when the cpu-dvfs family is requested but the block carries no such model.
double block_latency(const BlockProfile &block, Frequency f,
                     ModelFamily family = ModelFamily::PowerLaw);

/// Sum of the first `m` block latencies at `f`; m = 0 yields 0.
double prefix_latency(const NetworkProfile &net, int m, Frequency f,
                      ModelFamily family = ModelFamily::PowerLaw);

/// Whole-network latency; equals prefix_latency(net, M, f).
double total_latency(const NetworkProfile &net, Frequency f,
                     ModelFamily family = ModelFamily::PowerLaw);

/// Energy in J for running the first `m` blocks at `f`: per-block energies
/// are additive, so this is kappa * f^3 * prefix_latency converted to J.
double prefix_energy(const NetworkProfile &net, const DeviceProfile &dev,
                     int m, Frequency f,
                     ModelFamily family = ModelFamily::PowerLaw);

struct ValidationIssue {
  std::string code;    // stable machine-readable identifier
  std::string message; // human explanation with the offending value
};

/// `violations` is empty iff every profile invariant holds. `warnings`
/// carries non-fatal notes such as a defaulted transmit power.
struct ValidationReport {
  std::vector<ValidationIssue> violations;
  std::vector<ValidationIssue> warnings;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate_profile(const NetworkProfile &net,
                                  const DeviceProfile &dev,
                                  const EdgeProfile *edge = nullptr);

} // namespace dvfsinfer

#endif // DVFSINFER_PROFILE_HPP
