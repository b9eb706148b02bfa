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
#ifndef DVFSINFER_FIGURES_HPP
#define DVFSINFER_FIGURES_HPP

#include <span>
#include <string>

#include "dvfsinfer/planner.hpp"

namespace dvfsinfer {

/// Plot-ready CSV emitters. No rendering here: each function returns the
/// data one figure needs, one x column plus one column per series, with
/// shortest round-trip number formatting. Column layouts are documented in
/// the README.

/// freq_ghz, block1_ms..blockM_ms, total_ms over the device scale.
std::string figure_latency_vs_freq_csv(const NetworkProfile &net,
                                       const DeviceProfile &dev);

/// freq_ghz, power_law_ms, cpu_dvfs_ms over the device scale. The cpu-dvfs
/// curve uses the profile's own coefficients when every block has one and
/// is otherwise fitted to the power-law curve sampled on the scale.
std::string figure_model_compare_csv(const NetworkProfile &net,
                                     const DeviceProfile &dev);

/// One row per (constraint, family) pair: plans made under each family and
/// re-costed under the power-law truth. `deadlines_ms` drives the deadline
/// objective; pass energies via `energies_j` instead for the budget
/// objective (exactly one list must be nonempty).
std::string figure_plan_bars_csv(const NetworkProfile &net,
                                 const DeviceProfile &dev,
                                 std::span<const double> deadlines_ms,
                                 std::span<const double> energies_j);

/// rate_mbps, partition for the chosen family.
std::string figure_rate_sweep_csv(const NetworkProfile &net,
                                  const DeviceProfile &dev,
                                  const EdgeProfile &edge,
                                  std::span<const double> rates_mbps,
                                  double deadline_ms, ModelFamily family);

/// partition, latency_ms, energy_j, feasible for every m at a fixed rate.
std::string figure_partition_curves_csv(const NetworkProfile &net,
                                        const DeviceProfile &dev,
                                        const EdgeProfile &edge,
                                        double rate_mbps, double deadline_ms,
                                        ModelFamily family);

/// The network with a cpu-dvfs model guaranteed on every block: existing
/// coefficients are kept, missing ones are fitted to that block's power-law
/// curve sampled over the device scale.
NetworkProfile with_cpu_dvfs_models(const NetworkProfile &net,
                                    const DeviceProfile &dev);

} // namespace dvfsinfer

#endif // DVFSINFER_FIGURES_HPP
