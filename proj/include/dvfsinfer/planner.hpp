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
#ifndef DVFSINFER_PLANNER_HPP
#define DVFSINFER_PLANNER_HPP

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dvfsinfer/profile.hpp"

namespace dvfsinfer {

enum class LocalObjective {
  MinEnergyUnderDeadline, // requires deadline_ms
  MinLatencyUnderEnergy,  // requires energy_budget_j
};

/// Frequency selection for fully local inference. Exactly the field the
/// objective demands must be set; the other must be absent.
struct LocalPlanRequest {
  LocalObjective objective = LocalObjective::MinEnergyUnderDeadline;
  std::optional<double> deadline_ms;
  std::optional<double> energy_budget_j;
};

/// Partition-point selection under a deadline with a fixed communication
/// rate. The device runs blocks 1..m, uploads block m's output (the raw
/// input when m = 0, nothing when m = M), and the edge runs the rest.
struct PartitionPlanRequest {
  double deadline_ms = 0.0;
  double rate_mbps = 0.0;
  /// Device frequency during local execution; empty means the maximum of
  /// the device scale. Must be a member of the scale when explicit.
  std::optional<double> device_freq_ghz;
  /// Also search the frequency scale jointly with the partition point.
  bool joint_freq = false;
};

struct CandidateRow {
  double freq_ghz = 0.0;
  std::optional<int> partition; // empty for frequency-only candidates
  double latency_ms = 0.0;
  double energy_j = 0.0;
  bool feasible = false;
};

/// Outcome of a planning call: the chosen decision, its predicted cost
/// under the planning model, and the full candidate table. When no
/// candidate satisfies the constraint the plan is flagged infeasible and
/// carries the best-effort candidate instead (the latency-minimizing one
/// for deadline objectives, the energy-minimizing one for energy budgets),
/// so the decision can still be executed and evaluated.
struct Plan {
  ModelFamily family = ModelFamily::PowerLaw;
  std::variant<LocalPlanRequest, PartitionPlanRequest> request;
  double freq_ghz = 0.0;
  std::optional<int> partition; // empty => local frequency plan
  double predicted_latency_ms = 0.0;
  double predicted_energy_j = 0.0;
  bool feasible = false;
  std::vector<CandidateRow> candidates;

  bool is_partition_plan() const { return partition.has_value(); }
};

/// Exhaustively evaluates every frequency in the device scale and picks the
/// feasible candidate optimizing the objective. Ties break toward the other
/// metric, then toward the smallest frequency.
Plan plan_frequency(const NetworkProfile &net, const DeviceProfile &dev,
                    const LocalPlanRequest &req,
                    ModelFamily family = ModelFamily::PowerLaw);

/// Enumerates every partition point m in {0..M} (times every scale
/// frequency when joint_freq) and picks the feasible candidate with minimum
/// device-side energy (compute + transmit; edge energy is not the device's
/// concern, edge latency still counts toward the deadline). Ties break
/// toward lower latency, then the smaller frequency, then the larger m.
Plan plan_partition(const NetworkProfile &net, const DeviceProfile &dev,
                    const EdgeProfile &edge, const PartitionPlanRequest &req,
                    ModelFamily family = ModelFamily::PowerLaw);

struct PlanEvaluation {
  double actual_latency_ms = 0.0;
  double actual_energy_j = 0.0;
  /// Whether the plan's original constraint (deadline or energy budget)
  /// holds under the truth family.
  bool deadline_met = false;
};

/// Re-costs a plan's decision under an alternative ("truth") model family.
/// `edge` may be null for local plans and is required for partition plans.
PlanEvaluation evaluate_plan(const Plan &plan, const NetworkProfile &net,
                             const DeviceProfile &dev, const EdgeProfile *edge,
                             ModelFamily truth_family);

struct RateSweepRow {
  double rate_mbps = 0.0;
  Plan plan;
};

/// plan_partition once per rate, in input order.
std::vector<RateSweepRow> rate_sweep(const NetworkProfile &net,
                                     const DeviceProfile &dev,
                                     const EdgeProfile &edge,
                                     std::span<const double> rates_mbps,
                                     double deadline_ms,
                                     ModelFamily family = ModelFamily::PowerLaw);

} // namespace dvfsinfer

#endif // DVFSINFER_PLANNER_HPP
