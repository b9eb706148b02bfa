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
#include "dvfsinfer/planner.hpp"

#include <algorithm>
#include <cmath>

#include "dvfsinfer/errors.hpp"
#include "dvfsinfer/numfmt.hpp"

namespace dvfsinfer {

namespace {

struct Cost {
  double latency_ms = 0.0;
  double energy_j = 0.0;
};

Cost local_cost(const NetworkProfile &net, const DeviceProfile &dev, double f,
                ModelFamily family) {
  const double latency = total_latency(net, Frequency{f}, family);
  return {latency, predict_energy(dev.kappa, Frequency{f}, latency)};
}

double upload_bytes_at(const NetworkProfile &net, int m) {
  if (m == 0)
    return net.input_bytes; // offload the raw input
  if (m == net.block_count())
    return 0.0; // fully local, nothing leaves the device
  const std::optional<double> &out =
      net.blocks[static_cast<size_t>(m - 1)].output_bytes;
  if (!out)
    throw ConfigError("block " + std::to_string(m) +
                      " has no output_bytes; cannot plan a partition");
  return *out;
}

/// Device compute + upload + edge remainder; energy is the device's only:
/// compute energy plus transmit power over the upload time.
Cost partition_cost(const NetworkProfile &net, const DeviceProfile &dev,
                    const EdgeProfile &edge, int m, double f, double rate_mbps,
                    ModelFamily family) {
  const double device_ms = prefix_latency(net, m, Frequency{f}, family);
  const double upload_s = upload_bytes_at(net, m) * 8.0 / (rate_mbps * 1e6);
  double edge_ms = 0.0;
  for (size_t i = static_cast<size_t>(m); i < edge.block_latency_ms.size();
       ++i)
    edge_ms += edge.block_latency_ms[i];

  Cost cost;
  cost.latency_ms = device_ms + upload_s * 1e3 + edge_ms;
  cost.energy_j = prefix_energy(net, dev, m, Frequency{f}, family) +
                  dev.tx_power_or_default() * upload_s;
  return cost;
}

void check_scale(const DeviceProfile &dev) {
  if (dev.freq_scale_ghz.empty())
    throw ConfigError("device '" + dev.name + "' has an empty frequency scale");
}

/// Lexicographic (objective, other metric); exact float comparisons. Equal
/// metrics return false so the caller's iteration order decides the final
/// tie-break.
bool improves(double obj, double other, double best_obj, double best_other) {
  if (obj != best_obj)
    return obj < best_obj;
  return other < best_other;
}

} // namespace

Plan plan_frequency(const NetworkProfile &net, const DeviceProfile &dev,
                    const LocalPlanRequest &req, ModelFamily family) {
  check_scale(dev);
  const bool deadline_objective =
      req.objective == LocalObjective::MinEnergyUnderDeadline;
  if (deadline_objective) {
    if (!req.deadline_ms || !(*req.deadline_ms > 0.0))
      throw ConfigError("min-energy-under-deadline requires deadline_ms > 0");
    if (req.energy_budget_j)
      throw ConfigError("deadline objective must not carry an energy budget");
  } else {
    if (!req.energy_budget_j || !(*req.energy_budget_j > 0.0))
      throw ConfigError("min-latency-under-energy requires energy_budget_j > 0");
    if (req.deadline_ms)
      throw ConfigError("energy objective must not carry a deadline");
  }

  Plan plan;
  plan.family = family;
  plan.request = req;
  plan.candidates.reserve(dev.freq_scale_ghz.size());

  int chosen = -1;
  for (size_t i = 0; i < dev.freq_scale_ghz.size(); ++i) {
    const double f = dev.freq_scale_ghz[i];
    const Cost cost = local_cost(net, dev, f, family);
    const bool feasible = deadline_objective
                              ? cost.latency_ms <= *req.deadline_ms
                              : cost.energy_j <= *req.energy_budget_j;
    plan.candidates.push_back(
        {f, std::nullopt, cost.latency_ms, cost.energy_j, feasible});
    if (!feasible)
      continue;
    if (chosen < 0) {
      chosen = static_cast<int>(i);
      continue;
    }
    const CandidateRow &best = plan.candidates[static_cast<size_t>(chosen)];
    const CandidateRow &cand = plan.candidates.back();
    const bool better =
        deadline_objective
            ? improves(cand.energy_j, cand.latency_ms, best.energy_j,
                       best.latency_ms)
            : improves(cand.latency_ms, cand.energy_j, best.latency_ms,
                       best.energy_j);
    if (better)
      chosen = static_cast<int>(i);
  }

  if (chosen >= 0) {
    plan.feasible = true;
  } else {
    // Best effort: the latency-minimizing frequency for a deadline (the top
    // of the scale), the energy-minimizing one for a budget (the bottom).
    plan.feasible = false;
    chosen = deadline_objective
                 ? static_cast<int>(dev.freq_scale_ghz.size()) - 1
                 : 0;
  }
  const CandidateRow &pick = plan.candidates[static_cast<size_t>(chosen)];
  plan.freq_ghz = pick.freq_ghz;
  plan.predicted_latency_ms = pick.latency_ms;
  plan.predicted_energy_j = pick.energy_j;
  return plan;
}

Plan plan_partition(const NetworkProfile &net, const DeviceProfile &dev,
                    const EdgeProfile &edge, const PartitionPlanRequest &req,
                    ModelFamily family) {
  check_scale(dev);
  if (!(req.deadline_ms > 0.0))
    throw ConfigError("partition planning requires deadline_ms > 0");
  if (!(req.rate_mbps > 0.0))
    throw ConfigError("partition planning requires rate_mbps > 0");
  if (edge.block_latency_ms.size() != net.blocks.size())
    throw ConfigError("edge profile has " +
                      std::to_string(edge.block_latency_ms.size()) +
                      " latencies for " + std::to_string(net.blocks.size()) +
                      " blocks");
  if (!(net.input_bytes > 0.0))
    throw ConfigError("network '" + net.name +
                      "' has no input size; cannot plan a partition");
  for (size_t i = 0; i < net.blocks.size(); ++i)
    if (!net.blocks[i].output_bytes)
      throw ConfigError("block " + std::to_string(i + 1) +
                        " has no output_bytes; cannot plan a partition");
  if (req.joint_freq && req.device_freq_ghz)
    throw ConfigError("joint_freq already searches the scale; "
                      "device_freq_ghz must be left unset");

  std::vector<double> freqs;
  if (req.joint_freq) {
    freqs = dev.freq_scale_ghz;
  } else if (req.device_freq_ghz) {
    if (std::find(dev.freq_scale_ghz.begin(), dev.freq_scale_ghz.end(),
                  *req.device_freq_ghz) == dev.freq_scale_ghz.end())
      throw ConfigError("device frequency " +
                        format_double(*req.device_freq_ghz) +
                        " GHz is not in the device scale");
    freqs = {*req.device_freq_ghz};
  } else {
    freqs = {dev.freq_scale_ghz.back()};
  }

  Plan plan;
  plan.family = family;
  plan.request = req;
  plan.candidates.reserve(freqs.size() * (net.blocks.size() + 1));

  const int block_count = net.block_count();
  int chosen = -1;
  int effort = -1; // latency-minimizing fallback when nothing is feasible
  for (const double f : freqs) {
    for (int m = 0; m <= block_count; ++m) {
      const Cost cost = partition_cost(net, dev, edge, m, f, req.rate_mbps,
                                       family);
      const bool feasible = cost.latency_ms <= req.deadline_ms;
      plan.candidates.push_back({f, m, cost.latency_ms, cost.energy_j,
                                 feasible});
      const int idx = static_cast<int>(plan.candidates.size()) - 1;
      const CandidateRow &cand = plan.candidates.back();
      if (feasible) {
        // Minimize energy, then latency; ties fall to the smaller frequency
        // (outer loop order) and then the larger m.
        if (chosen < 0)
          chosen = idx;
        else {
          const CandidateRow &best =
              plan.candidates[static_cast<size_t>(chosen)];
          if (improves(cand.energy_j, cand.latency_ms, best.energy_j,
                       best.latency_ms) ||
              (cand.energy_j == best.energy_j &&
               cand.latency_ms == best.latency_ms &&
               cand.freq_ghz == best.freq_ghz && *cand.partition >
                                                     *best.partition))
            chosen = idx;
        }
      }
      if (effort < 0)
        effort = idx;
      else {
        const CandidateRow &best = plan.candidates[static_cast<size_t>(effort)];
        if (improves(cand.latency_ms, cand.energy_j, best.latency_ms,
                     best.energy_j) ||
            (cand.latency_ms == best.latency_ms &&
             cand.energy_j == best.energy_j &&
             cand.freq_ghz == best.freq_ghz && *cand.partition >
                                                   *best.partition))
          effort = idx;
      }
    }
  }

  plan.feasible = chosen >= 0;
  const CandidateRow &pick =
      plan.candidates[static_cast<size_t>(plan.feasible ? chosen : effort)];
  plan.freq_ghz = pick.freq_ghz;
  plan.partition = pick.partition;
  plan.predicted_latency_ms = pick.latency_ms;
  plan.predicted_energy_j = pick.energy_j;
  return plan;
}

PlanEvaluation evaluate_plan(const Plan &plan, const NetworkProfile &net,
                             const DeviceProfile &dev, const EdgeProfile *edge,
                             ModelFamily truth_family) {
  PlanEvaluation eval;
  if (!plan.is_partition_plan()) {
    const auto *req = std::get_if<LocalPlanRequest>(&plan.request);
    if (!req)
      throw ConfigError("local plan carries a partition request");
    const Cost cost = local_cost(net, dev, plan.freq_ghz, truth_family);
    eval.actual_latency_ms = cost.latency_ms;
    eval.actual_energy_j = cost.energy_j;
    if (req->objective == LocalObjective::MinEnergyUnderDeadline) {
      if (!req->deadline_ms)
        throw ConfigError("plan request carries no deadline");
      eval.deadline_met = cost.latency_ms <= *req->deadline_ms;
    } else {
      if (!req->energy_budget_j)
        throw ConfigError("plan request carries no energy budget");
      eval.deadline_met = cost.energy_j <= *req->energy_budget_j;
    }
    return eval;
  }

  const auto *req = std::get_if<PartitionPlanRequest>(&plan.request);
  if (!req)
    throw ConfigError("partition plan carries a local request");
  if (!edge)
    throw ConfigError("partition plan evaluation requires an edge profile");
  const Cost cost = partition_cost(net, dev, *edge, *plan.partition,
                                   plan.freq_ghz, req->rate_mbps, truth_family);
  eval.actual_latency_ms = cost.latency_ms;
  eval.actual_energy_j = cost.energy_j;
  eval.deadline_met = cost.latency_ms <= req->deadline_ms;
  return eval;
}

std::vector<RateSweepRow> rate_sweep(const NetworkProfile &net,
                                     const DeviceProfile &dev,
                                     const EdgeProfile &edge,
                                     std::span<const double> rates_mbps,
                                     double deadline_ms, ModelFamily family) {
  std::vector<RateSweepRow> rows;
  rows.reserve(rates_mbps.size());
  for (const double rate : rates_mbps) {
    PartitionPlanRequest req;
    req.deadline_ms = deadline_ms;
    req.rate_mbps = rate;
    rows.push_back({rate, plan_partition(net, dev, edge, req, family)});
  }
  return rows;
}

} // namespace dvfsinfer
