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
#include "dvfsinfer/figures.hpp"

#include <string>

#include "dvfsinfer/errors.hpp"
#include "dvfsinfer/fitting.hpp"
#include "dvfsinfer/numfmt.hpp"
#include "dvfsinfer/report.hpp"

namespace dvfsinfer {

namespace {

void check_scale(const DeviceProfile &dev) {
  if (dev.freq_scale_ghz.empty())
    throw ConfigError("device '" + dev.name + "' has an empty frequency scale");
}

std::string csv_row(std::initializer_list<double> values) {
  std::string row;
  for (const double v : values) {
    if (!row.empty())
      row += ',';
    row += format_double(v);
  }
  return row + "\n";
}

} // namespace

NetworkProfile with_cpu_dvfs_models(const NetworkProfile &net,
                                    const DeviceProfile &dev) {
  check_scale(dev);
  NetworkProfile out = net;
  for (BlockProfile &blk : out.blocks) {
    if (blk.cpu_dvfs)
      continue;
    TraceSeries series;
    series.points.reserve(dev.freq_scale_ghz.size());
    for (const double f : dev.freq_scale_ghz)
      series.points.push_back({f, predict_power_law(blk.model, Frequency{f})});
    blk.cpu_dvfs = fit_cpu_dvfs(series).model;
  }
  return out;
}

std::string figure_latency_vs_freq_csv(const NetworkProfile &net,
                                       const DeviceProfile &dev) {
  check_scale(dev);
  std::string csv = "freq_ghz";
  for (int i = 1; i <= net.block_count(); ++i)
    csv += ",block" + std::to_string(i) + "_ms";
  csv += ",total_ms\n";
  for (const double f : dev.freq_scale_ghz) {
    std::string row = format_double(f);
    double total = 0.0;
    for (const BlockProfile &blk : net.blocks) {
      const double t = predict_power_law(blk.model, Frequency{f});
      total += t;
      row += ',' + format_double(t);
    }
    csv += row + ',' + format_double(total) + "\n";
  }
  return csv;
}

std::string figure_model_compare_csv(const NetworkProfile &net,
                                     const DeviceProfile &dev) {
  check_scale(dev);
  const NetworkProfile fitted = with_cpu_dvfs_models(net, dev);
  std::string csv = "freq_ghz,power_law_ms,cpu_dvfs_ms\n";
  for (const double f : dev.freq_scale_ghz)
    csv += csv_row({f, total_latency(fitted, Frequency{f}),
                    total_latency(fitted, Frequency{f},
                                  ModelFamily::CpuDvfs)});
  return csv;
}

std::string figure_plan_bars_csv(const NetworkProfile &net,
                                 const DeviceProfile &dev,
                                 std::span<const double> deadlines_ms,
                                 std::span<const double> energies_j) {
  const bool deadline_mode = !deadlines_ms.empty();
  if (deadline_mode == !energies_j.empty())
    throw ConfigError(
        "plan-bars needs exactly one of a deadline list or an energy list");

  const NetworkProfile fitted = with_cpu_dvfs_models(net, dev);
  std::string csv = std::string(deadline_mode ? "deadline_ms" : "energy_j") +
                    ",model,freq_ghz,planned_feasible,predicted_latency_ms,"
                    "predicted_energy_j,actual_latency_ms,actual_energy_j,"
                    "constraint_met\n";
  const std::span<const double> constraints =
      deadline_mode ? deadlines_ms : energies_j;
  for (const double value : constraints) {
    for (const ModelFamily family :
         {ModelFamily::PowerLaw, ModelFamily::CpuDvfs}) {
      LocalPlanRequest req;
      if (deadline_mode) {
        req.objective = LocalObjective::MinEnergyUnderDeadline;
        req.deadline_ms = value;
      } else {
        req.objective = LocalObjective::MinLatencyUnderEnergy;
        req.energy_budget_j = value;
      }
      const Plan plan = plan_frequency(fitted, dev, req, family);
      const PlanEvaluation eval =
          evaluate_plan(plan, fitted, dev, nullptr, ModelFamily::PowerLaw);
      csv += format_double(value) + ',' + model_family_name(family) + ',' +
             format_double(plan.freq_ghz) + ',' +
             (plan.feasible ? "1," : "0,") +
             format_double(plan.predicted_latency_ms) + ',' +
             format_double(plan.predicted_energy_j) + ',' +
             format_double(eval.actual_latency_ms) + ',' +
             format_double(eval.actual_energy_j) + ',' +
             (eval.deadline_met ? "1" : "0") + "\n";
    }
  }
  return csv;
}

std::string figure_rate_sweep_csv(const NetworkProfile &net,
                                  const DeviceProfile &dev,
                                  const EdgeProfile &edge,
                                  std::span<const double> rates_mbps,
                                  double deadline_ms, ModelFamily family) {
  std::string csv = "rate_mbps,partition\n";
  for (const RateSweepRow &row :
       rate_sweep(net, dev, edge, rates_mbps, deadline_ms, family))
    csv += format_double(row.rate_mbps) + ',' +
           std::to_string(*row.plan.partition) + "\n";
  return csv;
}

std::string figure_partition_curves_csv(const NetworkProfile &net,
                                        const DeviceProfile &dev,
                                        const EdgeProfile &edge,
                                        double rate_mbps, double deadline_ms,
                                        ModelFamily family) {
  PartitionPlanRequest req;
  req.deadline_ms = deadline_ms;
  req.rate_mbps = rate_mbps;
  const Plan plan = plan_partition(net, dev, edge, req, family);
  std::string csv = "partition,latency_ms,energy_j,feasible\n";
  for (const CandidateRow &row : plan.candidates)
    csv += std::to_string(*row.partition) + ',' +
           format_double(row.latency_ms) + ',' + format_double(row.energy_j) +
           ',' + (row.feasible ? "1" : "0") + "\n";
  return csv;
}

} // namespace dvfsinfer
