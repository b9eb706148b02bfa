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
#include "dvfsinfer/report.hpp"

#include "json.hpp"

#include "dvfsinfer/errors.hpp"

namespace dvfsinfer {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const char *objective_name(LocalObjective obj) {
  return obj == LocalObjective::MinEnergyUnderDeadline
             ? "min-energy-under-deadline"
             : "min-latency-under-energy";
}

LocalObjective objective_from_name(const std::string &name) {
  if (name == "min-energy-under-deadline")
    return LocalObjective::MinEnergyUnderDeadline;
  if (name == "min-latency-under-energy")
    return LocalObjective::MinLatencyUnderEnergy;
  throw ParseError("unknown objective '" + name + "'");
}

ordered_json request_to_json(const Plan &plan) {
  ordered_json req;
  if (const auto *local = std::get_if<LocalPlanRequest>(&plan.request)) {
    req["kind"] = "local";
    req["model"] = model_family_name(plan.family);
    req["objective"] = objective_name(local->objective);
    if (local->deadline_ms)
      req["deadline_ms"] = *local->deadline_ms;
    if (local->energy_budget_j)
      req["energy_budget_j"] = *local->energy_budget_j;
  } else {
    const auto &part = std::get<PartitionPlanRequest>(plan.request);
    req["kind"] = "partition";
    req["model"] = model_family_name(plan.family);
    req["deadline_ms"] = part.deadline_ms;
    req["rate_mbps"] = part.rate_mbps;
    if (part.device_freq_ghz)
      req["device_freq_ghz"] = *part.device_freq_ghz;
    else
      req["device_freq_ghz"] = "max";
    req["joint_freq"] = part.joint_freq;
  }
  return req;
}

} // namespace

std::string model_family_name(ModelFamily family) {
  return family == ModelFamily::PowerLaw ? "power-law" : "cpu-dvfs";
}

ModelFamily model_family_from_name(const std::string &name) {
  if (name == "power-law")
    return ModelFamily::PowerLaw;
  if (name == "cpu-dvfs")
    return ModelFamily::CpuDvfs;
  throw ParseError("unknown model family '" + name + "'");
}

std::string plan_report_to_json(const PlanReport &report) {
  const Plan &plan = report.plan;
  ordered_json root;
  root["request"] = request_to_json(plan);

  ordered_json decision;
  decision["freq_ghz"] = plan.freq_ghz;
  if (plan.partition)
    decision["partition"] = *plan.partition;
  else
    decision["partition"] = "local";
  root["decision"] = std::move(decision);

  root["predicted"] = {{"latency_ms", plan.predicted_latency_ms},
                       {"energy_j", plan.predicted_energy_j}};
  root["feasible"] = plan.feasible;

  root["candidates"] = ordered_json::array();
  for (const CandidateRow &row : plan.candidates) {
    ordered_json r;
    r["freq_ghz"] = row.freq_ghz;
    if (row.partition)
      r["partition"] = *row.partition;
    r["latency_ms"] = row.latency_ms;
    r["energy_j"] = row.energy_j;
    r["feasible"] = row.feasible;
    root["candidates"].push_back(std::move(r));
  }

  if (report.truth_family && report.truth_eval) {
    root["truth"] = {{"model", model_family_name(*report.truth_family)},
                     {"actual_latency_ms", report.truth_eval->actual_latency_ms},
                     {"actual_energy_j", report.truth_eval->actual_energy_j},
                     {"deadline_met", report.truth_eval->deadline_met}};
  }

  root["warnings"] = report.warnings;
  return root.dump(2) + "\n";
}

PlanReport plan_report_from_json(const std::string &text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }

  PlanReport report;
  Plan &plan = report.plan;
  const json &req = root.at("request");
  plan.family = model_family_from_name(req.at("model").get<std::string>());
  const std::string kind = req.at("kind").get<std::string>();
  if (kind == "local") {
    LocalPlanRequest local;
    local.objective =
        objective_from_name(req.at("objective").get<std::string>());
    if (req.contains("deadline_ms"))
      local.deadline_ms = req["deadline_ms"].get<double>();
    if (req.contains("energy_budget_j"))
      local.energy_budget_j = req["energy_budget_j"].get<double>();
    plan.request = local;
  } else if (kind == "partition") {
    PartitionPlanRequest part;
    part.deadline_ms = req.at("deadline_ms").get<double>();
    part.rate_mbps = req.at("rate_mbps").get<double>();
    if (req.at("device_freq_ghz").is_number())
      part.device_freq_ghz = req["device_freq_ghz"].get<double>();
    part.joint_freq = req.at("joint_freq").get<bool>();
    plan.request = part;
  } else {
    throw ParseError("unknown request kind '" + kind + "'");
  }

  const json &decision = root.at("decision");
  plan.freq_ghz = decision.at("freq_ghz").get<double>();
  if (decision.at("partition").is_number_integer())
    plan.partition = decision["partition"].get<int>();

  plan.predicted_latency_ms = root.at("predicted").at("latency_ms").get<double>();
  plan.predicted_energy_j = root.at("predicted").at("energy_j").get<double>();
  plan.feasible = root.at("feasible").get<bool>();

  for (const json &r : root.at("candidates")) {
    CandidateRow row;
    row.freq_ghz = r.at("freq_ghz").get<double>();
    if (r.contains("partition"))
      row.partition = r["partition"].get<int>();
    row.latency_ms = r.at("latency_ms").get<double>();
    row.energy_j = r.at("energy_j").get<double>();
    row.feasible = r.at("feasible").get<bool>();
    plan.candidates.push_back(row);
  }

  if (root.contains("truth")) {
    const json &truth = root["truth"];
    report.truth_family =
        model_family_from_name(truth.at("model").get<std::string>());
    PlanEvaluation eval;
    eval.actual_latency_ms = truth.at("actual_latency_ms").get<double>();
    eval.actual_energy_j = truth.at("actual_energy_j").get<double>();
    eval.deadline_met = truth.at("deadline_met").get<bool>();
    report.truth_eval = eval;
  }

  for (const json &w : root.at("warnings"))
    report.warnings.push_back(w.get<std::string>());
  return report;
}

} // namespace dvfsinfer
