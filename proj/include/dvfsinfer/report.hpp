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
#ifndef DVFSINFER_REPORT_HPP
#define DVFSINFER_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "dvfsinfer/planner.hpp"

namespace dvfsinfer {

/// A plan plus everything a consumer needs to reproduce it: the request
/// echo, the candidate table, optional truth-model evaluation, and any
/// warnings raised while planning (e.g. a defaulted transmit power).
/// Serializes to JSON and parses back without loss.
struct PlanReport {
  Plan plan;
  std::optional<ModelFamily> truth_family;
  std::optional<PlanEvaluation> truth_eval;
  std::vector<std::string> warnings;
};

std::string model_family_name(ModelFamily family);
ModelFamily model_family_from_name(const std::string &name);

/// Deterministic JSON text (2-space indent, fixed key order, shortest
/// round-trip numbers) terminated by a newline.
std::string plan_report_to_json(const PlanReport &report);

PlanReport plan_report_from_json(const std::string &text);

} // namespace dvfsinfer

#endif // DVFSINFER_REPORT_HPP
