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
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dvfsinfer/errors.hpp"
#include "dvfsinfer/figures.hpp"
#include "dvfsinfer/fitting.hpp"
#include "dvfsinfer/numfmt.hpp"
#include "dvfsinfer/planner.hpp"
#include "dvfsinfer/profile_io.hpp"
#include "dvfsinfer/report.hpp"

namespace {

using namespace dvfsinfer;

void write_output(const std::string &out_path, const std::string &content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out)
    throw ParseError("cannot write '" + out_path + "'");
  out << content;
}

const NetworkProfile &require_network(const ProfileFile &p) {
  if (!p.network)
    throw ConfigError("profile has no 'network' section");
  return *p.network;
}

const DeviceProfile &require_device(const ProfileFile &p) {
  if (!p.device)
    throw ConfigError("profile has no 'device' section");
  return *p.device;
}

/// --edge wins; otherwise the main profile may carry the edge section.
EdgeProfile resolve_edge(const ProfileFile &profile,
                         const std::string &edge_path) {
  if (!edge_path.empty()) {
    const ProfileFile f = load_profile_file(edge_path);
    if (!f.edge)
      throw ConfigError("'" + edge_path + "' has no 'edge' section");
    return *f.edge;
  }
  if (profile.edge)
    return *profile.edge;
  throw ConfigError("partition planning requires an edge profile "
                    "(--edge or an 'edge' section in the profile)");
}

std::vector<std::string> planner_warnings(const DeviceProfile &dev) {
  std::vector<std::string> warnings;
  if (!dev.tx_power_w)
    warnings.push_back("tx_power_defaulted: device '" + dev.name +
                       "' has no tx_power_w; assuming " +
                       format_double(DeviceProfile::kDefaultTxPowerW) + " W");
  return warnings;
}

int emit_plan_report(const Plan &plan, const NetworkProfile &net,
                     const DeviceProfile &dev, const EdgeProfile *edge,
                     const std::optional<ModelFamily> &truth,
                     std::vector<std::string> warnings,
                     const std::string &out_path) {
  PlanReport report;
  report.plan = plan;
  report.warnings = std::move(warnings);
  if (truth) {
    report.truth_family = truth;
    report.truth_eval = evaluate_plan(plan, net, dev, edge, *truth);
  }
  write_output(out_path, plan_report_to_json(report));
  return plan.feasible ? 0 : 2;
}

int cmd_fit(const std::string &trace_path, ModelFamily family,
            const std::string &name, const std::string &out_path) {
  const TraceTable table = load_trace_csv(trace_path);
  if (table.empty())
    throw InsufficientDataError("no data rows in '" + trace_path + "'");

  NetworkProfile net;
  net.name = name;
  net.input_bytes = 0.0;

  std::string text;
  auto fit_one = [&](const std::string &label,
                     const TraceSeries &series) -> BlockProfile {
    BlockProfile blk;
    blk.name = label;
    if (family == ModelFamily::PowerLaw) {
      const PowerLawFit fit = fit_power_law(series);
      blk.model = fit.model;
      text += label + ": a=" + format_double(fit.model.a) +
              " b=" + format_double(fit.model.b) +
              " c=" + format_double(fit.model.c) +
              " rmse=" + format_double(fit.rmse) +
              " r2=" + format_double(fit.r_squared);
      if (fit.exponent_unidentifiable)
        text += " (exponent unidentifiable)";
    } else {
      const CpuDvfsFit fit = fit_cpu_dvfs(series);
      // The cpu-dvfs model is the b = 1, c = 0 special case, so the
      // fragment stays valid under the profile schema.
      blk.model = {fit.model.coeff, 1.0, 0.0};
      blk.cpu_dvfs = fit.model;
      text += label + ": coeff=" + format_double(fit.model.coeff) +
              " rmse=" + format_double(fit.rmse) +
              " r2=" + format_double(fit.r_squared);
    }
    text += "\n";
    return blk;
  };

  for (const auto &[index, series] : table.blocks)
    net.blocks.push_back(fit_one("block" + std::to_string(index), series));
  if (table.total) {
    BlockProfile total = fit_one("total", *table.total);
    if (net.blocks.empty())
      net.blocks.push_back(std::move(total));
  }

  std::cout << text;
  if (!out_path.empty()) {
    ProfileFile frag;
    frag.network = std::move(net);
    save_profile_file(out_path, frag);
  }
  return 0;
}

int cmd_predict(const ProfileFile &profile, double freq_ghz,
                const std::optional<int> &block, bool with_energy) {
  const NetworkProfile &net = require_network(profile);
  const Frequency f{freq_ghz};

  if (profile.device && !profile.device->freq_scale_ghz.empty()) {
    const DeviceProfile &dev = *profile.device;
    if (freq_ghz < dev.freq_scale_ghz.front() ||
        freq_ghz > dev.freq_scale_ghz.back())
      std::cerr << "warning: frequency " << format_double(freq_ghz)
                << " GHz is outside the device scale ["
                << format_double(dev.freq_scale_ghz.front()) << ", "
                << format_double(dev.freq_scale_ghz.back()) << "]\n";
  }

  double latency = 0.0;
  if (block) {
    if (*block < 1 || *block > net.block_count())
      throw ConfigError("unknown block " + std::to_string(*block) +
                        " (network has " + std::to_string(net.block_count()) +
                        " blocks)");
    latency = predict_power_law(net.blocks[static_cast<size_t>(*block - 1)].model, f);
  } else {
    latency = total_latency(net, f);
  }
  std::cout << format_double(latency) << " ms\n";

  if (with_energy) {
    const DeviceProfile &dev = require_device(profile);
    std::cout << format_double(predict_energy(dev.kappa, f, latency))
              << " J\n";
  }
  return 0;
}

std::optional<double> parse_freq_or_max(const std::string &text) {
  if (text == "max")
    return std::nullopt;
  double value = 0.0;
  const char *last = text.data() + text.size();
  auto res = std::from_chars(text.data(), last, value);
  if (res.ec != std::errc{} || res.ptr != last)
    throw ConfigError("--freq must be a frequency in GHz or 'max'");
  return value;
}

int cmd_figure(const std::string &id, const ProfileFile &profile,
               const std::string &edge_path,
               const std::vector<double> &deadlines_ms,
               const std::vector<double> &energies_j,
               const std::vector<double> &rates_mbps, double rate_mbps,
               double deadline_ms, ModelFamily family,
               const std::string &out_path) {
  const NetworkProfile &net = require_network(profile);
  const DeviceProfile &dev = require_device(profile);

  std::string csv;
  if (id == "latency-vs-freq") {
    csv = figure_latency_vs_freq_csv(net, dev);
  } else if (id == "model-compare") {
    csv = figure_model_compare_csv(net, dev);
  } else if (id == "plan-bars") {
    csv = figure_plan_bars_csv(net, dev, deadlines_ms, energies_j);
  } else if (id == "rate-sweep") {
    if (!(deadline_ms > 0.0))
      throw ConfigError("rate-sweep requires --deadline-ms");
    const EdgeProfile edge = resolve_edge(profile, edge_path);
    csv = figure_rate_sweep_csv(net, dev, edge, rates_mbps, deadline_ms,
                                family);
  } else if (id == "partition-curves") {
    if (!(deadline_ms > 0.0) || !(rate_mbps > 0.0))
      throw ConfigError(
          "partition-curves requires --deadline-ms and --rate-mbps");
    const EdgeProfile edge = resolve_edge(profile, edge_path);
    csv = figure_partition_curves_csv(net, dev, edge, rate_mbps, deadline_ms,
                                      family);
  } else {
    throw ConfigError("unknown figure id '" + id + "'");
  }
  write_output(out_path, csv);
  return 0;
}

int cmd_validate(const ProfileFile &profile, const std::string &edge_path,
                 const std::string &out_path) {
  const NetworkProfile &net = require_network(profile);
  const DeviceProfile &dev = require_device(profile);
  std::optional<EdgeProfile> edge;
  if (!edge_path.empty()) {
    const ProfileFile f = load_profile_file(edge_path);
    if (!f.edge)
      throw ConfigError("'" + edge_path + "' has no 'edge' section");
    edge = *f.edge;
  } else if (profile.edge) {
    edge = *profile.edge;
  }

  const ValidationReport report =
      validate_profile(net, dev, edge ? &*edge : nullptr);
  std::string text;
  for (const ValidationIssue &v : report.violations)
    text += "violation " + v.code + ": " + v.message + "\n";
  for (const ValidationIssue &w : report.warnings)
    text += "warning " + w.code + ": " + w.message + "\n";
  text += report.ok() ? "ok\n" : "invalid\n";
  write_output(out_path, text);
  return report.ok() ? 0 : 1;
}

int run(int argc, char **argv) {
  CLI::App app{"DVFS-aware DNN inference latency and energy planning"};
  app.require_subcommand(1);

  std::string profile_path, edge_path, out_path;
  app.add_option("--profile", profile_path, "Profile file (JSON)");
  app.add_option("--edge", edge_path, "Edge profile file (JSON)");
  app.add_option("--out", out_path, "Output file (default: stdout)");

  // fit
  auto *fit = app.add_subcommand("fit", "Fit latency models to a trace CSV");
  fit->fallthrough();
  std::string trace_path, fit_family = "power-law", fit_name = "fitted";
  fit->add_option("--trace", trace_path, "Trace CSV")->required();
  fit->add_option("--family", fit_family, "Model family")
      ->check(CLI::IsMember({"power-law", "cpu-dvfs"}));
  fit->add_option("--name", fit_name, "Name for the fitted network");

  // predict
  auto *predict = app.add_subcommand("predict", "Predict latency (and energy)");
  predict->fallthrough();
  double predict_freq = 0.0;
  int predict_block = 0;
  bool predict_energy_flag = false;
  predict->add_option("--freq", predict_freq, "Frequency in GHz")->required();
  predict->add_option("--block", predict_block, "1-based block index");
  predict->add_flag("--energy", predict_energy_flag, "Also print energy");

  // plan local | plan partition
  auto *plan = app.add_subcommand("plan", "Plan frequency or partition point");
  plan->fallthrough();
  plan->require_subcommand(1);
  auto *plan_local = plan->add_subcommand("local", "Pick a GPU frequency");
  plan_local->fallthrough();
  double local_deadline = 0.0, local_energy = 0.0;
  std::string plan_model = "power-law", plan_truth;
  plan_local->add_option("--deadline-ms", local_deadline,
                         "Deadline for min-energy planning");
  plan_local->add_option("--energy-j", local_energy,
                         "Energy budget for min-latency planning");
  plan_local->add_option("--model", plan_model, "Planning model family")
      ->check(CLI::IsMember({"power-law", "cpu-dvfs"}));
  plan_local->add_option("--truth", plan_truth,
                         "Also evaluate under this family")
      ->check(CLI::IsMember({"power-law", "cpu-dvfs"}));

  auto *plan_part = plan->add_subcommand("partition", "Pick a partition point");
  plan_part->fallthrough();
  double part_deadline = 0.0, part_rate = 0.0;
  std::string part_freq = "max";
  bool part_joint = false;
  plan_part->add_option("--deadline-ms", part_deadline, "Deadline")->required();
  plan_part->add_option("--rate-mbps", part_rate, "Fixed communication rate")
      ->required();
  plan_part->add_option("--freq", part_freq,
                        "Device frequency in GHz, or 'max'");
  plan_part->add_flag("--joint-freq", part_joint,
                      "Search partition and frequency jointly");
  plan_part->add_option("--model", plan_model, "Planning model family")
      ->check(CLI::IsMember({"power-law", "cpu-dvfs"}));
  plan_part->add_option("--truth", plan_truth,
                        "Also evaluate under this family")
      ->check(CLI::IsMember({"power-law", "cpu-dvfs"}));

  // sweep
  auto *sweep = app.add_subcommand("sweep", "Partition plans over rates");
  sweep->fallthrough();
  std::vector<double> sweep_rates;
  double sweep_deadline = 0.0;
  std::string sweep_model = "power-law";
  sweep->add_option("--rates", sweep_rates, "Comma-separated rates in Mbps")
      ->delimiter(',');
  sweep->add_option("--deadline-ms", sweep_deadline, "Deadline")->required();
  sweep->add_option("--model", sweep_model, "Planning model family")
      ->check(CLI::IsMember({"power-law", "cpu-dvfs"}));

  // figure
  auto *figure = app.add_subcommand("figure", "Emit plot-ready CSV data");
  figure->fallthrough();
  std::string figure_id, figure_model = "power-law";
  std::vector<double> figure_deadlines, figure_energies, figure_rates;
  double figure_rate = 0.0, figure_deadline = 0.0;
  figure->add_option("--id", figure_id, "Figure id")->required();
  figure->add_option("--deadlines-ms", figure_deadlines, "Deadline list")
      ->delimiter(',');
  figure->add_option("--energies-j", figure_energies, "Energy budget list")
      ->delimiter(',');
  figure->add_option("--rates", figure_rates, "Rate list in Mbps")
      ->delimiter(',');
  figure->add_option("--rate-mbps", figure_rate, "Fixed rate in Mbps");
  figure->add_option("--deadline-ms", figure_deadline, "Deadline");
  figure->add_option("--model", figure_model, "Planning model family")
      ->check(CLI::IsMember({"power-law", "cpu-dvfs"}));

  // validate
  auto *validate = app.add_subcommand("validate", "Check profile invariants");
  validate->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*fit) {
      return cmd_fit(trace_path, model_family_from_name(fit_family), fit_name,
                     out_path);
    }
    if (*predict) {
      const ProfileFile profile = load_profile_file(profile_path);
      std::optional<int> block;
      if (predict->count("--block"))
        block = predict_block;
      return cmd_predict(profile, predict_freq, block, predict_energy_flag);
    }
    if (*plan_local) {
      const ProfileFile profile = load_profile_file(profile_path);
      const NetworkProfile &net = require_network(profile);
      const DeviceProfile &dev = require_device(profile);
      const bool has_deadline = plan_local->count("--deadline-ms") > 0;
      const bool has_energy = plan_local->count("--energy-j") > 0;
      if (has_deadline == has_energy)
        throw ConfigError(
            "local planning takes exactly one of --deadline-ms or --energy-j");
      LocalPlanRequest req;
      if (has_deadline) {
        req.objective = LocalObjective::MinEnergyUnderDeadline;
        req.deadline_ms = local_deadline;
      } else {
        req.objective = LocalObjective::MinLatencyUnderEnergy;
        req.energy_budget_j = local_energy;
      }
      const Plan plan =
          plan_frequency(net, dev, req, model_family_from_name(plan_model));
      std::optional<ModelFamily> truth;
      if (!plan_truth.empty())
        truth = model_family_from_name(plan_truth);
      return emit_plan_report(plan, net, dev, nullptr, truth, {}, out_path);
    }
    if (*plan_part) {
      const ProfileFile profile = load_profile_file(profile_path);
      const NetworkProfile &net = require_network(profile);
      const DeviceProfile &dev = require_device(profile);
      const EdgeProfile edge = resolve_edge(profile, edge_path);
      PartitionPlanRequest req;
      req.deadline_ms = part_deadline;
      req.rate_mbps = part_rate;
      req.device_freq_ghz = parse_freq_or_max(part_freq);
      req.joint_freq = part_joint;
      const Plan plan = plan_partition(net, dev, edge, req,
                                       model_family_from_name(plan_model));
      std::optional<ModelFamily> truth;
      if (!plan_truth.empty())
        truth = model_family_from_name(plan_truth);
      return emit_plan_report(plan, net, dev, &edge, truth,
                              planner_warnings(dev), out_path);
    }
    if (*sweep) {
      const ProfileFile profile = load_profile_file(profile_path);
      const NetworkProfile &net = require_network(profile);
      const DeviceProfile &dev = require_device(profile);
      const EdgeProfile edge = resolve_edge(profile, edge_path);
      std::string csv =
          "rate_mbps,partition,freq_ghz,latency_ms,energy_j,feasible\n";
      for (const RateSweepRow &row :
           rate_sweep(net, dev, edge, sweep_rates, sweep_deadline,
                      model_family_from_name(sweep_model)))
        csv += format_double(row.rate_mbps) + ',' +
               std::to_string(*row.plan.partition) + ',' +
               format_double(row.plan.freq_ghz) + ',' +
               format_double(row.plan.predicted_latency_ms) + ',' +
               format_double(row.plan.predicted_energy_j) + ',' +
               (row.plan.feasible ? "1" : "0") + "\n";
      write_output(out_path, csv);
      return 0;
    }
    if (*figure) {
      const ProfileFile profile = load_profile_file(profile_path);
      return cmd_figure(figure_id, profile, edge_path, figure_deadlines,
                        figure_energies, figure_rates, figure_rate,
                        figure_deadline, model_family_from_name(figure_model),
                        out_path);
    }
    if (*validate) {
      const ProfileFile profile = load_profile_file(profile_path);
      return cmd_validate(profile, edge_path, out_path);
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

} // namespace

int main(int argc, char **argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
