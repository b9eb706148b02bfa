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
#include "dvfsinfer/profile.hpp"

#include <stdexcept>
#include <string>

#include "dvfsinfer/errors.hpp"
#include "dvfsinfer/numfmt.hpp"

namespace dvfsinfer {

std::vector<double> uniform_frequency_scale(double lo_ghz, double hi_ghz,
                                            int n) {
  if (!(lo_ghz > 0.0) || !(hi_ghz > lo_ghz) || n < 2)
    throw std::domain_error("scale requires 0 < lo < hi and n >= 2");
  std::vector<double> scale(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    scale[static_cast<size_t>(i)] =
        lo_ghz + (hi_ghz - lo_ghz) * static_cast<double>(i) /
                     static_cast<double>(n - 1);
  scale.back() = hi_ghz; // exact endpoint regardless of rounding
  return scale;
}

double block_latency(const BlockProfile &block, Frequency f,
                     ModelFamily family) {
  if (family == ModelFamily::PowerLaw)
    return predict_power_law(block.model, f);
  if (!block.cpu_dvfs)
    throw ConfigError("block '" + block.name + "' carries no cpu-dvfs model");
  return predict_cpu_dvfs(*block.cpu_dvfs, f);
}

double prefix_latency(const NetworkProfile &net, int m, Frequency f,
                      ModelFamily family) {
  if (m < 0 || m > net.block_count())
    throw std::out_of_range("partition index " + std::to_string(m) +
                            " outside {0, ..., " +
                            std::to_string(net.block_count()) + "}");
  double total = 0.0;
  for (int i = 0; i < m; ++i)
    total += block_latency(net.blocks[static_cast<size_t>(i)], f, family);
  return total;
}

double total_latency(const NetworkProfile &net, Frequency f,
                     ModelFamily family) {
  return prefix_latency(net, net.block_count(), f, family);
}

double prefix_energy(const NetworkProfile &net, const DeviceProfile &dev,
                     int m, Frequency f, ModelFamily family) {
  return predict_energy(dev.kappa, f, prefix_latency(net, m, f, family));
}

namespace {

void add(std::vector<ValidationIssue> &dst, std::string code,
         std::string message) {
  dst.push_back({std::move(code), std::move(message)});
}

void validate_network(const NetworkProfile &net,
                      std::vector<ValidationIssue> &out) {
  if (net.blocks.empty())
    add(out, "blocks_empty", "network '" + net.name + "' has no blocks");
  if (net.input_bytes < 0.0)
    add(out, "input_bytes_negative",
        "network input_bytes " + format_double(net.input_bytes) +
            " is negative");
  for (size_t i = 0; i < net.blocks.size(); ++i) {
    const BlockProfile &blk = net.blocks[i];
    const std::string where = "block " + std::to_string(i + 1) + " ('" +
                              blk.name + "')";
    if (blk.flops < 0.0)
      add(out, "flops_negative",
          where + ": flops " + format_double(blk.flops) + " is negative");
    if (blk.output_bytes && *blk.output_bytes < 0.0)
      add(out, "output_bytes_negative",
          where + ": output_bytes " + format_double(*blk.output_bytes) +
              " is negative");
    if (blk.model.a < 0.0)
      add(out, "workload_coefficient_negative",
          where + ": a = " + format_double(blk.model.a) + " is negative");
    if (blk.model.c < 0.0)
      add(out, "latency_floor_negative",
          where + ": c = " + format_double(blk.model.c) + " is negative");
    if (!(blk.model.b > 0.0) || blk.model.b > 4.0)
      add(out, "exponent_out_of_bounds",
          where + ": b = " + format_double(blk.model.b) + " outside (0, 4]");
    if (blk.cpu_dvfs && !(blk.cpu_dvfs->coeff > 0.0))
      add(out, "cpu_dvfs_coeff_nonpositive",
          where + ": cpu-dvfs coeff " + format_double(blk.cpu_dvfs->coeff) +
              " is not positive");
  }
}

void validate_device(const DeviceProfile &dev,
                     std::vector<ValidationIssue> &out) {
  if (dev.freq_scale_ghz.empty()) {
    add(out, "freq_scale_empty",
        "device '" + dev.name + "' has an empty frequency scale");
  } else {
    for (size_t i = 0; i < dev.freq_scale_ghz.size(); ++i) {
      if (!(dev.freq_scale_ghz[i] > 0.0)) {
        add(out, "freq_scale_nonpositive",
            "frequency scale entry " + std::to_string(i + 1) + " = " +
                format_double(dev.freq_scale_ghz[i]) + " is not positive");
        break;
      }
    }
    for (size_t i = 1; i < dev.freq_scale_ghz.size(); ++i) {
      if (!(dev.freq_scale_ghz[i] > dev.freq_scale_ghz[i - 1])) {
        add(out, "freq_scale_not_increasing",
            "frequency scale is not strictly increasing at entry " +
                std::to_string(i + 1));
        break;
      }
    }
  }
  if (!(dev.kappa.kappa > 0.0))
    add(out, "kappa_nonpositive",
        "kappa " + format_double(dev.kappa.kappa) + " is not positive");
  if (dev.tx_power_w && !(*dev.tx_power_w > 0.0))
    add(out, "tx_power_nonpositive",
        "tx_power " + format_double(*dev.tx_power_w) + " is not positive");
}

} // namespace

ValidationReport validate_profile(const NetworkProfile &net,
                                  const DeviceProfile &dev,
                                  const EdgeProfile *edge) {
  ValidationReport report;
  validate_network(net, report.violations);
  validate_device(dev, report.violations);
  if (edge) {
    if (edge->block_latency_ms.size() != net.blocks.size())
      add(report.violations, "edge_block_length_mismatch",
          "edge profile has " + std::to_string(edge->block_latency_ms.size()) +
              " latencies for " + std::to_string(net.blocks.size()) +
              " blocks");
    for (size_t i = 0; i < edge->block_latency_ms.size(); ++i) {
      if (edge->block_latency_ms[i] < 0.0) {
        add(report.violations, "edge_latency_negative",
            "edge latency entry " + std::to_string(i + 1) + " = " +
                format_double(edge->block_latency_ms[i]) + " is negative");
        break;
      }
    }
  }
  if (!dev.tx_power_w)
    add(report.warnings, "tx_power_defaulted",
        "device '" + dev.name + "' has no tx_power_w; planners assume " +
            format_double(DeviceProfile::kDefaultTxPowerW) + " W");
  return report;
}

} // namespace dvfsinfer
