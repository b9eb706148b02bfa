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
#ifndef DVFSINFER_PROFILE_IO_HPP
#define DVFSINFER_PROFILE_IO_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "dvfsinfer/fitting.hpp"
#include "dvfsinfer/profile.hpp"

namespace dvfsinfer {

/// Contents of a profile file. A full profile carries device and network;
/// fragments (e.g. fit output, a standalone edge description) may carry a
/// subset. Consumers demand the sections they need.
struct ProfileFile {
  std::optional<DeviceProfile> device;
  std::optional<NetworkProfile> network;
  std::optional<EdgeProfile> edge;
};

/// Parse the JSON profile schema. Strict: unknown keys and wrong types are
/// ParseErrors, numbers must be JSON decimals.
///
/// Schema:
///   { "device":  {"name", "freq_scale_ghz": [..], "kappa_w_per_ghz3",
///                 "tx_power_w"?},
///     "network": {"name", "input_bytes", "blocks": [
///                   {"name", "flops", "output_bytes"?,
///                    "model": {"a","b","c"}, "cpu_dvfs"?: {"coeff"}}]},
///     "edge"?:   {"name", "block_latency_ms": [..]} }
ProfileFile parse_profile_json(const std::string &text);
ProfileFile load_profile_file(const std::filesystem::path &path);

/// Serialize with shortest round-trip number formatting: reading the result
/// back yields bit-identical parameters, so every prediction survives a
/// round trip exactly.
std::string profile_to_json(const ProfileFile &profile);
void save_profile_file(const std::filesystem::path &path,
                       const ProfileFile &profile);

/// A parsed measurement trace: per-block series keyed by 1-based block
/// index, plus the whole-network series when `total` rows are present.
/// Repeated rows per (block, frequency) have already been averaged.
struct TraceTable {
  std::map<int, TraceSeries> blocks;
  std::optional<TraceSeries> total;

  bool empty() const { return blocks.empty() && !total.has_value(); }
};

/// Parse the trace CSV format: header `block,freq_ghz,latency_ms`, then one
/// row per measurement where `block` is a 1-based index or `total`.
/// Malformed input raises ParseError with a 1-based line number.
TraceTable parse_trace_csv(const std::string &text);
TraceTable load_trace_csv(const std::filesystem::path &path);

} // namespace dvfsinfer

#endif // DVFSINFER_PROFILE_IO_HPP
