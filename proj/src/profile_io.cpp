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
#include "dvfsinfer/profile_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include "json.hpp"

#include "dvfsinfer/errors.hpp"

namespace dvfsinfer {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &where, const std::string &what) {
  throw ParseError(where + ": " + what);
}

void reject_unknown_keys(const json &obj, const std::string &where,
                         std::initializer_list<const char *> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char *key : allowed)
      known = known || it.key() == key;
    if (!known)
      fail(where, "unknown key '" + it.key() + "'");
  }
}

const json &require_key(const json &obj, const char *key,
                        const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail(where, "missing key '" + std::string(key) + "'");
  return *it;
}

const json &require_object(const json &v, const std::string &where) {
  if (!v.is_object())
    fail(where, "expected an object");
  return v;
}

double require_number(const json &obj, const char *key,
                      const std::string &where) {
  const json &v = require_key(obj, key, where);
  if (!v.is_number())
    fail(where, "key '" + std::string(key) + "' must be a number");
  return v.get<double>();
}

std::string require_string(const json &obj, const char *key,
                           const std::string &where) {
  const json &v = require_key(obj, key, where);
  if (!v.is_string())
    fail(where, "key '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> require_number_array(const json &obj, const char *key,
                                         const std::string &where) {
  const json &v = require_key(obj, key, where);
  if (!v.is_array())
    fail(where, "key '" + std::string(key) + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json &e : v) {
    if (!e.is_number())
      fail(where, "key '" + std::string(key) + "' must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

DeviceProfile parse_device(const json &v) {
  const std::string where = "device";
  require_object(v, where);
  reject_unknown_keys(v, where,
                      {"name", "freq_scale_ghz", "kappa_w_per_ghz3",
                       "tx_power_w"});
  DeviceProfile dev;
  dev.name = require_string(v, "name", where);
  dev.freq_scale_ghz = require_number_array(v, "freq_scale_ghz", where);
  dev.kappa.kappa = require_number(v, "kappa_w_per_ghz3", where);
  if (v.contains("tx_power_w"))
    dev.tx_power_w = require_number(v, "tx_power_w", where);
  return dev;
}

PowerLawModel parse_model(const json &v, const std::string &where) {
  require_object(v, where);
  reject_unknown_keys(v, where, {"a", "b", "c"});
  PowerLawModel m;
  m.a = require_number(v, "a", where);
  m.b = require_number(v, "b", where);
  m.c = require_number(v, "c", where);
  return m;
}

NetworkProfile parse_network(const json &v) {
  const std::string where = "network";
  require_object(v, where);
  reject_unknown_keys(v, where, {"name", "input_bytes", "blocks"});
  NetworkProfile net;
  net.name = require_string(v, "name", where);
  net.input_bytes = require_number(v, "input_bytes", where);
  const json &blocks = require_key(v, "blocks", where);
  if (!blocks.is_array())
    fail(where, "key 'blocks' must be an array");
  for (size_t i = 0; i < blocks.size(); ++i) {
    const std::string bwhere = "network.blocks[" + std::to_string(i) + "]";
    const json &b = require_object(blocks[i], bwhere);
    reject_unknown_keys(b, bwhere,
                        {"name", "flops", "output_bytes", "model",
                         "cpu_dvfs"});
    BlockProfile blk;
    blk.name = require_string(b, "name", bwhere);
    blk.flops = require_number(b, "flops", bwhere);
    if (b.contains("output_bytes"))
      blk.output_bytes = require_number(b, "output_bytes", bwhere);
    blk.model = parse_model(require_key(b, "model", bwhere), bwhere + ".model");
    if (b.contains("cpu_dvfs")) {
      const std::string cwhere = bwhere + ".cpu_dvfs";
      const json &c = require_object(b["cpu_dvfs"], cwhere);
      reject_unknown_keys(c, cwhere, {"coeff"});
      blk.cpu_dvfs = CpuDvfsModel{require_number(c, "coeff", cwhere)};
    }
    net.blocks.push_back(std::move(blk));
  }
  return net;
}

EdgeProfile parse_edge(const json &v) {
  const std::string where = "edge";
  require_object(v, where);
  reject_unknown_keys(v, where, {"name", "block_latency_ms"});
  EdgeProfile edge;
  edge.name = require_string(v, "name", where);
  edge.block_latency_ms = require_number_array(v, "block_latency_ms", where);
  return edge;
}

} // namespace

ProfileFile parse_profile_json(const std::string &text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object())
    throw ParseError("profile: top level must be an object");
  reject_unknown_keys(root, "profile", {"device", "network", "edge"});

  ProfileFile out;
  if (root.contains("device"))
    out.device = parse_device(root["device"]);
  if (root.contains("network"))
    out.network = parse_network(root["network"]);
  if (root.contains("edge"))
    out.edge = parse_edge(root["edge"]);
  return out;
}

ProfileFile load_profile_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_profile_json(buf.str());
}

std::string profile_to_json(const ProfileFile &profile) {
  ordered_json root = ordered_json::object();
  if (profile.device) {
    const DeviceProfile &dev = *profile.device;
    ordered_json d;
    d["name"] = dev.name;
    d["freq_scale_ghz"] = dev.freq_scale_ghz;
    d["kappa_w_per_ghz3"] = dev.kappa.kappa;
    if (dev.tx_power_w)
      d["tx_power_w"] = *dev.tx_power_w;
    root["device"] = std::move(d);
  }
  if (profile.network) {
    const NetworkProfile &net = *profile.network;
    ordered_json n;
    n["name"] = net.name;
    n["input_bytes"] = net.input_bytes;
    n["blocks"] = ordered_json::array();
    for (const BlockProfile &blk : net.blocks) {
      ordered_json b;
      b["name"] = blk.name;
      b["flops"] = blk.flops;
      if (blk.output_bytes)
        b["output_bytes"] = *blk.output_bytes;
      b["model"] = {{"a", blk.model.a}, {"b", blk.model.b}, {"c", blk.model.c}};
      if (blk.cpu_dvfs)
        b["cpu_dvfs"] = {{"coeff", blk.cpu_dvfs->coeff}};
      n["blocks"].push_back(std::move(b));
    }
    root["network"] = std::move(n);
  }
  if (profile.edge) {
    ordered_json e;
    e["name"] = profile.edge->name;
    e["block_latency_ms"] = profile.edge->block_latency_ms;
    root["edge"] = std::move(e);
  }
  return root.dump(2) + "\n";
}

void save_profile_file(const std::filesystem::path &path,
                       const ProfileFile &profile) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ParseError("cannot write '" + path.string() + "'");
  out << profile_to_json(profile);
}

namespace {

double parse_csv_double(std::string_view field, int line,
                        const char *what) {
  double value = 0.0;
  const char *first = field.data();
  const char *last = field.data() + field.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(value))
    throw ParseError(std::string(what) + " '" + std::string(field) +
                         "' is not a finite number",
                     line);
  return value;
}

} // namespace

TraceTable parse_trace_csv(const std::string &text) {
  TraceTable table;
  if (text.empty())
    return table;

  // (block key, freq) -> (latency sum, count); key 0 holds `total` rows.
  std::map<int, std::map<double, std::pair<double, long>>> acc;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    if (!saw_header) {
      if (line != "block,freq_ghz,latency_ms")
        throw ParseError("expected header 'block,freq_ghz,latency_ms'",
                         lineno);
      saw_header = true;
      continue;
    }

    std::string_view rest(line);
    std::string_view fields[3];
    for (int i = 0; i < 3; ++i) {
      const size_t comma = rest.find(',');
      if (i < 2) {
        if (comma == std::string_view::npos)
          throw ParseError("expected 3 comma-separated fields", lineno);
        fields[i] = rest.substr(0, comma);
        rest.remove_prefix(comma + 1);
      } else {
        if (comma != std::string_view::npos)
          throw ParseError("expected 3 comma-separated fields", lineno);
        fields[i] = rest;
      }
    }

    int key = 0;
    if (fields[0] != "total") {
      int idx = 0;
      auto res = std::from_chars(fields[0].data(),
                                 fields[0].data() + fields[0].size(), idx);
      if (res.ec != std::errc{} ||
          res.ptr != fields[0].data() + fields[0].size() || idx < 1)
        throw ParseError("block '" + std::string(fields[0]) +
                             "' is neither a 1-based index nor 'total'",
                         lineno);
      key = idx;
    }
    const double freq = parse_csv_double(fields[1], lineno, "freq_ghz");
    if (!(freq > 0.0))
      throw ParseError("freq_ghz must be positive", lineno);
    const double latency = parse_csv_double(fields[2], lineno, "latency_ms");
    if (latency < 0.0)
      throw ParseError("latency_ms must be nonnegative", lineno);

    auto &cell = acc[key][freq];
    cell.first += latency;
    cell.second += 1;
  }

  for (const auto &[key, by_freq] : acc) {
    TraceSeries series;
    series.points.reserve(by_freq.size());
    for (const auto &[freq, sum_count] : by_freq)
      series.points.push_back(
          {freq, sum_count.first / static_cast<double>(sum_count.second)});
    if (key == 0)
      table.total = std::move(series);
    else
      table.blocks.emplace(key, std::move(series));
  }
  return table;
}

TraceTable load_trace_csv(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_trace_csv(buf.str());
}

} // namespace dvfsinfer
