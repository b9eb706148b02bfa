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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "dvfsinfer/errors.hpp"
#include "dvfsinfer/profile.hpp"
#include "dvfsinfer/profile_io.hpp"
#include "test_support.hpp"

using namespace dvfsinfer;

namespace {

bool has_code(const std::vector<ValidationIssue> &issues,
              const std::string &code) {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue &i) { return i.code == code; });
}

NetworkProfile random_network(std::mt19937 &rng, int max_blocks = 10) {
  NetworkProfile net;
  net.name = "net";
  net.input_bytes = test_support::uniform(rng, 0.0, 1e6);
  const int blocks = test_support::uniform_int(rng, 1, max_blocks);
  for (int i = 0; i < blocks; ++i) {
    BlockProfile blk;
    blk.name = "b" + std::to_string(i + 1);
    blk.flops = test_support::uniform(rng, 0.0, 1e9);
    if (test_support::uniform_int(rng, 0, 1))
      blk.output_bytes = test_support::uniform(rng, 0.0, 1e6);
    blk.model = {test_support::uniform(rng, 0.0, 8.0),
                 test_support::uniform(rng, 0.1, 4.0),
                 test_support::uniform(rng, 0.0, 20.0)};
    if (test_support::uniform_int(rng, 0, 1))
      blk.cpu_dvfs = CpuDvfsModel{test_support::uniform(rng, 0.01, 10.0)};
    net.blocks.push_back(blk);
  }
  return net;
}

} // namespace

TEST_CASE("shipped profiles evaluate to the hand-summed totals at 1 GHz") {
  const ProfileFile alex = test_support::alexnet();
  const ProfileFile res = test_support::resnet152();
  CHECK(total_latency(*alex.network, Frequency{1.0}) ==
        doctest::Approx(10.4205).epsilon(1e-12));
  CHECK(total_latency(*res.network, Frequency{1.0}) ==
        doctest::Approx(118.8414).epsilon(1e-12));

  // single-block network degenerates to the block model
  NetworkProfile one;
  one.blocks.push_back(alex.network->blocks[0]);
  CHECK(total_latency(one, Frequency{0.5}) ==
        predict_power_law(alex.network->blocks[0].model, Frequency{0.5}));
}

TEST_CASE("prefix latency") {
  const ProfileFile alex = test_support::alexnet();
  const NetworkProfile &net = *alex.network;
  CHECK(prefix_latency(net, 0, Frequency{1.0}) == 0.0);
  CHECK(prefix_latency(net, 2, Frequency{1.0}) ==
        doctest::Approx(0.8610).epsilon(1e-12));
  CHECK(prefix_latency(net, net.block_count(), Frequency{1.0}) ==
        total_latency(net, Frequency{1.0}));
  CHECK_THROWS_AS(prefix_latency(net, -1, Frequency{1.0}), std::out_of_range);
  CHECK_THROWS_AS(prefix_latency(net, net.block_count() + 1, Frequency{1.0}),
                  std::out_of_range);
}

TEST_CASE("prefix energy") {
  const ProfileFile alex = test_support::alexnet();
  const ProfileFile res = test_support::resnet152();
  CHECK(prefix_energy(*alex.network, *alex.device, 0, Frequency{1.0}) == 0.0);
  CHECK(prefix_energy(*alex.network, *alex.device, 8, Frequency{1.0}) ==
        doctest::Approx(0.01354665).epsilon(1e-12));
  // 1.3 * 0.5^3 * total(0.5 GHz) * 1e-3, checked against high-precision
  // arithmetic
  CHECK(prefix_energy(*res.network, *res.device, 9, Frequency{0.5}) ==
        doctest::Approx(0.026588414216001469).epsilon(1e-12));
}

TEST_CASE("prefix latency is additive and nondecreasing in m") {
  std::mt19937 rng(23);
  for (int iter = 0; iter < 200; ++iter) {
    const NetworkProfile net = random_network(rng);
    const Frequency f{test_support::uniform(rng, 0.05, 2.0)};
    const int m2 = test_support::uniform_int(rng, 0, net.block_count());
    const int m1 = test_support::uniform_int(rng, 0, m2);
    const double p1 = prefix_latency(net, m1, f);
    const double p2 = prefix_latency(net, m2, f);
    CHECK(p1 <= p2);
    const double segment = p2 - p1;
    CHECK(p1 + segment == doctest::Approx(p2).epsilon(1e-9));
  }
}

TEST_CASE("total latency decreases in frequency when every block has a > 0") {
  std::mt19937 rng(29);
  for (int iter = 0; iter < 200; ++iter) {
    NetworkProfile net = random_network(rng);
    for (BlockProfile &blk : net.blocks)
      blk.model.a = test_support::uniform(rng, 1e-3, 8.0);
    double f1 = test_support::uniform(rng, 0.05, 2.0);
    double f2 = test_support::uniform(rng, 0.05, 2.0);
    if (f1 == f2)
      continue;
    if (f1 > f2)
      std::swap(f1, f2);
    CHECK(total_latency(net, Frequency{f2}) < total_latency(net, Frequency{f1}));
  }
}

TEST_CASE("validation accepts the shipped profiles") {
  const ProfileFile alex = test_support::alexnet();
  const ValidationReport report =
      validate_profile(*alex.network, *alex.device);
  CHECK(report.ok());
  // shipped device file carries no transmit power on purpose
  CHECK(has_code(report.warnings, "tx_power_defaulted"));

  const ProfileFile toy = test_support::toy();
  const ValidationReport toy_report =
      validate_profile(*toy.network, *toy.device, &*toy.edge);
  CHECK(toy_report.ok());
  CHECK(toy_report.warnings.empty());
}

TEST_CASE("validation flags every broken invariant") {
  ProfileFile p = test_support::alexnet();
  NetworkProfile net = *p.network;
  DeviceProfile dev = *p.device;

  net.blocks[2].model.b = 5.0;
  net.blocks[4].model.a = -0.1;
  net.blocks[5].model.c = -2.0;
  net.blocks[1].flops = -1.0;
  net.input_bytes = -5.0;
  dev.kappa.kappa = 0.0;
  dev.tx_power_w = 0.0;

  EdgeProfile edge;
  edge.name = "edge";
  edge.block_latency_ms = {1.0, 2.0}; // wrong length for 8 blocks

  const ValidationReport report = validate_profile(net, dev, &edge);
  CHECK_FALSE(report.ok());
  CHECK(has_code(report.violations, "exponent_out_of_bounds"));
  CHECK(has_code(report.violations, "workload_coefficient_negative"));
  CHECK(has_code(report.violations, "latency_floor_negative"));
  CHECK(has_code(report.violations, "flops_negative"));
  CHECK(has_code(report.violations, "input_bytes_negative"));
  CHECK(has_code(report.violations, "kappa_nonpositive"));
  CHECK(has_code(report.violations, "tx_power_nonpositive"));
  CHECK(has_code(report.violations, "edge_block_length_mismatch"));

  DeviceProfile bad_scale = *p.device;
  bad_scale.freq_scale_ghz = {0.5, 0.5};
  CHECK(has_code(validate_profile(*p.network, bad_scale).violations,
                 "freq_scale_not_increasing"));
  bad_scale.freq_scale_ghz = {};
  CHECK(has_code(validate_profile(*p.network, bad_scale).violations,
                 "freq_scale_empty"));
  bad_scale.freq_scale_ghz = {0.0, 0.5};
  CHECK(has_code(validate_profile(*p.network, bad_scale).violations,
                 "freq_scale_nonpositive"));

  NetworkProfile empty;
  empty.name = "empty";
  CHECK(has_code(validate_profile(empty, *p.device).violations,
                 "blocks_empty"));
}

TEST_CASE("profile JSON round-trips every prediction exactly") {
  std::mt19937 rng(31);
  for (int iter = 0; iter < 50; ++iter) {
    ProfileFile original;
    original.network = random_network(rng);
    DeviceProfile dev;
    dev.name = "dev";
    dev.freq_scale_ghz = uniform_frequency_scale(
        test_support::uniform(rng, 0.05, 0.3),
        test_support::uniform(rng, 0.8, 2.0),
        test_support::uniform_int(rng, 2, 20));
    dev.kappa.kappa = test_support::uniform(rng, 0.1, 3.0);
    if (test_support::uniform_int(rng, 0, 1))
      dev.tx_power_w = test_support::uniform(rng, 0.1, 3.0);
    original.device = dev;
    EdgeProfile edge;
    edge.name = "edge";
    for (int i = 0; i < original.network->block_count(); ++i)
      edge.block_latency_ms.push_back(test_support::uniform(rng, 0.0, 30.0));
    original.edge = edge;

    const ProfileFile reread = parse_profile_json(profile_to_json(original));
    REQUIRE(reread.network);
    REQUIRE(reread.device);
    REQUIRE(reread.edge);
    CHECK(reread.edge->block_latency_ms == edge.block_latency_ms);
    CHECK(reread.device->freq_scale_ghz == dev.freq_scale_ghz);
    CHECK(reread.device->tx_power_w == dev.tx_power_w);

    for (int trial = 0; trial < 5; ++trial) {
      const Frequency f{test_support::uniform(rng, 0.05, 2.0)};
      const double before = total_latency(*original.network, f);
      const double after = total_latency(*reread.network, f);
      CHECK(std::fabs(before - after) <= 1e-12 * std::fabs(before));
      const int m = test_support::uniform_int(
          rng, 0, original.network->block_count());
      CHECK(prefix_energy(*original.network, *original.device, m, f) ==
            prefix_energy(*reread.network, *reread.device, m, f));
    }

    // serialization is a fixed point after the first normalization
    CHECK(profile_to_json(reread) == profile_to_json(original));
  }
}

TEST_CASE("profile parser is strict") {
  CHECK_THROWS_AS(parse_profile_json("not json"), ParseError);
  CHECK_THROWS_AS(parse_profile_json("[]"), ParseError);
  CHECK_THROWS_AS(parse_profile_json(R"({"bogus": {}})"), ParseError);
  CHECK_THROWS_AS(
      parse_profile_json(R"({"device": {"name": "d"}})"), ParseError);
  CHECK_THROWS_AS(
      parse_profile_json(
          R"({"network": {"name": "n", "input_bytes": "many", "blocks": []}})"),
      ParseError);
  // unknown key inside a block
  CHECK_THROWS_AS(parse_profile_json(R"({"network": {"name": "n",
    "input_bytes": 1, "blocks": [{"name": "b", "flops": 0,
    "model": {"a": 1, "b": 1, "c": 0}, "extra": 3}]}})"),
                  ParseError);
  // model must have exactly a, b, c
  CHECK_THROWS_AS(parse_profile_json(R"({"network": {"name": "n",
    "input_bytes": 1, "blocks": [{"name": "b", "flops": 0,
    "model": {"a": 1, "b": 1}}]}})"),
                  ParseError);
}

TEST_CASE("trace CSV parsing averages repeats and keys series") {
  const std::string csv = "block,freq_ghz,latency_ms\n"
                          "1,0.5,4.0\n"
                          "1,0.5,6.0\n"
                          "1,1.0,2.0\n"
                          "2,0.5,7.5\n"
                          "total,0.5,12.0\n";
  const TraceTable table = parse_trace_csv(csv);
  REQUIRE(table.blocks.count(1) == 1);
  REQUIRE(table.blocks.count(2) == 1);
  REQUIRE(table.total);
  const TraceSeries &b1 = table.blocks.at(1);
  REQUIRE(b1.points.size() == 2);
  CHECK(b1.points[0].freq_ghz == 0.5);
  CHECK(b1.points[0].latency_ms == 5.0); // (4 + 6) / 2
  CHECK(b1.points[1].latency_ms == 2.0);
  CHECK(table.total->points.size() == 1);
  CHECK(table.total->points[0].latency_ms == 12.0);
}

TEST_CASE("trace CSV errors carry line numbers") {
  CHECK(parse_trace_csv("").empty());
  CHECK(parse_trace_csv("block,freq_ghz,latency_ms\n").empty());

  try {
    parse_trace_csv("freq,latency\n1,2\n");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 1);
  }
  try {
    parse_trace_csv("block,freq_ghz,latency_ms\n1,0.5\n");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
  }
  try {
    parse_trace_csv("block,freq_ghz,latency_ms\n1,0.5,1.0\nzero,1.0,1.0\n");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_trace_csv("block,freq_ghz,latency_ms\n1,0,1.0\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_trace_csv("block,freq_ghz,latency_ms\n1,0.5,-1\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_trace_csv("block,freq_ghz,latency_ms\n0,0.5,1\n"),
                  ParseError);
}

TEST_CASE("uniform frequency scale hits both endpoints") {
  const std::vector<double> scale = uniform_frequency_scale(0.12, 1.10, 15);
  REQUIRE(scale.size() == 15);
  CHECK(scale.front() == 0.12);
  CHECK(scale.back() == 1.10);
  for (size_t i = 1; i < scale.size(); ++i)
    CHECK(scale[i] > scale[i - 1]);
  CHECK(scale[1] == doctest::Approx(0.19).epsilon(1e-12));
  CHECK_THROWS_AS(uniform_frequency_scale(0.5, 0.4, 3), std::domain_error);
}
