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
#ifndef DVFSINFER_TEST_SUPPORT_HPP
#define DVFSINFER_TEST_SUPPORT_HPP

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "dvfsinfer/profile.hpp"
#include "dvfsinfer/profile_io.hpp"

namespace test_support {

inline std::filesystem::path data_dir() {
  if (const char *env = std::getenv("DVFSINFER_DATA"))
    return env;
#ifdef DVFSINFER_DATA_DIR
  return DVFSINFER_DATA_DIR;
#else
  return "data";
#endif
}

inline dvfsinfer::ProfileFile load_data_profile(const std::string &name) {
  return dvfsinfer::load_profile_file(data_dir() / name);
}

inline dvfsinfer::ProfileFile alexnet() {
  return load_data_profile("alexnet_xavier_nx.json");
}
inline dvfsinfer::ProfileFile resnet152() {
  return load_data_profile("resnet152_xavier_nx.json");
}
inline dvfsinfer::ProfileFile toy() {
  return load_data_profile("toy_partition.json");
}

inline double uniform(std::mt19937 &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937 &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

struct RandomInstance {
  dvfsinfer::NetworkProfile net;
  dvfsinfer::DeviceProfile dev;
  dvfsinfer::EdgeProfile edge;
};

/// Random but always-valid planning instance: <= 12 blocks, <= 32 scale
/// frequencies, cpu-dvfs models and feature sizes everywhere so both
/// families and both planners apply.
inline RandomInstance random_instance(std::mt19937 &rng) {
  RandomInstance inst;

  const int blocks = uniform_int(rng, 1, 12);
  inst.net.name = "random-net";
  inst.net.input_bytes = uniform(rng, 1e4, 2e6);
  for (int i = 0; i < blocks; ++i) {
    dvfsinfer::BlockProfile blk;
    blk.name = "block" + std::to_string(i + 1);
    blk.flops = uniform(rng, 0.0, 1e9);
    blk.output_bytes = uniform(rng, 0.0, 2e6);
    blk.model.a = uniform(rng, 0.01, 5.0);
    blk.model.b = uniform(rng, 0.3, 2.5);
    blk.model.c = uniform(rng, 0.0, 10.0);
    blk.cpu_dvfs = dvfsinfer::CpuDvfsModel{uniform(rng, 0.05, 5.0)};
    inst.net.blocks.push_back(blk);
  }

  inst.dev.name = "random-device";
  const int freqs = uniform_int(rng, 2, 32);
  std::vector<double> scale;
  while (static_cast<int>(scale.size()) < freqs) {
    const double f = uniform(rng, 0.1, 2.0);
    if (std::find(scale.begin(), scale.end(), f) == scale.end())
      scale.push_back(f);
  }
  std::sort(scale.begin(), scale.end());
  inst.dev.freq_scale_ghz = scale;
  inst.dev.kappa.kappa = uniform(rng, 0.2, 3.0);
  inst.dev.tx_power_w = uniform(rng, 0.1, 2.0);

  inst.edge.name = "random-edge";
  for (int i = 0; i < blocks; ++i)
    inst.edge.block_latency_ms.push_back(uniform(rng, 0.01, 20.0));

  return inst;
}

} // namespace test_support

#endif // DVFSINFER_TEST_SUPPORT_HPP
