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
#ifndef DVFSINFER_MODELS_HPP
#define DVFSINFER_MODELS_HPP

#include <cmath>
#include <stdexcept>

namespace dvfsinfer {

/// Internal units, fixed across the whole library: frequency in GHz,
/// latency in ms, energy in J, data sizes in bytes (1 MB = 1e6 bytes),
/// rates in Mbps (1e6 bit/s). Conversions happen only at evaluation
/// boundaries, never inside stored parameters.

/// GPU clock frequency in GHz. Must be positive wherever it is evaluated.
struct Frequency {
  double ghz = 0.0;
};

/// Latency model t(f) = a * f^-b + c, with t in ms and f in GHz.
///
/// `a` acts like a workload term (ms*GHz^b), `b` captures how strongly
/// latency reacts to frequency, and `c` is the frequency-independent floor
/// that dominates once memory access speed takes over at high clocks.
/// Admissible ranges: a >= 0, c >= 0, 0 < b <= 4 (zero a or c appears at
/// fit boundaries).
struct PowerLawModel {
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;
};

/// Classic frequency-inverse latency model t(f) = coeff / f, the shape the
/// CPU-DVFS literature assumes. `coeff` is in ms*GHz; when built from a
/// workload it equals flops / flops_per_cycle converted to those units.
struct CpuDvfsModel {
  double coeff = 0.0;

  /// coeff = (flops / flops_per_cycle) cycles, expressed in ms*GHz.
  static CpuDvfsModel from_workload(double flops, double flops_per_cycle) {
    if (flops < 0.0 || flops_per_cycle <= 0.0)
      throw std::domain_error("workload requires flops >= 0 and flops_per_cycle > 0");
    // cycles / (f GHz * 1e9 Hz) seconds = cycles * 1e-6 / f ms
    return CpuDvfsModel{flops / flops_per_cycle * 1e-6};
  }
};

/// Equivalent dynamic-energy coefficient kappa in W/GHz^3: dynamic power at
/// frequency f is kappa * f^3 watts. Activity factor, capacitance and the
/// voltage-frequency proportionality are all absorbed into kappa.
struct EnergyCoefficient {
  double kappa = 0.0;
};

/// Which latency model family an aggregate prediction or plan should use.
enum class ModelFamily { PowerLaw, CpuDvfs };

inline double predict_power_law(const PowerLawModel &m, Frequency f) {
  if (!(f.ghz > 0.0))
    throw std::domain_error("frequency must be positive");
  return m.a * std::pow(f.ghz, -m.b) + m.c;
}

inline double predict_cpu_dvfs(const CpuDvfsModel &m, Frequency f) {
  if (!(f.ghz > 0.0))
    throw std::domain_error("frequency must be positive");
  return m.coeff / f.ghz;
}

/// Energy in J spent running for `latency_ms` at frequency `f`.
inline double predict_energy(EnergyCoefficient kappa, Frequency f,
                             double latency_ms) {
  if (!(f.ghz > 0.0))
    throw std::domain_error("frequency must be positive");
  if (latency_ms < 0.0)
    throw std::domain_error("latency must be nonnegative");
  return kappa.kappa * f.ghz * f.ghz * f.ghz * (latency_ms * 1e-3);
}

/// predict_energy composed with the latency model; algebraically
/// kappa * (a * f^(3-b) + c * f^3) * 1e-3.
inline double energy_at_frequency(const PowerLawModel &m,
                                  EnergyCoefficient kappa, Frequency f) {
  return predict_energy(kappa, f, predict_power_law(m, f));
}

} // namespace dvfsinfer

#endif // DVFSINFER_MODELS_HPP
