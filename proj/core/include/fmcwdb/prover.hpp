// SPDX-License-Identifier: Apache-2.0
//
// fmcwdb: OOK-FMCW distance-bounding simulator
// Copyright (C) 2026 The fmcwdb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <cstdint>

#include "fmcwdb/channel.hpp"
#include "fmcwdb/waveform.hpp"

namespace fmcwdb {

/// Energy-detection threshold sits `threshold_db` below the calibrated
/// noiseless bit-1 slot energy. The default is 6 dB; attack analyses use the
/// half-energy (3.01 dB) variant.
inline constexpr double kDefaultThresholdDb = 6.0;

struct EnergyDetectorConfig {
  double threshold_db = kDefaultThresholdDb;
  double reference_energy = 0.0;

  double threshold_ratio() const { return std::pow(10.0, -threshold_db / 10.0); }
  double threshold() const { return reference_energy * threshold_ratio(); }
  bool calibrated() const noexcept { return reference_energy > 0.0; }
};

/// Sum of |x|^2 over the slot's samples, shifted by `offset` samples into `w`.
double detect_slot_energy(const WaveformBuffer& w, const FrameLayout& layout, std::size_t slot,
                          std::ptrdiff_t offset = 0);

/// 1 iff energy >= threshold (ties decode as 1). Throws CalibrationError if
/// the detector has no reference.
std::uint8_t demodulate_slot(double energy, const EnergyDetectorConfig& det);

/// Derives the noiseless bit-1 reference from the preamble: mean energy of
/// the 1-slots minus the per-sample noise floor measured in the 0-slots.
EnergyDetectorConfig calibrate_detector(const WaveformBuffer& w, const FrameLayout& layout,
                                        double threshold_db = kDefaultThresholdDb, std::ptrdiff_t offset = 0);

enum class ResponseFunction : std::uint8_t { invert, xor_key, hk_register };

/// Keyed state for the response functions. `key` serves xor_key; `r0`/`r1`
/// are the two registers of hk_register.
struct ResponseSecret {
  BitVector key;
  BitVector r0;
  BitVector r1;
};

std::uint8_t compute_response(ResponseFunction fn, std::uint8_t challenge, std::size_t round,
                              const ResponseSecret& secret);

BitVector compute_responses(ResponseFunction fn, const BitVector& challenges, const ResponseSecret& secret);

enum class ProverBehavior : std::uint8_t {
  honest,
  early_response,  // also gates challenge slot i with r_i (distance-fraud attempt)
};

struct ProverConfig {
  double t_p = 19.5e-9;
  double reflect_gain_db = 0.0;
  double threshold_db = kDefaultThresholdDb;
  ResponseFunction response_fn = ResponseFunction::invert;
  ResponseSecret secret;
  ProverBehavior behavior = ProverBehavior::honest;

  /// Requires t_p <= t_b and registers sized to the layout.
  void validate(const FrameLayout& layout) const;
};

struct ProverOutput {
  WaveformBuffer tx;
  BitVector demodulated_challenges;
  BitVector responses;
};

/// Reflect-and-respond tag. Keeps the per-frame detector calibration of the
/// most recent exchange; use one instance per simulated exchange.
class Prover {
 public:
  explicit Prover(ProverConfig cfg) : cfg_(std::move(cfg)) {}

  /// `incident` is the field at the tag antenna. The detector sees it with
  /// receiver noise added; the reflection path carries the clean field.
  ProverOutput respond(const WaveformBuffer& incident, const FrameLayout& layout,
                       const NoiseSpec& noise = NoiseSpec::disabled(), double noise_reference_power = 1.0);

  const ProverConfig& config() const noexcept { return cfg_; }
  const EnergyDetectorConfig& detector() const noexcept { return detector_; }

 private:
  ProverConfig cfg_;
  EnergyDetectorConfig detector_;
};

}  // namespace fmcwdb
