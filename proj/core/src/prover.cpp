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

#include "fmcwdb/prover.hpp"

#include <stdexcept>
#include <string>

namespace fmcwdb {

double detect_slot_energy(const WaveformBuffer& w, const FrameLayout& layout, std::size_t slot,
                          std::ptrdiff_t offset) {
  if (slot >= layout.n_slots()) throw std::out_of_range("slot " + std::to_string(slot) + " outside layout");
  const auto begin = static_cast<std::ptrdiff_t>(layout.slot_begin(slot)) + offset;
  const auto end = static_cast<std::ptrdiff_t>(layout.slot_end(slot)) + offset;
  if (begin < 0 || end > static_cast<std::ptrdiff_t>(w.size()))
    throw std::out_of_range("slot " + std::to_string(slot) + " not covered by waveform");
  double e = 0.0;
  for (auto n = begin; n < end; ++n) e += std::norm(w.samples[static_cast<std::size_t>(n)]);
  return e;
}

std::uint8_t demodulate_slot(double energy, const EnergyDetectorConfig& det) {
  if (!det.calibrated()) throw CalibrationError("energy detector is not calibrated");
  return energy >= det.threshold() ? 1 : 0;
}

EnergyDetectorConfig calibrate_detector(const WaveformBuffer& w, const FrameLayout& layout, double threshold_db,
                                        std::ptrdiff_t offset) {
  const BitVector pattern = preamble_pattern(layout.preamble_slots());
  double one_energy = 0.0;
  double one_samples = 0.0;
  std::size_t ones = 0;
  double zero_energy = 0.0;
  double zero_samples = 0.0;
  for (std::size_t s = 0; s < layout.preamble_slots(); ++s) {
    const double e = detect_slot_energy(w, layout, s, offset);
    const auto len = static_cast<double>(layout.slot_length(s));
    if (pattern[s]) {
      one_energy += e;
      one_samples += len;
      ++ones;
    } else {
      zero_energy += e;
      zero_samples += len;
    }
  }
  if (ones == 0 || !(one_energy > 0.0)) throw CalibrationError("no preamble energy");
  const double noise_per_sample = zero_samples > 0.0 ? zero_energy / zero_samples : 0.0;
  const double reference = (one_energy - noise_per_sample * one_samples) / static_cast<double>(ones);
  if (!(reference > 0.0)) throw CalibrationError("preamble energy does not exceed the noise floor");
  return EnergyDetectorConfig{threshold_db, reference};
}

std::uint8_t compute_response(ResponseFunction fn, std::uint8_t challenge, std::size_t round,
                              const ResponseSecret& secret) {
  const std::uint8_t c = challenge ? 1 : 0;
  switch (fn) {
    case ResponseFunction::invert:
      return static_cast<std::uint8_t>(1 - c);
    case ResponseFunction::xor_key:
      if (round >= secret.key.size()) throw std::invalid_argument("xor_key: missing key bit for round");
      return static_cast<std::uint8_t>(c ^ (secret.key[round] ? 1 : 0));
    case ResponseFunction::hk_register: {
      const BitVector& reg = c ? secret.r1 : secret.r0;
      if (round >= reg.size()) throw std::invalid_argument("hk_register: missing register bit for round");
      return reg[round] ? 1 : 0;
    }
  }
  throw std::invalid_argument("unknown response function");
}

BitVector compute_responses(ResponseFunction fn, const BitVector& challenges, const ResponseSecret& secret) {
  BitVector r(challenges.size());
  for (std::size_t i = 0; i < challenges.size(); ++i) r[i] = compute_response(fn, challenges[i], i, secret);
  return r;
}

void ProverConfig::validate(const FrameLayout& layout) const {
  if (!(t_p >= 0.0)) throw InvalidConfig("t_p", "processing delay must be >= 0");
  if (t_p > layout.t_b()) throw InvalidConfig("t_p", "processing delay exceeds slot period t_b");
  const std::size_t n = layout.pair_count();
  if (response_fn == ResponseFunction::xor_key && secret.key.size() < n)
    throw InvalidConfig("secret", "xor_key needs one key bit per round");
  if (response_fn == ResponseFunction::hk_register && (secret.r0.size() < n || secret.r1.size() < n))
    throw InvalidConfig("secret", "hk_register needs two registers of pair_count bits");
}

ProverOutput Prover::respond(const WaveformBuffer& incident, const FrameLayout& layout, const NoiseSpec& noise,
                             double noise_reference_power) {
  cfg_.validate(layout);
  if (incident.size() < layout.total_samples()) throw std::invalid_argument("incident field shorter than frame");

  const WaveformBuffer sensed = add_noise(incident, noise, noise_reference_power);
  detector_ = calibrate_detector(sensed, layout, cfg_.threshold_db);

  ProverOutput out;
  out.demodulated_challenges.resize(layout.pair_count());
  for (std::size_t i = 0; i < layout.pair_count(); ++i) {
    const double e = detect_slot_energy(sensed, layout, layout.challenge_slot(i));
    out.demodulated_challenges[i] = demodulate_slot(e, detector_);
  }
  out.responses = compute_responses(cfg_.response_fn, out.demodulated_challenges, cfg_.secret);

  out.tx = incident;
  const double g = db_to_amplitude(cfg_.reflect_gain_db);
  for (auto& s : out.tx.samples) s *= g;

  // Load modulation: gate response slots at full depth.
  auto gate = [&](std::size_t slot) {
    for (std::size_t n = layout.slot_begin(slot); n < layout.slot_end(slot); ++n) out.tx.samples[n] = Sample{};
  };
  for (std::size_t i = 0; i < layout.pair_count(); ++i) {
    if (out.responses[i]) continue;
    gate(layout.response_slot(i));
    if (cfg_.behavior == ProverBehavior::early_response) gate(layout.challenge_slot(i));
  }
  return out;
}

}  // namespace fmcwdb
