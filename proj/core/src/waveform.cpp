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

#include "fmcwdb/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fmcwdb {

namespace {

// Rounds x to an integer when it is within 1e-6 of one, otherwise ceil.
std::size_t tolerant_ceil(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-6) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(x));
}

}  // namespace

void WaveformBuffer::validate() const {
  if (!(fs > 0.0) || !std::isfinite(fs)) throw InvalidConfig("fs", "sample rate must be positive");
  if (!std::isfinite(t0)) throw InvalidConfig("t0", "time origin must be finite");
  for (const auto& s : samples) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw InvalidConfig("samples", "non-finite sample value");
  }
}

ChirpConfig ChirpConfig::with_default_rate(double f0, double f_bw, double T) {
  return ChirpConfig{f0, f_bw, T, kDefaultOversampling * f_bw};
}

std::size_t ChirpConfig::sample_count() const { return tolerant_ceil(T * fs); }

void ChirpConfig::validate() const {
  if (!(f_bw > 0.0) || !std::isfinite(f_bw)) throw InvalidConfig("f_bw", "sweep bandwidth must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidConfig("T", "chirp duration must be positive");
  if (!std::isfinite(f0)) throw InvalidConfig("f0", "start frequency must be finite");
  if (!(fs >= 2.0 * f_bw)) throw InvalidConfig("fs", "sample rate must be at least 2*f_bw");
}

FrameLayout FrameLayout::make(const ChirpConfig& cfg, double t_b, std::size_t preamble_slots) {
  cfg.validate();
  if (!(t_b > 0.0) || !std::isfinite(t_b)) throw InvalidConfig("t_b", "slot period must be positive");
  if (t_b * cfg.fs < 1.0) throw InvalidConfig("t_b", "slot shorter than one sample");

  const double ratio = cfg.T / t_b;
  const auto n_slots = static_cast<std::size_t>(std::llround(ratio));
  if (std::abs(static_cast<double>(n_slots) * t_b - cfg.T) > 1.0 / cfg.fs)
    throw InvalidConfig("t_b", "slot period must divide the chirp duration");
  if (n_slots < preamble_slots + 2)
    throw InvalidConfig("t_b", "frame has no room for a challenge/response pair");

  FrameLayout layout;
  layout.t_b_ = t_b;
  layout.fs_ = cfg.fs;
  layout.preamble_slots_ = preamble_slots;
  layout.pair_count_ = (n_slots - preamble_slots) / 2;

  layout.roles_.resize(n_slots);
  for (std::size_t s = 0; s < n_slots; ++s) {
    if (s < preamble_slots) {
      layout.roles_[s] = {SlotKind::preamble, s};
    } else {
      const std::size_t k = s - preamble_slots;
      const std::size_t round = k / 2;
      if (round >= layout.pair_count_) {
        layout.roles_[s] = {SlotKind::idle, 0};
      } else {
        layout.roles_[s] = {k % 2 == 0 ? SlotKind::challenge : SlotKind::response, round};
      }
    }
  }

  const std::size_t total = cfg.sample_count();
  layout.bounds_.resize(n_slots + 1);
  for (std::size_t s = 0; s < n_slots; ++s) {
    const auto b = static_cast<std::size_t>(std::llround(static_cast<double>(s) * t_b * cfg.fs));
    layout.bounds_[s] = std::min(b, total);
  }
  layout.bounds_[n_slots] = total;
  return layout;
}

std::size_t FrameLayout::challenge_slot(std::size_t round) const {
  if (round >= pair_count_) throw std::out_of_range("challenge round out of range");
  return preamble_slots_ + 2 * round;
}

std::size_t FrameLayout::response_slot(std::size_t round) const {
  if (round >= pair_count_) throw std::out_of_range("response round out of range");
  return preamble_slots_ + 2 * round + 1;
}

std::size_t FrameLayout::slot_begin(std::size_t slot) const {
  if (slot >= n_slots()) throw std::out_of_range("slot index out of range");
  return bounds_[slot];
}

std::size_t FrameLayout::slot_end(std::size_t slot) const {
  if (slot >= n_slots()) throw std::out_of_range("slot index out of range");
  return bounds_[slot + 1];
}

std::size_t FrameLayout::slot_of_sample(std::size_t n) const {
  if (n >= total_samples()) throw std::out_of_range("sample index outside frame");
  const auto it = std::upper_bound(bounds_.begin(), bounds_.end(), n);
  return static_cast<std::size_t>(it - bounds_.begin()) - 1;
}

BitVector preamble_pattern(std::size_t slots) {
  static constexpr std::uint8_t kPattern[] = {1, 0, 1, 1};
  BitVector bits(slots);
  for (std::size_t i = 0; i < slots; ++i) bits[i] = kPattern[i % 4];
  return bits;
}

WaveformBuffer generate_chirp(const ChirpConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.sample_count();
  const double k = cfg.sweep_rate();
  WaveformBuffer out;
  out.fs = cfg.fs;
  out.t0 = 0.0;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / cfg.fs;
    // phase = 2*pi * integral of k*t dt
    const double phase = std::numbers::pi * k * t * t;
    out.samples[i] = {std::cos(phase), std::sin(phase)};
  }
  return out;
}

double instantaneous_frequency(const ChirpConfig& cfg, double t) {
  if (t < 0.0 || t > cfg.T) throw std::out_of_range("t outside [0, T]");
  return cfg.f0 + cfg.sweep_rate() * t;
}

WaveformBuffer ook_modulate(const WaveformBuffer& chirp, const FrameLayout& layout,
                            std::span<const SlotBit> slot_bits, double modulation_index) {
  if (slot_bits.size() != layout.n_slots())
    throw std::invalid_argument("slot_bits length " + std::to_string(slot_bits.size()) +
                                " does not match layout (" + std::to_string(layout.n_slots()) + " slots)");
  if (chirp.size() != layout.total_samples())
    throw std::invalid_argument("waveform length does not match layout");
  if (!(modulation_index > 0.0 && modulation_index <= 1.0))
    throw InvalidConfig("modulation_index", "must lie in (0, 1]");

  WaveformBuffer out = chirp;
  const double off_scale = 1.0 - modulation_index;
  for (std::size_t s = 0; s < layout.n_slots(); ++s) {
    if (slot_bits[s] != SlotBit::zero) continue;
    for (std::size_t n = layout.slot_begin(s); n < layout.slot_end(s); ++n) out.samples[n] *= off_scale;
  }
  return out;
}

std::vector<SlotBit> interrogation_slot_bits(const FrameLayout& layout, const BitVector& challenges) {
  if (challenges.size() != layout.pair_count())
    throw std::invalid_argument("challenge count " + std::to_string(challenges.size()) +
                                " does not match pair_count " + std::to_string(layout.pair_count()));
  const BitVector preamble = preamble_pattern(layout.preamble_slots());
  std::vector<SlotBit> bits(layout.n_slots(), SlotBit::transparent);
  for (std::size_t s = 0; s < layout.n_slots(); ++s) {
    const SlotRole role = layout.slot_map()[s];
    if (role.kind == SlotKind::preamble) {
      bits[s] = preamble[role.index] ? SlotBit::one : SlotBit::zero;
    } else if (role.kind == SlotKind::challenge) {
      bits[s] = challenges[role.index] ? SlotBit::one : SlotBit::zero;
    }
  }
  return bits;
}

WaveformBuffer build_interrogation(const ChirpConfig& cfg, const FrameLayout& layout,
                                   const BitVector& challenges, double modulation_index) {
  const std::vector<SlotBit> bits = interrogation_slot_bits(layout, challenges);

  // Preamble keyed at full depth, challenges at the requested index.
  std::vector<SlotBit> preamble_only(bits.size(), SlotBit::transparent);
  std::vector<SlotBit> payload_only(bits.size(), SlotBit::transparent);
  for (std::size_t s = 0; s < bits.size(); ++s) {
    (layout.slot_map()[s].kind == SlotKind::preamble ? preamble_only : payload_only)[s] = bits[s];
  }
  WaveformBuffer w = ook_modulate(generate_chirp(cfg), layout, preamble_only, 1.0);
  return ook_modulate(w, layout, payload_only, modulation_index);
}

}  // namespace fmcwdb
