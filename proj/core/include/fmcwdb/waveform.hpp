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
#include <span>
#include <vector>

#include "fmcwdb/common.hpp"

namespace fmcwdb {

/// Complex-baseband sample sequence. Sample n sits at time t0 + n/fs.
struct WaveformBuffer {
  std::vector<Sample> samples;
  double fs = 0.0;
  double t0 = 0.0;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
  double duration() const noexcept { return static_cast<double>(samples.size()) / fs; }
  double time_at(std::size_t n) const noexcept { return t0 + static_cast<double>(n) / fs; }

  /// Throws InvalidConfig when fs is not positive or a sample is not finite.
  void validate() const;
};

/// Linear up-chirp parameters. Baseband is taken relative to f0, so the
/// generated sweep runs from 0 Hz to f_bw; f0 is carried for reporting.
struct ChirpConfig {
  double f0 = 2.4e9;
  double f_bw = 100e6;
  double T = 10e-6;
  double fs = 400e6;

  /// fs = kDefaultOversampling * f_bw.
  static ChirpConfig with_default_rate(double f0, double f_bw, double T);

  double sweep_rate() const noexcept { return f_bw / T; }

  /// ceil(T * fs), tolerant of representation error in the product.
  std::size_t sample_count() const;

  void validate() const;
};

inline constexpr double kDefaultOversampling = 4.0;
inline constexpr std::size_t kDefaultPreambleSlots = 4;

enum class SlotKind : std::uint8_t { preamble, challenge, response, idle };

struct SlotRole {
  SlotKind kind = SlotKind::idle;
  std::size_t index = 0;  // round for challenge/response, position for preamble
};

/// Per-slot keying instruction for the OOK modulator.
enum class SlotBit : std::uint8_t { zero, one, transparent };

/// Slot structure of one chirp: preamble slots, then alternating
/// challenge/response slots. A leftover odd slot is tagged idle.
class FrameLayout {
 public:
  static FrameLayout make(const ChirpConfig& cfg, double t_b,
                          std::size_t preamble_slots = kDefaultPreambleSlots);

  double t_b() const noexcept { return t_b_; }
  double fs() const noexcept { return fs_; }
  std::size_t n_slots() const noexcept { return roles_.size(); }
  std::size_t preamble_slots() const noexcept { return preamble_slots_; }
  std::size_t pair_count() const noexcept { return pair_count_; }
  std::size_t total_samples() const noexcept { return bounds_.back(); }
  const std::vector<SlotRole>& slot_map() const noexcept { return roles_; }

  std::size_t challenge_slot(std::size_t round) const;
  std::size_t response_slot(std::size_t round) const;

  /// Sample range [begin, end) of a slot, relative to the frame start.
  std::size_t slot_begin(std::size_t slot) const;
  std::size_t slot_end(std::size_t slot) const;
  std::size_t slot_length(std::size_t slot) const { return slot_end(slot) - slot_begin(slot); }

  std::size_t slot_of_sample(std::size_t n) const;

 private:
  double t_b_ = 0.0;
  double fs_ = 0.0;
  std::size_t preamble_slots_ = 0;
  std::size_t pair_count_ = 0;
  std::vector<SlotRole> roles_;
  std::vector<std::size_t> bounds_;  // n_slots + 1 entries
};

/// Fixed synchronisation pattern 1,0,1,1 (cycled if more slots are requested).
BitVector preamble_pattern(std::size_t slots);

WaveformBuffer generate_chirp(const ChirpConfig& cfg);

/// Absolute instantaneous frequency f0 + k t. Throws std::out_of_range
/// outside [0, T].
double instantaneous_frequency(const ChirpConfig& cfg, double t);

/// Bit 1 and transparent slots pass unchanged; bit 0 scales the slot by
/// (1 - modulation_index).
WaveformBuffer ook_modulate(const WaveformBuffer& chirp, const FrameLayout& layout,
                            std::span<const SlotBit> slot_bits, double modulation_index);

/// Slot keying for an interrogation: preamble pattern, challenge bits, and
/// transparent response slots.
std::vector<SlotBit> interrogation_slot_bits(const FrameLayout& layout, const BitVector& challenges);

/// Verifier transmit waveform. The preamble is always keyed at full depth;
/// challenge slots use `modulation_index`.
WaveformBuffer build_interrogation(const ChirpConfig& cfg, const FrameLayout& layout,
                                   const BitVector& challenges, double modulation_index = 1.0);

}  // namespace fmcwdb
