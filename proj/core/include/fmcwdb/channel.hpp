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

#include <cstdint>
#include <limits>
#include <span>

#include "fmcwdb/waveform.hpp"

namespace fmcwdb {

/// One-way propagation leg.
struct LegParams {
  double distance = 0.0;     // m
  double gain_db = 0.0;      // amplitude gain
  double extra_delay = 0.0;  // s, e.g. relay hardware latency

  double delay() const noexcept { return distance / kSpeedOfLight + extra_delay; }
  void validate() const;
};

/// Receiver-referred AWGN. An infinite snr_db disables noise.
struct NoiseSpec {
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;

  static NoiseSpec disabled() { return {}; }
  bool enabled() const noexcept { return std::isfinite(snr_db); }
};

/// Delays by distance/c + extra_delay and scales by 10^(gain_db/20). The
/// buffer represents a continuous band-limited signal, so the delay is
/// carried exactly in t0 and the samples are only scaled.
WaveformBuffer propagate(const WaveformBuffer& w, const LegParams& leg);

enum class DelayMode : std::uint8_t {
  exact,           // frequency-domain linear phase ramp
  nearest_sample,  // integer shift only
};

/// Re-expresses `w` on the grid grid_t0 + n/fs, n in [0, n_out). Times not
/// covered by `w` read as zero. This is where fractional delays are
/// realised.
WaveformBuffer resample_onto_grid(const WaveformBuffer& w, double grid_t0, std::size_t n_out,
                                  DelayMode mode = DelayMode::exact);

/// Adds circularly-symmetric complex Gaussian noise with per-sample variance
/// reference_power / 10^(snr_db/10). Deterministic for a given seed.
WaveformBuffer add_noise(const WaveformBuffer& w, const NoiseSpec& spec, double reference_power);

/// Mean |s|^2 over samples in bit-1 and transparent slots.
double on_sample_power(const WaveformBuffer& clean, const FrameLayout& layout,
                       std::span<const SlotBit> slot_bits);

}  // namespace fmcwdb
