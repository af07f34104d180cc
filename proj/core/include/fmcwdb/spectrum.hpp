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

#include "fmcwdb/waveform.hpp"

namespace fmcwdb {

enum class Window : std::uint8_t { rectangular, hann };
enum class PeakInterpolation : std::uint8_t { none, parabolic };

struct SpectrumConfig {
  std::size_t fft_size = 0;  // 0: next_pow2(n) * zero_pad
  std::size_t zero_pad = 4;
  Window window = Window::rectangular;
  PeakInterpolation interpolation = PeakInterpolation::parabolic;
  double min_peak_snr_db = 15.0;  // peak-to-median floor below which no reflection is reported

  std::size_t resolve_fft_size(std::size_t n) const;
};

struct BeatEstimate {
  double f_delta = 0.0;
  double peak_snr_db = 0.0;
  std::size_t peak_bin = 0;
};

struct RangeEstimate {
  double f_delta = 0.0;     // Hz
  double distance = 0.0;    // m
  double resolution = 0.0;  // m
  double peak_snr_db = 0.0;
};

/// Complex mixing over the time overlap of two grid-aligned buffers:
/// tx_ref * conj(rx), whose tone sits at +k*tau for an echo delayed by tau.
WaveformBuffer dechirp(const WaveformBuffer& rx, const WaveformBuffer& tx_ref);

/// Frequency of the magnitude-spectrum peak in [0, fs/2). A peak in bin 0
/// reports 0 Hz. Throws NoPeakError when the peak-to-median ratio is below
/// `sc.min_peak_snr_db`.
BeatEstimate estimate_beat_frequency(const WaveformBuffer& if_sig, const SpectrumConfig& sc);

/// d = c * f_delta * T / (2 * f_bw)
double beat_to_distance(double f_delta, const ChirpConfig& cfg);

/// dR = c / (2 * f_bw)
double range_resolution(double f_bw);
inline double range_resolution(const ChirpConfig& cfg) { return range_resolution(cfg.f_bw); }

RangeEstimate make_range_estimate(const BeatEstimate& beat, const ChirpConfig& cfg);

/// Operational ranging limit: echoes delayed by up to `overlap_margin * T`
/// keep at least (1 - margin) of the chirp in the mixing overlap.
double max_unambiguous_distance(const ChirpConfig& cfg, double overlap_margin = 0.1);

/// c*T, kept for reporting only; it is not used as an operating limit.
double nominal_max_distance(const ChirpConfig& cfg);

}  // namespace fmcwdb
