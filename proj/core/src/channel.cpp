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

#include "fmcwdb/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fmcwdb/fft.hpp"

namespace fmcwdb {

void LegParams::validate() const {
  if (!(distance >= 0.0) || !std::isfinite(distance)) throw InvalidConfig("distance", "must be >= 0");
  if (!(extra_delay >= 0.0) || !std::isfinite(extra_delay)) throw InvalidConfig("extra_delay", "must be >= 0");
  if (!std::isfinite(gain_db)) throw InvalidConfig("gain_db", "must be finite");
}

WaveformBuffer propagate(const WaveformBuffer& w, const LegParams& leg) {
  leg.validate();
  WaveformBuffer out = w;
  out.t0 = w.t0 + leg.delay();
  if (leg.gain_db != 0.0) {
    const double g = db_to_amplitude(leg.gain_db);
    for (auto& s : out.samples) s *= g;
  }
  return out;
}

WaveformBuffer resample_onto_grid(const WaveformBuffer& w, double grid_t0, std::size_t n_out, DelayMode mode) {
  WaveformBuffer out;
  out.fs = w.fs;
  out.t0 = grid_t0;
  out.samples.assign(n_out, Sample{});
  if (w.empty() || n_out == 0) return out;

  // out[m] = w(m - delay), delay in samples of the source relative to the grid.
  const double delay = (w.t0 - grid_t0) * w.fs;
  const double whole = std::round(delay);
  double frac = delay - whole;
  const auto shift = static_cast<long long>(whole);
  if (mode == DelayMode::nearest_sample || std::abs(frac) < 1e-9) frac = 0.0;

  const auto len = static_cast<long long>(w.size());
  if (frac == 0.0) {
    for (long long m = 0; m < static_cast<long long>(n_out); ++m) {
      const long long j = m - shift;
      if (j >= 0 && j < len) out.samples[static_cast<std::size_t>(m)] = w.samples[static_cast<std::size_t>(j)];
    }
    return out;
  }

  // Zero-padded to at least twice the input so the interpolation kernel tails
  // land in the padding instead of wrapping onto the signal.
  const std::size_t fft_len = next_pow2(2 * w.size() + 64);
  const auto M = static_cast<long long>(fft_len);
  std::vector<Sample> buf(fft_len);
  std::copy(w.samples.begin(), w.samples.end(), buf.begin());
  fft_inplace(buf, false);
  for (long long k = 0; k < M; ++k) {
    const long long kk = (k < M / 2) ? k : k - M;
    const double ph = -2.0 * std::numbers::pi * static_cast<double>(kk) * frac / static_cast<double>(M);
    buf[static_cast<std::size_t>(k)] *= Sample{std::cos(ph), std::sin(ph)};
  }
  fft_inplace(buf, true);
  const double scale = 1.0 / static_cast<double>(M);

  const long long lead = (M - len) / 2;  // padding attributed to times before the signal
  for (long long m = 0; m < static_cast<long long>(n_out); ++m) {
    const long long j = m - shift;
    if (j < -lead || j >= len + lead) continue;
    const long long idx = ((j % M) + M) % M;
    out.samples[static_cast<std::size_t>(m)] = buf[static_cast<std::size_t>(idx)] * scale;
  }
  return out;
}

WaveformBuffer add_noise(const WaveformBuffer& w, const NoiseSpec& spec, double reference_power) {
  if (!spec.enabled()) return w;
  if (!(reference_power > 0.0)) throw InvalidConfig("reference_power", "must be positive");
  const double variance = reference_power / db_to_power(spec.snr_db);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
  WaveformBuffer out = w;
  for (auto& s : out.samples) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    s += Sample{re, im};
  }
  return out;
}

double on_sample_power(const WaveformBuffer& clean, const FrameLayout& layout, std::span<const SlotBit> slot_bits) {
  if (slot_bits.size() != layout.n_slots()) throw std::invalid_argument("slot_bits length does not match layout");
  if (clean.size() < layout.total_samples()) throw std::invalid_argument("waveform shorter than layout");
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t s = 0; s < layout.n_slots(); ++s) {
    if (slot_bits[s] == SlotBit::zero) continue;
    for (std::size_t n = layout.slot_begin(s); n < layout.slot_end(s); ++n) {
      acc += std::norm(clean.samples[n]);
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("no on-slots in layout");
  return acc / static_cast<double>(count);
}

}  // namespace fmcwdb
