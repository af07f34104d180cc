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

#include "fmcwdb/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fmcwdb/fft.hpp"

namespace fmcwdb {

std::size_t SpectrumConfig::resolve_fft_size(std::size_t n) const {
  if (fft_size != 0) {
    if (fft_size < n) throw InvalidConfig("fft_size", "must be >= number of samples analysed");
    if ((fft_size & (fft_size - 1)) != 0) throw InvalidConfig("fft_size", "must be a power of two");
    return fft_size;
  }
  return next_pow2(n) * std::max<std::size_t>(zero_pad, 1);
}

WaveformBuffer dechirp(const WaveformBuffer& rx, const WaveformBuffer& tx_ref) {
  if (rx.fs != tx_ref.fs) throw std::invalid_argument("dechirp: sample-rate mismatch");
  const double fs = rx.fs;
  const double lag = (rx.t0 - tx_ref.t0) * fs;
  const double whole = std::round(lag);
  if (std::abs(lag - whole) > 1e-6) throw std::invalid_argument("dechirp: buffers are not on a common sample grid");
  const auto shift = static_cast<long long>(whole);  // rx[n] sits at tx index n + shift

  const long long tx_len = static_cast<long long>(tx_ref.size());
  const long long rx_len = static_cast<long long>(rx.size());
  const long long begin = std::max<long long>(0, shift);
  const long long end = std::min(tx_len, shift + rx_len);
  if (end <= begin) throw std::invalid_argument("dechirp: buffers do not overlap in time");

  WaveformBuffer out;
  out.fs = fs;
  out.t0 = tx_ref.time_at(static_cast<std::size_t>(begin));
  out.samples.resize(static_cast<std::size_t>(end - begin));
  for (long long n = begin; n < end; ++n) {
    out.samples[static_cast<std::size_t>(n - begin)] =
        tx_ref.samples[static_cast<std::size_t>(n)] * std::conj(rx.samples[static_cast<std::size_t>(n - shift)]);
  }
  return out;
}

BeatEstimate estimate_beat_frequency(const WaveformBuffer& if_sig, const SpectrumConfig& sc) {
  if (if_sig.empty()) throw std::invalid_argument("estimate_beat_frequency: empty signal");
  const std::size_t n = if_sig.size();
  const std::size_t m = sc.resolve_fft_size(n);

  std::vector<Sample> buf(m);
  for (std::size_t i = 0; i < n; ++i) {
    double w = 1.0;
    if (sc.window == Window::hann && n > 1)
      w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
    buf[i] = if_sig.samples[i] * w;
  }
  fft_inplace(buf, false);

  const std::size_t half = m / 2;
  std::vector<double> mag2(m);
  for (std::size_t k = 0; k < m; ++k) mag2[k] = std::norm(buf[k]);

  const auto peak_it = std::max_element(mag2.begin(), mag2.begin() + static_cast<std::ptrdiff_t>(half));
  const auto peak = static_cast<std::size_t>(peak_it - mag2.begin());

  std::vector<double> search(mag2.begin(), mag2.begin() + static_cast<std::ptrdiff_t>(half));
  const auto mid = search.begin() + static_cast<std::ptrdiff_t>(half / 2);
  std::nth_element(search.begin(), mid, search.end());
  const double median = *mid;
  const double peak_snr_db =
      median > 0.0 ? 10.0 * std::log10(*peak_it / median) : (*peak_it > 0.0 ? 300.0 : 0.0);
  if (!(*peak_it > 0.0) || peak_snr_db < sc.min_peak_snr_db)
    throw NoPeakError("no spectral peak above floor (" + std::to_string(peak_snr_db) + " dB)");

  double bin = static_cast<double>(peak);
  if (sc.interpolation == PeakInterpolation::parabolic) {
    // Neighbours wrap: the spectrum of a complex signal is continuous through 0 Hz.
    const double a = std::log(std::max(mag2[(peak + m - 1) % m], 1e-300));
    const double b = std::log(std::max(mag2[peak], 1e-300));
    const double c = std::log(std::max(mag2[(peak + 1) % m], 1e-300));
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) bin += std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  }

  BeatEstimate est;
  est.peak_bin = peak;
  est.peak_snr_db = peak_snr_db;
  est.f_delta = std::max(0.0, bin * if_sig.fs / static_cast<double>(m));
  return est;
}

double beat_to_distance(double f_delta, const ChirpConfig& cfg) {
  return kSpeedOfLight * f_delta * cfg.T / (2.0 * cfg.f_bw);
}

double range_resolution(double f_bw) {
  if (!(f_bw > 0.0)) throw InvalidConfig("f_bw", "sweep bandwidth must be positive");
  return kSpeedOfLight / (2.0 * f_bw);
}

RangeEstimate make_range_estimate(const BeatEstimate& beat, const ChirpConfig& cfg) {
  return RangeEstimate{beat.f_delta, beat_to_distance(beat.f_delta, cfg), range_resolution(cfg), beat.peak_snr_db};
}

double max_unambiguous_distance(const ChirpConfig& cfg, double overlap_margin) {
  // Beat must also stay below fs/2: k*tau < fs/2.
  const double tau_overlap = overlap_margin * cfg.T;
  const double tau_alias = 0.5 * cfg.fs / cfg.sweep_rate();
  return 0.5 * kSpeedOfLight * std::min(tau_overlap, tau_alias);
}

double nominal_max_distance(const ChirpConfig& cfg) { return kSpeedOfLight * cfg.T; }

}  // namespace fmcwdb
