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

#include "fmcwdb/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fmcwdb {

BitVector demodulate_responses(const WaveformBuffer& rx, const FrameLayout& layout, const EnergyDetectorConfig& det,
                               std::ptrdiff_t offset) {
  if (!det.calibrated()) throw CalibrationError("verifier detector is not calibrated");
  BitVector bits(layout.pair_count());
  for (std::size_t i = 0; i < layout.pair_count(); ++i)
    bits[i] = demodulate_slot(detect_slot_energy(rx, layout, layout.response_slot(i), offset), det);
  return bits;
}

BitVector demodulate_challenge_echoes(const WaveformBuffer& rx, const FrameLayout& layout,
                                      const EnergyDetectorConfig& det, std::ptrdiff_t offset) {
  if (!det.calibrated()) throw CalibrationError("verifier detector is not calibrated");
  BitVector bits(layout.pair_count());
  for (std::size_t i = 0; i < layout.pair_count(); ++i)
    bits[i] = demodulate_slot(detect_slot_energy(rx, layout, layout.challenge_slot(i), offset), det);
  return bits;
}

std::vector<Expectation> expected_slot_states(const FrameLayout& layout, const BitVector& challenges,
                                              const BitVector& responses) {
  if (challenges.size() != layout.pair_count() || responses.size() != layout.pair_count())
    throw std::invalid_argument("expected_slot_states: bit count does not match pair_count");
  std::vector<Expectation> out(layout.n_slots(), Expectation::ignore);
  for (std::size_t i = 0; i < layout.pair_count(); ++i) {
    out[layout.challenge_slot(i)] = challenges[i] ? Expectation::on : Expectation::off;
    out[layout.response_slot(i)] = responses[i] ? Expectation::on : Expectation::off;
  }
  return out;
}

BinReport frequency_bin_report(const WaveformBuffer& rx, const FrameLayout& layout, std::size_t n_bins,
                               std::span<const Expectation> expected, const EnergyDetectorConfig& det,
                               std::ptrdiff_t offset) {
  if (n_bins < 1) throw InvalidConfig("n_bins", "must be >= 1");
  if (expected.size() != layout.n_slots()) throw std::invalid_argument("expected states do not match layout");
  if (!det.calibrated()) throw CalibrationError("verifier detector is not calibrated");

  BinReport rep;
  rep.n_bins = n_bins;
  rep.n_slots = layout.n_slots();
  rep.expected.assign(expected.begin(), expected.end());
  rep.bin_threshold = det.threshold() / static_cast<double>(n_bins);
  rep.energies.assign(rep.n_slots * n_bins, 0.0);

  for (std::size_t s = 0; s < layout.n_slots(); ++s) {
    const std::size_t len = layout.slot_length(s);
    if (len < n_bins) throw InvalidConfig("n_bins", "more bins than samples in a slot");
    const auto begin = static_cast<std::ptrdiff_t>(layout.slot_begin(s)) + offset;
    if (begin < 0 || begin + static_cast<std::ptrdiff_t>(len) > static_cast<std::ptrdiff_t>(rx.size()))
      throw std::out_of_range("bin report: slot not covered by waveform");
    for (std::size_t j = 0; j < n_bins; ++j) {
      const std::size_t lo = j * len / n_bins;
      const std::size_t hi = (j + 1) * len / n_bins;
      double e = 0.0;
      for (std::size_t n = lo; n < hi; ++n) e += std::norm(rx.samples[static_cast<std::size_t>(begin) + n]);
      rep.energies[s * n_bins + j] = e;
    }
  }
  return rep;
}

LateCommitResult detect_late_commit(const BinReport& report, std::size_t min_flagged_slots) {
  LateCommitResult res;
  const std::size_t n = report.n_bins;
  for (std::size_t s = 0; s < report.n_slots; ++s) {
    if (report.expected[s] != Expectation::on) continue;
    std::size_t lead = 0;
    while (lead < n && report.energy(s, lead) < report.bin_threshold) ++lead;
    if (lead == 0 || lead == n) continue;
    bool tail_on = true;
    for (std::size_t j = lead; j < n; ++j) tail_on = tail_on && report.energy(s, j) >= report.bin_threshold;
    if (tail_on) res.flagged_slots.push_back(s);
  }
  const std::size_t quorum = std::max<std::size_t>(min_flagged_slots, 1);
  res.verdict = res.flagged_slots.size() >= quorum ? LateCommitVerdict::late_commit_suspected
                                                   : LateCommitVerdict::clean;
  return res;
}

std::size_t default_min_flagged_slots(std::size_t pair_count) { return std::max<std::size_t>(1, pair_count / 6); }

bool acceptance_decision(std::size_t response_errors, std::size_t echo_errors, LateCommitVerdict verdict,
                         bool range_valid, double distance, double bound) {
  return range_valid && response_errors == 0 && echo_errors == 0 && verdict == LateCommitVerdict::clean &&
         distance <= bound;
}

VerifierReport process_reply(const WaveformBuffer& arriving, const InterrogationContext& ctx,
                             const VerifierPolicy& policy, const NoiseSpec& noise, double noise_reference_power,
                             ReceiveTrace* trace) {
  const WaveformBuffer& tx = ctx.interrogation;
  const FrameLayout& layout = ctx.layout;
  const auto guard = static_cast<std::size_t>(std::ceil(policy.capture_guard * tx.fs - 1e-6));
  const std::size_t capture = tx.size() + guard;

  const WaveformBuffer aligned = resample_onto_grid(arriving, tx.t0, capture);
  const WaveformBuffer rx = add_noise(aligned, noise, noise_reference_power);
  const WaveformBuffer if_sig = dechirp(rx, tx);
  if (trace) {
    trace->received = rx;
    trace->intermediate = if_sig;
  }

  VerifierReport rep;
  try {
    rep.range = make_range_estimate(estimate_beat_frequency(if_sig, policy.spectrum), ctx.cfg);
  } catch (const NoPeakError&) {
    return rep;
  }
  const double tau = rep.range.f_delta / ctx.cfg.sweep_rate();
  const auto offset = static_cast<std::ptrdiff_t>(std::llround(tau * tx.fs));
  if (offset + static_cast<std::ptrdiff_t>(layout.total_samples()) > static_cast<std::ptrdiff_t>(rx.size()))
    return rep;  // echo arrives after the capture window
  rep.range_valid = true;
  rep.within_bound = rep.range.distance <= policy.distance_bound;

  EnergyDetectorConfig det;
  try {
    det = calibrate_detector(rx, layout, policy.threshold_db, offset);
  } catch (const CalibrationError&) {
    rep.range_valid = false;
    return rep;
  }

  rep.responses = demodulate_responses(rx, layout, det, offset);
  rep.challenge_echoes = demodulate_challenge_echoes(rx, layout, det, offset);
  const BitVector expected = compute_responses(policy.response_fn, ctx.challenges, policy.secret);
  for (std::size_t i = 0; i < layout.pair_count(); ++i) {
    rep.response_errors += rep.responses[i] != expected[i];
    rep.challenge_echo_errors += rep.challenge_echoes[i] != ctx.challenges[i];
  }

  const auto states = expected_slot_states(layout, ctx.challenges, expected);
  const BinReport bins = frequency_bin_report(rx, layout, policy.n_bins, states, det, offset);
  const std::size_t quorum =
      policy.min_flagged_slots ? policy.min_flagged_slots : default_min_flagged_slots(layout.pair_count());
  rep.late_commit = detect_late_commit(bins, quorum);
  rep.lc_verdict = rep.late_commit.verdict;

  rep.accepted = acceptance_decision(rep.response_errors, rep.challenge_echo_errors, rep.lc_verdict, rep.range_valid,
                                     rep.range.distance, policy.distance_bound);
  return rep;
}

}  // namespace fmcwdb
