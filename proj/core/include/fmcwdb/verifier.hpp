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
#include <limits>
#include <span>
#include <vector>

#include "fmcwdb/channel.hpp"
#include "fmcwdb/prover.hpp"
#include "fmcwdb/spectrum.hpp"
#include "fmcwdb/waveform.hpp"

namespace fmcwdb {

/// Per-response-slot energy detection; returns pair_count bits.
BitVector demodulate_responses(const WaveformBuffer& rx, const FrameLayout& layout, const EnergyDetectorConfig& det,
                               std::ptrdiff_t offset = 0);

/// Same detector applied to the reflected challenge slots.
BitVector demodulate_challenge_echoes(const WaveformBuffer& rx, const FrameLayout& layout,
                                      const EnergyDetectorConfig& det, std::ptrdiff_t offset = 0);

enum class Expectation : std::uint8_t { off, on, ignore };

/// Expected on/off state per slot: challenge slots from the sent bits,
/// response slots from the responses the verifier expects, everything else
/// ignored.
std::vector<Expectation> expected_slot_states(const FrameLayout& layout, const BitVector& challenges,
                                              const BitVector& responses);

/// Slot x bin energy matrix. Bin j of a slot spans the j-th of N contiguous
/// sample runs of that slot, which for a linear chirp is also the j-th
/// sub-band of the slot's frequency span.
struct BinReport {
  std::size_t n_bins = 0;
  std::size_t n_slots = 0;
  std::vector<double> energies;  // slot-major
  std::vector<Expectation> expected;
  double bin_threshold = 0.0;

  double energy(std::size_t slot, std::size_t bin) const { return energies[slot * n_bins + bin]; }
};

/// Energies are taken from the received signal `rx` with the frame shifted
/// by `offset` samples (the estimated round-trip delay). The bin threshold is
/// the detector threshold scaled by 1/N.
BinReport frequency_bin_report(const WaveformBuffer& rx, const FrameLayout& layout, std::size_t n_bins,
                               std::span<const Expectation> expected, const EnergyDetectorConfig& det,
                               std::ptrdiff_t offset = 0);

enum class LateCommitVerdict : std::uint8_t { clean, late_commit_suspected };

struct LateCommitResult {
  LateCommitVerdict verdict = LateCommitVerdict::clean;
  std::vector<std::size_t> flagged_slots;
};

/// Flags an expected-on slot whose leading bins (at least one) are below the
/// bin threshold while every later bin is above it.
LateCommitResult detect_late_commit(const BinReport& report, std::size_t min_flagged_slots);

/// max(1, pair_count / 6)
std::size_t default_min_flagged_slots(std::size_t pair_count);

struct VerifierPolicy {
  double distance_bound = 10.0;  // m
  ResponseFunction response_fn = ResponseFunction::invert;
  ResponseSecret secret;
  std::size_t n_bins = 4;
  std::size_t min_flagged_slots = 0;  // 0: default_min_flagged_slots
  double threshold_db = kDefaultThresholdDb;
  SpectrumConfig spectrum;
  double capture_guard = 1.25e-6;  // extra listening time after the chirp (s)
};

struct VerifierReport {
  bool range_valid = false;
  RangeEstimate range;
  BitVector responses;
  BitVector challenge_echoes;
  std::size_t response_errors = 0;
  std::size_t challenge_echo_errors = 0;
  LateCommitResult late_commit;
  LateCommitVerdict lc_verdict = LateCommitVerdict::clean;
  bool within_bound = false;
  bool accepted = false;
};

/// Accept only when responses and echoes verify, the late-commit detector is
/// clean, and the distance is within the bound.
bool acceptance_decision(std::size_t response_errors, std::size_t echo_errors, LateCommitVerdict verdict,
                         bool range_valid, double distance, double bound);

/// What the verifier knows about the frame it sent.
struct InterrogationContext {
  ChirpConfig cfg;
  FrameLayout layout;
  BitVector challenges;
  WaveformBuffer interrogation;
};

InterrogationContext make_interrogation(const ChirpConfig& cfg, double t_b, const BitVector& challenges,
                                        double modulation_index = 1.0);

/// Optional copies of intermediate signals, for waveform dumps.
struct ReceiveTrace {
  WaveformBuffer received;  // on the verifier grid, noise added
  WaveformBuffer intermediate;
};

/// Verifier receive chain: resample onto the transmit grid, add front-end
/// noise, dechirp against the interrogation, estimate range, calibrate from
/// the preamble echo, demodulate, verify, and run the bin detector.
VerifierReport process_reply(const WaveformBuffer& arriving, const InterrogationContext& ctx,
                             const VerifierPolicy& policy, const NoiseSpec& noise, double noise_reference_power,
                             ReceiveTrace* trace = nullptr);

/// Full rapid-bit exchange against an honest-channel prover.
struct ExchangeSetup {
  ChirpConfig cfg;
  double t_b = 100e-9;
  double modulation_index = 1.0;
  BitVector challenges;  // empty: drawn from `seed`
  ProverConfig prover;
  LegParams forward;
  LegParams backward;
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 1;
  VerifierPolicy policy;
};

struct ExchangeTrace {
  WaveformBuffer interrogation;
  WaveformBuffer prover_tx;
  ReceiveTrace receive;
};

struct ExchangeResult {
  VerifierReport report;
  BitVector challenges;
  ProverOutput prover;
};

ExchangeResult run_rapid_bit_exchange(const ExchangeSetup& setup, ExchangeTrace* trace = nullptr);

/// Deterministic per-stream seed derivation (splitmix64 of seed and stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// pair_count uniform random bits from `seed`.
BitVector random_bits(std::size_t count, std::uint64_t seed);

}  // namespace fmcwdb
