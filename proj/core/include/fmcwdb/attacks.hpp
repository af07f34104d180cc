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

#include "fmcwdb/verifier.hpp"

namespace fmcwdb {

enum class AttackMode : std::uint8_t { amplify_forward, ed_lc_mafia, terrorist_special, distance_fraud };

struct AttackerConfig {
  double t_ed = 0.0;  // early-detect latency (s)
  double t_hw = 0.0;  // attacker hardware delay (s)
  double d_va = 0.0;  // verifier to attacker (m)
  double d_ap = 0.0;  // attacker to prover (m)
  /// Verifier to prover. NaN places the attacker on the line between them.
  double d_vp = std::numeric_limits<double>::quiet_NaN();
  AttackMode mode = AttackMode::ed_lc_mafia;
  /// Smallest fraction of a symbol the verifier needs to demodulate it.
  double min_commit_fraction = 0.5;

  double true_distance() const;
  void validate() const;
};

struct AttackOutcome {
  double time_budget = 0.0;
  bool feasible = false;
  double claimed_distance = 0.0;
  double true_distance = 0.0;
  double distance_gain = 0.0;  // true - claimed
  bool responses_accepted = false;
  LateCommitVerdict lc_verdict = LateCommitVerdict::clean;
  double committed_fraction = 1.0;
  bool accepted = false;  // overall verifier decision, distance bound included
  VerifierReport report;
};

/// Time left to the attacker inside one slot. Trusted prover:
/// 0.5 t_b - 2 t_ed - t_hw. Colluding prover: 1.5 t_b - 2 t_ed - t_hw.
/// Negative results are returned unchanged.
double mafia_time_budget(double t_b, double t_ed, double t_hw, bool prover_trusted);

/// (c/2) * mafia_time_budget, signed.
double max_distance_gain(double t_b, double t_ed, double t_hw, bool prover_trusted);

/// How late the attacker's response symbols start relative to the slot the
/// verifier expects them in.
double late_commit_delay(const AttackerConfig& a, double t_b, bool prover_trusted);

/// Detector threshold (dB below the bit-1 energy) at which a symbol
/// committed for `fraction` of the slot sits exactly on the threshold.
double commit_threshold_db(double fraction);

struct AttackScenario {
  ChirpConfig cfg;
  double t_b = 100e-9;
  double modulation_index = 1.0;
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 1;
  AttackerConfig attacker;
  ProverConfig prover;
  VerifierPolicy policy;
  double prover_distance = 4.0;  // distance fraud only
};

/// Dishonest prover at its true distance, using `prover.t_p` and
/// `prover.behavior`.
AttackOutcome simulate_distance_fraud(const AttackScenario& sc);

/// Relay that amplifies both directions through the attacker. The hardware
/// delay is paid once per relayed round trip.
AttackOutcome simulate_amplify_forward(const AttackScenario& sc);

/// Attacker at d_va reflects the interrogation and late-commits the trusted
/// prover's responses.
AttackOutcome simulate_ed_lc(const AttackScenario& sc);

/// As simulate_ed_lc with a colluding prover that hands out its responses.
AttackOutcome simulate_terrorist_special(const AttackScenario& sc);

/// Reflector at d_va that knows the correct responses and commits only the
/// trailing `commit_fraction` of each on-symbol.
AttackOutcome simulate_late_commit_reflector(const AttackScenario& sc, double commit_fraction);

/// Dispatch on `sc.attacker.mode`.
AttackOutcome simulate_attack(const AttackScenario& sc);

}  // namespace fmcwdb
