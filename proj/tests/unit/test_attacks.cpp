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

#include <gtest/gtest.h>

#include <cmath>

#include "fmcwdb/attacks.hpp"

using namespace fmcwdb;

namespace {

const ChirpConfig kCfg{2.4e9, 100e6, 10e-6, 400e6};
constexpr double c = kSpeedOfLight;

AttackScenario scenario(double t_b, double t_ed, double t_hw, double d_va, double d_ap, AttackMode mode) {
  AttackScenario sc;
  sc.cfg = kCfg;
  sc.t_b = t_b;
  sc.attacker.t_ed = t_ed;
  sc.attacker.t_hw = t_hw;
  sc.attacker.d_va = d_va;
  sc.attacker.d_ap = d_ap;
  sc.attacker.mode = mode;
  sc.prover.t_p = std::min(sc.prover.t_p, t_b);
  sc.policy.distance_bound = 100.0;
  return sc;
}

}  // namespace

TEST(Budget, WorkedValues) {
  EXPECT_NEAR(mafia_time_budget(100e-9, 10e-9, 0.0, true), 30e-9, 1e-18);
  EXPECT_NEAR(max_distance_gain(100e-9, 10e-9, 0.0, true), 4.5, 1e-9);
  EXPECT_NEAR(mafia_time_budget(100e-9, 10e-9, 0.0, false), 130e-9, 1e-18);
  EXPECT_NEAR(max_distance_gain(100e-9, 10e-9, 0.0, false), 19.5, 1e-9);
  EXPECT_NEAR(max_distance_gain(50e-9, 25e-9, 0.0, true), -3.75, 1e-9);  // negative values are kept
  EXPECT_NEAR(max_distance_gain(500e-9, 0.0, 10e-9, true), 36.0, 1e-9);
}

TEST(Budget, CollusionBuysOneSlot) {
  for (double t_b : {50e-9, 100e-9, 250e-9, 500e-9})
    for (double t_ed : {0.0, 10e-9, 40e-9})
      for (double t_hw : {0.0, 5e-9, 10e-9})
        EXPECT_NEAR(mafia_time_budget(t_b, t_ed, t_hw, false) - mafia_time_budget(t_b, t_ed, t_hw, true), t_b,
                    1e-18);
}

TEST(Budget, FiniteDifferenceSlopes) {
  const double h = 1e-9;
  const double t_b = 200e-9, t_ed = 10e-9, t_hw = 5e-9;
  auto slope = [&](auto f) { return (f(h) - f(-h)) / (2 * h); };
  EXPECT_NEAR(slope([&](double e) { return max_distance_gain(t_b + e, t_ed, t_hw, true); }), c / 4, 1e-3);
  EXPECT_NEAR(slope([&](double e) { return max_distance_gain(t_b + e, t_ed, t_hw, false); }), 3 * c / 4, 1e-3);
  EXPECT_NEAR(slope([&](double e) { return max_distance_gain(t_b, t_ed + e, t_hw, true); }), -c, 1e-3);
  EXPECT_NEAR(slope([&](double e) { return max_distance_gain(t_b, t_ed, t_hw + e, true); }), -c / 2, 1e-3);
}

TEST(Budget, LatenessAndThreshold) {
  AttackerConfig a;
  a.t_ed = 10e-9;
  a.t_hw = 5e-9;
  a.d_ap = 3.0;
  EXPECT_NEAR(late_commit_delay(a, 100e-9, true), 45e-9, 1e-18);
  EXPECT_DOUBLE_EQ(late_commit_delay(a, 100e-9, false), 0.0);
  EXPECT_NEAR(commit_threshold_db(0.5), 3.0103, 1e-4);
  EXPECT_DOUBLE_EQ(commit_threshold_db(1.0), 0.0);
  EXPECT_THROW(commit_threshold_db(0.0), InvalidConfig);
}

TEST(AttackerConfig, Validation) {
  AttackerConfig a;
  EXPECT_NO_THROW(a.validate());
  a.t_ed = -1e-9;
  EXPECT_THROW(a.validate(), InvalidConfig);
  a = AttackerConfig{};
  a.d_vp = -1.0;
  EXPECT_THROW(a.validate(), InvalidConfig);
  a = AttackerConfig{};
  a.min_commit_fraction = 0.0;
  EXPECT_THROW(a.validate(), InvalidConfig);
  a = AttackerConfig{};
  a.d_va = 2.0;
  a.d_ap = 3.0;
  EXPECT_DOUBLE_EQ(a.true_distance(), 5.0);
  a.d_vp = 4.0;
  EXPECT_DOUBLE_EQ(a.true_distance(), 4.0);
}

TEST(DistanceFraud, ProcessingDelayDoesNotShortenRange) {
  const double dr = range_resolution(kCfg);
  AttackScenario sc = scenario(100e-9, 0, 0, 0, 0, AttackMode::distance_fraud);
  sc.prover_distance = 7.0;
  double ref = 0;
  for (double t_p : {0.0, 40e-9, 80e-9}) {
    sc.prover.t_p = t_p;
    const AttackOutcome o = simulate_attack(sc);
    EXPECT_TRUE(o.accepted) << t_p;
    EXPECT_NEAR(o.claimed_distance, 7.0, dr / 10);
    if (t_p == 0.0) ref = o.claimed_distance;
    EXPECT_NEAR(o.claimed_distance, ref, dr / 10);
  }
}

TEST(DistanceFraud, EarlyResponseCorruptsChallengeEchoes) {
  AttackScenario sc = scenario(100e-9, 0, 0, 0, 0, AttackMode::distance_fraud);
  sc.prover.behavior = ProverBehavior::early_response;
  const AttackOutcome o = simulate_attack(sc);
  EXPECT_FALSE(o.accepted);
  EXPECT_GT(o.report.challenge_echo_errors, 0u);
  EXPECT_NEAR(o.claimed_distance, 4.0, range_resolution(kCfg) / 10);
}

TEST(AmplifyForward, CollinearRelayGainsNothing) {
  const double dr = range_resolution(kCfg);
  AttackScenario sc = scenario(100e-9, 0, 0, 2.0, 3.0, AttackMode::amplify_forward);
  AttackOutcome o = simulate_attack(sc);
  EXPECT_TRUE(o.accepted);
  EXPECT_NEAR(o.distance_gain, 0.0, dr / 10);
  sc.attacker.t_hw = 10e-9;
  o = simulate_attack(sc);
  EXPECT_NEAR(o.claimed_distance, 6.5, dr / 10);
  EXPECT_NEAR(o.distance_gain, -1.5, dr / 10);
}

TEST(AmplifyForward, DetourOnlyLengthensRange) {
  AttackScenario sc = scenario(100e-9, 0, 0, 2.0, 4.0, AttackMode::amplify_forward);
  sc.attacker.d_vp = 5.0;
  const AttackOutcome o = simulate_attack(sc);
  EXPECT_NEAR(o.claimed_distance, 6.0, range_resolution(kCfg) / 10);
  EXPECT_NEAR(o.distance_gain, -1.0, range_resolution(kCfg) / 10);
}

TEST(EdLc, FeasibleAttackShortensRange) {
  const AttackScenario sc = scenario(500e-9, 0, 0, 2.0, 3.0, AttackMode::ed_lc_mafia);
  const AttackOutcome o = simulate_attack(sc);
  EXPECT_TRUE(o.feasible);
  EXPECT_TRUE(o.responses_accepted);
  EXPECT_NEAR(o.claimed_distance, 2.0, range_resolution(kCfg) / 10);
  EXPECT_NEAR(o.distance_gain, 3.0, range_resolution(kCfg) / 10);
  EXPECT_LE(o.distance_gain, max_distance_gain(500e-9, 0, 0, true) + range_resolution(kCfg));
  EXPECT_NEAR(o.committed_fraction, 0.96, 1e-12);
}

TEST(EdLc, NegativeBudgetFailsAtModerateSnr) {
  AttackScenario sc = scenario(50e-9, 25e-9, 0, 2.0, 3.0, AttackMode::ed_lc_mafia);
  sc.snr_db = 15.0;
  ASSERT_LT(mafia_time_budget(50e-9, 25e-9, 0, true), 0.0);
  int caught = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    sc.seed = seed;
    const AttackOutcome o = simulate_attack(sc);
    EXPECT_FALSE(o.feasible);
    caught += !o.accepted;
  }
  EXPECT_GE(caught, 99);
}

TEST(EdLc, DegenerateAttackIsAPlainReflection) {
  const AttackScenario sc = scenario(100e-9, 0, 0, 4.0, 0.0, AttackMode::ed_lc_mafia);
  const AttackOutcome o = simulate_attack(sc);
  EXPECT_TRUE(o.accepted);
  EXPECT_NEAR(o.distance_gain, 0.0, range_resolution(kCfg) / 10);
  EXPECT_DOUBLE_EQ(o.committed_fraction, 1.0);
}

TEST(Terrorist, ColludingProverHidesDetour) {
  const AttackScenario sc = scenario(100e-9, 10e-9, 0, 2.0, 10.0, AttackMode::terrorist_special);
  const AttackOutcome o = simulate_attack(sc);
  EXPECT_TRUE(o.accepted);
  EXPECT_NEAR(o.distance_gain, 10.0, range_resolution(kCfg) / 10);
  EXPECT_LE(o.distance_gain, max_distance_gain(100e-9, 10e-9, 0, false));
}

TEST(LateCommitReflector, BinsCatchHalfSymbols) {
  AttackScenario sc = scenario(100e-9, 0, 0, 3.0, 0.0, AttackMode::ed_lc_mafia);
  sc.snr_db = 20.0;
  const AttackOutcome half = simulate_late_commit_reflector(sc, 0.5);
  EXPECT_EQ(half.lc_verdict, LateCommitVerdict::late_commit_suspected);
  EXPECT_FALSE(half.accepted);
  const AttackOutcome full = simulate_late_commit_reflector(sc, 1.0);
  EXPECT_EQ(full.lc_verdict, LateCommitVerdict::clean);
  EXPECT_TRUE(full.accepted);
  sc.policy.n_bins = 1;
  EXPECT_EQ(simulate_late_commit_reflector(sc, 0.5).lc_verdict, LateCommitVerdict::clean);
  EXPECT_THROW(simulate_late_commit_reflector(sc, 1.5), InvalidConfig);
}
