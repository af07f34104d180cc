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

#include "fmcwdb/attacks.hpp"

#include <algorithm>
#include <cmath>

namespace fmcwdb {

double AttackerConfig::true_distance() const { return std::isnan(d_vp) ? d_va + d_ap : d_vp; }

void AttackerConfig::validate() const {
  if (!(t_ed >= 0.0)) throw InvalidConfig("t_ed", "must be >= 0");
  if (!(t_hw >= 0.0)) throw InvalidConfig("t_hw", "must be >= 0");
  if (!(d_va >= 0.0)) throw InvalidConfig("d_va", "must be >= 0");
  if (!(d_ap >= 0.0)) throw InvalidConfig("d_ap", "must be >= 0");
  if (!std::isnan(d_vp) && !(d_vp >= 0.0)) throw InvalidConfig("d_vp", "must be >= 0");
  if (!(min_commit_fraction > 0.0 && min_commit_fraction <= 1.0))
    throw InvalidConfig("min_commit_fraction", "must be in (0, 1]");
}

double mafia_time_budget(double t_b, double t_ed, double t_hw, bool prover_trusted) {
  return (prover_trusted ? 0.5 : 1.5) * t_b - 2.0 * t_ed - t_hw;
}

double max_distance_gain(double t_b, double t_ed, double t_hw, bool prover_trusted) {
  return 0.5 * kSpeedOfLight * mafia_time_budget(t_b, t_ed, t_hw, prover_trusted);
}

double late_commit_delay(const AttackerConfig& a, double t_b, bool prover_trusted) {
  const double wait = 2.0 * a.t_ed + a.t_hw + 2.0 * a.d_ap / kSpeedOfLight - (prover_trusted ? 0.0 : t_b);
  return std::max(0.0, wait);
}

double commit_threshold_db(double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw InvalidConfig("min_commit_fraction", "must be in (0, 1]");
  return -10.0 * std::log10(fraction);
}

namespace {

VerifierPolicy attack_policy(const AttackScenario& sc) {
  VerifierPolicy p = sc.policy;
  p.threshold_db = commit_threshold_db(sc.attacker.min_commit_fraction);
  return p;
}

AttackOutcome finish(VerifierReport rep, double true_distance, double budget) {
  AttackOutcome out;
  out.time_budget = budget;
  out.feasible = budget >= 0.0;
  out.true_distance = true_distance;
  out.claimed_distance = rep.range_valid ? rep.range.distance : std::numeric_limits<double>::quiet_NaN();
  out.distance_gain = rep.range_valid ? true_distance - rep.range.distance : 0.0;
  out.responses_accepted = rep.range_valid && rep.response_errors == 0 && rep.challenge_echo_errors == 0;
  out.lc_verdict = rep.lc_verdict;
  out.accepted = rep.accepted;
  out.report = std::move(rep);
  return out;
}

double on_power(const InterrogationContext& ctx) {
  return on_sample_power(ctx.interrogation, ctx.layout, interrogation_slot_bits(ctx.layout, ctx.challenges));
}

InterrogationContext interrogate(const AttackScenario& sc) {
  const FrameLayout probe = FrameLayout::make(sc.cfg, sc.t_b);
  return make_interrogation(sc.cfg, sc.t_b, random_bits(probe.pair_count(), derive_seed(sc.seed, 0)),
                            sc.modulation_index);
}

// Local reflection at distance d whose response slots carry `responses`,
// each on-symbol silent for the first `lateness` seconds.
AttackOutcome reflect_late(const AttackScenario& sc, const InterrogationContext& ctx, const BitVector& responses,
                           double lateness, double budget) {
  const FrameLayout& layout = ctx.layout;
  WaveformBuffer tx = propagate(ctx.interrogation, LegParams{sc.attacker.d_va, 0.0, 0.0});
  const auto silent = static_cast<std::size_t>(std::llround(lateness * layout.fs()));
  for (std::size_t i = 0; i < layout.pair_count(); ++i) {
    const std::size_t s = layout.response_slot(i);
    const std::size_t begin = layout.slot_begin(s);
    const std::size_t cut = responses[i] ? std::min(begin + silent, layout.slot_end(s)) : layout.slot_end(s);
    for (std::size_t n = begin; n < cut; ++n) tx.samples[n] = Sample{};
  }
  const WaveformBuffer arriving = propagate(tx, LegParams{sc.attacker.d_va, 0.0, 0.0});
  VerifierReport rep = process_reply(arriving, ctx, attack_policy(sc), NoiseSpec{sc.snr_db, derive_seed(sc.seed, 2)},
                                     on_power(ctx));
  AttackOutcome out = finish(std::move(rep), sc.attacker.true_distance(), budget);
  out.committed_fraction = std::max(0.0, 1.0 - lateness / sc.t_b);
  return out;
}

AttackOutcome relay_attack(const AttackScenario& sc, bool prover_trusted) {
  sc.attacker.validate();
  const InterrogationContext ctx = interrogate(sc);
  // The prover answers what it hears over the relay; the attacker learns
  // those responses and replays them from its own reflection point.
  const WaveformBuffer incident = propagate(
      ctx.interrogation, LegParams{sc.attacker.d_va + sc.attacker.d_ap, 0.0, sc.attacker.t_hw});
  Prover prover(sc.prover);
  const ProverOutput pout =
      prover.respond(incident, ctx.layout, NoiseSpec{sc.snr_db, derive_seed(sc.seed, 1)}, on_power(ctx));
  const BitVector responses = prover_trusted
                                  ? pout.responses
                                  : compute_responses(sc.prover.response_fn, ctx.challenges, sc.prover.secret);
  const double lateness = late_commit_delay(sc.attacker, sc.t_b, prover_trusted);
  const double budget = mafia_time_budget(sc.t_b, sc.attacker.t_ed, sc.attacker.t_hw, prover_trusted);
  return reflect_late(sc, ctx, responses, lateness, budget);
}

}  // namespace

AttackOutcome simulate_distance_fraud(const AttackScenario& sc) {
  ExchangeSetup setup;
  setup.cfg = sc.cfg;
  setup.t_b = sc.t_b;
  setup.modulation_index = sc.modulation_index;
  setup.prover = sc.prover;
  setup.forward = LegParams{sc.prover_distance, 0.0, 0.0};
  setup.backward = setup.forward;
  setup.snr_db = sc.snr_db;
  setup.seed = sc.seed;
  setup.policy = sc.policy;
  ExchangeResult res = run_rapid_bit_exchange(setup);
  return finish(std::move(res.report), sc.prover_distance, 0.0);
}

AttackOutcome simulate_amplify_forward(const AttackScenario& sc) {
  const AttackerConfig& a = sc.attacker;
  a.validate();
  const InterrogationContext ctx = interrogate(sc);
  const double p = on_power(ctx);

  const WaveformBuffer at_attacker = propagate(ctx.interrogation, LegParams{a.d_va, 0.0, a.t_hw});
  const WaveformBuffer incident = propagate(at_attacker, LegParams{a.d_ap, 0.0, 0.0});
  Prover prover(sc.prover);
  const ProverOutput pout = prover.respond(incident, ctx.layout, NoiseSpec{sc.snr_db, derive_seed(sc.seed, 1)}, p);
  const WaveformBuffer back = propagate(propagate(pout.tx, LegParams{a.d_ap, 0.0, 0.0}), LegParams{a.d_va, 0.0, 0.0});

  const double rx_power = p * db_to_power(sc.prover.reflect_gain_db);
  VerifierReport rep =
      process_reply(back, ctx, attack_policy(sc), NoiseSpec{sc.snr_db, derive_seed(sc.seed, 2)}, rx_power);
  return finish(std::move(rep), a.true_distance(), mafia_time_budget(sc.t_b, a.t_ed, a.t_hw, true));
}

AttackOutcome simulate_ed_lc(const AttackScenario& sc) { return relay_attack(sc, true); }

AttackOutcome simulate_terrorist_special(const AttackScenario& sc) { return relay_attack(sc, false); }

AttackOutcome simulate_late_commit_reflector(const AttackScenario& sc, double commit_fraction) {
  if (!(commit_fraction >= 0.0 && commit_fraction <= 1.0))
    throw InvalidConfig("commit_fraction", "must be in [0, 1]");
  sc.attacker.validate();
  const InterrogationContext ctx = interrogate(sc);
  const BitVector responses = compute_responses(sc.policy.response_fn, ctx.challenges, sc.policy.secret);
  return reflect_late(sc, ctx, responses, (1.0 - commit_fraction) * sc.t_b, 0.0);
}

AttackOutcome simulate_attack(const AttackScenario& sc) {
  switch (sc.attacker.mode) {
    case AttackMode::amplify_forward:
      return simulate_amplify_forward(sc);
    case AttackMode::ed_lc_mafia:
      return simulate_ed_lc(sc);
    case AttackMode::terrorist_special:
      return simulate_terrorist_special(sc);
    case AttackMode::distance_fraud:
      return simulate_distance_fraud(sc);
  }
  throw std::invalid_argument("unknown attack mode");
}

}  // namespace fmcwdb
