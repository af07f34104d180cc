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

#include <random>

#include "fmcwdb/verifier.hpp"

namespace fmcwdb {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

BitVector random_bits(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitVector bits(count);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
  return bits;
}

InterrogationContext make_interrogation(const ChirpConfig& cfg, double t_b, const BitVector& challenges,
                                        double modulation_index) {
  cfg.validate();
  FrameLayout layout = FrameLayout::make(cfg, t_b);
  if (challenges.size() != layout.pair_count())
    throw InvalidConfig("challenges", "expected " + std::to_string(layout.pair_count()) + " bits, got " +
                                          std::to_string(challenges.size()));
  WaveformBuffer tx = build_interrogation(cfg, layout, challenges, modulation_index);
  return InterrogationContext{cfg, std::move(layout), challenges, std::move(tx)};
}

ExchangeResult run_rapid_bit_exchange(const ExchangeSetup& setup, ExchangeTrace* trace) {
  const FrameLayout probe = FrameLayout::make(setup.cfg, setup.t_b);
  const BitVector challenges = setup.challenges.empty()
                                   ? random_bits(probe.pair_count(), derive_seed(setup.seed, 0))
                                   : setup.challenges;
  const InterrogationContext ctx = make_interrogation(setup.cfg, setup.t_b, challenges, setup.modulation_index);

  const auto slot_bits = interrogation_slot_bits(ctx.layout, challenges);
  const double tx_power = on_sample_power(ctx.interrogation, ctx.layout, slot_bits);
  const double at_prover = tx_power * db_to_power(setup.forward.gain_db);
  const double at_verifier =
      at_prover * db_to_power(setup.prover.reflect_gain_db) * db_to_power(setup.backward.gain_db);

  const WaveformBuffer incident = propagate(ctx.interrogation, setup.forward);
  Prover prover(setup.prover);
  ProverOutput pout =
      prover.respond(incident, ctx.layout, NoiseSpec{setup.snr_db, derive_seed(setup.seed, 1)}, at_prover);
  const WaveformBuffer arriving = propagate(pout.tx, setup.backward);

  ExchangeResult res;
  res.report = process_reply(arriving, ctx, setup.policy, NoiseSpec{setup.snr_db, derive_seed(setup.seed, 2)},
                             at_verifier, trace ? &trace->receive : nullptr);
  if (trace) {
    trace->interrogation = ctx.interrogation;
    trace->prover_tx = pout.tx;
  }
  res.challenges = challenges;
  res.prover = std::move(pout);
  return res;
}

}  // namespace fmcwdb
