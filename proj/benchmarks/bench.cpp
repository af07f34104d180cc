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

#include <benchmark/benchmark.h>

#include "fmcwdb/verifier.hpp"

using namespace fmcwdb;

namespace {

ChirpConfig chirp(benchmark::State& state) {
  return ChirpConfig::with_default_rate(2.4e9, static_cast<double>(state.range(0)) * 1e6, 10e-6);
}

void BM_GenerateChirp(benchmark::State& state) {
  const ChirpConfig cfg = chirp(state);
  for (auto _ : state) benchmark::DoNotOptimize(generate_chirp(cfg));
}
BENCHMARK(BM_GenerateChirp)->Arg(50)->Arg(100)->Arg(400);

void BM_FractionalDelay(benchmark::State& state) {
  const ChirpConfig cfg = chirp(state);
  const WaveformBuffer echo = propagate(generate_chirp(cfg), LegParams{7.3, 0.0, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(resample_onto_grid(echo, 0.0, echo.size() + 500));
}
BENCHMARK(BM_FractionalDelay)->Arg(50)->Arg(100)->Arg(400);

void BM_DechirpAndEstimate(benchmark::State& state) {
  const ChirpConfig cfg = chirp(state);
  const WaveformBuffer tx = generate_chirp(cfg);
  const WaveformBuffer rx = resample_onto_grid(propagate(tx, LegParams{7.3, 0.0, 0.0}), 0.0, tx.size() + 500);
  const SpectrumConfig sc;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_beat_frequency(dechirp(rx, tx), sc));
}
BENCHMARK(BM_DechirpAndEstimate)->Arg(50)->Arg(100)->Arg(400);

void BM_RapidBitExchange(benchmark::State& state) {
  ExchangeSetup s;
  s.cfg = chirp(state);
  s.forward = LegParams{5.0, 0.0, 0.0};
  s.backward = s.forward;
  s.snr_db = 15.0;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    s.seed = ++seed;
    benchmark::DoNotOptimize(run_rapid_bit_exchange(s));
  }
}
BENCHMARK(BM_RapidBitExchange)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
