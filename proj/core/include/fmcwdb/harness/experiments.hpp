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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fmcwdb/harness/config.hpp"
#include "fmcwdb/verifier.hpp"

namespace fmcwdb::harness {

/// One metric for one parameter tuple.
struct ResultRow {
  std::vector<std::string> params;  // formatted, aligned with ResultTable::param_names
  std::string metric;
  double value = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

struct ResultTable {
  std::string experiment;
  std::vector<std::string> param_names;
  std::vector<ResultRow> rows;
  /// Per-trial plot data, written only when requested.
  std::vector<std::string> point_columns;
  std::vector<std::vector<double>> points;
  std::size_t total_trials = 0;
};

struct RunOptions {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string dump_dir;  // empty: no waveform dumps
};

/// Seed precedence: explicit override, then the config, then the
/// FMCWDB_SEED environment variable, then 1.
std::uint64_t resolve_seed(std::optional<std::uint64_t> override_seed, const ExperimentConfig& cfg);

/// `%.9g`, with `inf`/`-inf`/`nan` spelled out.
std::string format_number(double v);

/// Header `experiment,<params>,metric,value,trials,seed`, then one line per row.
void write_csv(std::ostream& out, const ResultTable& table);
void write_points_csv(std::ostream& out, const ResultTable& table);

/// Calls fn(i) for i in [0, n) on up to `jobs` threads. Results must be
/// written to slot i so aggregation order does not depend on scheduling.
/// The first exception thrown by any call is rethrown.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// Chirp settings for one bandwidth point (fs defaults to 4 * f_bw).
ChirpConfig chirp_for(const ExperimentConfig& cfg, double f_bw);

/// Honest exchange for one trial; secrets for keyed response functions are
/// drawn from the trial seed.
ExchangeSetup exchange_setup(const ExperimentConfig& cfg, double f_bw, double t_b, double snr_db, double distance,
                             std::uint64_t trial_seed);

/// Grid f_bw x t_b x snr_db x distances, `trials` exchanges per point.
ResultTable run_simulate(const ExperimentConfig& cfg, const RunOptions& opt);

/// Grid f_bw x t_b x snr_db. End-to-end response bit errors over at least
/// `bits` bits per point. A point with no errors reports the rule-of-three
/// 95% upper bound 3/bits.
ResultTable run_ber_sweep(const ExperimentConfig& cfg, const RunOptions& opt);

/// Grid f_bw x t_b x snr_db. `distance_count` distances drawn uniformly in
/// (0, max_unambiguous_distance); the draws depend only on the trial seed.
ResultTable run_range_precision(const ExperimentConfig& cfg, const RunOptions& opt);

/// Analytic budgets and gains over t_b x t_ed x t_hw for trusted and
/// colluding provers. With simulate_attacks, adds waveform-level ED/LC and
/// terrorist runs for each d_ap; with af_trials, adds randomized
/// amplify-forward geometries.
ResultTable run_gain_curves(const ExperimentConfig& cfg, const RunOptions& opt);

/// Grid n_bins x snr_db: false-positive rate on honest exchanges and
/// detection rate of a late-commit reflector per commit fraction.
ResultTable run_detector_roc(const ExperimentConfig& cfg, const RunOptions& opt);

}  // namespace fmcwdb::harness
