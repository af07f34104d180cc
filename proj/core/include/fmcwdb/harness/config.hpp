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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fmcwdb/prover.hpp"
#include "fmcwdb/spectrum.hpp"

namespace fmcwdb::harness {

/// Flat `key=value` lines. `#` starts a comment; blank lines are skipped.
/// Duplicate keys are rejected.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Experiment parameters. Lists accept `a,b,c`. Times are in seconds,
/// frequencies in Hz, distances in metres.
struct ExperimentConfig {
  std::string scenario = "default";

  double f0 = 2.4e9;
  std::vector<double> f_bw = {100e6};
  double T = 10e-6;
  double fs = 0.0;  // 0: 4 * f_bw per sweep point
  std::vector<double> t_b;  // required

  std::vector<double> snr_db = {std::numeric_limits<double>::infinity()};
  std::vector<double> distances = {4.0};
  std::size_t distance_count = 100;  // range sweep draws
  std::size_t trials = 1;
  std::size_t bits = 10000;  // BER sweep minimum
  std::size_t honest_trials = 1000;
  std::optional<std::uint64_t> seed;

  double modulation_index = 1.0;
  double threshold_db = kDefaultThresholdDb;
  double distance_bound = 10.0;
  double t_p = 19.5e-9;
  double reflect_gain_db = 0.0;
  ResponseFunction response_fn = ResponseFunction::invert;

  std::size_t zero_pad = 4;
  Window window = Window::rectangular;
  PeakInterpolation interpolation = PeakInterpolation::parabolic;

  std::vector<std::size_t> n_bins = {4};
  std::vector<double> commit_fractions = {0.1, 0.2, 0.3, 0.4, 0.5};
  double min_commit_fraction = 0.5;

  std::vector<double> t_ed = {0.0, 10e-9, 25e-9, 40e-9};
  std::vector<double> t_hw = {0.0, 10e-9};
  std::vector<double> d_ap = {0.0, 3.0, 10.0};
  double d_va = 2.0;
  bool simulate_attacks = false;
  std::size_t af_trials = 0;

  std::string out;
  bool plot_data = false;

  void validate() const;
};

/// Builds a config from parsed keys. Unknown keys and malformed values raise
/// InvalidConfig naming the key.
ExperimentConfig config_from_keys(const std::map<std::string, std::string>& keys);

ExperimentConfig parse_config(const std::string& text);

/// Reads and parses a file; unreadable files raise std::runtime_error.
ExperimentConfig load_config(const std::string& path);

}  // namespace fmcwdb::harness
