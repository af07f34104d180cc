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

#include "fmcwdb/harness/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace fmcwdb::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& key, const std::string& v) {
  std::vector<std::string> items;
  if (!v.empty() && v.back() == ',') throw InvalidConfig(key, "empty list element");
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw InvalidConfig(key, "empty list element");
    items.push_back(item);
  }
  if (items.empty()) throw InvalidConfig(key, "list must not be empty");
  return items;
}

double to_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || std::isnan(d))
    throw InvalidConfig(key, "not a number: '" + v + "'");
  return d;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  if (v.empty() || v[0] == '-') throw InvalidConfig(key, "not a non-negative integer: '" + v + "'");
  const unsigned long long u = std::strtoull(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || errno == ERANGE)
    throw InvalidConfig(key, "not a non-negative integer: '" + v + "'");
  return u;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw InvalidConfig(key, "expected 0/1 or true/false, got '" + v + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& s : split_list(key, v)) out.push_back(to_double(key, s));
  return out;
}

std::vector<std::size_t> to_sizes(const std::string& key, const std::string& v) {
  std::vector<std::size_t> out;
  for (const auto& s : split_list(key, v)) out.push_back(to_u64(key, s));
  return out;
}

void require(bool ok, const char* field, const char* reason) {
  if (!ok) throw InvalidConfig(field, reason);
}

template <class T, class Pred>
void require_all(const std::vector<T>& v, const char* field, Pred pred, const char* reason) {
  require(!v.empty(), field, "list must not be empty");
  for (const auto& x : v) require(pred(x), field, reason);
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidConfig("line " + std::to_string(lineno), "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw InvalidConfig("line " + std::to_string(lineno), "empty key");
    if (!out.emplace(key, trim(line.substr(eq + 1))).second) throw InvalidConfig(key, "duplicate key");
  }
  return out;
}

ExperimentConfig config_from_keys(const std::map<std::string, std::string>& keys) {
  ExperimentConfig c;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"scenario", [&](auto&, auto& v) { c.scenario = v; }},
      {"f0", [&](auto& k, auto& v) { c.f0 = to_double(k, v); }},
      {"f_bw", [&](auto& k, auto& v) { c.f_bw = to_doubles(k, v); }},
      {"T", [&](auto& k, auto& v) { c.T = to_double(k, v); }},
      {"fs", [&](auto& k, auto& v) { c.fs = to_double(k, v); }},
      {"t_b", [&](auto& k, auto& v) { c.t_b = to_doubles(k, v); }},
      {"snr_db", [&](auto& k, auto& v) { c.snr_db = to_doubles(k, v); }},
      {"distances", [&](auto& k, auto& v) { c.distances = to_doubles(k, v); }},
      {"distance_count", [&](auto& k, auto& v) { c.distance_count = to_u64(k, v); }},
      {"trials", [&](auto& k, auto& v) { c.trials = to_u64(k, v); }},
      {"bits", [&](auto& k, auto& v) { c.bits = to_u64(k, v); }},
      {"honest_trials", [&](auto& k, auto& v) { c.honest_trials = to_u64(k, v); }},
      {"seed", [&](auto& k, auto& v) { c.seed = to_u64(k, v); }},
      {"modulation_index", [&](auto& k, auto& v) { c.modulation_index = to_double(k, v); }},
      {"threshold_db", [&](auto& k, auto& v) { c.threshold_db = to_double(k, v); }},
      {"distance_bound", [&](auto& k, auto& v) { c.distance_bound = to_double(k, v); }},
      {"t_p", [&](auto& k, auto& v) { c.t_p = to_double(k, v); }},
      {"reflect_gain_db", [&](auto& k, auto& v) { c.reflect_gain_db = to_double(k, v); }},
      {"response_fn",
       [&](auto& k, auto& v) {
         if (v == "invert") c.response_fn = ResponseFunction::invert;
         else if (v == "xor_key") c.response_fn = ResponseFunction::xor_key;
         else if (v == "hk_register") c.response_fn = ResponseFunction::hk_register;
         else throw InvalidConfig(k, "expected invert, xor_key or hk_register");
       }},
      {"zero_pad", [&](auto& k, auto& v) { c.zero_pad = to_u64(k, v); }},
      {"window",
       [&](auto& k, auto& v) {
         if (v == "rectangular") c.window = Window::rectangular;
         else if (v == "hann") c.window = Window::hann;
         else throw InvalidConfig(k, "expected rectangular or hann");
       }},
      {"interpolation",
       [&](auto& k, auto& v) {
         if (v == "parabolic") c.interpolation = PeakInterpolation::parabolic;
         else if (v == "none") c.interpolation = PeakInterpolation::none;
         else throw InvalidConfig(k, "expected parabolic or none");
       }},
      {"n_bins", [&](auto& k, auto& v) { c.n_bins = to_sizes(k, v); }},
      {"commit_fractions", [&](auto& k, auto& v) { c.commit_fractions = to_doubles(k, v); }},
      {"min_commit_fraction", [&](auto& k, auto& v) { c.min_commit_fraction = to_double(k, v); }},
      {"t_ed", [&](auto& k, auto& v) { c.t_ed = to_doubles(k, v); }},
      {"t_hw", [&](auto& k, auto& v) { c.t_hw = to_doubles(k, v); }},
      {"d_ap", [&](auto& k, auto& v) { c.d_ap = to_doubles(k, v); }},
      {"d_va", [&](auto& k, auto& v) { c.d_va = to_double(k, v); }},
      {"simulate_attacks", [&](auto& k, auto& v) { c.simulate_attacks = to_bool(k, v); }},
      {"af_trials", [&](auto& k, auto& v) { c.af_trials = to_u64(k, v); }},
      {"out", [&](auto&, auto& v) { c.out = v; }},
      {"plot_data", [&](auto& k, auto& v) { c.plot_data = to_bool(k, v); }},
  };
  for (const auto& [k, v] : keys) {
    const auto it = setters.find(k);
    if (it == setters.end()) throw InvalidConfig(k, "unknown key");
    it->second(k, v);
  }
  c.validate();
  return c;
}

void ExperimentConfig::validate() const {
  auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  auto non_negative = [](double x) { return x >= 0.0 && std::isfinite(x); };
  require(!t_b.empty(), "t_b", "required (slot period list in seconds)");
  require_all(t_b, "t_b", positive, "must be > 0");
  require_all(f_bw, "f_bw", positive, "must be > 0");
  require(positive(f0), "f0", "must be > 0");
  require(positive(T), "T", "must be > 0");
  require(fs == 0.0 || positive(fs), "fs", "must be > 0, or 0 for 4 * f_bw");
  for (double b : f_bw) require(fs == 0.0 || fs >= 2.0 * b, "fs", "must be >= 2 * f_bw");
  require_all(snr_db, "snr_db", [](double x) { return !std::isnan(x); }, "must be a number or inf");
  require_all(distances, "distances", non_negative, "must be >= 0");
  require(distance_count >= 1, "distance_count", "must be >= 1");
  require(trials >= 1, "trials", "must be >= 1");
  require(bits >= 1, "bits", "must be >= 1");
  require(honest_trials >= 1, "honest_trials", "must be >= 1");
  require(modulation_index > 0.0 && modulation_index <= 1.0, "modulation_index", "must be in (0, 1]");
  require(threshold_db > 0.0 && std::isfinite(threshold_db), "threshold_db", "must be > 0");
  require(distance_bound >= 0.0, "distance_bound", "must be >= 0");
  require(non_negative(t_p), "t_p", "must be >= 0");
  require(std::isfinite(reflect_gain_db), "reflect_gain_db", "must be finite");
  require(zero_pad >= 1, "zero_pad", "must be >= 1");
  require_all(n_bins, "n_bins", [](std::size_t n) { return n >= 1; }, "must be >= 1");
  require_all(commit_fractions, "commit_fractions", [](double f) { return f >= 0.0 && f <= 1.0; },
              "must be in [0, 1]");
  require(min_commit_fraction > 0.0 && min_commit_fraction <= 1.0, "min_commit_fraction", "must be in (0, 1]");
  require_all(t_ed, "t_ed", non_negative, "must be >= 0");
  require_all(t_hw, "t_hw", non_negative, "must be >= 0");
  require_all(d_ap, "d_ap", non_negative, "must be >= 0");
  require(non_negative(d_va), "d_va", "must be >= 0");
}

ExperimentConfig parse_config(const std::string& text) { return config_from_keys(parse_key_values(text)); }

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace fmcwdb::harness
