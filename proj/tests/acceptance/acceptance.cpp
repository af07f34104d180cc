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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "fmcwdb/attacks.hpp"
#include "fmcwdb/harness/config.hpp"
#include "fmcwdb/harness/experiments.hpp"

using namespace fmcwdb;
using namespace fmcwdb::harness;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Rows keyed by "param|param|...|metric".
std::map<std::string, double> index_rows(const ResultTable& t) {
  std::map<std::string, double> m;
  for (const auto& r : t.rows) {
    std::string k;
    for (const auto& p : r.params) k += p + "|";
    m[k + r.metric] = r.value;
  }
  return m;
}

std::string csv(const ResultTable& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

const ChirpConfig kCfg{2.4e9, 100e6, 10e-6, 400e6};

Verdict ac1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  bool all_valid = true;
  for (int d = 1; d <= 20; ++d) {
    ExchangeSetup s;
    s.cfg = kCfg;
    s.forward = LegParams{static_cast<double>(d), 0.0, 0.0};
    s.backward = s.forward;
    s.seed = static_cast<std::uint64_t>(d);
    s.policy.distance_bound = 100.0;
    const VerifierReport r = run_rapid_bit_exchange(s).report;
    all_valid = all_valid && r.range_valid;
    worst = std::max(worst, std::abs(r.range.distance - d));
  }
  const double secs = seconds_since(t0);
  return {all_valid && worst <= 0.15 && secs < 10.0,
          fmt("max |estimate - d| = %.4f m over d = 1..20 m (limit 0.15), %.2f s", worst, secs)};
}

Verdict ac2() {
  const double a = range_resolution(80e6), b = range_resolution(150e6);
  const bool ok = std::abs(a - 1.875) < 5e-4 && std::abs(b - 1.0) < 5e-4;
  return {ok, fmt("range_resolution(80 MHz) = %.3f m, range_resolution(150 MHz) = %.3f m", a, b)};
}

Verdict ac3() {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentConfig cfg = parse_config(
      "f_bw = 50e6, 100e6, 200e6\nt_b = 100e-9, 200e-9, 500e-9\nsnr_db = 15\ndistance_count = 100\n");
  const auto rows = index_rows(run_range_precision(cfg, RunOptions{3, 1, ""}));
  bool ok = true;
  std::string detail;
  double worst_spread = 0;
  std::map<double, double> mean_at;
  for (double t_b : cfg.t_b) {
    double prev = std::numeric_limits<double>::infinity();
    for (double f_bw : cfg.f_bw) {
      const std::string k = format_number(f_bw) + "|" + format_number(t_b) + "|15|";
      const double mean = rows.at(k + "mean_error_m");
      const double valid = rows.at(k + "valid_fraction");
      ok = ok && mean <= range_resolution(f_bw) && valid == 1.0 && mean <= prev;
      prev = mean;
    }
  }
  for (double f_bw : cfg.f_bw) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (double t_b : cfg.t_b) {
      const double m = rows.at(format_number(f_bw) + "|" + format_number(t_b) + "|15|mean_error_m");
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    mean_at[f_bw] = hi;
    worst_spread = std::max(worst_spread, (hi - lo) / lo);
  }
  ok = ok && worst_spread <= 0.5;
  const double secs = seconds_since(t0);
  ok = ok && secs < 300.0;
  detail = fmt("worst mean error 50/100/200 MHz = %.4f/%.4f/%.4f m, max t_b spread %.1f%%, %.1f s",
               mean_at[50e6], mean_at[100e6], mean_at[200e6], 100.0 * worst_spread, secs);
  return {ok, detail};
}

Verdict ac4() {
  const auto t0 = std::chrono::steady_clock::now();
  // 400 MHz sweep: 160 samples per 100 ns slot (see README on the detector).
  const ExperimentConfig cfg = parse_config("f_bw = 400e6\nt_b = 100e-9\nsnr_db = 0, 8\nbits = 10000\n");
  const auto rows = index_rows(run_ber_sweep(cfg, RunOptions{11, 1, ""}));
  const std::string p8 = "400000000|1e-07|8|", p0 = "400000000|1e-07|0|";
  const double bits8 = rows.at(p8 + "bits"), err8 = rows.at(p8 + "bit_errors");
  const double ber0 = rows.at(p0 + "ber");
  const double secs = seconds_since(t0);
  const bool ok = bits8 >= 1e4 && err8 == 0 && ber0 >= 1e-2 && secs < 300.0;
  return {ok, fmt("8 dB: %.0f errors in %.0f bits (95%% bound %.1e); 0 dB: BER %.3f; %.1f s", err8, bits8,
                  rows.at(p8 + "ber_upper_95"), ber0, secs)};
}

Verdict ac5() {
  const double dr = range_resolution(kCfg);
  ExchangeSetup s;
  s.cfg = kCfg;
  s.forward = LegParams{7.3, 0.0, 0.0};
  s.backward = s.forward;
  s.seed = 21;
  s.snr_db = 20.0;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double t_p : {0.0, 20e-9, 40e-9, 80e-9}) {
    s.prover.t_p = t_p;
    const double d = run_rapid_bit_exchange(s).report.range.distance;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  s.prover.t_p = 20e-9;
  s.prover.response_fn = ResponseFunction::xor_key;
  s.prover.secret.key = BitVector(48, 0);
  const double plain = run_rapid_bit_exchange(s).report.range.distance;
  s.prover.secret.key = BitVector(48, 1);
  const double flipped = run_rapid_bit_exchange(s).report.range.distance;
  const double flip_shift = std::abs(plain - flipped);
  return {hi - lo <= dr / 10 && flip_shift <= dr / 10,
          fmt("t_p sweep spread %.2e m, flipped responses shift %.2e m (limit %.3f m)", hi - lo, flip_shift, dr / 10)};
}

Verdict ac6() {
  int points = 0, bad = 0;
  // Integer nanoseconds keep the reference arithmetic exact: c/2 = 0.15 m/ns.
  for (long t_b : {50L, 100L, 200L, 250L, 500L})
    for (long t_ed : {0L, 25L})
      for (long t_hw : {0L, 10L}) {
        const double budget_ns = static_cast<double>(t_b) / 2 - 2 * t_ed - t_hw;
        const double b = mafia_time_budget(t_b * 1e-9, t_ed * 1e-9, t_hw * 1e-9, true);
        const double g = max_distance_gain(t_b * 1e-9, t_ed * 1e-9, t_hw * 1e-9, true);
        const double diff = mafia_time_budget(t_b * 1e-9, t_ed * 1e-9, t_hw * 1e-9, false) - b;
        bad += std::abs(b - budget_ns * 1e-9) > 1e-17 || std::abs(g - 0.15 * budget_ns) > 1e-9 ||
               std::abs(diff - t_b * 1e-9) > 1e-17;
        ++points;
      }
  const double zero = max_distance_gain(100e-9, 25e-9, 0.0, true);
  return {bad == 0 && points == 20 && std::abs(zero) < 1e-12,
          fmt("%d/%d grid points match, zero-budget case gain = %.1e m", points - bad, points, zero)};
}

Verdict ac7() {
  const ExperimentConfig cfg = parse_config(
      "t_b = 50e-9, 100e-9, 200e-9, 250e-9, 500e-9\nt_ed = 0, 10e-9, 25e-9, 40e-9\nt_hw = 0, 10e-9\n"
      "snr_db = 30\nd_va = 2\nd_ap = 0, 3, 10, 30\nsimulate_attacks = 1\ntrials = 5\n");
  const ResultTable t = run_gain_curves(cfg, RunOptions{5, 1, ""});
  const auto rows = index_rows(t);
  const double dr = range_resolution(100e6);
  int cells = 0, successes = 0, violations = 0;
  for (const auto& r : t.rows) {
    if (r.metric != "success_rate" || r.params[3] != "trusted") continue;
    ++cells;
    if (r.value == 0) continue;
    ++successes;
    std::string k;
    for (std::size_t i = 0; i < 4; ++i) k += r.params[i] + "|";
    const double budget = rows.at(k + "|time_budget_s");
    const double bound = rows.at(k + "|max_distance_gain_m");
    const double best = rows.at(k + r.params[4] + "|best_success_gain_m");
    violations += !(budget > 0) || best > bound + dr;
  }
  return {violations == 0 && cells > 0,
          fmt("%d ED/LC cells, %d with successful trials, %d outside budget > 0 / gain <= bound + dR", cells,
              successes, violations)};
}

Verdict ac8() {
  const ExperimentConfig cfg = parse_config(
      "t_b = 100e-9\nsnr_db = 15\nn_bins = 4\ncommit_fractions = 0.1, 0.2, 0.3, 0.4, 0.5\n"
      "trials = 100\nhonest_trials = 1000\nd_va = 2\n");
  const auto rows = index_rows(run_detector_roc(cfg, RunOptions{9, 1, ""}));
  const double fp = rows.at("4|15||false_positive_rate");
  double worst = 1.0;
  for (double f : cfg.commit_fractions) worst = std::min(worst, rows.at("4|15|" + format_number(f) + "|detection_rate"));
  return {worst >= 0.99 && fp <= 0.01,
          fmt("min detection %.3f over commit fractions 0.1..0.5 (100 trials each), honest false positives %.3f "
              "(1000 trials)", worst, fp)};
}

Verdict ac9() {
  const ExperimentConfig cfg =
      parse_config("t_b = 100e-9\nt_ed = 0\nt_hw = 0\nsnr_db = 30\naf_trials = 100\n");
  const auto rows = index_rows(run_gain_curves(cfg, RunOptions{5, 1, ""}));
  const double worst = rows.at("1e-07|||amplify_forward||af_max_gain_m");
  const double positive = rows.at("1e-07|||amplify_forward||af_positive_gain_rate");
  return {worst <= 0.0 && positive == 0.0,
          fmt("largest amplify-forward gain over 100 geometries = %.3f m", worst)};
}

Verdict ac10() {
  using Runner = std::function<ResultTable(const ExperimentConfig&, const RunOptions&)>;
  const std::pair<Runner, const char*> cases[] = {
      {run_simulate, "t_b = 100e-9\nsnr_db = 10\ndistances = 3, 9\ntrials = 3\n"},
      {run_ber_sweep, "t_b = 100e-9\nsnr_db = 4\nbits = 500\n"},
      {run_range_precision, "t_b = 100e-9\nsnr_db = 10\ndistance_count = 6\n"},
      {run_gain_curves, "t_b = 100e-9\nt_ed = 10e-9\nt_hw = 0\nd_ap = 3\nsnr_db = 20\nsimulate_attacks = 1\n"
                        "trials = 2\naf_trials = 4\n"},
      {run_detector_roc, "t_b = 100e-9\nsnr_db = 12\ncommit_fractions = 0.4\ntrials = 3\nhonest_trials = 3\n"},
  };
  int same = 0;
  for (const auto& [run, text] : cases) {
    const ExperimentConfig cfg = parse_config(text);
    const std::string a = csv(run(cfg, RunOptions{17, 1, ""}));
    const std::string b = csv(run(cfg, RunOptions{17, 1, ""}));
    const std::string c = csv(run(cfg, RunOptions{17, 3, ""}));
    same += a == b && a == c;
  }
  return {same == 5, fmt("%d/5 experiments byte-identical across re-runs and thread counts", same)};
}

}  // namespace

int main() {
  const std::pair<const char*, Verdict (*)()> criteria[] = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %s: %s\n", name, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
