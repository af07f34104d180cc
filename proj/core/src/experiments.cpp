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

#include "fmcwdb/harness/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include "fmcwdb/attacks.hpp"
#include "fmcwdb/harness/capture.hpp"

namespace fmcwdb::harness {

namespace {

// Sub-stream indices for derive_seed, beyond the 0..2 used by an exchange.
constexpr std::uint64_t kKeyStream = 3;
constexpr std::uint64_t kRegister0Stream = 4;
constexpr std::uint64_t kRegister1Stream = 5;
constexpr std::uint64_t kDistanceStream = 6;
constexpr std::uint64_t kGeometryStream = 7;

double unit_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::string fmt_size(std::size_t n) { return std::to_string(n); }

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

VerifierPolicy policy_for(const ExperimentConfig& cfg) {
  VerifierPolicy p;
  p.distance_bound = cfg.distance_bound;
  p.response_fn = cfg.response_fn;
  p.n_bins = cfg.n_bins.front();
  p.threshold_db = cfg.threshold_db;
  p.spectrum.zero_pad = cfg.zero_pad;
  p.spectrum.window = cfg.window;
  p.spectrum.interpolation = cfg.interpolation;
  return p;
}

ResponseSecret secret_for(ResponseFunction fn, std::size_t pairs, std::uint64_t trial_seed) {
  ResponseSecret s;
  if (fn == ResponseFunction::xor_key) s.key = random_bits(pairs, derive_seed(trial_seed, kKeyStream));
  if (fn == ResponseFunction::hk_register) {
    s.r0 = random_bits(pairs, derive_seed(trial_seed, kRegister0Stream));
    s.r1 = random_bits(pairs, derive_seed(trial_seed, kRegister1Stream));
  }
  return s;
}

void dump_trace(const std::string& dir, std::size_t point, const ExchangeTrace& tr) {
  std::filesystem::create_directories(dir);
  const std::string stem = dir + "/point" + std::to_string(point) + "_";
  write_capture(stem + "interrogation.iq", tr.interrogation);
  write_capture(stem + "prover_tx.iq", tr.prover_tx);
  write_capture(stem + "received.iq", tr.receive.received);
  write_capture(stem + "intermediate.iq", tr.receive.intermediate);
}

}  // namespace

std::uint64_t resolve_seed(std::optional<std::uint64_t> override_seed, const ExperimentConfig& cfg) {
  if (override_seed) return *override_seed;
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("FMCWDB_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || env[0] == '-') throw InvalidConfig("FMCWDB_SEED", "not a non-negative integer");
    return v;
  }
  return 1;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_csv(std::ostream& out, const ResultTable& t) {
  out << "experiment";
  for (const auto& p : t.param_names) out << ',' << p;
  out << ",metric,value,trials,seed\n";
  for (const auto& r : t.rows) {
    out << t.experiment;
    for (const auto& p : r.params) out << ',' << p;
    out << ',' << r.metric << ',' << format_number(r.value) << ',' << r.trials << ',' << r.seed << '\n';
  }
}

void write_points_csv(std::ostream& out, const ResultTable& t) {
  out << "experiment";
  for (const auto& c : t.point_columns) out << ',' << c;
  out << '\n';
  for (const auto& p : t.points) {
    out << t.experiment;
    for (double v : p) out << ',' << format_number(v);
    out << '\n';
  }
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(jobs, 1u), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

ChirpConfig chirp_for(const ExperimentConfig& cfg, double f_bw) {
  ChirpConfig c;
  c.f0 = cfg.f0;
  c.f_bw = f_bw;
  c.T = cfg.T;
  c.fs = cfg.fs > 0.0 ? cfg.fs : kDefaultOversampling * f_bw;
  c.validate();
  return c;
}

ExchangeSetup exchange_setup(const ExperimentConfig& cfg, double f_bw, double t_b, double snr_db, double distance,
                             std::uint64_t trial_seed) {
  ExchangeSetup s;
  s.cfg = chirp_for(cfg, f_bw);
  s.t_b = t_b;
  s.modulation_index = cfg.modulation_index;
  s.forward = LegParams{distance, 0.0, 0.0};
  s.backward = s.forward;
  s.snr_db = snr_db;
  s.seed = trial_seed;
  s.policy = policy_for(cfg);

  const std::size_t pairs = FrameLayout::make(s.cfg, t_b).pair_count();
  const ResponseSecret secret = secret_for(cfg.response_fn, pairs, trial_seed);
  s.policy.secret = secret;
  s.prover.t_p = cfg.t_p;
  s.prover.reflect_gain_db = cfg.reflect_gain_db;
  s.prover.response_fn = cfg.response_fn;
  s.prover.secret = secret;
  return s;
}

namespace {

AttackScenario attack_scenario(const ExperimentConfig& cfg, double t_b, double snr_db, std::uint64_t trial_seed) {
  AttackScenario sc;
  sc.cfg = chirp_for(cfg, cfg.f_bw.front());
  sc.t_b = t_b;
  sc.modulation_index = cfg.modulation_index;
  sc.snr_db = snr_db;
  sc.seed = trial_seed;
  sc.attacker.d_va = cfg.d_va;
  sc.attacker.min_commit_fraction = cfg.min_commit_fraction;
  sc.policy = policy_for(cfg);

  const std::size_t pairs = FrameLayout::make(sc.cfg, t_b).pair_count();
  const ResponseSecret secret = secret_for(cfg.response_fn, pairs, trial_seed);
  sc.policy.secret = secret;
  sc.prover.t_p = cfg.t_p;
  sc.prover.reflect_gain_db = cfg.reflect_gain_db;
  sc.prover.response_fn = cfg.response_fn;
  sc.prover.secret = secret;
  return sc;
}

}  // namespace

ResultTable run_simulate(const ExperimentConfig& cfg, const RunOptions& opt) {
  ResultTable t;
  t.experiment = "simulate";
  t.param_names = {"f_bw", "t_b", "snr_db", "distance"};
  t.point_columns = {"f_bw", "t_b", "snr_db", "trial", "distance", "estimate"};

  std::size_t point = 0;
  for (double f_bw : cfg.f_bw)
    for (double t_b : cfg.t_b)
      for (double snr : cfg.snr_db)
        for (double d : cfg.distances) {
          std::vector<ExchangeResult> res(cfg.trials);
          parallel_for(cfg.trials, opt.jobs, [&](std::size_t i) {
            const ExchangeSetup s = exchange_setup(cfg, f_bw, t_b, snr, d, opt.seed + i);
            if (i == 0 && !opt.dump_dir.empty()) {
              ExchangeTrace tr;
              res[i] = run_rapid_bit_exchange(s, &tr);
              dump_trace(opt.dump_dir, point, tr);
            } else {
              res[i] = run_rapid_bit_exchange(s);
            }
          });

          std::vector<double> errors;
          double accepted = 0, bit_errors = 0, echo_errors = 0, flagged = 0, bits = 0;
          for (std::size_t i = 0; i < res.size(); ++i) {
            const VerifierReport& r = res[i].report;
            if (r.range_valid) errors.push_back(std::abs(r.range.distance - d));
            accepted += r.accepted;
            bit_errors += static_cast<double>(r.range_valid ? r.response_errors : res[i].challenges.size());
            echo_errors += static_cast<double>(r.range_valid ? r.challenge_echo_errors : res[i].challenges.size());
            flagged += r.lc_verdict == LateCommitVerdict::late_commit_suspected;
            bits += static_cast<double>(res[i].challenges.size());
            t.points.push_back({f_bw, t_b, snr, static_cast<double>(i), d,
                                r.range_valid ? r.range.distance : std::numeric_limits<double>::quiet_NaN()});
          }
          const double n = static_cast<double>(cfg.trials);
          const std::vector<std::string> params = {format_number(f_bw), format_number(t_b), format_number(snr),
                                                   format_number(d)};
          auto row = [&](const char* metric, double v) {
            t.rows.push_back({params, metric, v, cfg.trials, opt.seed});
          };
          row("mean_error_m", mean_of(errors));
          row("valid_fraction", static_cast<double>(errors.size()) / n);
          row("acceptance_rate", accepted / n);
          row("response_ber", bit_errors / bits);
          row("echo_error_rate", echo_errors / bits);
          row("lc_flag_rate", flagged / n);
          row("range_resolution_m", range_resolution(f_bw));
          t.total_trials += cfg.trials;
          ++point;
        }
  return t;
}

ResultTable run_ber_sweep(const ExperimentConfig& cfg, const RunOptions& opt) {
  ResultTable t;
  t.experiment = "ber_sweep";
  t.param_names = {"f_bw", "t_b", "snr_db"};
  t.point_columns = {"f_bw", "t_b", "snr_db", "trial", "bit_errors"};
  const double d = cfg.distances.front();

  for (double f_bw : cfg.f_bw)
    for (double t_b : cfg.t_b) {
      const std::size_t pairs = FrameLayout::make(chirp_for(cfg, f_bw), t_b).pair_count();
      const std::size_t trials = std::max(cfg.trials, (cfg.bits + pairs - 1) / pairs);
      for (double snr : cfg.snr_db) {
        std::vector<std::size_t> errs(trials);
        parallel_for(trials, opt.jobs, [&](std::size_t i) {
          const ExchangeResult r = run_rapid_bit_exchange(exchange_setup(cfg, f_bw, t_b, snr, d, opt.seed + i));
          errs[i] = r.report.range_valid ? r.report.response_errors : pairs;
        });
        double errors = 0;
        for (std::size_t i = 0; i < trials; ++i) {
          errors += static_cast<double>(errs[i]);
          t.points.push_back({f_bw, t_b, snr, static_cast<double>(i), static_cast<double>(errs[i])});
        }
        const double bits = static_cast<double>(trials * pairs);
        const double ber = errors / bits;
        const double upper = errors == 0 ? 3.0 / bits : ber + 1.96 * std::sqrt(ber * (1.0 - ber) / bits);
        const std::vector<std::string> params = {format_number(f_bw), format_number(t_b), format_number(snr)};
        auto row = [&](const char* metric, double v) { t.rows.push_back({params, metric, v, trials, opt.seed}); };
        row("bits", bits);
        row("bit_errors", errors);
        row("ber", ber);
        row("ber_upper_95", upper);
        row("zero_errors_observed", errors == 0 ? 1.0 : 0.0);
        t.total_trials += trials;
      }
    }
  return t;
}

ResultTable run_range_precision(const ExperimentConfig& cfg, const RunOptions& opt) {
  ResultTable t;
  t.experiment = "range_precision";
  t.param_names = {"f_bw", "t_b", "snr_db"};
  t.point_columns = {"f_bw", "t_b", "snr_db", "trial", "distance", "estimate"};
  const std::size_t n = cfg.distance_count;

  for (double f_bw : cfg.f_bw) {
    const double d_max = max_unambiguous_distance(chirp_for(cfg, f_bw));
    for (double t_b : cfg.t_b)
      for (double snr : cfg.snr_db) {
        std::vector<double> truth(n), est(n);
        parallel_for(n, opt.jobs, [&](std::size_t i) {
          std::mt19937_64 rng(derive_seed(opt.seed + i, kDistanceStream));
          truth[i] = d_max * unit_open(rng);
          const ExchangeResult r =
              run_rapid_bit_exchange(exchange_setup(cfg, f_bw, t_b, snr, truth[i], opt.seed + i));
          est[i] = r.report.range_valid ? r.report.range.distance : std::numeric_limits<double>::quiet_NaN();
        });
        std::vector<double> abs_err;
        double sq = 0.0, worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          t.points.push_back({f_bw, t_b, snr, static_cast<double>(i), truth[i], est[i]});
          if (std::isnan(est[i])) continue;
          const double e = std::abs(est[i] - truth[i]);
          abs_err.push_back(e);
          sq += e * e;
          worst = std::max(worst, e);
        }
        const std::vector<std::string> params = {format_number(f_bw), format_number(t_b), format_number(snr)};
        auto row = [&](const char* metric, double v) { t.rows.push_back({params, metric, v, n, opt.seed}); };
        row("mean_error_m", mean_of(abs_err));
        row("rms_error_m", abs_err.empty() ? std::numeric_limits<double>::quiet_NaN()
                                           : std::sqrt(sq / static_cast<double>(abs_err.size())));
        row("max_error_m", worst);
        row("valid_fraction", static_cast<double>(abs_err.size()) / static_cast<double>(n));
        row("range_resolution_m", range_resolution(f_bw));
        t.total_trials += n;
      }
  }
  return t;
}

ResultTable run_gain_curves(const ExperimentConfig& cfg, const RunOptions& opt) {
  ResultTable t;
  t.experiment = "gain_curves";
  t.param_names = {"t_b", "t_ed", "t_hw", "prover", "d_ap"};
  t.point_columns = {"t_b", "t_ed", "t_hw", "colluding", "d_ap", "trial", "claimed", "gain", "success"};

  for (double t_b : cfg.t_b)
    for (double t_ed : cfg.t_ed)
      for (double t_hw : cfg.t_hw)
        for (bool trusted : {true, false}) {
          const std::vector<std::string> params = {format_number(t_b), format_number(t_ed), format_number(t_hw),
                                                   trusted ? "trusted" : "colluding", ""};
          const double budget = mafia_time_budget(t_b, t_ed, t_hw, trusted);
          t.rows.push_back({params, "time_budget_s", budget, 0, opt.seed});
          t.rows.push_back({params, "max_distance_gain_m", max_distance_gain(t_b, t_ed, t_hw, trusted), 0, opt.seed});
          t.rows.push_back({params, "feasible", budget >= 0.0 ? 1.0 : 0.0, 0, opt.seed});
          if (!cfg.simulate_attacks) continue;

          for (double d_ap : cfg.d_ap) {
            std::vector<AttackOutcome> out(cfg.trials);
            parallel_for(cfg.trials, opt.jobs, [&](std::size_t i) {
              AttackScenario sc = attack_scenario(cfg, t_b, cfg.snr_db.front(), opt.seed + i);
              sc.attacker.t_ed = t_ed;
              sc.attacker.t_hw = t_hw;
              sc.attacker.d_ap = d_ap;
              sc.attacker.mode = trusted ? AttackMode::ed_lc_mafia : AttackMode::terrorist_special;
              out[i] = simulate_attack(sc);
            });
            double success = 0, accepted = 0, flagged = 0, best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < out.size(); ++i) {
              const AttackOutcome& o = out[i];
              const bool ok = o.responses_accepted && o.lc_verdict == LateCommitVerdict::clean && o.distance_gain > 0;
              success += ok;
              accepted += o.responses_accepted;
              flagged += o.lc_verdict == LateCommitVerdict::late_commit_suspected;
              if (ok) best = std::max(best, o.distance_gain);
              t.points.push_back({t_b, t_ed, t_hw, trusted ? 0.0 : 1.0, d_ap, static_cast<double>(i),
                                  o.claimed_distance, o.distance_gain, ok ? 1.0 : 0.0});
            }
            std::vector<std::string> sim_params = params;
            sim_params.back() = format_number(d_ap);
            const double n = static_cast<double>(cfg.trials);
            auto row = [&](const char* metric, double v) {
              t.rows.push_back({sim_params, metric, v, cfg.trials, opt.seed});
            };
            row("success_rate", success / n);
            row("responses_accepted_rate", accepted / n);
            row("lc_flag_rate", flagged / n);
            row("best_success_gain_m", success > 0 ? best : std::numeric_limits<double>::quiet_NaN());
            t.total_trials += cfg.trials;
          }
        }

  if (cfg.af_trials > 0) {
    // Verifier at the origin, prover on the x axis, attacker anywhere in a
    // box around them.
    std::vector<AttackOutcome> out(cfg.af_trials);
    const double t_b = cfg.t_b.front();
    parallel_for(cfg.af_trials, opt.jobs, [&](std::size_t i) {
      std::mt19937_64 rng(derive_seed(opt.seed + i, kGeometryStream));
      const double d_vp = 1.0 + 29.0 * unit_open(rng);
      const double ax = -20.0 + 70.0 * unit_open(rng);
      const double ay = -30.0 + 60.0 * unit_open(rng);
      AttackScenario sc = attack_scenario(cfg, t_b, cfg.snr_db.front(), opt.seed + i);
      sc.attacker.mode = AttackMode::amplify_forward;
      sc.attacker.d_va = std::hypot(ax, ay);
      sc.attacker.d_ap = std::hypot(d_vp - ax, ay);
      sc.attacker.d_vp = d_vp;
      sc.attacker.t_hw = 10e-9 * unit_open(rng);
      out[i] = simulate_attack(sc);
    });
    double worst = -std::numeric_limits<double>::infinity(), positive = 0, accepted = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const AttackOutcome& o = out[i];
      worst = std::max(worst, o.distance_gain);
      positive += o.distance_gain > 0.0;
      accepted += o.responses_accepted;
      t.points.push_back({t_b, 0.0, o.report.range_valid ? 1.0 : 0.0, 0.0, o.true_distance, static_cast<double>(i),
                          o.claimed_distance, o.distance_gain, o.distance_gain > 0.0 ? 1.0 : 0.0});
    }
    const std::vector<std::string> params = {format_number(t_b), "", "", "amplify_forward", ""};
    const double n = static_cast<double>(cfg.af_trials);
    t.rows.push_back({params, "af_max_gain_m", worst, cfg.af_trials, opt.seed});
    t.rows.push_back({params, "af_positive_gain_rate", positive / n, cfg.af_trials, opt.seed});
    t.rows.push_back({params, "af_responses_accepted_rate", accepted / n, cfg.af_trials, opt.seed});
    t.total_trials += cfg.af_trials;
  }
  return t;
}

ResultTable run_detector_roc(const ExperimentConfig& cfg, const RunOptions& opt) {
  ResultTable t;
  t.experiment = "detector_roc";
  t.param_names = {"n_bins", "snr_db", "commit_fraction"};
  const double f_bw = cfg.f_bw.front();
  const double t_b = cfg.t_b.front();
  const double threshold_db = commit_threshold_db(cfg.min_commit_fraction);
  auto flagged = [](const VerifierReport& r) { return r.lc_verdict == LateCommitVerdict::late_commit_suspected; };

  for (std::size_t n_bins : cfg.n_bins)
    for (double snr : cfg.snr_db) {
      {
        std::vector<VerifierReport> rep(cfg.honest_trials);
        parallel_for(cfg.honest_trials, opt.jobs, [&](std::size_t i) {
          ExchangeSetup s = exchange_setup(cfg, f_bw, t_b, snr, cfg.d_va, opt.seed + i);
          s.policy.n_bins = n_bins;
          s.policy.threshold_db = threshold_db;
          rep[i] = run_rapid_bit_exchange(s).report;
        });
        double rejected = 0, lc = 0;
        for (const auto& r : rep) {
          rejected += !r.accepted;
          lc += flagged(r);
        }
        const double n = static_cast<double>(cfg.honest_trials);
        const std::vector<std::string> params = {fmt_size(n_bins), format_number(snr), ""};
        t.rows.push_back({params, "false_positive_rate", rejected / n, cfg.honest_trials, opt.seed});
        t.rows.push_back({params, "lc_false_positive_rate", lc / n, cfg.honest_trials, opt.seed});
        t.total_trials += cfg.honest_trials;
      }
      for (double fraction : cfg.commit_fractions) {
        std::vector<AttackOutcome> out(cfg.trials);
        parallel_for(cfg.trials, opt.jobs, [&](std::size_t i) {
          AttackScenario sc = attack_scenario(cfg, t_b, snr, opt.seed + i);
          sc.policy.n_bins = n_bins;
          out[i] = simulate_late_commit_reflector(sc, fraction);
        });
        double rejected = 0, lc = 0;
        for (const auto& o : out) {
          rejected += !o.accepted;
          lc += flagged(o.report);
        }
        const double n = static_cast<double>(cfg.trials);
        const std::vector<std::string> params = {fmt_size(n_bins), format_number(snr), format_number(fraction)};
        t.rows.push_back({params, "detection_rate", rejected / n, cfg.trials, opt.seed});
        t.rows.push_back({params, "lc_detection_rate", lc / n, cfg.trials, opt.seed});
        t.total_trials += cfg.trials;
      }
    }
  return t;
}

}  // namespace fmcwdb::harness
