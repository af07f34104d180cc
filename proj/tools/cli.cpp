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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "fmcwdb/harness/config.hpp"
#include "fmcwdb/harness/experiments.hpp"

namespace fmcwdb::cli {

namespace {

using Runner = harness::ResultTable (*)(const harness::ExperimentConfig&, const harness::RunOptions&);

const std::map<std::string, std::pair<Runner, const char*>>& subcommands() {
  static const std::map<std::string, std::pair<Runner, const char*>> table = {
      {"simulate", {harness::run_simulate, "Run honest rapid-bit exchanges over a parameter grid"}},
      {"ber-sweep", {harness::run_ber_sweep, "Bit error rate versus SNR"}},
      {"range-sweep", {harness::run_range_precision, "Mean ranging error over random distances"}},
      {"attack-sweep", {harness::run_gain_curves, "Attack time budgets, distance gains and attack simulations"}},
      {"detector-roc", {harness::run_detector_roc, "Late-commit detector false positives and detection rates"}},
  };
  return table;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"OOK-FMCW distance-bounding simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  unsigned jobs = 1;
  std::string dump_dir;

  for (const auto& [name, entry] : subcommands()) {
    CLI::App* sub = app.add_subcommand(name, entry.second);
    sub->add_option("--config", config_path, "Experiment config file (key=value)")->required();
    sub->add_option("--seed", seed, "Base seed; overrides the config and FMCWDB_SEED");
    sub->add_option("--out", out_path, "CSV output path (default: config `out`, else stdout)");
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--dump-waveforms", dump_dir, "Directory for I/Q captures of the first trial per point");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    const int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? 0 : 2;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    const harness::ExperimentConfig cfg = harness::load_config(config_path);
    harness::RunOptions opt;
    opt.seed = harness::resolve_seed(seed, cfg);
    opt.jobs = jobs;
    opt.dump_dir = dump_dir;
    const std::string dest = out_path.empty() ? cfg.out : out_path;
    if (cfg.plot_data && dest.empty()) throw InvalidConfig("plot_data", "needs an output path (--out or out=)");

    const harness::ResultTable table = subcommands().at(name).first(cfg, opt);
    std::ostringstream csv;
    harness::write_csv(csv, table);

    std::ostream& summary = dest.empty() ? err : out;
    if (dest.empty()) {
      out << csv.str();
    } else {
      write_file(dest, csv.str());
      if (cfg.plot_data) {
        std::ostringstream pts;
        harness::write_points_csv(pts, table);
        write_file(dest + ".points.csv", pts.str());
      }
    }
    summary << name << ": " << table.rows.size() << " rows, " << table.total_trials << " trials, seed "
            << opt.seed << " -> " << (dest.empty() ? "stdout" : dest) << '\n';
    return 0;
  } catch (const InvalidConfig& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace fmcwdb::cli
