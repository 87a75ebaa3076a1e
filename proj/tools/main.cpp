// SPDX-License-Identifier: Apache-2.0
//
// noma-sim - downlink mmWave-NOMA user clustering and rate simulator
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

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noma/experiment.hpp"

namespace {

// Flags shared by the subcommands. Values land here; presence is queried
// through CLI11 so that flags override file values which override defaults.
struct Options {
  std::string config_path;
  std::uint64_t seed = 0;
  int trials = 0;
  std::string out;
  std::vector<std::string> algorithms;
  int users = 0;
  int beams = 0;
  int antennas = 0;
  int beams_per_user = 0;
  int dmax = 0;
  double power = 0.0;
  std::string sweep_axis;
  std::vector<long long> sweep_values;
  int threads = 0;
};

void add_common_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("config", opt.config_path,
                  "Experiment config file (JSON); defaults apply if omitted")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", opt.seed, "Master seed");
  cmd->add_option("--trials", opt.trials, "Monte Carlo trials per point");
  cmd->add_option("--out", opt.out, "Output CSV path");
  cmd->add_option("--algorithm", opt.algorithms,
                  "Algorithm to run (repeatable): mec-greedy, mec-exact, bb, "
                  "bb:<m>, bb-het:<m>, oma");
  cmd->add_option("--users", opt.users, "Number of users N");
  cmd->add_option("--beams", opt.beams, "Codebook divisions B (B+1 beams)");
  cmd->add_option("--antennas", opt.antennas, "Array elements M");
  cmd->add_option("--beams-per-user", opt.beams_per_user,
                  "Candidate beams per user b");
  cmd->add_option("--dmax", opt.dmax, "Maximum decoding capability d_max");
  cmd->add_option("--power", opt.power, "Transmit power per beam, watts");
  cmd->add_option("--sweep-axis", opt.sweep_axis,
                  "Sweep axis: none, d_max, b, N, B, M");
  cmd->add_option("--sweep-values", opt.sweep_values,
                  "Sweep grid values (repeatable)");
  cmd->add_option("--threads", opt.threads,
                  "Worker threads (0 = hardware concurrency)");
}

noma::ExperimentFile effective_file(const CLI::App* cmd, const Options& opt) {
  noma::ExperimentFile file;
  if (!opt.config_path.empty()) file = noma::parse_config(opt.config_path);
  if (cmd->count("--seed")) file.scenario.seed = opt.seed;
  if (cmd->count("--trials")) file.trials = opt.trials;
  if (cmd->count("--out")) file.output = opt.out;
  if (cmd->count("--algorithm")) {
    file.algorithms.clear();
    for (const auto& name : opt.algorithms) {
      file.algorithms.push_back(noma::parse_algorithm(name));
    }
  }
  if (cmd->count("--users")) file.scenario.num_users = opt.users;
  if (cmd->count("--beams")) file.scenario.num_divisions = opt.beams;
  if (cmd->count("--antennas")) file.scenario.num_antennas = opt.antennas;
  if (cmd->count("--beams-per-user")) {
    file.scenario.beams_per_user = opt.beams_per_user;
  }
  if (cmd->count("--dmax")) file.scenario.d_max = opt.dmax;
  if (cmd->count("--power")) file.scenario.power = opt.power;
  if (cmd->count("--sweep-axis")) {
    file.sweep_axis = noma::parse_sweep_axis(opt.sweep_axis);
    if (file.sweep_axis == noma::SweepAxis::none) file.sweep_values.clear();
  }
  if (cmd->count("--sweep-values")) file.sweep_values = opt.sweep_values;

  noma::validate(file.scenario);
  if (file.trials < 1) throw std::invalid_argument("trials: must be >= 1");
  if (file.sweep_axis != noma::SweepAxis::none && file.sweep_values.empty()) {
    throw std::invalid_argument("sweep.values: must be non-empty");
  }
  for (long long v : file.sweep_values) {
    noma::apply_sweep(file.scenario, file.sweep_axis, v);
  }
  return file;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"noma-sim: downlink mmWave-NOMA clustering and rate "
               "simulator"};
  app.require_subcommand(1);

  Options run_opt;
  CLI::App* run_cmd =
      app.add_subcommand("run", "Run an experiment and write a CSV");
  add_common_options(run_cmd, run_opt);

  Options print_opt;
  CLI::App* print_cmd = app.add_subcommand(
      "print-config", "Print the effective experiment config as JSON");
  add_common_options(print_cmd, print_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const noma::ExperimentFile file = effective_file(run_cmd, run_opt);
      noma::run_experiment(file, run_opt.threads);
      std::cout << file.output << '\n';
    } else if (print_cmd->parsed()) {
      const noma::ExperimentFile file = effective_file(print_cmd, print_opt);
      std::cout << noma::serialize_config(file);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
