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

#ifndef NOMA_HARNESS_HPP
#define NOMA_HARNESS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "noma/power.hpp"

namespace noma {

enum class CapabilityMode { homogeneous, uniform_random };

/// Full description of one Monte Carlo scenario point. Member initializers
/// are the default simulation parameters.
struct ScenarioConfig {
  int num_users = 100;        // N
  int num_divisions = 20;     // B, the codebook has B+1 beams
  int num_antennas = 8;       // M
  int beams_per_user = 2;     // b
  int d_max = 5;
  CapabilityMode capability_mode = CapabilityMode::uniform_random;
  double radius = 5.0;        // meters
  ChannelParams channel{};
  double spacing_ratio = 0.5; // antenna spacing over wavelength
  double power = 1.0;         // watts per beam
  double noise = 7.962e-11;   // watts
  double qos_sinr = 0.02;
  std::uint64_t seed = 1;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ScenarioConfig& config);

/// One clustering algorithm to run. `m` is the cluster size cap for the
/// beam-splitting variants; 0 means "use d_max" (plain splitting only).
struct AlgorithmSpec {
  AlgorithmTag tag = AlgorithmTag::mec_greedy;
  int m = 0;

  bool operator==(const AlgorithmSpec&) const = default;
};

/// Accepts "mec-greedy", "mec-exact", "bb", "bb:<m>", "bb-het:<m>", "oma".
/// Throws std::invalid_argument otherwise.
AlgorithmSpec parse_algorithm(std::string_view text);
std::string algorithm_name(const AlgorithmSpec& spec);

/// Everything one trial's algorithms consume, derived from (seed, trial).
struct Scenario {
  std::vector<UserChannel> users;
  BeamCodebook codebook;
  std::vector<UserBeamSet> beam_sets;
  GainTable gains;
  std::vector<int> best_beams;
  std::vector<int> capabilities;
};

/// Per-trial seed: a splitmix64 step of the master seed at the given index.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

/// N users fully determined by (config.seed, trial_index): angle uniform on
/// (-pi/2, pi/2), distance uniform on (0, radius], unit circularly-symmetric
/// complex Gaussian fading, capabilities per capability_mode (drawn after all
/// channel draws, so positions do not depend on d_max).
std::vector<UserChannel> generate_users(const ScenarioConfig& config,
                                        std::uint64_t trial_index);

/// Users plus codebook, beam sets, and gain table.
Scenario build_scenario(const ScenarioConfig& config,
                        std::uint64_t trial_index);

struct TrialResult {
  AlgorithmSpec algorithm;
  int num_clusters = 0;          // K
  double sum_rate = 0.0;         // R_sum
  double oma_rate = 0.0;         // R_OMA on the same scenario
  std::uint64_t examined = 0;        // I_1
  std::uint64_t candidate_count = 0; // I_2
  int infeasible_clusters = 0;
  double elapsed_seconds = 0.0;
};

TrialResult run_trial(const ScenarioConfig& config, std::uint64_t trial_index,
                      const AlgorithmSpec& algorithm);

/// results[t][a]: trial t under algorithm a, every algorithm sharing trial
/// t's scenario. threads <= 0 picks the hardware concurrency. Output is
/// identical for every thread count.
std::vector<std::vector<TrialResult>> run_trials(
    const ScenarioConfig& config, int trials,
    const std::vector<AlgorithmSpec>& algorithms, int threads = 0);

enum class SweepAxis { none, d_max, beams_per_user, users, divisions,
                       antennas };

/// Axis names: "none", "d_max", "b", "N", "B", "M".
std::string_view sweep_axis_name(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view text);

/// Returns config with the axis field set to value; validates the result.
ScenarioConfig apply_sweep(ScenarioConfig config, SweepAxis axis,
                           long long value);

/// Aggregates of one (sweep value, algorithm) cell.
struct AggregateRow {
  SweepAxis axis = SweepAxis::none;
  long long sweep_value = 0;
  AlgorithmSpec algorithm;
  int trials = 0;
  double k_mean = 0.0;
  double k_se = 0.0;
  double rsum_mean = 0.0;
  double rsum_se = 0.0;
  double roma_mean = 0.0;
  double i1_mean = 0.0;
  double i2_mean = 0.0;
  long long infeasible_total = 0;
  double seconds = 0.0; // wall time summed over trials
};

/// Rows ordered sweep values outer, algorithms inner. axis == none runs the
/// config as-is (one row per algorithm, sweep_value 0). Standard errors are
/// sample standard deviation over sqrt(trials), 0 when trials < 2.
std::vector<AggregateRow> monte_carlo(const ScenarioConfig& config, int trials,
                                      const std::vector<AlgorithmSpec>& algorithms,
                                      SweepAxis axis,
                                      const std::vector<long long>& values,
                                      int threads = 0);

} // namespace noma

#endif
