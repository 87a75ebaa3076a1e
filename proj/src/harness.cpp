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

#include "noma/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace noma {

void validate(const ScenarioConfig& config) {
  if (config.num_users < 1) {
    throw std::invalid_argument("num_users must be >= 1");
  }
  if (config.num_divisions < 1) {
    throw std::invalid_argument("num_divisions must be >= 1");
  }
  if (config.num_antennas < 1) {
    throw std::invalid_argument("num_antennas must be >= 1");
  }
  if (config.beams_per_user < 1 ||
      config.beams_per_user > config.num_divisions + 1) {
    throw std::invalid_argument(
        "beams_per_user must be in [1, num_divisions + 1]");
  }
  if (config.d_max < 1 || config.d_max > kMaxClusterMembers) {
    throw std::invalid_argument("d_max must be in [1, 16]");
  }
  if (!(config.radius > 0.0)) {
    throw std::invalid_argument("radius must be > 0");
  }
  if (config.channel.num_paths < 1) {
    throw std::invalid_argument("num_paths must be >= 1");
  }
  if (!(config.channel.pathloss_exponent >= 0.0)) {
    throw std::invalid_argument("pathloss_exponent must be >= 0");
  }
  if (!(config.spacing_ratio > 0.0)) {
    throw std::invalid_argument("spacing_ratio must be > 0");
  }
  if (!(config.power > 0.0)) {
    throw std::invalid_argument("power must be > 0");
  }
  if (!(config.noise > 0.0)) {
    throw std::invalid_argument("noise must be > 0");
  }
  if (!(config.qos_sinr >= 0.0)) {
    throw std::invalid_argument("qos_sinr must be >= 0");
  }
}

AlgorithmSpec parse_algorithm(std::string_view text) {
  std::string_view name = text;
  int m = 0;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    name = text.substr(0, colon);
    const std::string_view arg = text.substr(colon + 1);
    if (arg.empty()) throw std::invalid_argument("algorithm: missing m");
    m = 0;
    for (char c : arg) {
      if (c < '0' || c > '9') {
        throw std::invalid_argument("algorithm: m must be a positive integer");
      }
      m = m * 10 + (c - '0');
      if (m > 1000) throw std::invalid_argument("algorithm: m out of range");
    }
    if (m < 1) throw std::invalid_argument("algorithm: m must be >= 1");
  }
  AlgorithmSpec spec;
  spec.m = m;
  if (name == "mec-greedy") {
    spec.tag = AlgorithmTag::mec_greedy;
  } else if (name == "mec-exact") {
    spec.tag = AlgorithmTag::mec_exact;
  } else if (name == "bb") {
    spec.tag = AlgorithmTag::bb;
  } else if (name == "bb-het") {
    spec.tag = AlgorithmTag::bb_het;
  } else if (name == "oma") {
    spec.tag = AlgorithmTag::oma;
  } else {
    throw std::invalid_argument("unknown algorithm '" + std::string(text) +
                                "'");
  }
  if (spec.tag == AlgorithmTag::bb_het && spec.m == 0) {
    throw std::invalid_argument("bb-het requires an explicit m (bb-het:<m>)");
  }
  if (spec.m != 0 && spec.tag != AlgorithmTag::bb &&
      spec.tag != AlgorithmTag::bb_het) {
    throw std::invalid_argument("only bb and bb-het accept an m argument");
  }
  return spec;
}

std::string algorithm_name(const AlgorithmSpec& spec) {
  switch (spec.tag) {
    case AlgorithmTag::mec_greedy: return "mec-greedy";
    case AlgorithmTag::mec_exact: return "mec-exact";
    case AlgorithmTag::bb:
      return spec.m == 0 ? "bb" : "bb:" + std::to_string(spec.m);
    case AlgorithmTag::bb_het: return "bb-het:" + std::to_string(spec.m);
    case AlgorithmTag::oma: return "oma";
  }
  return "unknown";
}

std::uint64_t trial_seed(std::uint64_t master_seed,
                         std::uint64_t trial_index) {
  std::uint64_t z = master_seed + (trial_index + 1) * 0x9E3779B97F4A7C15ull;
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

namespace {

// 53-bit uniform on [0, 1).
double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1); rejects the zero draw so log and open intervals are safe.
double uniform_open(std::mt19937_64& g) {
  double u = uniform01(g);
  while (u == 0.0) u = uniform01(g);
  return u;
}

} // namespace

std::vector<UserChannel> generate_users(const ScenarioConfig& config,
                                        std::uint64_t trial_index) {
  validate(config);
  std::mt19937_64 g(trial_seed(config.seed, trial_index));
  const ArrayGeometry geometry{config.num_antennas, config.spacing_ratio};
  std::vector<UserChannel> users;
  users.reserve(static_cast<std::size_t>(config.num_users));
  for (int u = 0; u < config.num_users; ++u) {
    const double theta =
        -std::numbers::pi / 2.0 + std::numbers::pi * uniform_open(g);
    const double distance = config.radius * (1.0 - uniform01(g));
    const double u1 = uniform_open(g);
    const double u2 = uniform01(g);
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const std::complex<double> alpha(
        mag * std::cos(2.0 * std::numbers::pi * u2) / std::numbers::sqrt2,
        mag * std::sin(2.0 * std::numbers::pi * u2) / std::numbers::sqrt2);
    users.push_back(generate_channel(u, theta, distance, alpha, geometry,
                                     config.channel));
  }
  // Capabilities come after every channel draw so user positions are
  // identical across capability modes and d_max values at a fixed seed.
  for (auto& user : users) {
    user.decoding_capability =
        config.capability_mode == CapabilityMode::homogeneous
            ? config.d_max
            : static_cast<int>(g() %
                               (static_cast<std::uint64_t>(config.d_max) + 1));
  }
  return users;
}

Scenario build_scenario(const ScenarioConfig& config,
                        std::uint64_t trial_index) {
  Scenario s;
  s.users = generate_users(config, trial_index);
  const ArrayGeometry geometry{config.num_antennas, config.spacing_ratio};
  s.codebook = build_codebook(config.num_divisions, geometry);
  s.beam_sets.reserve(s.users.size());
  for (const auto& user : s.users) {
    s.beam_sets.push_back(
        user_beam_set(user, s.codebook, config.beams_per_user));
  }
  s.gains = build_gain_table(s.users, s.codebook);
  s.best_beams.reserve(s.users.size());
  s.capabilities.reserve(s.users.size());
  for (const auto& set : s.beam_sets) s.best_beams.push_back(set.beams.front());
  for (const auto& user : s.users) {
    s.capabilities.push_back(user.decoding_capability);
  }
  return s;
}

namespace {

TrialResult run_on_scenario(const Scenario& s, const ScenarioConfig& config,
                            const AlgorithmSpec& algorithm) {
  const auto start = std::chrono::steady_clock::now();
  ClusterPlan plan;
  switch (algorithm.tag) {
    case AlgorithmTag::mec_greedy:
    case AlgorithmTag::mec_exact: {
      const CandidateList candidates = enumerate_candidates(
          s.capabilities, s.beam_sets, s.gains, config.d_max);
      plan = algorithm.tag == AlgorithmTag::mec_greedy
                 ? greedy_mec(candidates)
                 : exact_mec(candidates);
      break;
    }
    case AlgorithmTag::bb:
      plan = noma_bb(s.best_beams, s.gains,
                     algorithm.m == 0 ? config.d_max : algorithm.m);
      break;
    case AlgorithmTag::bb_het:
      plan = noma_bb_het(s.capabilities, s.best_beams, s.gains, algorithm.m,
                         config.d_max);
      break;
    case AlgorithmTag::oma:
      plan = oma_plan(s.best_beams, s.gains);
      break;
  }
  const RateReport report =
      effective_sum_rate(plan, config.power, config.qos_sinr, config.noise);
  TrialResult result;
  result.algorithm = algorithm;
  result.num_clusters = report.num_clusters;
  result.sum_rate = report.effective_sum_rate;
  result.oma_rate = oma_rate(s.best_beams, s.gains, config.power,
                             config.noise);
  result.examined = plan.examined;
  result.candidate_count = plan.candidate_count;
  result.infeasible_clusters = report.infeasible_clusters;
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

} // namespace

TrialResult run_trial(const ScenarioConfig& config, std::uint64_t trial_index,
                      const AlgorithmSpec& algorithm) {
  const auto start = std::chrono::steady_clock::now();
  const Scenario s = build_scenario(config, trial_index);
  const double prep =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  TrialResult result = run_on_scenario(s, config, algorithm);
  result.elapsed_seconds += prep;
  return result;
}

std::vector<std::vector<TrialResult>> run_trials(
    const ScenarioConfig& config, int trials,
    const std::vector<AlgorithmSpec>& algorithms, int threads) {
  validate(config);
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (algorithms.empty()) {
    throw std::invalid_argument("at least one algorithm required");
  }
  std::vector<std::vector<TrialResult>> results(
      static_cast<std::size_t>(trials),
      std::vector<TrialResult>(algorithms.size()));

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        const auto start = std::chrono::steady_clock::now();
        const Scenario s =
            build_scenario(config, static_cast<std::uint64_t>(t));
        const double prep = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
          TrialResult r = run_on_scenario(s, config, algorithms[a]);
          r.elapsed_seconds += prep; // shared setup charged to every algorithm
          results[static_cast<std::size_t>(t)][a] = r;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(trials);
        return;
      }
    }
  };

  int n_threads = threads;
  if (n_threads <= 0) {
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
  }
  n_threads = std::min(n_threads, trials);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

std::string_view sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::none: return "none";
    case SweepAxis::d_max: return "d_max";
    case SweepAxis::beams_per_user: return "b";
    case SweepAxis::users: return "N";
    case SweepAxis::divisions: return "B";
    case SweepAxis::antennas: return "M";
  }
  return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view text) {
  if (text == "none") return SweepAxis::none;
  if (text == "d_max") return SweepAxis::d_max;
  if (text == "b") return SweepAxis::beams_per_user;
  if (text == "N") return SweepAxis::users;
  if (text == "B") return SweepAxis::divisions;
  if (text == "M") return SweepAxis::antennas;
  throw std::invalid_argument("unknown sweep axis '" + std::string(text) +
                              "' (expected none, d_max, b, N, B, or M)");
}

ScenarioConfig apply_sweep(ScenarioConfig config, SweepAxis axis,
                           long long value) {
  if (axis != SweepAxis::none &&
      (value < 1 || value > std::numeric_limits<int>::max())) {
    throw std::invalid_argument("sweep value out of range");
  }
  const int v = static_cast<int>(value);
  switch (axis) {
    case SweepAxis::none: break;
    case SweepAxis::d_max: config.d_max = v; break;
    case SweepAxis::beams_per_user: config.beams_per_user = v; break;
    case SweepAxis::users: config.num_users = v; break;
    case SweepAxis::divisions: config.num_divisions = v; break;
    case SweepAxis::antennas: config.num_antennas = v; break;
  }
  validate(config);
  return config;
}

namespace {

struct Stats {
  double mean(const std::vector<double>& xs) const {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
  }
  double standard_error(const std::vector<double>& xs, double mu) const {
    if (xs.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mu) * (x - mu);
    const double var = ss / static_cast<double>(xs.size() - 1);
    return std::sqrt(var / static_cast<double>(xs.size()));
  }
};

} // namespace

std::vector<AggregateRow> monte_carlo(
    const ScenarioConfig& config, int trials,
    const std::vector<AlgorithmSpec>& algorithms, SweepAxis axis,
    const std::vector<long long>& values, int threads) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (axis != SweepAxis::none && values.empty()) {
    throw std::invalid_argument("sweep values must be non-empty");
  }
  const std::vector<long long> points =
      axis == SweepAxis::none ? std::vector<long long>{0} : values;

  std::vector<AggregateRow> rows;
  rows.reserve(points.size() * algorithms.size());
  const Stats stats;
  for (long long value : points) {
    const ScenarioConfig point_config = apply_sweep(config, axis, value);
    const auto results = run_trials(point_config, trials, algorithms, threads);
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      std::vector<double> k, rsum, roma, i1, i2;
      k.reserve(results.size());
      rsum.reserve(results.size());
      roma.reserve(results.size());
      i1.reserve(results.size());
      i2.reserve(results.size());
      long long infeasible = 0;
      double seconds = 0.0;
      for (const auto& trial : results) {
        const TrialResult& r = trial[a];
        k.push_back(static_cast<double>(r.num_clusters));
        rsum.push_back(r.sum_rate);
        roma.push_back(r.oma_rate);
        i1.push_back(static_cast<double>(r.examined));
        i2.push_back(static_cast<double>(r.candidate_count));
        infeasible += r.infeasible_clusters;
        seconds += r.elapsed_seconds;
      }
      AggregateRow row;
      row.axis = axis;
      row.sweep_value = axis == SweepAxis::none ? 0 : value;
      row.algorithm = algorithms[a];
      row.trials = trials;
      row.k_mean = stats.mean(k);
      row.k_se = stats.standard_error(k, row.k_mean);
      row.rsum_mean = stats.mean(rsum);
      row.rsum_se = stats.standard_error(rsum, row.rsum_mean);
      row.roma_mean = stats.mean(roma);
      row.i1_mean = stats.mean(i1);
      row.i2_mean = stats.mean(i2);
      row.infeasible_total = infeasible;
      row.seconds = seconds;
      rows.push_back(row);
    }
  }
  return rows;
}

} // namespace noma
