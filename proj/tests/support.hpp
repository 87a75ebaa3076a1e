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

#ifndef NOMA_TESTS_SUPPORT_HPP
#define NOMA_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "noma/harness.hpp"

namespace noma::testing {

/// Structural invariants every emitted plan must satisfy: exact cover, SIC
/// validity, beam membership, gain ordering. Returns human-readable
/// violations, empty when the plan is sound. `beams_must_be_best` applies the
/// stricter rule for the best-beam algorithms (bb, bb-het, oma).
inline std::vector<std::string> plan_violations(
    const ClusterPlan& plan, const std::vector<int>& capabilities,
    const std::vector<UserBeamSet>& beam_sets, const GainTable& gains,
    bool beams_must_be_best) {
  std::vector<std::string> out;
  std::vector<int> seen(capabilities.size(), 0);
  for (const auto& cluster : plan.clusters) {
    for (std::size_t p = 0; p < cluster.members.size(); ++p) {
      const int user = cluster.members[p];
      if (user < 0 || user >= static_cast<int>(capabilities.size())) {
        out.push_back("member id out of range");
        continue;
      }
      ++seen[static_cast<std::size_t>(user)];
      if (capabilities[static_cast<std::size_t>(user)] <
          static_cast<int>(p)) {
        out.push_back("SIC violation: user " + std::to_string(user) +
                      " at position " + std::to_string(p + 1) +
                      " with capability " +
                      std::to_string(
                          capabilities[static_cast<std::size_t>(user)]));
      }
      const auto& beams = beam_sets[static_cast<std::size_t>(user)].beams;
      if (beams_must_be_best) {
        if (beams.front() != cluster.beam_index) {
          out.push_back("beam " + std::to_string(cluster.beam_index) +
                        " is not user " + std::to_string(user) +
                        "'s best beam");
        }
      } else {
        bool in_set = false;
        for (int b : beams) in_set = in_set || b == cluster.beam_index;
        if (!in_set) {
          out.push_back("beam " + std::to_string(cluster.beam_index) +
                        " not in user " + std::to_string(user) +
                        "'s beam set");
        }
      }
      if (cluster.gains[p] != gains.at(user, cluster.beam_index)) {
        out.push_back("stored gain mismatch for user " + std::to_string(user));
      }
      if (p > 0 && cluster.gains[p] < cluster.gains[p - 1]) {
        out.push_back("gain ordering violated in beam " +
                      std::to_string(cluster.beam_index));
      }
    }
  }
  for (std::size_t u = 0; u < seen.size(); ++u) {
    if (seen[u] != 1) {
      out.push_back("user " + std::to_string(u) + " covered " +
                    std::to_string(seen[u]) + " times");
    }
  }
  return out;
}

/// Random small heterogeneous scenario in the fuzz envelope
/// (N <= 30, d_max <= 5, b <= 3).
inline ScenarioConfig random_fuzz_config(std::mt19937_64& rng) {
  ScenarioConfig config;
  config.num_users = 2 + static_cast<int>(rng() % 29);   // 2..30
  config.num_divisions = 3 + static_cast<int>(rng() % 10); // 3..12
  config.num_antennas = 1 << (1 + rng() % 3);             // 2, 4, 8
  config.beams_per_user = 1 + static_cast<int>(rng() % 3); // 1..3
  config.d_max = 1 + static_cast<int>(rng() % 5);          // 1..5
  config.capability_mode = CapabilityMode::uniform_random;
  config.seed = rng();
  return config;
}

/// Minimum exact-cover size by unpruned exhaustive recursion; test oracle for
/// tiny instances only. Returns -1 when no exact cover exists.
inline int brute_force_min_cover(const CandidateList& list) {
  std::vector<char> covered(static_cast<std::size_t>(list.num_users), 0);
  int best = -1;
  auto rec = [&](auto&& self, std::size_t from, int uncovered,
                 int count) -> void {
    if (uncovered == 0) {
      if (best < 0 || count < best) best = count;
      return;
    }
    for (std::size_t i = from; i < list.clusters.size(); ++i) {
      const Candidate& cand = list.clusters[i];
      bool free = true;
      for (int k = 0; k < cand.size; ++k) {
        if (covered[cand.members[static_cast<std::size_t>(k)]]) {
          free = false;
          break;
        }
      }
      if (!free) continue;
      for (int k = 0; k < cand.size; ++k) {
        covered[cand.members[static_cast<std::size_t>(k)]] = 1;
      }
      self(self, i + 1, uncovered - cand.size, count + 1);
      for (int k = 0; k < cand.size; ++k) {
        covered[cand.members[static_cast<std::size_t>(k)]] = 0;
      }
    }
  };
  rec(rec, 0, list.num_users, 0);
  return best;
}

} // namespace noma::testing

#endif
