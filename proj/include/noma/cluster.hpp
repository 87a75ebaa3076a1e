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

#ifndef NOMA_CLUSTER_HPP
#define NOMA_CLUSTER_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "noma/codebook.hpp"

namespace noma {

inline constexpr int kMaxClusterMembers = 16;

/// Effective beamforming gain |h_u^H w_b|^2 for every (user, beam) pair.
struct GainTable {
  int num_users = 0;
  int num_beams = 0;
  std::vector<double> values; // row-major, num_users x num_beams

  double at(int user, int beam) const {
    return values[static_cast<std::size_t>(user) *
                      static_cast<std::size_t>(num_beams) +
                  static_cast<std::size_t>(beam)];
  }
};

GainTable build_gain_table(const std::vector<UserChannel>& users,
                           const BeamCodebook& codebook);

/// A candidate cluster in compact form: members are user ids ordered by
/// ascending effective gain on the candidate beam (decode order).
struct Candidate {
  std::uint32_t beam = 0;
  std::uint8_t size = 0;
  std::array<std::uint16_t, kMaxClusterMembers> members{};
};

/// Output of candidate enumeration, together with the search counters.
struct CandidateList {
  std::vector<Candidate> clusters;
  std::uint64_t examined = 0; // combinations examined across all beams
  int num_users = 0;
  GainTable gains;

  std::uint64_t count() const { return clusters.size(); }
};

/// A signal at 1-based decode position j carries j-1 earlier signals that the
/// decoding user must cancel, so the order is valid iff capability[j-1] >= j-1
/// for every position. Capabilities are in decode order (weakest gain first).
bool check_validity(std::span<const int> ordered_capabilities);

/// Enumerate, per beam, all user combinations of size 2..d_max drawn from the
/// users that listed the beam in their candidate set, keep those whose decode
/// order passes check_validity, then append one singleton per user on its best
/// beam. Throws std::invalid_argument on inconsistent input sizes, d_max < 1,
/// or d_max > kMaxClusterMembers.
CandidateList enumerate_candidates(const std::vector<int>& capabilities,
                                   const std::vector<UserBeamSet>& beam_sets,
                                   const GainTable& gains, int d_max);

/// A scheduled cluster: members in decode order with their effective gains.
struct CandidateCluster {
  int beam_index = 0;
  std::vector<int> members;
  std::vector<double> gains;

  int size() const { return static_cast<int>(members.size()); }
};

enum class AlgorithmTag { mec_greedy, mec_exact, bb, bb_het, oma };

/// A complete user partition produced by one clustering algorithm.
struct ClusterPlan {
  std::vector<CandidateCluster> clusters;
  AlgorithmTag tag = AlgorithmTag::mec_greedy;
  std::uint64_t examined = 0;        // combinations examined
  std::uint64_t candidate_count = 0; // valid candidates kept

  int num_clusters() const { return static_cast<int>(clusters.size()); }
};

/// Greedy minimum exact cover: repeatedly admit the largest candidate whose
/// members are all still uncovered. Ties break toward the stronger leading
/// gain, then the lower beam index, then the lexicographically smaller
/// member list.
ClusterPlan greedy_mec(const CandidateList& candidates);

/// Resource guard for the exact cover search.
struct ExactMecLimits {
  int max_users = 14;
  std::size_t max_candidates = 500;
};

/// Exact minimum exact cover by branch and bound over the candidate list.
/// Throws std::invalid_argument when the instance exceeds both limits or has
/// no exact cover.
ClusterPlan exact_mec(const CandidateList& candidates,
                      const ExactMecLimits& limits = {});

/// Beam-then-split clustering: group users by best beam, split each group of
/// n_b users into ceil(n_b / m) disjoint chunks of at most m users, carving
/// chunks off the strong end of the gain-descending order. Members within a
/// cluster decode weakest first. Throws std::invalid_argument if m < 1.
ClusterPlan noma_bb(const std::vector<int>& best_beams,
                    const GainTable& gains, int max_cluster_size);

/// Capability-aware variant: users with capability below m are scheduled as
/// singletons, the rest are grouped as in noma_bb with cluster size cap m.
/// Throws std::invalid_argument unless 1 <= m < d_max.
ClusterPlan noma_bb_het(const std::vector<int>& capabilities,
                        const std::vector<int>& best_beams,
                        const GainTable& gains, int m, int d_max);

/// Orthogonal baseline: every user is a singleton on its best beam.
ClusterPlan oma_plan(const std::vector<int>& best_beams,
                     const GainTable& gains);

} // namespace noma

#endif
