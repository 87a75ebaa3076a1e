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

#include "noma/cluster.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace noma {

GainTable build_gain_table(const std::vector<UserChannel>& users,
                           const BeamCodebook& codebook) {
  GainTable table;
  table.num_users = static_cast<int>(users.size());
  table.num_beams = codebook.num_beams();
  table.values.resize(static_cast<std::size_t>(table.num_users) *
                      static_cast<std::size_t>(table.num_beams));
  for (int u = 0; u < table.num_users; ++u) {
    for (int b = 0; b < table.num_beams; ++b) {
      table.values[static_cast<std::size_t>(u) *
                       static_cast<std::size_t>(table.num_beams) +
                   static_cast<std::size_t>(b)] =
          effective_gain(users[static_cast<std::size_t>(u)],
                         codebook.precoders[static_cast<std::size_t>(b)]);
    }
  }
  return table;
}

bool check_validity(std::span<const int> ordered_capabilities) {
  for (std::size_t j = 0; j < ordered_capabilities.size(); ++j) {
    if (ordered_capabilities[j] < static_cast<int>(j)) return false;
  }
  return true;
}

namespace {

// C(n, k) with saturation at the uint64 ceiling.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t m = n - k + i;
    if (c > std::numeric_limits<std::uint64_t>::max() / m) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    c = c * m / i; // exact: c*m is divisible by i at every step
  }
  return c;
}

struct BucketEntry {
  int user;
  int capability;
  double gain;
};

} // namespace

CandidateList enumerate_candidates(const std::vector<int>& capabilities,
                                   const std::vector<UserBeamSet>& beam_sets,
                                   const GainTable& gains, int d_max) {
  const std::size_t n = capabilities.size();
  if (beam_sets.size() != n ||
      gains.num_users != static_cast<int>(n)) {
    throw std::invalid_argument("capabilities, beam sets and gain table must "
                                "describe the same users");
  }
  if (n > 65535) {
    throw std::invalid_argument("too many users for compact candidate storage");
  }
  if (d_max < 1 || d_max > kMaxClusterMembers) {
    throw std::invalid_argument("d_max must be in [1, kMaxClusterMembers]");
  }
  for (std::size_t u = 0; u < n; ++u) {
    if (capabilities[u] < 0) {
      throw std::invalid_argument("capabilities must be >= 0");
    }
    if (beam_sets[u].beams.empty()) {
      throw std::invalid_argument("every user needs at least one beam");
    }
    for (int b : beam_sets[u].beams) {
      if (b < 0 || b >= gains.num_beams) {
        throw std::invalid_argument("beam index out of range");
      }
    }
  }

  CandidateList list;
  list.num_users = static_cast<int>(n);
  list.gains = gains;

  // Bucket users by candidate beam.
  std::vector<std::vector<BucketEntry>> buckets(
      static_cast<std::size_t>(gains.num_beams));
  for (std::size_t u = 0; u < n; ++u) {
    for (int b : beam_sets[u].beams) {
      buckets[static_cast<std::size_t>(b)].push_back(
          {static_cast<int>(u), capabilities[u],
           gains.at(static_cast<int>(u), b)});
    }
  }

  std::vector<int> path;
  path.reserve(static_cast<std::size_t>(d_max));
  for (int b = 0; b < gains.num_beams; ++b) {
    auto& bucket = buckets[static_cast<std::size_t>(b)];
    std::sort(bucket.begin(), bucket.end(),
              [](const BucketEntry& lhs, const BucketEntry& rhs) {
                if (lhs.gain != rhs.gain) return lhs.gain < rhs.gain;
                return lhs.user < rhs.user;
              });
    const std::uint64_t nb = bucket.size();
    for (int l = 2; l <= d_max; ++l) {
      const std::uint64_t c = binomial(nb, static_cast<std::uint64_t>(l));
      list.examined =
          (list.examined > std::numeric_limits<std::uint64_t>::max() - c)
              ? std::numeric_limits<std::uint64_t>::max()
              : list.examined + c;
    }
    // Depth-first combination walk in decode (ascending gain) order. A user
    // at 0-based decode position p must cancel p signals, so any entry with
    // capability < p is skipped at that depth.
    auto dfs = [&](auto&& self, std::size_t start) -> void {
      const int pos = static_cast<int>(path.size());
      for (std::size_t i = start; i < bucket.size(); ++i) {
        if (bucket[i].capability < pos) continue;
        path.push_back(static_cast<int>(i));
        if (path.size() >= 2) {
          Candidate cand;
          cand.beam = static_cast<std::uint32_t>(b);
          cand.size = static_cast<std::uint8_t>(path.size());
          for (std::size_t k = 0; k < path.size(); ++k) {
            cand.members[k] = static_cast<std::uint16_t>(
                bucket[static_cast<std::size_t>(path[k])].user);
          }
          list.clusters.push_back(cand);
        }
        if (static_cast<int>(path.size()) < d_max) self(self, i + 1);
        path.pop_back();
      }
    };
    if (nb >= 2 && d_max >= 2) dfs(dfs, 0);
  }

  // One singleton per user on its strongest beam; always a valid decode order.
  for (std::size_t u = 0; u < n; ++u) {
    Candidate cand;
    cand.beam = static_cast<std::uint32_t>(beam_sets[u].beams.front());
    cand.size = 1;
    cand.members[0] = static_cast<std::uint16_t>(u);
    list.clusters.push_back(cand);
  }
  return list;
}

namespace {

// Total order used to make greedy admission and the exact search
// deterministic: larger clusters first, then the stronger leading gain (the
// last member, since members are stored weakest to strongest, carries the
// cluster rate), then lower beam, then lexicographically smaller member list.
// Without the gain key, equal-size ties resolve toward low beam indices and
// systematically drag users onto poorly aligned beams as beam sets grow.
bool candidate_order(const Candidate& lhs, const Candidate& rhs,
                     const GainTable& gains) {
  if (lhs.size != rhs.size) return lhs.size > rhs.size;
  const double lhs_lead = gains.at(
      static_cast<int>(lhs.members[static_cast<std::size_t>(lhs.size - 1)]),
      static_cast<int>(lhs.beam));
  const double rhs_lead = gains.at(
      static_cast<int>(rhs.members[static_cast<std::size_t>(rhs.size - 1)]),
      static_cast<int>(rhs.beam));
  if (lhs_lead != rhs_lead) return lhs_lead > rhs_lead;
  if (lhs.beam != rhs.beam) return lhs.beam < rhs.beam;
  return std::lexicographical_compare(
      lhs.members.begin(), lhs.members.begin() + lhs.size,
      rhs.members.begin(), rhs.members.begin() + rhs.size);
}

CandidateCluster to_cluster(const Candidate& cand, const GainTable& gains) {
  CandidateCluster cluster;
  cluster.beam_index = static_cast<int>(cand.beam);
  cluster.members.reserve(cand.size);
  cluster.gains.reserve(cand.size);
  for (int k = 0; k < cand.size; ++k) {
    const int user = static_cast<int>(cand.members[static_cast<std::size_t>(k)]);
    cluster.members.push_back(user);
    cluster.gains.push_back(gains.at(user, static_cast<int>(cand.beam)));
  }
  return cluster;
}

std::vector<std::size_t> sorted_candidate_indices(const CandidateList& list) {
  std::vector<std::size_t> order(list.clusters.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return candidate_order(list.clusters[a], list.clusters[b], list.gains);
  });
  return order;
}

} // namespace

ClusterPlan greedy_mec(const CandidateList& candidates) {
  ClusterPlan plan;
  plan.tag = AlgorithmTag::mec_greedy;
  plan.examined = candidates.examined;
  plan.candidate_count = candidates.count();

  std::vector<char> covered(static_cast<std::size_t>(candidates.num_users), 0);
  int remaining = candidates.num_users;
  for (std::size_t idx : sorted_candidate_indices(candidates)) {
    const Candidate& cand = candidates.clusters[idx];
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
    remaining -= cand.size;
    plan.clusters.push_back(to_cluster(cand, candidates.gains));
    if (remaining == 0) break;
  }
  if (remaining != 0) {
    throw std::invalid_argument("candidate list does not cover all users");
  }
  return plan;
}

ClusterPlan exact_mec(const CandidateList& candidates,
                      const ExactMecLimits& limits) {
  if (candidates.num_users > limits.max_users &&
      candidates.count() > limits.max_candidates) {
    throw std::invalid_argument("exact cover instance exceeds search limits");
  }

  const int num_users = candidates.num_users;
  const std::size_t words = (static_cast<std::size_t>(num_users) + 63) / 64;
  const std::size_t total = candidates.clusters.size();

  // Coverage bitmasks make the disjointness test one AND per 64 users.
  std::vector<std::uint64_t> masks(total * words, 0);
  int max_size = 1;
  for (std::size_t i = 0; i < total; ++i) {
    const Candidate& cand = candidates.clusters[i];
    max_size = std::max(max_size, static_cast<int>(cand.size));
    for (int k = 0; k < cand.size; ++k) {
      const std::size_t bit = cand.members[static_cast<std::size_t>(k)];
      masks[i * words + bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
  }
  auto disjoint = [&](std::size_t idx,
                      const std::vector<std::uint64_t>& cov) {
    for (std::size_t w = 0; w < words; ++w) {
      if (masks[idx * words + w] & cov[w]) return false;
    }
    return true;
  };

  // Per-user candidate lists in admission order (largest first), so small
  // covers appear early and equal-size covers resolve deterministically.
  std::vector<std::vector<std::size_t>> by_user(
      static_cast<std::size_t>(num_users));
  for (std::size_t idx : sorted_candidate_indices(candidates)) {
    const Candidate& cand = candidates.clusters[idx];
    for (int k = 0; k < cand.size; ++k) {
      by_user[cand.members[static_cast<std::size_t>(k)]].push_back(idx);
    }
  }

  int best = std::numeric_limits<int>::max();
  std::vector<std::size_t> best_pick;
  bool have_incumbent = false;
  ClusterPlan incumbent;
  try {
    incumbent = greedy_mec(candidates);
    best = incumbent.num_clusters(); // bounds the search from the start
    have_incumbent = true;
  } catch (const std::invalid_argument&) {
    // No greedy cover; the search below decides feasibility.
  }

  std::vector<std::uint64_t> covered(words, 0);
  std::vector<std::size_t> pick;
  bool found = false;
  auto dfs = [&](auto&& self, int uncovered, int count) -> void {
    if (uncovered == 0) {
      best = count; // pruning guarantees count < previous best
      best_pick = pick;
      found = true;
      return;
    }
    // Admissible bound: every further cluster covers at most max_size users.
    if (count + (uncovered + max_size - 1) / max_size >= best) return;

    // Branch on the uncovered user with the fewest admissible candidates;
    // a user with none makes the node a dead end.
    int branch_user = -1;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (int u = 0; u < num_users; ++u) {
      const std::size_t su = static_cast<std::size_t>(u);
      if ((covered[su / 64] >> (su % 64)) & 1u) continue;
      std::size_t admissible = 0;
      for (std::size_t idx : by_user[su]) {
        if (disjoint(idx, covered)) ++admissible;
      }
      if (admissible == 0) return;
      if (admissible < fewest) {
        fewest = admissible;
        branch_user = u;
      }
    }
    for (std::size_t idx : by_user[static_cast<std::size_t>(branch_user)]) {
      if (!disjoint(idx, covered)) continue;
      const Candidate& cand = candidates.clusters[idx];
      for (std::size_t w = 0; w < words; ++w) {
        covered[w] |= masks[idx * words + w];
      }
      pick.push_back(idx);
      self(self, uncovered - cand.size, count + 1);
      pick.pop_back();
      for (std::size_t w = 0; w < words; ++w) {
        covered[w] &= ~masks[idx * words + w];
      }
    }
  };
  dfs(dfs, num_users, 0);
  if (!found) {
    if (have_incumbent) {
      // The search proved nothing beats the greedy cover, so it is minimal.
      incumbent.tag = AlgorithmTag::mec_exact;
      return incumbent;
    }
    throw std::invalid_argument("no exact cover exists");
  }

  ClusterPlan plan;
  plan.tag = AlgorithmTag::mec_exact;
  plan.examined = candidates.examined;
  plan.candidate_count = candidates.count();
  for (std::size_t idx : best_pick) {
    plan.clusters.push_back(to_cluster(candidates.clusters[idx],
                                       candidates.gains));
  }
  return plan;
}

namespace {

// Users of one beam in descending gain order, ready for chunking.
std::vector<std::vector<int>> group_by_beam(const std::vector<int>& best_beams,
                                            const GainTable& gains,
                                            const std::vector<char>* include) {
  if (static_cast<int>(best_beams.size()) != gains.num_users) {
    throw std::invalid_argument("best_beams and gain table must describe the "
                                "same users");
  }
  std::vector<std::vector<int>> groups(
      static_cast<std::size_t>(gains.num_beams));
  for (int u = 0; u < gains.num_users; ++u) {
    if (include && !(*include)[static_cast<std::size_t>(u)]) continue;
    const int b = best_beams[static_cast<std::size_t>(u)];
    if (b < 0 || b >= gains.num_beams) {
      throw std::invalid_argument("beam index out of range");
    }
    groups[static_cast<std::size_t>(b)].push_back(u);
  }
  for (int b = 0; b < gains.num_beams; ++b) {
    auto& g = groups[static_cast<std::size_t>(b)];
    std::sort(g.begin(), g.end(), [&](int lhs, int rhs) {
      const double gl = gains.at(lhs, b), gr = gains.at(rhs, b);
      if (gl != gr) return gl > gr;
      return lhs < rhs;
    });
  }
  return groups;
}

// Carve chunks of at most m users off the strong end, then flip each chunk so
// members decode weakest first.
void append_chunks(ClusterPlan& plan, const std::vector<int>& group, int beam,
                   int m, const GainTable& gains) {
  for (std::size_t begin = 0; begin < group.size();
       begin += static_cast<std::size_t>(m)) {
    const std::size_t end =
        std::min(group.size(), begin + static_cast<std::size_t>(m));
    CandidateCluster cluster;
    cluster.beam_index = beam;
    for (std::size_t i = end; i > begin; --i) {
      const int user = group[i - 1];
      cluster.members.push_back(user);
      cluster.gains.push_back(gains.at(user, beam));
    }
    plan.clusters.push_back(std::move(cluster));
  }
}

} // namespace

ClusterPlan noma_bb(const std::vector<int>& best_beams, const GainTable& gains,
                    int max_cluster_size) {
  if (max_cluster_size < 1) {
    throw std::invalid_argument("max_cluster_size must be >= 1");
  }
  ClusterPlan plan;
  plan.tag = AlgorithmTag::bb;
  const auto groups = group_by_beam(best_beams, gains, nullptr);
  for (int b = 0; b < gains.num_beams; ++b) {
    append_chunks(plan, groups[static_cast<std::size_t>(b)], b,
                  max_cluster_size, gains);
  }
  return plan;
}

ClusterPlan noma_bb_het(const std::vector<int>& capabilities,
                        const std::vector<int>& best_beams,
                        const GainTable& gains, int m, int d_max) {
  if (m < 1 || m >= d_max) {
    throw std::invalid_argument("m must satisfy 1 <= m < d_max");
  }
  if (capabilities.size() != best_beams.size()) {
    throw std::invalid_argument("capabilities and best_beams must describe "
                                "the same users");
  }
  ClusterPlan plan;
  plan.tag = AlgorithmTag::bb_het;
  // A cluster of size m asks its strongest member to cancel m-1 signals;
  // users below capability m are kept orthogonal.
  std::vector<char> capable(capabilities.size(), 0);
  for (std::size_t u = 0; u < capabilities.size(); ++u) {
    capable[u] = capabilities[u] >= m ? 1 : 0;
  }
  const auto groups = group_by_beam(best_beams, gains, &capable);
  for (int b = 0; b < gains.num_beams; ++b) {
    append_chunks(plan, groups[static_cast<std::size_t>(b)], b, m, gains);
  }
  for (std::size_t u = 0; u < capabilities.size(); ++u) {
    if (capable[u]) continue;
    CandidateCluster cluster;
    cluster.beam_index = best_beams[u];
    cluster.members.push_back(static_cast<int>(u));
    cluster.gains.push_back(
        gains.at(static_cast<int>(u), best_beams[u]));
    plan.clusters.push_back(std::move(cluster));
  }
  return plan;
}

ClusterPlan oma_plan(const std::vector<int>& best_beams,
                     const GainTable& gains) {
  ClusterPlan plan;
  plan.tag = AlgorithmTag::oma;
  if (static_cast<int>(best_beams.size()) != gains.num_users) {
    throw std::invalid_argument("best_beams and gain table must describe the "
                                "same users");
  }
  for (int u = 0; u < gains.num_users; ++u) {
    const int b = best_beams[static_cast<std::size_t>(u)];
    if (b < 0 || b >= gains.num_beams) {
      throw std::invalid_argument("beam index out of range");
    }
    CandidateCluster cluster;
    cluster.beam_index = b;
    cluster.members.push_back(u);
    cluster.gains.push_back(gains.at(u, b));
    plan.clusters.push_back(std::move(cluster));
  }
  return plan;
}

} // namespace noma
