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

#ifndef NOMA_POWER_HPP
#define NOMA_POWER_HPP

#include <vector>

#include "noma/cluster.hpp"

namespace noma {

/// Per-cluster power split and the resulting per-user SINRs and rates.
struct PowerAllocation {
  int cluster_index = 0;
  std::vector<double> powers;        // decode order, sums to the beam budget
  std::vector<double> per_user_sinr; // own-signal SINR after cancellation
  std::vector<double> per_user_rate; // log2(1 + sinr)
  bool feasible = true;
};

/// SINR of the signal at decode position `decode_pos` as seen by the user at
/// position `observer_pos` (0-based, observer_pos >= decode_pos): earlier
/// signals are cancelled, later ones interfere. Throws std::invalid_argument
/// on out-of-range positions, size mismatch, or noise <= 0.
double sinr_cross(const CandidateCluster& cluster, int decode_pos,
                  int observer_pos, const std::vector<double>& powers,
                  double noise);

/// Sequential QoS split of the beam budget: every member except the strongest
/// gets exactly the power that pins its own SINR at qos_sinr given the power
/// remaining after it, and the strongest keeps the remainder. The split is
/// infeasible when the remainder is negative or leaves the strongest member
/// below qos_sinr; infeasible clusters carry zero powers and rates. Throws
/// std::invalid_argument if budget < 0, qos_sinr < 0, noise <= 0, the cluster
/// is empty, or gains are not in decode order.
PowerAllocation allocate_qos(const CandidateCluster& cluster, double budget,
                             double qos_sinr, double noise);

/// Sum of per-user rates in one cluster.
double cluster_rate(const PowerAllocation& alloc);

/// Per-cluster and aggregate rates for a full plan.
struct RateReport {
  std::vector<double> per_cluster_rate;
  int num_clusters = 0;
  int infeasible_clusters = 0;
  double effective_sum_rate = 0.0; // sum of cluster rates over cluster count
};

/// Allocate every cluster of the plan with the same per-beam budget and noise.
RateReport effective_sum_rate(const ClusterPlan& plan, double budget,
                              double qos_sinr, double noise);

/// Orthogonal baseline: mean over users of log2(1 + budget * g_u / noise),
/// with g_u the user's effective gain on its best beam.
double oma_rate(const std::vector<int>& best_beams, const GainTable& gains,
                double budget, double noise);

} // namespace noma

#endif
