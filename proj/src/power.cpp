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

#include "noma/power.hpp"

#include <cmath>
#include <stdexcept>

namespace noma {

namespace {

// Compensated summation keeps cross-module rate identities tight at N ~ 100.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void validate_cluster(const CandidateCluster& cluster) {
  if (cluster.members.empty() ||
      cluster.gains.size() != cluster.members.size()) {
    throw std::invalid_argument("cluster must be non-empty with one gain per "
                                "member");
  }
  for (std::size_t j = 0; j < cluster.gains.size(); ++j) {
    if (cluster.gains[j] < 0.0) {
      throw std::invalid_argument("gains must be >= 0");
    }
    if (j > 0 && cluster.gains[j] < cluster.gains[j - 1]) {
      throw std::invalid_argument("gains must be in decode order "
                                  "(nondecreasing)");
    }
  }
}

} // namespace

double sinr_cross(const CandidateCluster& cluster, int decode_pos,
                  int observer_pos, const std::vector<double>& powers,
                  double noise) {
  validate_cluster(cluster);
  const int n = cluster.size();
  if (powers.size() != cluster.members.size()) {
    throw std::invalid_argument("one power per member required");
  }
  if (decode_pos < 0 || observer_pos < decode_pos || observer_pos >= n) {
    throw std::invalid_argument("need 0 <= decode_pos <= observer_pos < size");
  }
  if (noise <= 0.0) {
    throw std::invalid_argument("noise must be > 0");
  }
  const double g = cluster.gains[static_cast<std::size_t>(observer_pos)];
  double later = 0.0; // signals decoded after decode_pos are not cancelled
  for (int v = decode_pos + 1; v < n; ++v) {
    later += powers[static_cast<std::size_t>(v)];
  }
  return powers[static_cast<std::size_t>(decode_pos)] * g /
         (g * later + noise);
}

PowerAllocation allocate_qos(const CandidateCluster& cluster, double budget,
                             double qos_sinr, double noise) {
  validate_cluster(cluster);
  if (budget < 0.0) throw std::invalid_argument("budget must be >= 0");
  if (qos_sinr < 0.0) throw std::invalid_argument("qos_sinr must be >= 0");
  if (noise <= 0.0) throw std::invalid_argument("noise must be > 0");

  const std::size_t n = cluster.members.size();
  PowerAllocation alloc;
  alloc.powers.assign(n, 0.0);
  alloc.per_user_sinr.assign(n, 0.0);
  alloc.per_user_rate.assign(n, 0.0);

  bool feasible = true;
  double remaining = budget;
  for (std::size_t j = 0; j + 1 < n && feasible; ++j) {
    const double g = cluster.gains[j];
    if (qos_sinr == 0.0) {
      alloc.powers[j] = 0.0;
      continue;
    }
    if (g == 0.0) {
      feasible = false; // a dead channel can never meet a positive target
      break;
    }
    // Power that pins this member's own SINR at qos_sinr given that the
    // power left after it becomes its interference.
    alloc.powers[j] = qos_sinr * (remaining + noise / g) / (1.0 + qos_sinr);
    remaining -= alloc.powers[j];
  }
  if (feasible) {
    alloc.powers[n - 1] = remaining;
    const double g = cluster.gains[n - 1];
    feasible = remaining >= 0.0 && remaining * g / noise >= qos_sinr;
  }
  if (!feasible) {
    alloc.powers.assign(n, 0.0);
    alloc.feasible = false;
    return alloc;
  }

  alloc.feasible = true;
  for (std::size_t j = 0; j < n; ++j) {
    const int pos = static_cast<int>(j);
    alloc.per_user_sinr[j] = sinr_cross(cluster, pos, pos, alloc.powers, noise);
    alloc.per_user_rate[j] = std::log2(1.0 + alloc.per_user_sinr[j]);
  }
  return alloc;
}

double cluster_rate(const PowerAllocation& alloc) {
  NeumaierSum sum;
  for (double r : alloc.per_user_rate) sum.add(r);
  return sum.value();
}

RateReport effective_sum_rate(const ClusterPlan& plan, double budget,
                              double qos_sinr, double noise) {
  RateReport report;
  report.num_clusters = plan.num_clusters();
  report.per_cluster_rate.reserve(plan.clusters.size());
  NeumaierSum total;
  for (std::size_t k = 0; k < plan.clusters.size(); ++k) {
    PowerAllocation alloc =
        allocate_qos(plan.clusters[k], budget, qos_sinr, noise);
    alloc.cluster_index = static_cast<int>(k);
    if (!alloc.feasible) ++report.infeasible_clusters;
    const double rate = cluster_rate(alloc);
    report.per_cluster_rate.push_back(rate);
    total.add(rate);
  }
  report.effective_sum_rate =
      report.num_clusters > 0 ? total.value() / report.num_clusters : 0.0;
  return report;
}

double oma_rate(const std::vector<int>& best_beams, const GainTable& gains,
                double budget, double noise) {
  if (static_cast<int>(best_beams.size()) != gains.num_users) {
    throw std::invalid_argument("best_beams and gain table must describe the "
                                "same users");
  }
  if (noise <= 0.0) throw std::invalid_argument("noise must be > 0");
  if (gains.num_users == 0) return 0.0;
  NeumaierSum total;
  for (int u = 0; u < gains.num_users; ++u) {
    const int b = best_beams[static_cast<std::size_t>(u)];
    if (b < 0 || b >= gains.num_beams) {
      throw std::invalid_argument("beam index out of range");
    }
    total.add(std::log2(1.0 + budget * gains.at(u, b) / noise));
  }
  return total.value() / gains.num_users;
}

} // namespace noma
