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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "noma/power.hpp"

using namespace noma;

namespace {

CandidateCluster make_cluster(std::vector<double> gains, int beam = 0) {
  CandidateCluster c;
  c.beam_index = beam;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    c.members.push_back(static_cast<int>(i));
  }
  c.gains = std::move(gains);
  return c;
}

// Random nondecreasing positive gains, sized 1..5.
CandidateCluster random_cluster(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.05, 4.0);
  const std::size_t n = 1 + rng() % 5;
  std::vector<double> gains(n);
  for (auto& g : gains) g = dist(rng);
  std::sort(gains.begin(), gains.end());
  return make_cluster(std::move(gains));
}

} // namespace

TEST_SUITE("power") {

TEST_CASE("cross SINR on hand-checked values") {
  const auto cluster = make_cluster({3.0, 3.0});
  const std::vector<double> powers{2.0, 1.0};
  // Singleton-style last position: p * g / noise.
  CHECK(sinr_cross(cluster, 1, 1, powers, 0.5) ==
        doctest::Approx(1.0 * 3.0 / 0.5).epsilon(1e-15));
  // Weakest signal observed by the strongest user: p1*g / (g*p2 + noise).
  CHECK(sinr_cross(cluster, 0, 1, powers, 0.5) ==
        doctest::Approx(2.0 * 3.0 / (3.0 * 1.0 + 0.5)).epsilon(1e-15));
  // Zero power means zero SINR.
  CHECK(sinr_cross(cluster, 0, 0, {0.0, 1.0}, 0.5) == 0.0);
}

TEST_CASE("cross SINR validates its arguments") {
  const auto cluster = make_cluster({1.0, 2.0});
  const std::vector<double> powers{1.0, 1.0};
  CHECK_THROWS_AS(sinr_cross(cluster, 1, 0, powers, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(sinr_cross(cluster, 0, 2, powers, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(sinr_cross(cluster, -1, 0, powers, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(sinr_cross(cluster, 0, 1, {1.0}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(sinr_cross(cluster, 0, 1, powers, 0.0),
                  std::invalid_argument);
}

TEST_CASE("singleton allocation hands over the whole budget") {
  const auto alloc = allocate_qos(make_cluster({4.0}), 2.0, 0.02, 0.5);
  REQUIRE(alloc.feasible);
  CHECK(alloc.powers == std::vector<double>{2.0});
  CHECK(alloc.per_user_sinr[0] == doctest::Approx(2.0 * 4.0 / 0.5));
  CHECK(alloc.per_user_rate[0] ==
        doctest::Approx(std::log2(1.0 + 16.0)).epsilon(1e-15));
}

TEST_CASE("zero QoS target gives everything to the strongest user") {
  const auto alloc = allocate_qos(make_cluster({1.0, 2.0, 3.0}), 5.0, 0.0,
                                  1.0);
  REQUIRE(alloc.feasible);
  CHECK(alloc.powers == std::vector<double>{0.0, 0.0, 5.0});
}

TEST_CASE("two equal-gain users reproduce the closed form") {
  const double g = 2.0, P = 1.0, gamma = 0.02, noise = 0.25;
  const auto alloc = allocate_qos(make_cluster({g, g}), P, gamma, noise);
  REQUIRE(alloc.feasible);
  const double p1 = gamma * (P + noise / g) / (1.0 + gamma);
  CHECK(alloc.powers[0] == doctest::Approx(p1).epsilon(1e-15));
  CHECK(alloc.powers[1] == doctest::Approx(P - p1).epsilon(1e-15));
  // Substituting back must pin the weak user's own SINR at the target.
  CHECK(sinr_cross(make_cluster({g, g}), 0, 0, alloc.powers, noise) ==
        doctest::Approx(gamma).epsilon(1e-12));
}

TEST_CASE("insufficient budget flags the cluster infeasible") {
  const auto alloc = allocate_qos(make_cluster({1e-12, 1e-12}), 1e-6, 10.0,
                                  1.0);
  CHECK(!alloc.feasible);
  CHECK(alloc.powers == std::vector<double>{0.0, 0.0});
  CHECK(alloc.per_user_rate == std::vector<double>{0.0, 0.0});
}

TEST_CASE("a dead channel below the strongest position is infeasible") {
  const auto alloc = allocate_qos(make_cluster({0.0, 1.0}), 1.0, 0.02, 1.0);
  CHECK(!alloc.feasible);
}

TEST_CASE("allocation validates inputs") {
  CHECK_THROWS_AS(allocate_qos(make_cluster({}), 1.0, 0.02, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(allocate_qos(make_cluster({2.0, 1.0}), 1.0, 0.02, 1.0),
                  std::invalid_argument); // gains out of decode order
  CHECK_THROWS_AS(allocate_qos(make_cluster({1.0}), -1.0, 0.02, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(allocate_qos(make_cluster({1.0}), 1.0, -0.5, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(allocate_qos(make_cluster({1.0}), 1.0, 0.02, 0.0),
                  std::invalid_argument);
}

TEST_CASE("feasible allocations conserve power and stay QoS-tight") {
  std::mt19937_64 rng(17);
  int feasible_seen = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto cluster = random_cluster(rng);
    const double P = 0.5 + (rng() % 100) / 25.0;
    const double gamma = 0.01 + (rng() % 50) / 100.0;
    const double noise = 0.01 + (rng() % 20) / 100.0;
    const auto alloc = allocate_qos(cluster, P, gamma, noise);
    if (!alloc.feasible) continue;
    ++feasible_seen;
    double sum = 0.0;
    for (double p : alloc.powers) {
      CHECK(p >= 0.0);
      sum += p;
    }
    CHECK(std::abs(sum - P) <= 1e-12 * std::max(1.0, P));
    CHECK(sum <= P + 1e-9);
    const std::size_t n = cluster.members.size();
    for (std::size_t j = 0; j + 1 < n; ++j) {
      CHECK(std::abs(alloc.per_user_sinr[j] - gamma) <= 1e-9);
    }
    CHECK(alloc.per_user_sinr[n - 1] >= gamma - 1e-9);
    // Stronger observers decode any given message at least as well.
    for (std::size_t j = 0; j < n; ++j) {
      double previous = -1.0;
      for (std::size_t jp = j; jp < n; ++jp) {
        const double s = sinr_cross(cluster, static_cast<int>(j),
                                    static_cast<int>(jp), alloc.powers, noise);
        CHECK(s >= gamma - 1e-9);
        CHECK(s >= previous - 1e-12);
        previous = s;
      }
    }
  }
  CHECK(feasible_seen > 100); // the generator must exercise the checks
}

TEST_CASE("cluster rate sums the per-user rates") {
  PowerAllocation alloc;
  alloc.per_user_rate = {1.0, 2.5};
  CHECK(cluster_rate(alloc) == doctest::Approx(3.5).epsilon(1e-15));
  alloc.per_user_rate = {0.0, 0.0};
  CHECK(cluster_rate(alloc) == 0.0);
}

TEST_CASE("effective sum rate averages per-cluster rates") {
  // Two singleton clusters with SINR 15 and 3: rates 4 and 2, mean 3.
  ClusterPlan plan;
  plan.clusters = {make_cluster({15.0}), make_cluster({3.0})};
  const auto report = effective_sum_rate(plan, 1.0, 0.02, 1.0);
  CHECK(report.num_clusters == 2);
  CHECK(report.per_cluster_rate[0] == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(report.per_cluster_rate[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(report.effective_sum_rate == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(report.infeasible_clusters == 0);
}

TEST_CASE("one cluster means the sum rate is that cluster's rate") {
  ClusterPlan plan;
  plan.clusters = {make_cluster({1.0, 2.0})};
  const auto report = effective_sum_rate(plan, 2.0, 0.05, 0.5);
  CHECK(report.effective_sum_rate ==
        doctest::Approx(report.per_cluster_rate[0]).epsilon(1e-15));
}

TEST_CASE("infeasible clusters contribute zero rate and are counted") {
  ClusterPlan plan;
  // Budget 1e-6 against noise 1: gain 1e9 clears the floor of 10, the tiny
  // gains cannot.
  plan.clusters = {make_cluster({1e-12, 1e-12}), make_cluster({1e9})};
  const auto report = effective_sum_rate(plan, 1e-6, 10.0, 1.0);
  CHECK(report.infeasible_clusters == 1);
  CHECK(report.per_cluster_rate[0] == 0.0);
  CHECK(report.per_cluster_rate[1] > 0.0);
}

TEST_CASE("a singleton-only plan reproduces the orthogonal baseline") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(0.1, 8.0);
  const int n = 40;
  GainTable gains;
  gains.num_users = n;
  gains.num_beams = 1;
  for (int u = 0; u < n; ++u) gains.values.push_back(dist(rng));
  const std::vector<int> best(static_cast<std::size_t>(n), 0);
  const auto plan = oma_plan(best, gains);
  const auto report = effective_sum_rate(plan, 1.0, 0.02, 7.962e-11);
  const double oracle = oma_rate(best, gains, 1.0, 7.962e-11);
  CHECK(std::abs(report.effective_sum_rate - oracle) <= 1e-12);
}

TEST_CASE("orthogonal baseline handles edge inputs") {
  GainTable gains;
  gains.num_users = 1;
  gains.num_beams = 1;
  gains.values = {4.0};
  CHECK(oma_rate({0}, gains, 2.0, 0.5) ==
        doctest::Approx(std::log2(1.0 + 16.0)).epsilon(1e-15));
  gains.values = {0.0};
  CHECK(oma_rate({0}, gains, 2.0, 0.5) == 0.0);
  CHECK_THROWS_AS(oma_rate({0, 1}, gains, 2.0, 0.5), std::invalid_argument);
}

} // TEST_SUITE
