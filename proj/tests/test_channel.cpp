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
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "noma/channel.hpp"

using namespace noma;

namespace {

// Steering vector parameterized directly by the normalized angle.
std::vector<std::complex<double>> steering_from_phi(int m, double phi) {
  std::vector<std::complex<double>> a(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double arg = -std::numbers::pi * i * phi;
    a[static_cast<std::size_t>(i)] = {std::cos(arg), std::sin(arg)};
  }
  return a;
}

} // namespace

TEST_SUITE("channel") {

TEST_CASE("normalized angle follows 2 * spacing * sin(theta)") {
  CHECK(normalized_angle(0.0, 0.5) == 0.0);
  CHECK(normalized_angle(std::numbers::pi / 2.0, 0.5) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(normalized_angle(std::numbers::pi / 6.0, 0.5) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normalized_angle(-std::numbers::pi / 6.0, 0.25) ==
        doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("steering vector at broadside is all ones") {
  const auto a = steering_vector({4, 0.5}, 0.0);
  REQUIRE(a.size() == 4);
  for (const auto& x : a) {
    CHECK(x.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(x.imag() == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  }
}

TEST_CASE("steering vector phases at phi = 1/2 step through quarter turns") {
  const auto a = steering_vector({4, 0.5}, std::numbers::pi / 6.0);
  const std::vector<std::complex<double>> want{
      {1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(a[i] - want[i]) < 1e-14);
  }
}

TEST_CASE("steering vector rejects an empty array") {
  CHECK_THROWS_AS(steering_vector({0, 0.5}, 0.0), std::invalid_argument);
}

TEST_CASE("channel scaling matches the pathloss law") {
  // |h|^2 = |gain|^2 * M / (num_paths * (1 + r^eta))
  const auto user = generate_channel(0, 0.3, 3.0, {2.0, 0.0}, {8, 0.5},
                                     {1, 2.0});
  double power = 0.0;
  for (const auto& x : user.vec) power += std::norm(x);
  CHECK(power == doctest::Approx(4.0 * 8.0 / 10.0).epsilon(1e-12));
  CHECK(user.phi == doctest::Approx(std::sin(0.3)).epsilon(1e-15));
}

TEST_CASE("generate_channel validates inputs") {
  CHECK_THROWS_AS(generate_channel(0, 0.0, -1.0, {1, 0}, {8, 0.5}, {1, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_channel(0, 0.0, 1.0, {1, 0}, {8, 0.5}, {0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("effective gain is exactly degree-2 homogeneous in the fading gain") {
  const ArrayGeometry geometry{8, 0.5};
  const auto w = steering_vector(geometry, 0.2);
  const auto u1 = generate_channel(0, 0.5, 2.0, {0.7, -0.3}, geometry,
                                   {1, 2.0});
  const auto u2 = generate_channel(0, 0.5, 2.0, {1.4, -0.6}, geometry,
                                   {1, 2.0});
  CHECK(effective_gain(u2, w) == 4.0 * effective_gain(u1, w));
}

TEST_CASE("cosine similarity basics") {
  const std::vector<std::complex<double>> x{{1, 0}, {0, 1}};
  const std::vector<std::complex<double>> y{{2, 0}, {0, 2}};
  const std::vector<std::complex<double>> z{{0, 1}, {1, 0}};
  const std::vector<std::complex<double>> zero{{0, 0}, {0, 0}};
  CHECK(cosine_similarity(x, y) == doctest::Approx(1.0).epsilon(1e-15));
  // x^H z = (1)(i) + (-i)(1) = 0: orthogonal pair
  CHECK(cosine_similarity(x, z) == doctest::Approx(0.0).scale(1.0));
  CHECK(cosine_similarity(x, zero) == 0.0);
  CHECK_THROWS_AS(
      cosine_similarity(x, std::vector<std::complex<double>>{{1, 0}}),
      std::invalid_argument);
  CHECK_THROWS_AS(cosine_similarity(std::vector<std::complex<double>>{},
                                    std::vector<std::complex<double>>{}),
                  std::invalid_argument);
}

TEST_CASE("cosine similarity is invariant to the fading gain") {
  const ArrayGeometry geometry{8, 0.5};
  const auto w = steering_vector(geometry, -0.4);
  const auto u1 = generate_channel(0, 0.5, 2.0, {0.7, -0.3}, geometry,
                                   {1, 2.0});
  const auto u2 = generate_channel(0, 0.5, 4.5, {-2.0, 1.1}, geometry,
                                   {1, 2.0});
  CHECK(cosine_similarity(u1, w) ==
        doctest::Approx(cosine_similarity(u2, w)).epsilon(1e-12));
}

TEST_CASE("inner-product similarity equals the closed form") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> phi_dist(-1.0, 1.0);
  const int antennas[] = {2, 4, 8, 16, 32};
  for (int rep = 0; rep < 1000; ++rep) {
    const int m = antennas[rep % 5];
    const double phi_u = phi_dist(rng);
    const double phi_b = phi_dist(rng);
    const auto a = steering_from_phi(m, phi_u);
    const auto w = steering_from_phi(m, phi_b);
    const double direct = cosine_similarity(a, w);
    const double closed = fejer_similarity(m, phi_u - phi_b);
    CHECK(std::abs(direct - closed) <= 1e-9);
  }
}

TEST_CASE("closed-form similarity handles aligned directions") {
  CHECK(fejer_similarity(8, 0.0) == 1.0);
  CHECK(fejer_similarity(8, 2.0) == 1.0); // grating period
  CHECK_THROWS_AS(fejer_similarity(0, 0.1), std::invalid_argument);
}

TEST_CASE("similarity lies in [0, 1] and decays within the main lobe") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> phi_dist(-1.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const double s = fejer_similarity(8, phi_dist(rng));
    CHECK(s >= 0.0);
    CHECK(s <= 1.0 + 1e-12);
  }
  CHECK(fejer_similarity(8, 0.05) > fejer_similarity(8, 0.12));
}

} // TEST_SUITE
