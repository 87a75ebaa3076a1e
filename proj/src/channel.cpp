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

#include "noma/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "noma/kernels.hpp"

namespace noma {

double normalized_angle(double theta, double spacing_ratio) {
  return 2.0 * spacing_ratio * std::sin(theta);
}

std::vector<std::complex<double>> steering_vector(const ArrayGeometry& geometry,
                                                  double theta) {
  if (geometry.num_antennas < 1) {
    throw std::invalid_argument("num_antennas must be >= 1");
  }
  const double phi = normalized_angle(theta, geometry.spacing_ratio);
  std::vector<std::complex<double>> a(
      static_cast<std::size_t>(geometry.num_antennas));
  for (int i = 0; i < geometry.num_antennas; ++i) {
    const double arg = -std::numbers::pi * i * phi;
    a[static_cast<std::size_t>(i)] = {std::cos(arg), std::sin(arg)};
  }
  return a;
}

UserChannel generate_channel(int user_id, double theta, double distance,
                             std::complex<double> gain,
                             const ArrayGeometry& geometry,
                             const ChannelParams& params) {
  if (distance < 0.0) {
    throw std::invalid_argument("distance must be >= 0");
  }
  if (params.num_paths < 1) {
    throw std::invalid_argument("num_paths must be >= 1");
  }
  UserChannel user;
  user.user_id = user_id;
  user.theta = theta;
  user.phi = normalized_angle(theta, geometry.spacing_ratio);
  user.distance = distance;
  user.gain = gain;
  user.vec = steering_vector(geometry, theta);
  const double scale =
      1.0 / std::sqrt(params.num_paths *
                      (1.0 + std::pow(distance, params.pathloss_exponent)));
  for (auto& v : user.vec) v *= gain * scale;
  return user;
}

double cosine_similarity(const std::vector<std::complex<double>>& x,
                         const std::vector<std::complex<double>>& y) {
  if (x.empty() || x.size() != y.size()) {
    throw std::invalid_argument("vectors must be non-empty and equal length");
  }
  const double nx = std::sqrt(kernels::sum_abs2(x.data(), x.size()));
  const double ny = std::sqrt(kernels::sum_abs2(y.data(), y.size()));
  if (nx == 0.0 || ny == 0.0) return 0.0;
  return std::abs(kernels::cdot(x.data(), y.data(), x.size())) / (nx * ny);
}

double cosine_similarity(const UserChannel& user,
                         const std::vector<std::complex<double>>& precoder) {
  return cosine_similarity(user.vec, precoder);
}

double effective_gain(const UserChannel& user,
                      const std::vector<std::complex<double>>& precoder) {
  if (user.vec.size() != precoder.size() || user.vec.empty()) {
    throw std::invalid_argument("vectors must be non-empty and equal length");
  }
  return std::norm(
      kernels::cdot(user.vec.data(), precoder.data(), user.vec.size()));
}

double fejer_similarity(int num_antennas, double dphi) {
  if (num_antennas < 1) {
    throw std::invalid_argument("num_antennas must be >= 1");
  }
  const double half = std::numbers::pi * dphi / 2.0;
  const double denom = std::sin(half);
  if (std::abs(denom) < 1e-12) return 1.0; // aligned modulo the grating period
  return std::abs(std::sin(num_antennas * half) / (num_antennas * denom));
}

} // namespace noma
