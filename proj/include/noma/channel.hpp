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

#ifndef NOMA_CHANNEL_HPP
#define NOMA_CHANNEL_HPP

#include <complex>
#include <vector>

namespace noma {

/// Uniform linear array at the base station.
struct ArrayGeometry {
  int num_antennas = 8;
  double spacing_ratio = 0.5; // element spacing over carrier wavelength
};

/// Single-path mmWave propagation parameters.
struct ChannelParams {
  int num_paths = 1;
  double pathloss_exponent = 2.0;

  bool operator==(const ChannelParams&) const = default;
};

/// One user's downlink channel realization.
struct UserChannel {
  int user_id = 0;
  double theta = 0.0;    // angle of departure, radians in (-pi/2, pi/2)
  double phi = 0.0;      // normalized angle, 2 * spacing_ratio * sin(theta)
  double distance = 0.0; // meters from the base station
  std::complex<double> gain;            // small-scale fading coefficient
  std::vector<std::complex<double>> vec; // channel vector, length num_antennas
  int decoding_capability = 0; // max interfering signals the user can cancel
};

/// Normalized angle phi = 2 * spacing_ratio * sin(theta).
double normalized_angle(double theta, double spacing_ratio);

/// Array response a(theta), element i = exp(-j*pi*i*phi), i = 0..M-1.
/// Throws std::invalid_argument if num_antennas < 1.
std::vector<std::complex<double>> steering_vector(const ArrayGeometry& geometry,
                                                  double theta);

/// Channel vector a(theta) * gain / sqrt(num_paths * (1 + distance^eta)).
/// Throws std::invalid_argument if distance < 0 or num_paths < 1.
UserChannel generate_channel(int user_id, double theta, double distance,
                             std::complex<double> gain,
                             const ArrayGeometry& geometry,
                             const ChannelParams& params);

/// |x^H y| / (|x| * |y|), computed by direct inner product. Returns 0 when
/// either vector has zero norm. Throws std::invalid_argument on length
/// mismatch or empty input.
double cosine_similarity(const std::vector<std::complex<double>>& x,
                         const std::vector<std::complex<double>>& y);

/// Cosine similarity between a user's channel and a precoder.
double cosine_similarity(const UserChannel& user,
                         const std::vector<std::complex<double>>& precoder);

/// Effective beamforming gain |h^H w|^2.
double effective_gain(const UserChannel& user,
                      const std::vector<std::complex<double>>& precoder);

/// Closed-form similarity of two steering vectors separated by dphi in
/// normalized angle: |sin(pi*M*dphi/2) / (M*sin(pi*dphi/2))|.
double fejer_similarity(int num_antennas, double dphi);

} // namespace noma

#endif
