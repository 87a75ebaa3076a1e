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

#ifndef NOMA_CODEBOOK_HPP
#define NOMA_CODEBOOK_HPP

#include <complex>
#include <vector>

#include "noma/channel.hpp"

namespace noma {

/// Analog beam codebook: B+1 steering-vector precoders whose boresights
/// divide [-pi/2, pi/2] evenly.
struct BeamCodebook {
  int num_divisions = 0;           // B
  std::vector<double> boresights;  // theta_b = -pi/2 + b*pi/B, b = 0..B
  std::vector<std::vector<std::complex<double>>> precoders;

  int num_beams() const { return num_divisions + 1; }
};

/// Throws std::invalid_argument if num_divisions < 1.
BeamCodebook build_codebook(int num_divisions, const ArrayGeometry& geometry);

/// A user's candidate beams, strongest first.
struct UserBeamSet {
  int user_id = 0;
  std::vector<int> beams;          // codebook indices, best similarity first
  std::vector<double> similarities; // nonincreasing, aligned with beams
};

/// Top `beams_per_user` beams by cosine similarity. Ties break toward the
/// lower beam index. Throws std::invalid_argument if beams_per_user is
/// outside [1, num_beams].
UserBeamSet user_beam_set(const UserChannel& user, const BeamCodebook& codebook,
                          int beams_per_user);

} // namespace noma

#endif
