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

#include "noma/codebook.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace noma {

BeamCodebook build_codebook(int num_divisions, const ArrayGeometry& geometry) {
  if (num_divisions < 1) {
    throw std::invalid_argument("num_divisions must be >= 1");
  }
  BeamCodebook cb;
  cb.num_divisions = num_divisions;
  cb.boresights.reserve(static_cast<std::size_t>(num_divisions) + 1);
  cb.precoders.reserve(static_cast<std::size_t>(num_divisions) + 1);
  for (int b = 0; b <= num_divisions; ++b) {
    const double theta =
        -std::numbers::pi / 2.0 + b * std::numbers::pi / num_divisions;
    cb.boresights.push_back(theta);
    cb.precoders.push_back(steering_vector(geometry, theta));
  }
  return cb;
}

UserBeamSet user_beam_set(const UserChannel& user, const BeamCodebook& codebook,
                          int beams_per_user) {
  if (beams_per_user < 1 || beams_per_user > codebook.num_beams()) {
    throw std::invalid_argument("beams_per_user must be in [1, num_beams]");
  }
  const int nb = codebook.num_beams();
  std::vector<double> sims(static_cast<std::size_t>(nb));
  for (int b = 0; b < nb; ++b) {
    sims[static_cast<std::size_t>(b)] =
        cosine_similarity(user, codebook.precoders[static_cast<std::size_t>(b)]);
  }
  std::vector<int> order(static_cast<std::size_t>(nb));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    return sims[static_cast<std::size_t>(lhs)] >
           sims[static_cast<std::size_t>(rhs)];
  });
  UserBeamSet set;
  set.user_id = user.user_id;
  set.beams.reserve(static_cast<std::size_t>(beams_per_user));
  set.similarities.reserve(static_cast<std::size_t>(beams_per_user));
  for (int k = 0; k < beams_per_user; ++k) {
    const int b = order[static_cast<std::size_t>(k)];
    set.beams.push_back(b);
    set.similarities.push_back(sims[static_cast<std::size_t>(b)]);
  }
  return set;
}

} // namespace noma
