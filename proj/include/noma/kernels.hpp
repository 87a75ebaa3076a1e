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

#ifndef NOMA_KERNELS_HPP
#define NOMA_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string_view>

namespace noma::kernels {

/// Arithmetic backends for the inner-product kernels. The scalar path is the
/// reference implementation; vector paths must agree with it to rounding.
enum class Backend { scalar, avx2, neon };

Backend active_backend();
bool backend_supported(Backend backend);

/// Route all dispatched kernel calls through the given backend.
/// Throws std::invalid_argument if the backend is not usable on this CPU.
void force_backend(Backend backend);

std::string_view backend_name(Backend backend);

/// Hermitian inner product  sum_i conj(a[i]) * b[i]  (dispatched).
std::complex<double> cdot(const std::complex<double>* a,
                          const std::complex<double>* b, std::size_t n);

/// Sum of squared magnitudes  sum_i |a[i]|^2  (dispatched).
double sum_abs2(const std::complex<double>* a, std::size_t n);

// Scalar reference kernels, always available regardless of dispatch state.
std::complex<double> cdot_scalar(const std::complex<double>* a,
                                 const std::complex<double>* b, std::size_t n);
double sum_abs2_scalar(const std::complex<double>* a, std::size_t n);

} // namespace noma::kernels

#endif
