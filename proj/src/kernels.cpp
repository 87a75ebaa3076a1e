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

#include "noma/kernels.hpp"

#include <stdexcept>

#if defined(__x86_64__) || defined(_M_X64)
#define NOMA_KERNELS_X86 1
#include <immintrin.h>
#elif defined(__aarch64__)
#define NOMA_KERNELS_NEON 1
#include <arm_neon.h>
#endif

namespace noma::kernels {

// ---------- scalar reference ----------

std::complex<double> cdot_scalar(const std::complex<double>* a,
                                 const std::complex<double>* b,
                                 std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi; // conj(a) * b
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double sum_abs2_scalar(const std::complex<double>* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return acc;
}

// ---------- AVX2 ----------

#if NOMA_KERNELS_X86

__attribute__((target("avx2,fma"))) static std::complex<double>
cdot_avx2(const std::complex<double>* a, const std::complex<double>* b,
          std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  // Odd lanes hold imaginary components; flipping their sign in the swapped
  // operand turns the fused multiply-add into ar*bi - ai*br per lane pair.
  const __m256d odd_sign = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  std::size_t i = 0;
  const std::size_t pairs = n / 2;
  for (std::size_t p = 0; p < pairs; ++p, i += 4) {
    const __m256d va = _mm256_loadu_pd(pa + i);
    const __m256d vb = _mm256_loadu_pd(pb + i);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    const __m256d vbs = _mm256_permute_pd(vb, 0x5); // [bi, br] per complex
    acc_im = _mm256_fmadd_pd(va, _mm256_xor_pd(vbs, odd_sign), acc_im);
  }
  __m128d re2 = _mm_add_pd(_mm256_castpd256_pd128(acc_re),
                           _mm256_extractf128_pd(acc_re, 1));
  __m128d im2 = _mm_add_pd(_mm256_castpd256_pd128(acc_im),
                           _mm256_extractf128_pd(acc_im, 1));
  double re = _mm_cvtsd_f64(_mm_add_sd(re2, _mm_unpackhi_pd(re2, re2)));
  double im = _mm_cvtsd_f64(_mm_add_sd(im2, _mm_unpackhi_pd(im2, im2)));
  if (n & 1) {
    const std::size_t k = n - 1;
    const double ar = a[k].real(), ai = a[k].imag();
    const double br = b[k].real(), bi = b[k].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

__attribute__((target("avx2,fma"))) static double
sum_abs2_avx2(const std::complex<double>* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const std::size_t pairs = n / 2;
  for (std::size_t p = 0; p < pairs; ++p, i += 4) {
    const __m256d va = _mm256_loadu_pd(pa + i);
    acc = _mm256_fmadd_pd(va, va, acc);
  }
  __m128d s2 = _mm_add_pd(_mm256_castpd256_pd128(acc),
                          _mm256_extractf128_pd(acc, 1));
  double s = _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
  if (n & 1) {
    const std::size_t k = n - 1;
    s += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
  }
  return s;
}

static bool cpu_has_avx2() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#endif // NOMA_KERNELS_X86

// ---------- NEON ----------

#if NOMA_KERNELS_NEON

static std::complex<double> cdot_neon(const std::complex<double>* a,
                                      const std::complex<double>* b,
                                      std::size_t n) {
  float64x2_t acc_re = vdupq_n_f64(0.0);
  float64x2_t acc_im = vdupq_n_f64(0.0);
  const float64x2_t im_sign = {1.0, -1.0};
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = vld1q_f64(pa + 2 * i); // [ar, ai]
    const float64x2_t vb = vld1q_f64(pb + 2 * i); // [br, bi]
    acc_re = vfmaq_f64(acc_re, va, vb);
    const float64x2_t vbs = vextq_f64(vb, vb, 1); // [bi, br]
    acc_im = vfmaq_f64(acc_im, va, vmulq_f64(vbs, im_sign));
  }
  return {vaddvq_f64(acc_re), vaddvq_f64(acc_im)};
}

static double sum_abs2_neon(const std::complex<double>* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  const double* pa = reinterpret_cast<const double*>(a);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = vld1q_f64(pa + 2 * i);
    acc = vfmaq_f64(acc, va, va);
  }
  return vaddvq_f64(acc);
}

#endif // NOMA_KERNELS_NEON

// ---------- dispatch ----------

namespace {

using CdotFn = std::complex<double> (*)(const std::complex<double>*,
                                        const std::complex<double>*,
                                        std::size_t);
using SumAbs2Fn = double (*)(const std::complex<double>*, std::size_t);

struct Dispatch {
  Backend backend;
  CdotFn cdot;
  SumAbs2Fn sum_abs2;
};

Dispatch make_dispatch(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return {Backend::scalar, &cdot_scalar, &sum_abs2_scalar};
#if NOMA_KERNELS_X86
    case Backend::avx2:
      return {Backend::avx2, &cdot_avx2, &sum_abs2_avx2};
#endif
#if NOMA_KERNELS_NEON
    case Backend::neon:
      return {Backend::neon, &cdot_neon, &sum_abs2_neon};
#endif
    default:
      throw std::invalid_argument("kernel backend not supported on this CPU");
  }
}

Backend detect_backend() {
#if NOMA_KERNELS_X86
  if (cpu_has_avx2()) return Backend::avx2;
#elif NOMA_KERNELS_NEON
  return Backend::neon;
#endif
  return Backend::scalar;
}

Dispatch& dispatch() {
  static Dispatch d = make_dispatch(detect_backend());
  return d;
}

} // namespace

Backend active_backend() { return dispatch().backend; }

bool backend_supported(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if NOMA_KERNELS_X86
      return cpu_has_avx2();
#else
      return false;
#endif
    case Backend::neon:
#if NOMA_KERNELS_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

void force_backend(Backend backend) {
  if (!backend_supported(backend)) {
    throw std::invalid_argument("kernel backend not supported on this CPU");
  }
  dispatch() = make_dispatch(backend);
}

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

std::complex<double> cdot(const std::complex<double>* a,
                          const std::complex<double>* b, std::size_t n) {
  return dispatch().cdot(a, b, n);
}

double sum_abs2(const std::complex<double>* a, std::size_t n) {
  return dispatch().sum_abs2(a, n);
}

} // namespace noma::kernels
