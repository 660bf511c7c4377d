// Copyright 2026 The qopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AVX2 variants. One __m256d holds two complex doubles laid out as
// [re0, im0, re1, im1]; std::complex<double> is array-compatible, so the
// amplitude buffer is viewed as a flat double array.

#include "qopt/qsim/kernels.hpp"

#include <immintrin.h>

namespace qopt::kernels::avx2 {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;

inline double *as_doubles(Amplitude *a) { return reinterpret_cast<double *>(a); }
inline const double *as_doubles(const Amplitude *a) { return reinterpret_cast<const double *>(a); }

inline bool selected(const SignMask &m, std::uint64_t mask_w, std::size_t i) {
    return m.marked[(i >> m.shift) & mask_w] != 0 && (i & m.cond_mask) == m.cond_value;
}

inline double horizontal_sum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}
} // namespace

void hadamard(Amplitude *amps, std::size_t len, unsigned qubit) {
    double *d = as_doubles(amps);
    const __m256d s = _mm256_set1_pd(kInvSqrt2);
    const std::size_t stride = std::size_t{1} << qubit;
    if (stride == 1) {
        // Pair partners share one register: v = [a, b], swapped = [b, a].
        for (std::size_t i = 0; i + 1 < len; i += 2) {
            const __m256d v = _mm256_loadu_pd(d + 2 * i);
            const __m256d sw = _mm256_permute2f128_pd(v, v, 0x01);
            const __m256d sum = _mm256_add_pd(v, sw);
            const __m256d diff = _mm256_sub_pd(sw, v);
            _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(_mm256_blend_pd(sum, diff, 0b1100), s));
        }
        return;
    }
    for (std::size_t base = 0; base < len; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; i += 2) {
            double *pa = d + 2 * i;
            double *pb = d + 2 * (i + stride);
            const __m256d a = _mm256_loadu_pd(pa);
            const __m256d b = _mm256_loadu_pd(pb);
            _mm256_storeu_pd(pa, _mm256_mul_pd(_mm256_add_pd(a, b), s));
            _mm256_storeu_pd(pb, _mm256_mul_pd(_mm256_sub_pd(a, b), s));
        }
    }
}

void flip_sign(Amplitude *amps, std::size_t len, const SignMask &mask) {
    if (len < 2) {
        scalar::flip_sign(amps, len, mask);
        return;
    }
    double *d = as_doubles(amps);
    const std::uint64_t mask_w = (std::uint64_t{1} << mask.width) - 1;
    const __m256d sign_masks[4] = {
        _mm256_setzero_pd(),
        _mm256_set_pd(0.0, 0.0, -0.0, -0.0),
        _mm256_set_pd(-0.0, -0.0, 0.0, 0.0),
        _mm256_set1_pd(-0.0),
    };
    for (std::size_t i = 0; i < len; i += 2) {
        const unsigned sel = (selected(mask, mask_w, i) ? 1u : 0u) |
                             (selected(mask, mask_w, i + 1) ? 2u : 0u);
        if (sel == 0) {
            continue;
        }
        const __m256d v = _mm256_loadu_pd(d + 2 * i);
        _mm256_storeu_pd(d + 2 * i, _mm256_xor_pd(v, sign_masks[sel]));
    }
}

void accumulate_probabilities(const Amplitude *amps, std::size_t len, unsigned shift,
                              unsigned width, double *out) {
    // Both lanes of a register must land in the same bucket.
    if (shift == 0) {
        scalar::accumulate_probabilities(amps, len, shift, width, out);
        return;
    }
    const double *d = as_doubles(amps);
    const std::uint64_t mask_w = (std::uint64_t{1} << width) - 1;
    const std::size_t block = std::size_t{1} << shift;
    const std::size_t span = block < len ? block : len;
    for (std::size_t base = 0; base < len; base += span) {
        __m256d acc0 = _mm256_setzero_pd();
        __m256d acc1 = _mm256_setzero_pd();
        std::size_t i = base;
        for (; i + 4 <= base + span; i += 4) {
            const __m256d v0 = _mm256_loadu_pd(d + 2 * i);
            const __m256d v1 = _mm256_loadu_pd(d + 2 * i + 4);
            acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(v0, v0));
            acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(v1, v1));
        }
        for (; i < base + span; i += 2) {
            const __m256d v0 = _mm256_loadu_pd(d + 2 * i);
            acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(v0, v0));
        }
        out[(base >> shift) & mask_w] += horizontal_sum(_mm256_add_pd(acc0, acc1));
    }
}

} // namespace qopt::kernels::avx2
