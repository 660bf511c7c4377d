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

#include "qopt/qsim/kernels.hpp"

#include <cmath>

namespace qopt::kernels::scalar {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;

inline bool selected(const SignMask &m, std::uint64_t mask_w, std::size_t i) {
    return m.marked[(i >> m.shift) & mask_w] != 0 && (i & m.cond_mask) == m.cond_value;
}
} // namespace

void hadamard(Amplitude *amps, std::size_t len, unsigned qubit) {
    const std::size_t stride = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < len; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const double ar = amps[i].real();
            const double ai = amps[i].imag();
            const double br = amps[i + stride].real();
            const double bi = amps[i + stride].imag();
            amps[i] = {(ar + br) * kInvSqrt2, (ai + bi) * kInvSqrt2};
            amps[i + stride] = {(ar - br) * kInvSqrt2, (ai - bi) * kInvSqrt2};
        }
    }
}

void flip_sign(Amplitude *amps, std::size_t len, const SignMask &mask) {
    const std::uint64_t mask_w = (std::uint64_t{1} << mask.width) - 1;
    for (std::size_t i = 0; i < len; ++i) {
        if (selected(mask, mask_w, i)) {
            amps[i] = {-amps[i].real(), -amps[i].imag()};
        }
    }
}

void accumulate_probabilities(const Amplitude *amps, std::size_t len, unsigned shift,
                              unsigned width, double *out) {
    const std::uint64_t mask_w = (std::uint64_t{1} << width) - 1;
    for (std::size_t i = 0; i < len; ++i) {
        const double re = amps[i].real();
        const double im = amps[i].imag();
        out[(i >> shift) & mask_w] += re * re + im * im;
    }
}

} // namespace qopt::kernels::scalar
