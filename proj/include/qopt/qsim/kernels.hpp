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

#pragma once

// Data-parallel inner loops of the statevector simulator.
//
// Every kernel has a portable scalar reference in kernels::scalar. Where the
// build and the CPU allow it an AVX2 variant in kernels::avx2 is selected at
// runtime; both produce bit-identical results for hadamard and flip_sign, and
// agree to rounding for accumulate_probabilities (summation order differs).
// The dispatcher honours QOPT_SIMD=scalar|avx2|auto from the environment.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace qopt {

using Amplitude = std::complex<double>;

namespace kernels {

enum class Isa { scalar, avx2 };

[[nodiscard]] std::string_view to_string(Isa isa) noexcept;

/// Negate amp[i] iff marked[(i >> shift) & (2^width - 1)] != 0 and
/// (i & cond_mask) == cond_value.
struct SignMask {
    unsigned shift = 0;
    unsigned width = 0;
    const std::uint8_t *marked = nullptr;
    std::uint64_t cond_mask = 0;
    std::uint64_t cond_value = 0;
};

using HadamardFn = void (*)(Amplitude *amps, std::size_t len, unsigned qubit);
using FlipSignFn = void (*)(Amplitude *amps, std::size_t len, const SignMask &mask);
/// out[(i >> shift) & (2^width - 1)] += |amp[i]|^2; out must hold 2^width zeroed doubles.
using AccumulateFn = void (*)(const Amplitude *amps, std::size_t len, unsigned shift,
                              unsigned width, double *out);

struct KernelTable {
    Isa isa;
    HadamardFn hadamard;
    FlipSignFn flip_sign;
    AccumulateFn accumulate_probabilities;
};

namespace scalar {
void hadamard(Amplitude *amps, std::size_t len, unsigned qubit);
void flip_sign(Amplitude *amps, std::size_t len, const SignMask &mask);
void accumulate_probabilities(const Amplitude *amps, std::size_t len, unsigned shift,
                              unsigned width, double *out);
} // namespace scalar

#if defined(QOPT_HAVE_AVX2)
namespace avx2 {
void hadamard(Amplitude *amps, std::size_t len, unsigned qubit);
void flip_sign(Amplitude *amps, std::size_t len, const SignMask &mask);
void accumulate_probabilities(const Amplitude *amps, std::size_t len, unsigned shift,
                              unsigned width, double *out);
} // namespace avx2
#endif

[[nodiscard]] const KernelTable &scalar_kernels() noexcept;

/// AVX2 table, or nullptr when it was not built or the CPU lacks AVX2.
[[nodiscard]] const KernelTable *avx2_kernels() noexcept;

/// Kernels used by StateVector operations.
[[nodiscard]] const KernelTable &active() noexcept;

/// Force a kernel family; throws ContractError if it is unavailable.
void select(Isa isa);

} // namespace kernels
} // namespace qopt
