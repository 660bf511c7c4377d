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

#include "qopt/errors.hpp"
#include "qopt/qsim/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace qopt::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::hadamard, &scalar::flip_sign,
                              &scalar::accumulate_probabilities};

#if defined(QOPT_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::hadamard, &avx2::flip_sign,
                            &avx2::accumulate_probabilities};

bool cpu_has_avx2() noexcept {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
}
#endif

const KernelTable *initial_table() noexcept {
    const char *env = std::getenv("QOPT_SIMD");
    const std::string choice = env != nullptr ? env : "auto";
    if (choice == "scalar") {
        return &kScalar;
    }
    const KernelTable *vec = avx2_kernels();
    return vec != nullptr ? vec : &kScalar;
}

std::atomic<const KernelTable *> &active_slot() noexcept {
    static std::atomic<const KernelTable *> slot{initial_table()};
    return slot;
}

} // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    }
    return "unknown";
}

const KernelTable &scalar_kernels() noexcept { return kScalar; }

const KernelTable *avx2_kernels() noexcept {
#if defined(QOPT_HAVE_AVX2)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable &active() noexcept { return *active_slot().load(std::memory_order_acquire); }

void select(Isa isa) {
    const KernelTable *table = isa == Isa::scalar ? &kScalar : avx2_kernels();
    if (table == nullptr) {
        throw ContractError("kernel family '" + std::string(to_string(isa)) +
                            "' is not available on this build or CPU");
    }
    active_slot().store(table, std::memory_order_release);
}

} // namespace qopt::kernels
