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

#include <cstddef>
#include <cstdint>
#include <span>

namespace qopt {

/**
 * Contiguous range of qubits [offset, offset + width).
 *
 * Qubit 0 is the least-significant bit of a basis index, and a register's
 * value is read with its first qubit as the least-significant bit.
 */
struct Register {
    unsigned offset = 0;
    unsigned width = 0;

    [[nodiscard]] constexpr unsigned end() const noexcept { return offset + width; }
    [[nodiscard]] constexpr std::uint64_t num_values() const noexcept {
        return std::uint64_t{1} << width;
    }
    [[nodiscard]] constexpr std::uint64_t value_mask() const noexcept { return num_values() - 1; }
    [[nodiscard]] constexpr std::uint64_t value_of(std::uint64_t basis) const noexcept {
        return (basis >> offset) & value_mask();
    }
    [[nodiscard]] constexpr std::uint64_t place(std::uint64_t value) const noexcept {
        return (value & value_mask()) << offset;
    }
    [[nodiscard]] constexpr bool contains(unsigned qubit) const noexcept {
        return qubit >= offset && qubit < end();
    }

    friend constexpr bool operator==(Register, Register) = default;
};

[[nodiscard]] constexpr bool overlaps(Register a, Register b) noexcept {
    return a.width != 0 && b.width != 0 && a.offset < b.end() && b.offset < a.end();
}

/// Value of the concatenation of `parts`, first part in the low bits.
[[nodiscard]] inline std::uint64_t composite_value(std::span<const Register> parts,
                                                   std::uint64_t basis) noexcept {
    std::uint64_t value = 0;
    unsigned shift = 0;
    for (const Register &r : parts) {
        value |= r.value_of(basis) << shift;
        shift += r.width;
    }
    return value;
}

[[nodiscard]] inline unsigned composite_width(std::span<const Register> parts) noexcept {
    unsigned w = 0;
    for (const Register &r : parts) {
        w += r.width;
    }
    return w;
}

/**
 * Wire structure of the partial swap test circuit.
 *
 *   qubit 0                    ancilla
 *   [1, n]                     register A sample index j
 *   n + 1                      register A flag (receives E[theta][j])
 *   [n + 2, 2n + 1]            register B sample index k
 *   2n + 2                     register B flag (prepared as |1>)
 *   [2n + 3, 2n + m + 2]       theta index
 *
 * Register A (index + flag) and register B are each n + 1 contiguous qubits,
 * so the controlled swap exchanges them qubit by qubit.
 */
class RegisterLayout {
  public:
    RegisterLayout(unsigned sample_qubits, unsigned theta_qubits)
        : n_(sample_qubits), m_(theta_qubits) {}

    /// Layout for N samples and M parameters; both must be powers of two.
    static RegisterLayout for_sizes(std::size_t num_samples, std::size_t num_thetas);

    [[nodiscard]] unsigned sample_qubits() const noexcept { return n_; }
    [[nodiscard]] unsigned theta_qubits() const noexcept { return m_; }
    [[nodiscard]] std::size_t num_samples() const noexcept { return std::size_t{1} << n_; }
    [[nodiscard]] std::size_t num_thetas() const noexcept { return std::size_t{1} << m_; }
    [[nodiscard]] unsigned num_qubits() const noexcept { return 2 * n_ + m_ + 3; }

    [[nodiscard]] Register ancilla() const noexcept { return {0, 1}; }
    [[nodiscard]] Register reg_a_index() const noexcept { return {1, n_}; }
    [[nodiscard]] Register reg_a_flag() const noexcept { return {n_ + 1, 1}; }
    [[nodiscard]] Register reg_b_index() const noexcept { return {n_ + 2, n_}; }
    [[nodiscard]] Register reg_b_flag() const noexcept { return {2 * n_ + 2, 1}; }
    [[nodiscard]] Register theta() const noexcept { return {2 * n_ + 3, m_}; }
    [[nodiscard]] Register reg_a() const noexcept { return {1, n_ + 1}; }
    [[nodiscard]] Register reg_b() const noexcept { return {n_ + 2, n_ + 1}; }
    [[nodiscard]] Register all() const noexcept { return {0, num_qubits()}; }

    friend bool operator==(const RegisterLayout &, const RegisterLayout &) = default;

  private:
    unsigned n_;
    unsigned m_;
};

[[nodiscard]] constexpr bool is_power_of_two(std::uint64_t x) noexcept {
    return x != 0 && (x & (x - 1)) == 0;
}

/// floor(log2(x)) for x > 0.
[[nodiscard]] constexpr unsigned log2_floor(std::uint64_t x) noexcept {
    unsigned r = 0;
    while (x > 1) {
        x >>= 1;
        ++r;
    }
    return r;
}

/// Smallest power of two >= x (x > 0).
[[nodiscard]] constexpr std::uint64_t next_power_of_two(std::uint64_t x) noexcept {
    std::uint64_t p = 1;
    while (p < x) {
        p <<= 1;
    }
    return p;
}

} // namespace qopt
