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

#include "qopt/qsim/kernels.hpp"
#include "qopt/qsim/register.hpp"
#include "qopt/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qopt {

/// Desk-scale memory guard: 2^26 amplitudes is 1 GiB.
inline constexpr unsigned kMaxQubits = 26;

/**
 * Dense amplitude vector over 2^Q basis states.
 *
 * Gates mutate the state in place. Every gate below is a permutation or a
 * real orthogonal map, so the norm is preserved up to rounding.
 */
class StateVector {
  public:
    /// |0...0> on num_qubits qubits; throws ResourceLimitError above kMaxQubits.
    explicit StateVector(unsigned num_qubits);

    /// Wrap explicit amplitudes; the length must be a power of two.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

    [[nodiscard]] unsigned num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }

    [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<Amplitude> amplitudes() noexcept { return amps_; }

    [[nodiscard]] const Amplitude &operator[](std::size_t i) const noexcept { return amps_[i]; }

    [[nodiscard]] double norm_squared() const;

    /// Throws LayoutError unless `reg` lies inside [0, num_qubits).
    void check_register(Register reg) const;
    void check_qubit(unsigned qubit) const;

  private:
    StateVector(unsigned num_qubits, std::vector<Amplitude> amplitudes)
        : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {}

    unsigned num_qubits_;
    std::vector<Amplitude> amps_;
};

[[nodiscard]] StateVector new_zero_state(const RegisterLayout &layout);

/// <u, v> = sum conj(u_i) v_i.
[[nodiscard]] Amplitude inner_product(const StateVector &u, const StateVector &v);

/// Restrict a phase flip to basis states with (index & mask) == value.
struct PhaseCondition {
    std::uint64_t mask = 0;
    std::uint64_t value = 0;

    static PhaseCondition qubit_is_zero(unsigned qubit) {
        return {std::uint64_t{1} << qubit, 0};
    }
};

void apply_hadamard(StateVector &state, Register reg);
void apply_x(StateVector &state, unsigned qubit);

/// Exchange reg_a and reg_b qubit-wise on every basis state whose control is 1.
void apply_controlled_swap(StateVector &state, unsigned control, Register reg_a, Register reg_b);

/// XOR table[value(inputs)] into out_qubit; table.size() == 2^width(inputs).
void apply_bit_oracle(StateVector &state, std::span<const Register> inputs, unsigned out_qubit,
                      std::span<const std::uint8_t> table);

/// XOR values[value(inputs)] into the out register.
void apply_value_oracle(StateVector &state, std::span<const Register> inputs, Register out,
                        std::span<const std::uint64_t> values);

/// Multiply by -1 every basis state whose `reg` value is marked (and which
/// satisfies `cond`); marked.size() == 2^reg.width.
void apply_phase_oracle(StateVector &state, Register reg, std::span<const std::uint8_t> marked,
                        PhaseCondition cond = {});

void apply_phase_oracle(StateVector &state, Register reg,
                        const std::function<bool(std::uint64_t)> &marked);

/// Keep the amplitude of register value 0, negate every other value.
void apply_reflect_zero(StateVector &state, Register reg);

/// Exact Born-rule marginal over the 2^reg.width values of `reg`.
[[nodiscard]] std::vector<double> marginal_probability(const StateVector &state, Register reg);

struct MeasurementOutcome {
    std::uint64_t value = 0;
    StateVector posterior;
    double probability = 0.0;
};

/// Draw an index from a discrete distribution; zero-probability entries are never returned.
[[nodiscard]] std::size_t sample_index(std::span<const double> probabilities, Rng &rng);

/// Projective measurement of `reg`; the input state is left untouched.
[[nodiscard]] MeasurementOutcome measure(const StateVector &state, Register reg, Rng &rng);

/// Projective measurement that collapses `state` in place.
std::uint64_t measure_in_place(StateVector &state, Register reg, Rng &rng,
                               double *probability = nullptr);

} // namespace qopt
