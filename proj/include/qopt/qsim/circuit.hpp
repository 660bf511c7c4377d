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

#include "qopt/qsim/state_vector.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace qopt {

namespace gate {
struct Hadamard {
    Register target;
};
struct PauliX {
    unsigned qubit;
};
struct ControlledSwap {
    unsigned control;
    Register a;
    Register b;
};
struct BitOracle {
    std::vector<Register> inputs;
    unsigned out;
    std::shared_ptr<const std::vector<std::uint8_t>> table;
};
struct ValueOracle {
    std::vector<Register> inputs;
    Register out;
    std::shared_ptr<const std::vector<std::uint64_t>> values;
};
struct PhaseFlip {
    Register target;
    std::shared_ptr<const std::vector<std::uint8_t>> marked;
    PhaseCondition condition;
};
struct ReflectZero {
    Register target;
};
/// Placeholder for a mid-circuit measurement. Marks the sequence as not invertible.
struct Measure {
    Register target;
};
} // namespace gate

using Gate = std::variant<gate::Hadamard, gate::PauliX, gate::ControlledSwap, gate::BitOracle,
                          gate::ValueOracle, gate::PhaseFlip, gate::ReflectZero, gate::Measure>;

/**
 * Recorded gate list on a fixed number of qubits.
 *
 * Every unitary gate kind here is self-inverse, so the inverse of a sequence
 * is the same gates in reverse order. Oracle tables are shared between copies.
 */
class Circuit {
  public:
    explicit Circuit(unsigned num_qubits) : num_qubits_(num_qubits) {}

    [[nodiscard]] unsigned num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::span<const Gate> gates() const noexcept { return gates_; }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }
    [[nodiscard]] bool is_invertible() const noexcept;

    Circuit &hadamard(Register target);
    Circuit &x(unsigned qubit);
    Circuit &controlled_swap(unsigned control, Register a, Register b);
    Circuit &bit_oracle(std::vector<Register> inputs, unsigned out,
                        std::shared_ptr<const std::vector<std::uint8_t>> table);
    Circuit &value_oracle(std::vector<Register> inputs, Register out,
                          std::shared_ptr<const std::vector<std::uint64_t>> values);
    Circuit &phase_flip(Register target, std::shared_ptr<const std::vector<std::uint8_t>> marked,
                        PhaseCondition condition = {});
    Circuit &reflect_zero(Register target);
    Circuit &measure(Register target);
    Circuit &append(const Circuit &other);

    /// Run the gates in order. Throws ContractError on a Measure placeholder.
    void apply(StateVector &state) const;

    /// Run the inverse sequence. Throws ContractError if not invertible.
    void apply_inverse(StateVector &state) const;

    [[nodiscard]] Circuit inverse() const;

  private:
    void check_fits(const StateVector &state) const;

    unsigned num_qubits_;
    std::vector<Gate> gates_;
};

void apply_gate(StateVector &state, const Gate &g);

} // namespace qopt
