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

#include "qopt/qsim/circuit.hpp"

#include "qopt/errors.hpp"

#include <algorithm>
#include <string>

namespace qopt {

namespace {
template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;
} // namespace

void apply_gate(StateVector &state, const Gate &g) {
    std::visit(overloaded{
                   [&](const gate::Hadamard &h) { apply_hadamard(state, h.target); },
                   [&](const gate::PauliX &x) { apply_x(state, x.qubit); },
                   [&](const gate::ControlledSwap &s) {
                       apply_controlled_swap(state, s.control, s.a, s.b);
                   },
                   [&](const gate::BitOracle &o) {
                       apply_bit_oracle(state, o.inputs, o.out, *o.table);
                   },
                   [&](const gate::ValueOracle &o) {
                       apply_value_oracle(state, o.inputs, o.out, *o.values);
                   },
                   [&](const gate::PhaseFlip &p) {
                       apply_phase_oracle(state, p.target, *p.marked, p.condition);
                   },
                   [&](const gate::ReflectZero &r) { apply_reflect_zero(state, r.target); },
                   [&](const gate::Measure &) {
                       throw ContractError("measurement placeholder cannot be applied as a gate");
                   },
               },
               g);
}

bool Circuit::is_invertible() const noexcept {
    return std::none_of(gates_.begin(), gates_.end(), [](const Gate &g) {
        return std::holds_alternative<gate::Measure>(g);
    });
}

Circuit &Circuit::hadamard(Register target) {
    gates_.emplace_back(gate::Hadamard{target});
    return *this;
}

Circuit &Circuit::x(unsigned qubit) {
    gates_.emplace_back(gate::PauliX{qubit});
    return *this;
}

Circuit &Circuit::controlled_swap(unsigned control, Register a, Register b) {
    gates_.emplace_back(gate::ControlledSwap{control, a, b});
    return *this;
}

Circuit &Circuit::bit_oracle(std::vector<Register> inputs, unsigned out,
                             std::shared_ptr<const std::vector<std::uint8_t>> table) {
    gates_.emplace_back(gate::BitOracle{std::move(inputs), out, std::move(table)});
    return *this;
}

Circuit &Circuit::value_oracle(std::vector<Register> inputs, Register out,
                               std::shared_ptr<const std::vector<std::uint64_t>> values) {
    gates_.emplace_back(gate::ValueOracle{std::move(inputs), out, std::move(values)});
    return *this;
}

Circuit &Circuit::phase_flip(Register target,
                             std::shared_ptr<const std::vector<std::uint8_t>> marked,
                             PhaseCondition condition) {
    gates_.emplace_back(gate::PhaseFlip{target, std::move(marked), condition});
    return *this;
}

Circuit &Circuit::reflect_zero(Register target) {
    gates_.emplace_back(gate::ReflectZero{target});
    return *this;
}

Circuit &Circuit::measure(Register target) {
    gates_.emplace_back(gate::Measure{target});
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw LayoutError("cannot append a circuit on a different number of qubits");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

void Circuit::check_fits(const StateVector &state) const {
    if (state.num_qubits() != num_qubits_) {
        throw LayoutError("circuit on " + std::to_string(num_qubits_) +
                          " qubits applied to a " + std::to_string(state.num_qubits()) +
                          "-qubit state");
    }
}

void Circuit::apply(StateVector &state) const {
    check_fits(state);
    for (const Gate &g : gates_) {
        apply_gate(state, g);
    }
}

void Circuit::apply_inverse(StateVector &state) const {
    if (!is_invertible()) {
        throw ContractError("circuit contains a measurement and has no inverse");
    }
    check_fits(state);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        apply_gate(state, *it);
    }
}

Circuit Circuit::inverse() const {
    if (!is_invertible()) {
        throw ContractError("circuit contains a measurement and has no inverse");
    }
    Circuit inv(num_qubits_);
    inv.gates_.assign(gates_.rbegin(), gates_.rend());
    return inv;
}

} // namespace qopt
