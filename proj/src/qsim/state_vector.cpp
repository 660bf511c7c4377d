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

#include "qopt/qsim/state_vector.hpp"

#include "qopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace qopt {

namespace {

std::string describe(Register r) {
    return "[" + std::to_string(r.offset) + ", " + std::to_string(r.end()) + ")";
}

void check_inputs(const StateVector &state, std::span<const Register> inputs) {
    for (std::size_t a = 0; a < inputs.size(); ++a) {
        state.check_register(inputs[a]);
        for (std::size_t b = a + 1; b < inputs.size(); ++b) {
            if (overlaps(inputs[a], inputs[b])) {
                throw LayoutError("oracle input registers overlap");
            }
        }
    }
}

} // namespace

RegisterLayout RegisterLayout::for_sizes(std::size_t num_samples, std::size_t num_thetas) {
    if (!is_power_of_two(num_samples) || !is_power_of_two(num_thetas)) {
        throw LayoutError("register layout needs power-of-two sample and parameter counts");
    }
    return RegisterLayout(log2_floor(num_samples), log2_floor(num_thetas));
}

StateVector::StateVector(unsigned num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits > kMaxQubits) {
        throw ResourceLimitError("requested " + std::to_string(num_qubits) +
                                 " qubits; the limit is " + std::to_string(kMaxQubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    if (!is_power_of_two(amplitudes.size())) {
        throw LayoutError("amplitude count " + std::to_string(amplitudes.size()) +
                          " is not a power of two");
    }
    const unsigned q = log2_floor(amplitudes.size());
    if (q > kMaxQubits) {
        throw ResourceLimitError("state exceeds the qubit limit");
    }
    return StateVector(q, std::move(amplitudes));
}

double StateVector::norm_squared() const {
    double total = 0.0;
    kernels::active().accumulate_probabilities(amps_.data(), amps_.size(), num_qubits_, 0, &total);
    return total;
}

void StateVector::check_register(Register reg) const {
    if (reg.end() > num_qubits_) {
        throw LayoutError("register " + describe(reg) + " exceeds a " +
                          std::to_string(num_qubits_) + "-qubit state");
    }
}

void StateVector::check_qubit(unsigned qubit) const {
    if (qubit >= num_qubits_) {
        throw LayoutError("qubit " + std::to_string(qubit) + " outside a " +
                          std::to_string(num_qubits_) + "-qubit state");
    }
}

StateVector new_zero_state(const RegisterLayout &layout) { return StateVector(layout.num_qubits()); }

Amplitude inner_product(const StateVector &u, const StateVector &v) {
    if (u.size() != v.size()) {
        throw LayoutError("inner product of states with different sizes");
    }
    Amplitude acc{0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += std::conj(u[i]) * v[i];
    }
    return acc;
}

void apply_hadamard(StateVector &state, Register reg) {
    state.check_register(reg);
    const auto &k = kernels::active();
    auto amps = state.amplitudes();
    for (unsigned q = reg.offset; q < reg.end(); ++q) {
        k.hadamard(amps.data(), amps.size(), q);
    }
}

void apply_x(StateVector &state, unsigned qubit) {
    state.check_qubit(qubit);
    auto amps = state.amplitudes();
    const std::size_t stride = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
        std::swap_ranges(amps.begin() + static_cast<std::ptrdiff_t>(base),
                         amps.begin() + static_cast<std::ptrdiff_t>(base + stride),
                         amps.begin() + static_cast<std::ptrdiff_t>(base + stride));
    }
}

void apply_controlled_swap(StateVector &state, unsigned control, Register reg_a,
                           Register reg_b) {
    state.check_qubit(control);
    state.check_register(reg_a);
    state.check_register(reg_b);
    if (reg_a.width != reg_b.width) {
        throw LayoutError("controlled swap of registers with different widths");
    }
    if (overlaps(reg_a, reg_b) || reg_a.contains(control) || reg_b.contains(control)) {
        throw LayoutError("controlled swap registers must be disjoint from each other and the "
                          "control");
    }
    auto amps = state.amplitudes();
    const std::uint64_t control_bit = std::uint64_t{1} << control;
    const std::uint64_t clear = ~((reg_a.value_mask() << reg_a.offset) |
                                  (reg_b.value_mask() << reg_b.offset));
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & control_bit) == 0) {
            continue;
        }
        const std::uint64_t a = reg_a.value_of(i);
        const std::uint64_t b = reg_b.value_of(i);
        if (a < b) {
            const std::uint64_t j = (i & clear) | reg_a.place(b) | reg_b.place(a);
            std::swap(amps[i], amps[j]);
        }
    }
}

void apply_bit_oracle(StateVector &state, std::span<const Register> inputs, unsigned out_qubit,
                      std::span<const std::uint8_t> table) {
    check_inputs(state, inputs);
    state.check_qubit(out_qubit);
    for (const Register &r : inputs) {
        if (r.contains(out_qubit)) {
            throw LayoutError("oracle output qubit lies inside an input register");
        }
    }
    const std::uint64_t expected = std::uint64_t{1} << composite_width(inputs);
    if (table.size() != expected) {
        throw LayoutError("bit oracle table has " + std::to_string(table.size()) +
                          " entries; expected " + std::to_string(expected));
    }
    auto amps = state.amplitudes();
    const std::uint64_t out_bit = std::uint64_t{1} << out_qubit;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & out_bit) == 0 && table[composite_value(inputs, i)] != 0) {
            std::swap(amps[i], amps[i | out_bit]);
        }
    }
}

void apply_value_oracle(StateVector &state, std::span<const Register> inputs, Register out,
                        std::span<const std::uint64_t> values) {
    check_inputs(state, inputs);
    state.check_register(out);
    for (const Register &r : inputs) {
        if (overlaps(r, out)) {
            throw LayoutError("value oracle output overlaps an input register");
        }
    }
    const std::uint64_t expected = std::uint64_t{1} << composite_width(inputs);
    if (values.size() != expected) {
        throw LayoutError("value oracle table has " + std::to_string(values.size()) +
                          " entries; expected " + std::to_string(expected));
    }
    for (std::uint64_t v : values) {
        if (v > out.value_mask()) {
            throw LayoutError("value " + std::to_string(v) + " does not fit a " +
                              std::to_string(out.width) + "-qubit output register");
        }
    }
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const std::uint64_t j = i ^ out.place(values[composite_value(inputs, i)]);
        if (i < j) {
            std::swap(amps[i], amps[j]);
        }
    }
}

void apply_phase_oracle(StateVector &state, Register reg, std::span<const std::uint8_t> marked,
                        PhaseCondition cond) {
    state.check_register(reg);
    if (marked.size() != reg.num_values()) {
        throw LayoutError("phase oracle needs one mark per register value");
    }
    const kernels::SignMask mask{reg.offset, reg.width, marked.data(), cond.mask, cond.value};
    auto amps = state.amplitudes();
    kernels::active().flip_sign(amps.data(), amps.size(), mask);
}

void apply_phase_oracle(StateVector &state, Register reg,
                        const std::function<bool(std::uint64_t)> &marked) {
    state.check_register(reg);
    std::vector<std::uint8_t> table(reg.num_values());
    for (std::uint64_t v = 0; v < table.size(); ++v) {
        table[v] = marked(v) ? 1 : 0;
    }
    apply_phase_oracle(state, reg, table);
}

void apply_reflect_zero(StateVector &state, Register reg) {
    state.check_register(reg);
    std::vector<std::uint8_t> table(reg.num_values(), 1);
    table[0] = 0;
    apply_phase_oracle(state, reg, table);
}

std::vector<double> marginal_probability(const StateVector &state, Register reg) {
    state.check_register(reg);
    std::vector<double> probs(reg.num_values(), 0.0);
    const auto amps = state.amplitudes();
    kernels::active().accumulate_probabilities(amps.data(), amps.size(), reg.offset, reg.width,
                                               probs.data());
    return probs;
}

std::size_t sample_index(std::span<const double> probabilities, Rng &rng) {
    const double u = rng.uniform01();
    double total = 0.0;
    for (double p : probabilities) {
        total += p;
    }
    const double target = u * total;
    double cumulative = 0.0;
    std::size_t last_nonzero = probabilities.size();
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        if (probabilities[k] <= 0.0) {
            continue;
        }
        last_nonzero = k;
        cumulative += probabilities[k];
        if (target < cumulative) {
            return k;
        }
    }
    if (last_nonzero == probabilities.size()) {
        throw ContractError("cannot sample from an all-zero distribution");
    }
    return last_nonzero;
}

std::uint64_t measure_in_place(StateVector &state, Register reg, Rng &rng, double *probability) {
    const std::vector<double> probs = marginal_probability(state, reg);
    const std::uint64_t value = sample_index(probs, rng);
    const double p = probs[value];
    const double scale = 1.0 / std::sqrt(p);
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (reg.value_of(i) == value) {
            amps[i] *= scale;
        } else {
            amps[i] = 0.0;
        }
    }
    if (probability != nullptr) {
        *probability = p;
    }
    return value;
}

MeasurementOutcome measure(const StateVector &state, Register reg, Rng &rng) {
    StateVector posterior = state;
    double p = 0.0;
    const std::uint64_t value = measure_in_place(posterior, reg, rng, &p);
    return MeasurementOutcome{value, std::move(posterior), p};
}

} // namespace qopt
