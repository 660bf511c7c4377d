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

#include "qopt/oracles/oracles.hpp"

#include "qopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qopt {

CutoffTable::CutoffTable(std::size_t m, std::size_t n, double threshold, bool restricted,
                         std::vector<std::uint8_t> padded_bits)
    : num_thetas_(m), num_samples_(n),
      padded_samples_(static_cast<std::size_t>(next_power_of_two(n))), threshold_(threshold),
      restricted_(restricted), counts_(m, 0) {
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            counts_[i] += padded_bits[i * padded_samples_ + j] != 0 ? 1 : 0;
        }
    }
    bits_ = std::make_shared<const std::vector<std::uint8_t>>(std::move(padded_bits));
}

CutoffTable CutoffTable::from_bits(std::size_t num_thetas, std::size_t num_samples,
                                   const std::vector<std::uint8_t> &bits, double threshold) {
    if (!is_power_of_two(num_thetas) || num_samples == 0) {
        throw LayoutError("cut-off table needs a power-of-two theta count and >= 1 sample");
    }
    if (bits.size() != num_thetas * num_samples) {
        throw LayoutError("cut-off bits do not match the table shape");
    }
    const std::size_t padded = static_cast<std::size_t>(next_power_of_two(num_samples));
    std::vector<std::uint8_t> p(num_thetas * padded, 0);
    for (std::size_t i = 0; i < num_thetas; ++i) {
        for (std::size_t j = 0; j < num_samples; ++j) {
            p[i * padded + j] = bits[i * num_samples + j] != 0 ? 1 : 0;
        }
    }
    return CutoffTable(num_thetas, num_samples, threshold, false, std::move(p));
}

CutoffTable build_cutoff_table(const ProblemInstance &problem, double threshold,
                               QueryLedger &ledger, const ThetaRestriction &restriction) {
    if (!std::isfinite(threshold)) {
        throw ContractError("loss threshold must be finite");
    }
    const std::size_t m = problem.num_thetas();
    const std::size_t n = problem.num_samples();
    const std::size_t padded = problem.padded_samples();
    std::vector<std::uint8_t> bits(m * padded, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (restriction && !restriction(i)) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            bits[i * padded + j] = problem.loss(i, j) <= threshold ? 1 : 0;
        }
    }
    ledger.charge_setup(m * n);
    return CutoffTable(m, n, threshold, static_cast<bool>(restriction), std::move(bits));
}

double row_sum_fraction(const CutoffTable &table, std::size_t i) {
    return static_cast<double>(table.row_count(i)) / static_cast<double>(table.num_samples());
}

double circuit_overlap(const CutoffTable &table, std::size_t i) {
    return static_cast<double>(table.row_count(i)) / static_cast<double>(table.padded_samples());
}

double average_loss(const ProblemInstance &problem, std::size_t i, QueryLedger &ledger) {
    ledger.charge_classical(problem.num_samples());
    return mean_loss(problem, i);
}

SumOracle build_sum_oracle(const ProblemInstance &problem, double scale, QueryLedger &ledger,
                           unsigned max_output_qubits) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw ContractError("sum oracle scale must be positive and finite");
    }
    SumOracle oracle;
    oracle.scale = scale;
    oracle.values.resize(problem.num_thetas());
    std::uint64_t max_value = 0;
    for (std::size_t i = 0; i < problem.num_thetas(); ++i) {
        const auto r = problem.row(i);
        const double sum = std::accumulate(r.begin(), r.end(), 0.0);
        const double scaled = std::floor(scale * sum + 0.5);
        if (scaled >= 0x1.0p62) {
            throw LayoutError("quantized loss sum overflows the value register");
        }
        oracle.values[i] = static_cast<std::uint64_t>(scaled);
        max_value = std::max(max_value, oracle.values[i]);
    }
    unsigned t = 1;
    while ((max_value >> t) != 0) {
        ++t;
    }
    if (t > max_output_qubits) {
        throw LayoutError("sum oracle needs " + std::to_string(t) + " output qubits; budget is " +
                          std::to_string(max_output_qubits));
    }
    oracle.output_qubits = t;
    ledger.charge_setup(problem.num_thetas() * problem.num_samples());
    return oracle;
}

Circuit pstc_input_circuit(const CutoffTable &table, std::optional<std::size_t> fixed_theta) {
    const RegisterLayout layout = table.layout();
    Circuit c(layout.num_qubits());
    const Register theta = layout.theta();
    if (fixed_theta) {
        if (*fixed_theta >= table.num_thetas()) {
            throw LayoutError("fixed theta index outside the grid");
        }
        for (unsigned b = 0; b < theta.width; ++b) {
            if (((*fixed_theta >> b) & 1U) != 0) {
                c.x(theta.offset + b);
            }
        }
    } else {
        c.hadamard(theta);
    }
    c.hadamard(layout.reg_a_index());
    c.bit_oracle({layout.reg_a_index(), theta}, layout.reg_a_flag().offset, table.oracle_table());
    c.hadamard(layout.reg_b_index());
    c.x(layout.reg_b_flag().offset);
    return c;
}

StateVector prepare_pstc_input(const CutoffTable &table, QueryLedger &ledger) {
    StateVector state = new_zero_state(table.layout());
    pstc_input_circuit(table).apply(state);
    ledger.charge_parallel_call();
    return state;
}

} // namespace qopt
