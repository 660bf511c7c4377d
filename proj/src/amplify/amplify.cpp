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

#include "qopt/amplify/amplify.hpp"

#include "qopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qopt {

AmplificationPlan plan_iterations(double p) {
    if (!(p > 0.0) || p > 1.0) {
        throw ContractError("amplification needs a success probability in (0, 1]");
    }
    const double angle = std::asin(std::sqrt(p));
    const auto iterations = static_cast<std::uint64_t>(std::floor((std::numbers::pi / 4.0) / angle));
    return {iterations, AmplificationPlan::Mode::exact_p, p};
}

Marking make_marking(Register target, std::vector<std::uint8_t> marked, PhaseCondition condition) {
    if (marked.size() != target.num_values()) {
        throw LayoutError("marking needs one entry per register value");
    }
    return Marking{target, std::make_shared<const std::vector<std::uint8_t>>(std::move(marked)),
                   condition, std::nullopt};
}

void apply_marking(StateVector &state, const Marking &marking) {
    if (marking.compute) {
        marking.compute->apply(state);
    }
    apply_phase_oracle(state, marking.target, *marking.marked, marking.condition);
    if (marking.compute) {
        marking.compute->apply_inverse(state);
    }
}

double marked_mass(const StateVector &state, const Marking &marking) {
    const StateVector *view = &state;
    std::optional<StateVector> computed;
    if (marking.compute) {
        computed.emplace(state);
        marking.compute->apply(*computed);
        view = &*computed;
    }
    view->check_register(marking.target);
    const auto amps = view->amplitudes();
    const auto &marked = *marking.marked;
    double mass = 0.0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (marked[marking.target.value_of(i)] != 0 &&
            (i & marking.condition.mask) == marking.condition.value) {
            mass += std::norm(amps[i]);
        }
    }
    return mass;
}

void grover_iterate(StateVector &state, const Marking &marking, const Circuit &prep,
                    QueryLedger &ledger) {
    if (!prep.is_invertible()) {
        throw ContractError("amplification needs an invertible preparation");
    }
    apply_marking(state, marking);
    prep.apply_inverse(state);
    apply_reflect_zero(state, Register{0, state.num_qubits()});
    prep.apply(state);
    ledger.charge_boost_iteration();
}

StatevectorSearch::StatevectorSearch(Circuit prep, Marking marking, std::vector<Register> readout)
    : prep_(std::move(prep)), marking_(std::move(marking)), readout_(std::move(readout)),
      initial_(prep_.num_qubits()) {
    if (!prep_.is_invertible()) {
        throw ContractError("amplification needs an invertible preparation");
    }
    if (readout_.empty()) {
        throw ContractError("search needs at least one readout register");
    }
    for (const Register &r : readout_) {
        initial_.check_register(r);
    }
    prep_.apply(initial_);
}

std::uint64_t StatevectorSearch::domain_size() const {
    return std::uint64_t{1} << composite_width(readout_);
}

std::uint64_t StatevectorSearch::sample(std::uint64_t iterations, Rng &rng, QueryLedger &ledger) {
    StateVector state = initial_;
    for (std::uint64_t k = 0; k < iterations; ++k) {
        grover_iterate(state, marking_, prep_, ledger);
    }
    ledger.charge_circuit_run();
    std::uint64_t packed = 0;
    unsigned shift = 0;
    for (const Register &r : readout_) {
        packed |= measure_in_place(state, r, rng) << shift;
        shift += r.width;
    }
    return packed;
}

UniformAnalyticSearch::UniformAnalyticSearch(std::vector<std::uint8_t> marked)
    : marked_(std::move(marked)), probs_(marked_.size()) {
    if (marked_.empty()) {
        throw ContractError("search domain is empty");
    }
    num_marked_ = static_cast<std::uint64_t>(
        std::count_if(marked_.begin(), marked_.end(), [](std::uint8_t b) { return b != 0; }));
}

std::uint64_t UniformAnalyticSearch::sample(std::uint64_t iterations, Rng &rng,
                                            QueryLedger &ledger) {
    const double m = static_cast<double>(marked_.size());
    const double k = static_cast<double>(num_marked_);
    const double angle = std::asin(std::sqrt(k / m));
    const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * angle);
    const double p_marked = s * s;
    const double each_marked = num_marked_ == 0 ? 0.0 : p_marked / k;
    const double each_unmarked = num_marked_ == marked_.size() ? 0.0 : (1.0 - p_marked) / (m - k);
    for (std::size_t i = 0; i < marked_.size(); ++i) {
        probs_[i] = marked_[i] != 0 ? each_marked : each_unmarked;
    }
    ledger.charge_boost_iteration(iterations);
    ledger.charge_circuit_run();
    return sample_index(probs_, rng);
}

SearchResult search_unknown_count(SearchBackend &backend,
                                  const std::function<bool(std::uint64_t)> &verify, Rng &rng,
                                  SearchLimits limits, QueryLedger &ledger) {
    SearchResult result;
    const auto cap = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(backend.domain_size())))));
    std::uint64_t bound = 1;
    while (result.rounds < limits.max_rounds) {
        const std::uint64_t iterations = rng.uniform_index(bound);
        if (result.queries + iterations + 1 > limits.max_queries) {
            break;
        }
        const std::uint64_t value = backend.sample(iterations, rng, ledger);
        ++result.rounds;
        result.iterations += iterations;
        result.queries += iterations + 1;
        if (verify(value)) {
            result.value = value;
            return result;
        }
        bound = std::min((6 * bound + 4) / 5, cap);
    }
    return result;
}

} // namespace qopt
