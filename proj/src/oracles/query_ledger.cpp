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

#include "qopt/oracles/query_ledger.hpp"

namespace qopt {

QueryCounts &QueryCounts::operator+=(const QueryCounts &o) noexcept {
    classical_loss_evals += o.classical_loss_evals;
    quantum_parallel_calls += o.quantum_parallel_calls;
    circuit_runs += o.circuit_runs;
    boost_iterations += o.boost_iterations;
    oracle_calls += o.oracle_calls;
    setup_loss_evals += o.setup_loss_evals;
    return *this;
}

QueryCounts operator-(const QueryCounts &later, const QueryCounts &earlier) noexcept {
    return {later.classical_loss_evals - earlier.classical_loss_evals,
            later.quantum_parallel_calls - earlier.quantum_parallel_calls,
            later.circuit_runs - earlier.circuit_runs,
            later.boost_iterations - earlier.boost_iterations,
            later.oracle_calls - earlier.oracle_calls,
            later.setup_loss_evals - earlier.setup_loss_evals};
}

void to_json(nlohmann::json &j, const QueryCounts &c) {
    j = nlohmann::json{{"classical_loss_evals", c.classical_loss_evals},
                       {"quantum_parallel_calls", c.quantum_parallel_calls},
                       {"circuit_runs", c.circuit_runs},
                       {"boost_iterations", c.boost_iterations},
                       {"oracle_calls", c.oracle_calls},
                       {"setup_loss_evals", c.setup_loss_evals}};
}

void from_json(const nlohmann::json &j, QueryCounts &c) {
    c.classical_loss_evals = j.at("classical_loss_evals").get<std::uint64_t>();
    c.quantum_parallel_calls = j.at("quantum_parallel_calls").get<std::uint64_t>();
    c.circuit_runs = j.at("circuit_runs").get<std::uint64_t>();
    c.boost_iterations = j.at("boost_iterations").get<std::uint64_t>();
    c.oracle_calls = j.at("oracle_calls").get<std::uint64_t>();
    c.setup_loss_evals = j.at("setup_loss_evals").get<std::uint64_t>();
}

void QueryLedger::merge(const QueryCounts &c) noexcept {
    add(classical_, c.classical_loss_evals);
    add(parallel_, c.quantum_parallel_calls);
    add(circuit_runs_, c.circuit_runs);
    add(boost_, c.boost_iterations);
    add(oracle_, c.oracle_calls);
    add(setup_, c.setup_loss_evals);
}

QueryCounts QueryLedger::snapshot() const noexcept {
    return {classical_.load(std::memory_order_relaxed), parallel_.load(std::memory_order_relaxed),
            circuit_runs_.load(std::memory_order_relaxed), boost_.load(std::memory_order_relaxed),
            oracle_.load(std::memory_order_relaxed), setup_.load(std::memory_order_relaxed)};
}

} // namespace qopt
