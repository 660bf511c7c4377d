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

#include <atomic>
#include <cstdint>

#include "json.hpp"

namespace qopt {

/**
 * Plain snapshot of ledger counters.
 *
 *  classical_loss_evals   loss evaluations l(theta, x_j) the algorithm performs
 *  quantum_parallel_calls superposed oracle applications (U for the sum oracle,
 *                         the E-table parallelism step for the cut-off method)
 *  circuit_runs           prepared-and-measured circuit executions
 *  boost_iterations       Grover / amplitude-amplification rounds
 *  oracle_calls           invocations of the loss-summing subroutine f(i)
 *  setup_loss_evals       simulator overhead (table construction); never part of a cost
 */
struct QueryCounts {
    std::uint64_t classical_loss_evals = 0;
    std::uint64_t quantum_parallel_calls = 0;
    std::uint64_t circuit_runs = 0;
    std::uint64_t boost_iterations = 0;
    std::uint64_t oracle_calls = 0;
    std::uint64_t setup_loss_evals = 0;

    QueryCounts &operator+=(const QueryCounts &o) noexcept;
    friend QueryCounts operator+(QueryCounts a, const QueryCounts &b) noexcept { return a += b; }
    /// Counter-wise difference; `later` must dominate `earlier`.
    friend QueryCounts operator-(const QueryCounts &later, const QueryCounts &earlier) noexcept;
    friend bool operator==(const QueryCounts &, const QueryCounts &) = default;
};

void to_json(nlohmann::json &j, const QueryCounts &c);
void from_json(const nlohmann::json &j, QueryCounts &c);

/// Monotone cost counters. Thread-safe; trials normally own one each.
class QueryLedger {
  public:
    QueryLedger() = default;
    QueryLedger(const QueryLedger &) = delete;
    QueryLedger &operator=(const QueryLedger &) = delete;

    void charge_classical(std::uint64_t n) noexcept { add(classical_, n); }
    void charge_parallel_call(std::uint64_t n = 1) noexcept { add(parallel_, n); }
    void charge_circuit_run(std::uint64_t n = 1) noexcept { add(circuit_runs_, n); }
    void charge_boost_iteration(std::uint64_t n = 1) noexcept { add(boost_, n); }
    void charge_oracle_call(std::uint64_t n = 1) noexcept { add(oracle_, n); }
    void charge_setup(std::uint64_t n) noexcept { add(setup_, n); }

    /// Add every counter of a finished trial.
    void merge(const QueryCounts &c) noexcept;

    [[nodiscard]] QueryCounts snapshot() const noexcept;

  private:
    static void add(std::atomic<std::uint64_t> &c, std::uint64_t n) noexcept {
        c.fetch_add(n, std::memory_order_relaxed);
    }

    std::atomic<std::uint64_t> classical_{0};
    std::atomic<std::uint64_t> parallel_{0};
    std::atomic<std::uint64_t> circuit_runs_{0};
    std::atomic<std::uint64_t> boost_{0};
    std::atomic<std::uint64_t> oracle_{0};
    std::atomic<std::uint64_t> setup_{0};
};

} // namespace qopt
