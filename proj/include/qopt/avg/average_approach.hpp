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

#include "qopt/oracles/problem.hpp"
#include "qopt/oracles/query_ledger.hpp"
#include "qopt/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qopt {

enum class DhMode {
    automatic,    ///< full circuit when it fits in 16 qubits (M <= 64 typically), else ledger-only
    full_circuit, ///< statevector over theta plus value register
    ledger_only,  ///< closed-form search probabilities
};

struct DhOptions {
    /// Query budget is ceil(budget_factor * sqrt(M)) unless max_queries is set.
    double budget_factor = 8.0;
    std::uint64_t max_queries = 0;
    DhMode mode = DhMode::automatic;
};

struct DhResult {
    std::size_t index = 0;
    /// Queries to f: the initial evaluation, every amplification round and
    /// every classical verification of a measured index.
    std::uint64_t oracle_calls = 0;
    std::uint64_t calls_at_last_improvement = 0;
    /// Ledger charges of this run up to the last improvement.
    QueryCounts ledger_at_last_improvement;
    std::uint64_t grover_iterations = 0;
    std::uint64_t searches = 0;
    std::uint64_t improvements = 0;
    bool used_full_circuit = false;
};

/**
 * Minimum finding over `values`. Keeps a threshold index y (initially
 * uniform), searches for any i with values[i] < values[y] and moves y there,
 * until the query budget runs out. Charges oracle calls, boost iterations,
 * circuit runs and one quantum parallel call per amplification round.
 */
[[nodiscard]] DhResult dh_minimize(std::span<const std::uint64_t> values, Rng &rng,
                                   const DhOptions &options, QueryLedger &ledger);

struct AvgOptions {
    double scale = 100.0;
    /// Independent minimum-finding runs; the best f wins.
    unsigned repetitions = 1;
    DhOptions dh;
};

struct AvgReport {
    std::size_t chosen_index = 0; ///< 0-based
    double l_avg = 0.0;
    std::uint64_t oracle_calls = 0;
    std::uint64_t calls_at_last_improvement = 0;
    std::vector<DhResult> runs;
    QueryCounts ledger;
    QueryCounts ledger_at_best;
};

/**
 * Average approach: minimum finding over f(i) = sum_j loss(i, j). Each query
 * to f costs N classical loss evaluations.
 */
[[nodiscard]] AvgReport average_approach(const ProblemInstance &problem, Rng &rng,
                                         const AvgOptions &options, QueryLedger &ledger);

} // namespace qopt
