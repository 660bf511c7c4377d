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

#include "qopt/amplify/amplify.hpp"
#include "qopt/oracles/oracles.hpp"
#include "qopt/oracles/problem.hpp"
#include "qopt/oracles/query_ledger.hpp"
#include "qopt/qsim/circuit.hpp"
#include "qopt/qsim/state_vector.hpp"
#include "qopt/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qopt {

enum class XiMode { fixed, adaptive };
enum class PMode { exact, unknown };
enum class ThresholdMode { full_average, sampled_average };

struct PstcConfig {
    XiMode xi_mode = XiMode::adaptive;
    PMode p_mode = PMode::exact;
    /// 0 means ceil(log2 M), at least 1.
    std::size_t outer_rounds = 0;
    std::size_t restart_cap = 64;
    /// Loss threshold; when absent it is derived from a random theta.
    std::optional<double> ell_threshold;
    ThresholdMode threshold_mode = ThresholdMode::full_average;
    /// Samples drawn in sampled_average mode; 0 means ceil(sqrt(N)).
    std::size_t threshold_samples = 0;
    /// Initial xi threshold; when absent it is xi of the random theta.
    std::optional<double> xi_threshold;
};

[[nodiscard]] std::size_t resolved_outer_rounds(const PstcConfig &config, std::size_t num_thetas);

struct ThetaCandidate {
    std::size_t theta_index = 0;
    bool flag = false;
    double xi = 0.5;
};

/// 1/2 + 1/2 (count / N)^2.
[[nodiscard]] double xi_from_count(std::size_t count, std::size_t num_samples) noexcept;

/// xi of row i from the table; charges N classical loss evaluations.
[[nodiscard]] double a_xi(const CutoffTable &table, std::size_t i, QueryLedger &ledger);

/**
 * Everything derived from one cut-off table: the xi table used for region
 * membership (charged to setup), the measurement-free prefix of the swap
 * test circuit and the state it prepares.
 */
class PstcContext {
  public:
    PstcContext(CutoffTable table, QueryLedger &ledger);

    [[nodiscard]] const CutoffTable &table() const noexcept { return table_; }
    [[nodiscard]] const RegisterLayout &layout() const noexcept { return layout_; }
    [[nodiscard]] double xi(std::size_t i) const { return xi_.at(i); }
    [[nodiscard]] const std::vector<double> &xi_table() const noexcept { return xi_; }
    [[nodiscard]] const Circuit &prefix() const noexcept { return prefix_; }
    [[nodiscard]] const StateVector &prepared() const noexcept { return prepared_; }

  private:
    CutoffTable table_;
    RegisterLayout layout_;
    std::vector<double> xi_;
    Circuit prefix_;
    StateVector prepared_;
};

/// Input preparation, H on the ancilla, controlled swap of A and B, H on the ancilla.
[[nodiscard]] Circuit q1query_prefix(const CutoffTable &table,
                                     std::optional<std::size_t> fixed_theta = std::nullopt);

/// State just before measurement. Charges one parallel call and one circuit run.
[[nodiscard]] StateVector run_q1query_circuit(const CutoffTable &table, QueryLedger &ledger);

/// Theta marginal after post-selecting ancilla = 0.
[[nodiscard]] std::vector<double> conditional_theta_distribution(const StateVector &state,
                                                                 const RegisterLayout &layout);

/**
 * One-query routine: run the circuit, measure the ancilla, restart on 1 (up
 * to restart_cap runs), then measure theta and check it classically.
 * Throws RetryExhaustedError when every run gave ancilla 1.
 */
[[nodiscard]] ThetaCandidate a_1query(const PstcContext &context, double xi_threshold, Rng &rng,
                                      std::size_t restart_cap, QueryLedger &ledger);

struct BoostResult {
    std::size_t theta_index = 0;
    double xi = 0.5;
    std::size_t region_size = 0;
    double p = 0.0;                      ///< exact good mass (exact mode)
    std::uint64_t planned_iterations = 0; ///< per attempt (exact mode)
    std::uint64_t iterations = 0;        ///< total over attempts
    std::uint64_t attempts = 0;
};

/**
 * Amplified search for theta with xi(theta) >= xi_threshold. The good
 * subspace is ancilla = 0 with theta in the region. Throws EmptyRegionError
 * when no theta qualifies and RetryExhaustedError when restart_cap attempts
 * all fail the classical check.
 */
[[nodiscard]] BoostResult a_boost(const PstcContext &context, double xi_threshold, Rng &rng,
                                  const PstcConfig &config, QueryLedger &ledger);

enum class RoundOutcome { improved, lateral, rejected, empty_region, retry_exhausted };

[[nodiscard]] std::string to_string(RoundOutcome outcome);

struct PstcRound {
    std::size_t round = 0;
    double xi_threshold = 0.0;
    std::size_t region_size = 0;
    RoundOutcome outcome = RoundOutcome::rejected;
    std::optional<std::size_t> candidate;
    std::size_t best_index = 0;
    double l_best = 0.0;
    std::uint64_t boost_iterations = 0;
    std::uint64_t circuit_runs = 0;
};

struct PstcReport {
    std::size_t chosen_index = 0; ///< 0-based
    double l_pstc = 0.0;
    double l_avg = 0.0;
    double ell_threshold = 0.0;
    double initial_xi_threshold = 0.0;
    std::vector<PstcRound> rounds;
    QueryCounts ledger;
    QueryCounts ledger_at_best;
};

/// Main loop: repeated amplified search for theta with a larger cut-off objective.
[[nodiscard]] PstcReport a_pstc(const ProblemInstance &problem, Rng &rng,
                                const PstcConfig &config, QueryLedger &ledger);

} // namespace qopt
