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
#include "qopt/qsim/circuit.hpp"
#include "qopt/qsim/state_vector.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace qopt {

/// Extra condition on the parameter index (the restricted indicator).
using ThetaRestriction = std::function<bool(std::size_t)>;

/**
 * Cut-off indicator E[i][j] = 1[loss(i, j) <= threshold] (and restriction(i)
 * when a restriction is given). Immutable once built.
 *
 * Bits are stored padded to a power-of-two sample count in oracle order,
 * entry i * padded_samples() + j, so the table can be handed directly to a
 * bit oracle whose input is (sample index, theta index).
 */
class CutoffTable {
  public:
    /// Table from explicit bits, row-major M x N over the true samples.
    static CutoffTable from_bits(std::size_t num_thetas, std::size_t num_samples,
                                 const std::vector<std::uint8_t> &bits,
                                 double threshold = 0.0);

    [[nodiscard]] std::size_t num_thetas() const noexcept { return num_thetas_; }
    [[nodiscard]] std::size_t num_samples() const noexcept { return num_samples_; }
    [[nodiscard]] std::size_t padded_samples() const noexcept { return padded_samples_; }
    [[nodiscard]] double threshold() const noexcept { return threshold_; }
    [[nodiscard]] bool restricted() const noexcept { return restricted_; }

    [[nodiscard]] bool bit(std::size_t i, std::size_t j) const noexcept {
        return (*bits_)[i * padded_samples_ + j] != 0;
    }
    /// Number of set bits in row i.
    [[nodiscard]] std::size_t row_count(std::size_t i) const noexcept { return counts_[i]; }

    [[nodiscard]] const std::shared_ptr<const std::vector<std::uint8_t>> &
    oracle_table() const noexcept {
        return bits_;
    }

    [[nodiscard]] RegisterLayout layout() const noexcept {
        return {log2_floor(padded_samples_), log2_floor(num_thetas_)};
    }

  private:
    friend CutoffTable build_cutoff_table(const ProblemInstance &, double, QueryLedger &,
                                          const ThetaRestriction &);
    CutoffTable(std::size_t m, std::size_t n, double threshold, bool restricted,
                std::vector<std::uint8_t> padded_bits);

    std::size_t num_thetas_;
    std::size_t num_samples_;
    std::size_t padded_samples_;
    double threshold_;
    bool restricted_;
    std::shared_ptr<const std::vector<std::uint8_t>> bits_;
    std::vector<std::size_t> counts_;
};

/// Build E for `threshold`; charges M * N to the setup counter.
[[nodiscard]] CutoffTable build_cutoff_table(const ProblemInstance &problem, double threshold,
                                             QueryLedger &ledger,
                                             const ThetaRestriction &restriction = {});

/// Fraction of true samples whose bit is set in row i. Not charged.
[[nodiscard]] double row_sum_fraction(const CutoffTable &table, std::size_t i);

/// Overlap <phi_theta|psi> realized by the circuit: row count over the padded
/// sample count. Equals row_sum_fraction when N is a power of two.
[[nodiscard]] double circuit_overlap(const CutoffTable &table, std::size_t i);

/// Mean loss of row i; charges N classical loss evaluations.
[[nodiscard]] double average_loss(const ProblemInstance &problem, std::size_t i,
                                  QueryLedger &ledger);

/// f(i) = round(scale * sum_j loss(i, j)) packed for a value oracle.
struct SumOracle {
    std::vector<std::uint64_t> values;
    unsigned output_qubits = 1;
    double scale = 1.0;
};

/**
 * Quantized sum oracle. output_qubits is the smallest t >= 1 with every value
 * below 2^t. Rounding is half-up. Building the table is simulator overhead and
 * is charged to setup; the query cost of f is charged per invocation by the
 * caller. Throws LayoutError if t exceeds max_output_qubits.
 */
[[nodiscard]] SumOracle build_sum_oracle(const ProblemInstance &problem, double scale,
                                         QueryLedger &ledger, unsigned max_output_qubits = 26);

/**
 * State preparation feeding the partial swap test:
 * H on theta (or X gates selecting one theta), H on the A sample index, the
 * E bit oracle into the A flag, H on the B sample index, X on the B flag.
 */
[[nodiscard]] Circuit pstc_input_circuit(const CutoffTable &table,
                                         std::optional<std::size_t> fixed_theta = std::nullopt);

/// Apply pstc_input_circuit to |0...0>; charges one quantum parallel call.
[[nodiscard]] StateVector prepare_pstc_input(const CutoffTable &table, QueryLedger &ledger);

} // namespace qopt
