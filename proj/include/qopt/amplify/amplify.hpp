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

#include "qopt/oracles/query_ledger.hpp"
#include "qopt/qsim/circuit.hpp"
#include "qopt/qsim/state_vector.hpp"
#include "qopt/rng.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace qopt {

struct AmplificationPlan {
    enum class Mode { exact_p, unknown_p };

    std::uint64_t iterations = 0;
    Mode mode = Mode::exact_p;
    std::optional<double> p_estimate;
};

/// iterations = floor((pi/4) / asin(sqrt(p))); requires 0 < p <= 1.
[[nodiscard]] AmplificationPlan plan_iterations(double p);

/**
 * Good-subspace marking for a phase oracle: basis states whose `target`
 * value is marked and which satisfy `condition`. An optional `compute`
 * circuit runs before the flip and is undone after it (e.g. a value oracle
 * that writes f(i) into the register the marks are read from).
 */
struct Marking {
    Register target;
    std::shared_ptr<const std::vector<std::uint8_t>> marked;
    PhaseCondition condition;
    std::optional<Circuit> compute;
};

[[nodiscard]] Marking make_marking(Register target, std::vector<std::uint8_t> marked,
                                   PhaseCondition condition = {});

/// Phase oracle: (-1) on every good basis state.
void apply_marking(StateVector &state, const Marking &marking);

/// Exact probability mass of the good subspace.
[[nodiscard]] double marked_mass(const StateVector &state, const Marking &marking);

/**
 * One amplification round: the marking phase oracle, then prep^-1, the
 * reflection about |0...0> over every qubit, and prep. Charges one boost
 * iteration. Throws ContractError if prep is not invertible.
 */
void grover_iterate(StateVector &state, const Marking &marking, const Circuit &prep,
                    QueryLedger &ledger);

/// Something that can be prepared, amplified a chosen number of times and measured.
class SearchBackend {
  public:
    virtual ~SearchBackend() = default;

    /// Number of distinct measurement outcomes.
    [[nodiscard]] virtual std::uint64_t domain_size() const = 0;

    /// Prepare, run `iterations` rounds, measure. Charges the iterations and one circuit run.
    virtual std::uint64_t sample(std::uint64_t iterations, Rng &rng, QueryLedger &ledger) = 0;
};

/// Full statevector simulation. Readout registers are measured in order and
/// packed with the first register in the low bits.
class StatevectorSearch final : public SearchBackend {
  public:
    StatevectorSearch(Circuit prep, Marking marking, std::vector<Register> readout);

    [[nodiscard]] std::uint64_t domain_size() const override;
    std::uint64_t sample(std::uint64_t iterations, Rng &rng, QueryLedger &ledger) override;

    [[nodiscard]] const StateVector &prepared_state() const noexcept { return initial_; }

  private:
    Circuit prep_;
    Marking marking_;
    std::vector<Register> readout_;
    StateVector initial_;
};

/**
 * Closed-form search over a uniform superposition of marked.size() items.
 * After j rounds each of the k marked items has probability
 * sin^2((2j+1)a)/k with a = asin(sqrt(k/M)), the rest share cos^2((2j+1)a).
 * Outcomes are drawn with the same sampler as the statevector path, so both
 * backends give the same transcript for the same seed.
 */
class UniformAnalyticSearch final : public SearchBackend {
  public:
    explicit UniformAnalyticSearch(std::vector<std::uint8_t> marked);

    [[nodiscard]] std::uint64_t domain_size() const override { return marked_.size(); }
    std::uint64_t sample(std::uint64_t iterations, Rng &rng, QueryLedger &ledger) override;

  private:
    std::vector<std::uint8_t> marked_;
    std::uint64_t num_marked_ = 0;
    std::vector<double> probs_;
};

struct SearchLimits {
    std::uint64_t max_rounds = UINT64_MAX;
    /// Iterations plus one verification per measurement.
    std::uint64_t max_queries = UINT64_MAX;
};

struct SearchResult {
    std::optional<std::uint64_t> value;
    std::uint64_t rounds = 0;
    std::uint64_t iterations = 0;
    std::uint64_t queries = 0;
};

/**
 * Search with an unknown number of marked items. Round r draws an iteration
 * count uniformly from [0, b) with b starting at 1 and growing as
 * b <- ceil(6b/5) up to ceil(sqrt(domain)); every measured value is checked
 * with `verify`. Stops at the first verified value or when a limit would be
 * exceeded.
 */
[[nodiscard]] SearchResult search_unknown_count(SearchBackend &backend,
                                                const std::function<bool(std::uint64_t)> &verify,
                                                Rng &rng, SearchLimits limits,
                                                QueryLedger &ledger);

} // namespace qopt
