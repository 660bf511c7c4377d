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

#include "qopt/avg/average_approach.hpp"

#include "qopt/amplify/amplify.hpp"
#include "qopt/errors.hpp"
#include "qopt/oracles/oracles.hpp"
#include "qopt/qsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>

namespace qopt {
namespace {

constexpr unsigned kFullCircuitQubits = 16;

unsigned value_width(std::span<const std::uint64_t> values) {
    const std::uint64_t max = *std::max_element(values.begin(), values.end());
    unsigned t = 1;
    while (t < 64 && (max >> t) != 0) {
        ++t;
    }
    return t;
}

// Searches i with values[i] < values[y] on the chosen backend.
class DhSearch {
  public:
    DhSearch(std::span<const std::uint64_t> values, bool full) : values_(values), full_(full) {
        if (full_) {
            m_ = log2_floor(values.size());
            t_ = value_width(values);
            theta_ = Register{0, m_};
            out_ = Register{m_, t_};
            auto table = std::make_shared<const std::vector<std::uint64_t>>(values.begin(),
                                                                             values.end());
            compute_.emplace(m_ + t_);
            compute_->value_oracle({theta_}, out_, table);
            prep_.emplace(m_ + t_);
            prep_->hadamard(theta_);
        }
    }

    std::unique_ptr<SearchBackend> backend(std::uint64_t threshold) const {
        if (!full_) {
            std::vector<std::uint8_t> marked(values_.size());
            for (std::size_t i = 0; i < values_.size(); ++i) {
                marked[i] = values_[i] < threshold ? 1 : 0;
            }
            return std::make_unique<UniformAnalyticSearch>(std::move(marked));
        }
        std::vector<std::uint8_t> marked(std::size_t{1} << t_);
        for (std::uint64_t v = 0; v < marked.size() && v < threshold; ++v) {
            marked[v] = 1;
        }
        Marking marking = make_marking(out_, std::move(marked));
        marking.compute = *compute_;
        return std::make_unique<StatevectorSearch>(*prep_, std::move(marking),
                                                   std::vector<Register>{theta_});
    }

  private:
    std::span<const std::uint64_t> values_;
    bool full_;
    unsigned m_ = 0;
    unsigned t_ = 0;
    Register theta_{};
    Register out_{};
    std::optional<Circuit> compute_;
    std::optional<Circuit> prep_;
};

} // namespace

DhResult dh_minimize(std::span<const std::uint64_t> values, Rng &rng, const DhOptions &options,
                     QueryLedger &ledger) {
    if (values.empty()) {
        throw ProblemError("minimum finding needs a nonempty table");
    }
    if (!is_power_of_two(values.size())) {
        throw ProblemError("minimum finding needs a power-of-two table");
    }
    const std::size_t m = values.size();
    const std::uint64_t budget =
        options.max_queries != 0
            ? options.max_queries
            : static_cast<std::uint64_t>(
                  std::ceil(options.budget_factor * std::sqrt(static_cast<double>(m))));

    const QueryCounts start = ledger.snapshot();
    DhResult result;
    result.index = rng.uniform_index(m);
    result.oracle_calls = 1;
    ledger.charge_oracle_call();
    result.calls_at_last_improvement = 1;
    result.ledger_at_last_improvement = ledger.snapshot() - start;
    if (m == 1) {
        return result;
    }

    bool full = options.mode == DhMode::full_circuit;
    if (options.mode == DhMode::automatic) {
        full = log2_floor(m) + value_width(values) <= kFullCircuitQubits;
    }
    result.used_full_circuit = full;
    const DhSearch search(values, full);

    while (result.oracle_calls < budget) {
        const std::uint64_t threshold = values[result.index];
        auto backend = search.backend(threshold);
        const auto verify = [&](std::uint64_t i) {
            ledger.charge_oracle_call();
            return values[i] < threshold;
        };
        SearchLimits limits;
        limits.max_queries = budget - result.oracle_calls;
        const SearchResult found = search_unknown_count(*backend, verify, rng, limits, ledger);
        ledger.charge_oracle_call(found.iterations);
        ledger.charge_parallel_call(found.iterations);
        ++result.searches;
        result.grover_iterations += found.iterations;
        result.oracle_calls += found.queries;
        if (!found.value) {
            break;
        }
        result.index = static_cast<std::size_t>(*found.value);
        result.calls_at_last_improvement = result.oracle_calls;
        result.ledger_at_last_improvement = ledger.snapshot() - start;
        ++result.improvements;
    }
    return result;
}

AvgReport average_approach(const ProblemInstance &problem, Rng &rng, const AvgOptions &options,
                           QueryLedger &ledger) {
    if (options.repetitions == 0) {
        throw ContractError("average approach needs at least one repetition");
    }
    const QueryCounts before = ledger.snapshot();
    const SumOracle oracle = build_sum_oracle(problem, options.scale, ledger);
    const std::uint64_t n = problem.num_samples();

    AvgReport report;
    std::optional<std::size_t> best;
    for (unsigned r = 0; r < options.repetitions; ++r) {
        QueryLedger run_ledger;
        DhResult run = dh_minimize(oracle.values, rng, options.dh, run_ledger);
        run_ledger.charge_classical(n * run_ledger.snapshot().oracle_calls);
        run.ledger_at_last_improvement.classical_loss_evals =
            n * run.ledger_at_last_improvement.oracle_calls;
        const QueryCounts prior = ledger.snapshot() - before;
        ledger.merge(run_ledger.snapshot());
        if (!best || oracle.values[run.index] < oracle.values[*best]) {
            best = run.index;
            report.calls_at_last_improvement = report.oracle_calls + run.calls_at_last_improvement;
            report.ledger_at_best = prior + run.ledger_at_last_improvement;
        }
        report.oracle_calls += run.oracle_calls;
        report.runs.push_back(run);
    }
    report.chosen_index = *best;
    report.l_avg = mean_loss(problem, *best);
    report.ledger = ledger.snapshot() - before;
    return report;
}

} // namespace qopt
