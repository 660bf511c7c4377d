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

#include "qopt/pstc/pstc.hpp"

#include "qopt/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qopt {
namespace {

PhaseCondition ancilla_zero(const RegisterLayout &layout) {
    return PhaseCondition{std::uint64_t{1} << layout.ancilla().offset, 0};
}

Marking region_marking(const PstcContext &context, double xi_threshold, std::size_t &size) {
    const std::size_t m = context.table().num_thetas();
    std::vector<std::uint8_t> marked(m);
    size = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (context.xi(i) >= xi_threshold) {
            marked[i] = 1;
            ++size;
        }
    }
    if (size == 0) {
        throw EmptyRegionError("no theta reaches the xi threshold");
    }
    return make_marking(context.layout().theta(), std::move(marked),
                        ancilla_zero(context.layout()));
}

double choose_loss_threshold(const ProblemInstance &problem, std::size_t theta, Rng &rng,
                             const PstcConfig &config, QueryLedger &ledger) {
    if (config.ell_threshold) {
        return *config.ell_threshold;
    }
    if (config.threshold_mode == ThresholdMode::full_average) {
        return average_loss(problem, theta, ledger);
    }
    const std::size_t n = problem.num_samples();
    std::size_t s = config.threshold_samples;
    if (s == 0) {
        s = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < s; ++k) {
        sum += problem.loss(theta, rng.uniform_index(n));
    }
    ledger.charge_classical(s);
    return sum / static_cast<double>(s);
}

} // namespace

std::size_t resolved_outer_rounds(const PstcConfig &config, std::size_t num_thetas) {
    if (config.outer_rounds != 0) {
        return config.outer_rounds;
    }
    return std::max<std::size_t>(1, log2_floor(next_power_of_two(num_thetas)));
}

double xi_from_count(std::size_t count, std::size_t num_samples) noexcept {
    const double f = static_cast<double>(count) / static_cast<double>(num_samples);
    return 0.5 + 0.5 * f * f;
}

double a_xi(const CutoffTable &table, std::size_t i, QueryLedger &ledger) {
    if (i >= table.num_thetas()) {
        throw LayoutError("theta index out of range");
    }
    ledger.charge_classical(table.num_samples());
    return xi_from_count(table.row_count(i), table.num_samples());
}

Circuit q1query_prefix(const CutoffTable &table, std::optional<std::size_t> fixed_theta) {
    const RegisterLayout layout = table.layout();
    Circuit c = pstc_input_circuit(table, fixed_theta);
    c.hadamard(layout.ancilla());
    c.controlled_swap(layout.ancilla().offset, layout.reg_a(), layout.reg_b());
    c.hadamard(layout.ancilla());
    return c;
}

PstcContext::PstcContext(CutoffTable table, QueryLedger &ledger)
    : table_(std::move(table)), layout_(table_.layout()), xi_(table_.num_thetas()),
      prefix_(q1query_prefix(table_)), prepared_(layout_.num_qubits()) {
    for (std::size_t i = 0; i < xi_.size(); ++i) {
        xi_[i] = xi_from_count(table_.row_count(i), table_.num_samples());
    }
    ledger.charge_setup(table_.num_thetas() * table_.num_samples());
    prefix_.apply(prepared_);
}

StateVector run_q1query_circuit(const CutoffTable &table, QueryLedger &ledger) {
    const Circuit prefix = q1query_prefix(table);
    StateVector state(prefix.num_qubits());
    prefix.apply(state);
    ledger.charge_parallel_call();
    ledger.charge_circuit_run();
    return state;
}

std::vector<double> conditional_theta_distribution(const StateVector &state,
                                                   const RegisterLayout &layout) {
    if (state.num_qubits() != layout.num_qubits()) {
        throw LayoutError("state does not match the layout");
    }
    const Register theta = layout.theta();
    const std::uint64_t anc = std::uint64_t{1} << layout.ancilla().offset;
    std::vector<double> dist(theta.num_values(), 0.0);
    const auto amps = state.amplitudes();
    double total = 0.0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & anc) == 0) {
            const double p = std::norm(amps[i]);
            dist[theta.value_of(i)] += p;
            total += p;
        }
    }
    if (total <= 0.0) {
        throw ContractError("ancilla 0 has zero probability");
    }
    for (double &p : dist) {
        p /= total;
    }
    return dist;
}

ThetaCandidate a_1query(const PstcContext &context, double xi_threshold, Rng &rng,
                        std::size_t restart_cap, QueryLedger &ledger) {
    const RegisterLayout &layout = context.layout();
    for (std::size_t attempt = 0; attempt < restart_cap; ++attempt) {
        StateVector state = context.prepared();
        ledger.charge_parallel_call();
        ledger.charge_circuit_run();
        if (measure_in_place(state, layout.ancilla(), rng) != 0) {
            continue;
        }
        const auto theta = static_cast<std::size_t>(measure_in_place(state, layout.theta(), rng));
        const double xi = a_xi(context.table(), theta, ledger);
        return ThetaCandidate{theta, xi >= xi_threshold, xi};
    }
    throw RetryExhaustedError("ancilla measured 1 on every restart");
}

BoostResult a_boost(const PstcContext &context, double xi_threshold, Rng &rng,
                    const PstcConfig &config, QueryLedger &ledger) {
    BoostResult result;
    const Marking marking = region_marking(context, xi_threshold, result.region_size);
    const RegisterLayout &layout = context.layout();
    const QueryCounts before = ledger.snapshot();

    const auto check = [&](std::size_t theta) {
        result.xi = a_xi(context.table(), theta, ledger);
        return result.xi >= xi_threshold;
    };

    if (config.p_mode == PMode::exact) {
        result.p = std::min(1.0, marked_mass(context.prepared(), marking));
        result.planned_iterations = plan_iterations(result.p).iterations;
        for (std::size_t attempt = 0; attempt < config.restart_cap; ++attempt) {
            ++result.attempts;
            StateVector state = context.prepared();
            for (std::uint64_t k = 0; k < result.planned_iterations; ++k) {
                grover_iterate(state, marking, context.prefix(), ledger);
            }
            ledger.charge_circuit_run();
            if (measure_in_place(state, layout.ancilla(), rng) != 0) {
                continue;
            }
            const auto theta =
                static_cast<std::size_t>(measure_in_place(state, layout.theta(), rng));
            if (check(theta)) {
                result.theta_index = theta;
                result.iterations = (ledger.snapshot() - before).boost_iterations;
                return result;
            }
        }
        throw RetryExhaustedError("amplified search exhausted its restarts");
    }

    StatevectorSearch search(context.prefix(), marking,
                             {layout.ancilla(), layout.theta()});
    const auto verify = [&](std::uint64_t packed) {
        if ((packed & 1U) != 0) {
            return false;
        }
        return check(static_cast<std::size_t>(packed >> 1));
    };
    SearchLimits limits;
    limits.max_rounds = config.restart_cap;
    const SearchResult found = search_unknown_count(search, verify, rng, limits, ledger);
    result.attempts = found.rounds;
    result.iterations = found.iterations;
    if (!found.value) {
        throw RetryExhaustedError("amplified search exhausted its restarts");
    }
    result.theta_index = static_cast<std::size_t>(*found.value >> 1);
    return result;
}

std::string to_string(RoundOutcome outcome) {
    switch (outcome) {
    case RoundOutcome::improved:
        return "improved";
    case RoundOutcome::lateral:
        return "lateral";
    case RoundOutcome::rejected:
        return "rejected";
    case RoundOutcome::empty_region:
        return "empty_region";
    case RoundOutcome::retry_exhausted:
        return "retry_exhausted";
    }
    return "unknown";
}

PstcReport a_pstc(const ProblemInstance &problem, Rng &rng, const PstcConfig &config,
                  QueryLedger &ledger) {
    if (config.restart_cap == 0) {
        throw ContractError("restart cap must be at least 1");
    }
    const QueryCounts start = ledger.snapshot();
    const std::size_t m = problem.num_thetas();
    const std::size_t n = problem.num_samples();
    PstcReport report;

    if (m == 1) {
        report.ell_threshold = config.ell_threshold.value_or(mean_loss(problem, 0));
        QueryLedger scratch;
        const CutoffTable table = build_cutoff_table(problem, report.ell_threshold, scratch);
        report.l_pstc = row_sum_fraction(table, 0);
        report.l_avg = mean_loss(problem, 0);
        return report;
    }

    std::size_t best = rng.uniform_index(m);
    const std::size_t tilde = rng.uniform_index(m);
    report.ell_threshold = choose_loss_threshold(problem, tilde, rng, config, ledger);

    const PstcContext context(build_cutoff_table(problem, report.ell_threshold, ledger), ledger);
    const CutoffTable &table = context.table();
    double xi_threshold =
        config.xi_threshold ? *config.xi_threshold : a_xi(table, tilde, ledger);
    report.initial_xi_threshold = xi_threshold;

    ledger.charge_classical(n);
    std::size_t best_count = table.row_count(best);
    const auto tighten = [&] {
        if (config.xi_mode == XiMode::adaptive) {
            xi_threshold = std::max(xi_threshold, xi_from_count(best_count + 1, n));
        }
    };
    tighten();
    report.ledger_at_best = ledger.snapshot() - start;

    const std::size_t rounds = resolved_outer_rounds(config, m);
    for (std::size_t r = 0; r < rounds; ++r) {
        PstcRound trace;
        trace.round = r + 1;
        trace.xi_threshold = xi_threshold;
        const QueryCounts round_start = ledger.snapshot();
        ledger.charge_parallel_call();
        try {
            const BoostResult boost = a_boost(context, xi_threshold, rng, config, ledger);
            trace.region_size = boost.region_size;
            trace.candidate = boost.theta_index;
            ledger.charge_classical(n);
            const std::size_t count = table.row_count(boost.theta_index);
            if (count >= best_count) {
                trace.outcome = count > best_count ? RoundOutcome::improved : RoundOutcome::lateral;
                best = boost.theta_index;
                best_count = count;
                tighten();
                report.ledger_at_best = ledger.snapshot() - start;
            } else {
                trace.outcome = RoundOutcome::rejected;
            }
        } catch (const EmptyRegionError &) {
            trace.outcome = RoundOutcome::empty_region;
        } catch (const RetryExhaustedError &) {
            trace.outcome = RoundOutcome::retry_exhausted;
        }
        const QueryCounts spent = ledger.snapshot() - round_start;
        trace.boost_iterations = spent.boost_iterations;
        trace.circuit_runs = spent.circuit_runs;
        trace.best_index = best;
        trace.l_best = row_sum_fraction(table, best);
        report.rounds.push_back(trace);
    }

    report.chosen_index = best;
    report.l_pstc = row_sum_fraction(table, best);
    report.l_avg = mean_loss(problem, best);
    report.ledger = ledger.snapshot() - start;
    return report;
}

} // namespace qopt
