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

#include "qopt/errors.hpp"
#include "qopt/harness/lemmas.hpp"
#include "qopt/problems/problems.hpp"
#include "qopt/pstc/pstc.hpp"
#include "unit/test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace qopt {
namespace {

CutoffTable table_from(std::size_t m, std::size_t n, std::vector<std::uint8_t> bits) {
    return CutoffTable::from_bits(m, n, bits);
}

double p_ancilla_zero(const StateVector &s) { return marginal_probability(s, Register{0, 1})[0]; }

std::vector<double> expected_xi_distribution(const CutoffTable &t) {
    std::vector<double> xi(t.num_thetas());
    double total = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const double f = circuit_overlap(t, i);
        xi[i] = 0.5 + 0.5 * f * f;
        total += xi[i];
    }
    for (double &v : xi) {
        v /= total;
    }
    return xi;
}

TEST(AXi, FrozenValues) {
    QueryLedger ledger;
    EXPECT_EQ(a_xi(table_from(2, 2, {1, 1, 0, 0}), 0, ledger), 1.0);
    EXPECT_EQ(a_xi(table_from(2, 2, {1, 1, 0, 0}), 1, ledger), 0.5);
    const CutoffTable ce = build_cutoff_table(counterexample_instance(8), 2.0, ledger);
    EXPECT_NEAR(a_xi(ce, 7, ledger), 13.0 / 18.0, 1e-15);
    EXPECT_EQ(ledger.snapshot().classical_loss_evals, 2U + 2U + 3U);
    EXPECT_THROW((void)a_xi(ce, 8, ledger), LayoutError);
}

TEST(AXi, AlwaysInRange) {
    Rng rng(51);
    for (int t = 0; t < 50; ++t) {
        const CutoffTable table = random_cutoff_table(static_cast<unsigned>(rng.uniform_index(4)),
                                                      static_cast<unsigned>(rng.uniform_index(4)), rng);
        QueryLedger ledger;
        for (std::size_t i = 0; i < table.num_thetas(); ++i) {
            const double xi = a_xi(table, i, ledger);
            EXPECT_GE(xi, 0.5);
            EXPECT_LE(xi, 1.0);
        }
    }
}

TEST(Q1Query, AncillaProbabilityExtremes) {
    QueryLedger ledger;
    EXPECT_NEAR(p_ancilla_zero(run_q1query_circuit(table_from(2, 2, {1, 1, 1, 1}), ledger)), 1.0, 1e-12);
    EXPECT_NEAR(p_ancilla_zero(run_q1query_circuit(table_from(2, 2, {0, 0, 0, 0}), ledger)), 0.5, 1e-12);
    EXPECT_EQ(ledger.snapshot().circuit_runs, 2U);
    EXPECT_EQ(ledger.snapshot().quantum_parallel_calls, 2U);
}

TEST(Q1Query, TotalAncillaProbabilityOnRandomTables) {
    Rng rng(52);
    for (int t = 0; t < 30; ++t) {
        const CutoffTable table = random_cutoff_table(2, 2, rng);
        QueryLedger ledger;
        const StateVector s = run_q1query_circuit(table, ledger);
        double sum = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            sum += row_sum_fraction(table, i) * row_sum_fraction(table, i);
        }
        EXPECT_NEAR(p_ancilla_zero(s), 0.5 + sum / 8.0, 1e-10);
    }
}

TEST(Q1Query, PerThetaAncillaProbability) {
    Rng rng(53);
    for (int t = 0; t < 30; ++t) {
        const CutoffTable table = random_cutoff_table(3, 2, rng);
        for (std::size_t i = 0; i < 4; ++i) {
            StateVector s(table.layout().num_qubits());
            q1query_prefix(table, i).apply(s);
            const double f = row_sum_fraction(table, i);
            EXPECT_NEAR(p_ancilla_zero(s), 0.5 + 0.5 * f * f, 1e-10);
        }
    }
}

TEST(ConditionalTheta, IdenticalRowsAreUniform) {
    const CutoffTable t = table_from(4, 2, {1, 0, 1, 0, 1, 0, 1, 0});
    QueryLedger ledger;
    for (double p : conditional_theta_distribution(run_q1query_circuit(t, ledger), t.layout())) {
        EXPECT_NEAR(p, 0.25, 1e-12);
    }
}

TEST(ConditionalTheta, OneThirdTwoThirds) {
    const CutoffTable t = table_from(2, 2, {0, 0, 1, 1});
    QueryLedger ledger;
    const std::vector<double> d = conditional_theta_distribution(run_q1query_circuit(t, ledger), t.layout());
    EXPECT_NEAR(d[0], 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(d[1], 2.0 / 3.0, 1e-12);
}

TEST(ConditionalTheta, ProportionalToXiOnRandomTables) {
    Rng rng(54);
    for (int t = 0; t < 30; ++t) {
        const CutoffTable table = random_cutoff_table(static_cast<unsigned>(rng.uniform_index(4)), 3, rng);
        QueryLedger ledger;
        const std::vector<double> got =
            conditional_theta_distribution(run_q1query_circuit(table, ledger), table.layout());
        const std::vector<double> want = expected_xi_distribution(table);
        for (std::size_t i = 0; i < got.size(); ++i) {
            EXPECT_NEAR(got[i], want[i], 1e-10);
        }
    }
}

TEST(ConditionalTheta, LayoutMismatch) {
    const CutoffTable t = table_from(2, 2, {0, 0, 1, 1});
    EXPECT_THROW((void)conditional_theta_distribution(StateVector(3), t.layout()), LayoutError);
}

TEST(A1Query, AllOnesAlwaysFlagged) {
    QueryLedger ledger;
    const PstcContext ctx(table_from(4, 2, std::vector<std::uint8_t>(8, 1)), ledger);
    Rng rng(55);
    for (int t = 0; t < 50; ++t) {
        const ThetaCandidate c = a_1query(ctx, 1.0, rng, 1, ledger);
        EXPECT_TRUE(c.flag);
        EXPECT_EQ(c.xi, 1.0);
    }
}

TEST(A1Query, HalfThresholdAlwaysFlagged) {
    Rng rng(56);
    QueryLedger ledger;
    const PstcContext ctx(random_cutoff_table(2, 2, rng), ledger);
    for (int t = 0; t < 50; ++t) {
        EXPECT_TRUE(a_1query(ctx, 0.5, rng, 64, ledger).flag);
    }
}

TEST(A1Query, FrequenciesMatchPostSelectedDistribution) {
    const CutoffTable table = table_from(4, 4, {1, 1, 1, 1, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0});
    QueryLedger ledger;
    const PstcContext ctx(table, ledger);
    const std::vector<double> want = expected_xi_distribution(table);
    std::vector<int> counts(4, 0);
    Rng rng(57);
    const int runs = 10000;
    for (int t = 0; t < runs; ++t) {
        ++counts[a_1query(ctx, 0.5, rng, 64, ledger).theta_index];
    }
    for (std::size_t i = 0; i < 4; ++i) {
        const double sigma = std::sqrt(runs * want[i] * (1 - want[i]));
        EXPECT_NEAR(counts[i], runs * want[i], 3 * sigma) << "theta " << i;
    }
}

TEST(A1Query, RetryExhausted) {
    // All-zero table: ancilla is 1 with probability 1/2 per run.
    QueryLedger ledger;
    const PstcContext ctx(table_from(2, 2, {0, 0, 0, 0}), ledger);
    int exhausted = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        try {
            (void)a_1query(ctx, 0.5, rng, 1, ledger);
        } catch (const RetryExhaustedError &) {
            ++exhausted;
        }
    }
    EXPECT_GT(exhausted, 30);
    EXPECT_LT(exhausted, 70);
}

TEST(ABoost, WholeRegionNeedsNoIterations) {
    Rng rng(58);
    QueryLedger ledger;
    const PstcContext ctx(random_cutoff_table(2, 3, rng), ledger);
    const BoostResult r = a_boost(ctx, 0.5, rng, PstcConfig{}, ledger);
    EXPECT_EQ(r.region_size, 8U);
    EXPECT_EQ(r.planned_iterations, 0U);
}

TEST(ABoost, SingleGoodThetaOfSixteen) {
    std::vector<std::uint8_t> bits(16 * 2, 0);
    bits[9 * 2] = 1;
    bits[9 * 2 + 1] = 1;
    QueryLedger ledger;
    const PstcContext ctx(table_from(16, 2, bits), ledger);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        PstcConfig config;
        config.restart_cap = 1;
        try {
            hits += a_boost(ctx, 1.0, rng, config, ledger).theta_index == 9 ? 1 : 0;
        } catch (const RetryExhaustedError &) {
        }
    }
    EXPECT_GE(hits, 180);
}

TEST(ABoost, UnknownModeFindsRegion) {
    std::vector<std::uint8_t> bits(16 * 2, 0);
    bits[3 * 2] = 1;
    bits[3 * 2 + 1] = 1;
    QueryLedger ledger;
    const PstcContext ctx(table_from(16, 2, bits), ledger);
    PstcConfig config;
    config.p_mode = PMode::unknown;
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        hits += a_boost(ctx, 1.0, rng, config, ledger).theta_index == 3 ? 1 : 0;
    }
    EXPECT_EQ(hits, 100);
}

TEST(ABoost, EmptyRegion) {
    QueryLedger ledger;
    const PstcContext ctx(table_from(4, 2, {0, 1, 0, 1, 0, 0, 1, 0}), ledger);
    Rng rng(59);
    EXPECT_THROW((void)a_boost(ctx, 0.9, rng, PstcConfig{}, ledger), EmptyRegionError);
}

TEST(ABoost, IterationBoundOnRandomRegions) {
    Rng rng(60);
    for (int t = 0; t < 100; ++t) {
        QueryLedger ledger;
        const PstcContext ctx(random_cutoff_table(static_cast<unsigned>(rng.uniform_index(4)),
                                                  1 + static_cast<unsigned>(rng.uniform_index(3)), rng),
                              ledger);
        const std::size_t m = ctx.table().num_thetas();
        const BoostResult r = a_boost(ctx, ctx.xi(rng.uniform_index(m)), rng, PstcConfig{}, ledger);
        const double loose = std::ceil((std::numbers::pi / 4.0) * std::sqrt(2.0 * m));
        const double tight = std::ceil((std::numbers::pi / 4.0) *
                                       std::sqrt(2.0 * m / static_cast<double>(r.region_size)));
        EXPECT_LE(r.planned_iterations, tight);
        EXPECT_LE(r.planned_iterations, loose);
        EXPECT_EQ(r.iterations, r.planned_iterations * r.attempts);
    }
}

TEST(APstc, CounterexampleWithForcedThreshold) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        PstcConfig config;
        config.ell_threshold = 2.0;
        Rng rng(seed);
        QueryLedger ledger;
        const PstcReport r = a_pstc(counterexample_instance(8), rng, config, ledger);
        EXPECT_EQ(r.chosen_index, 0U) << "seed " << seed;
        EXPECT_EQ(r.l_pstc, 1.0);
        EXPECT_NEAR(r.l_avg, 1.9, 1e-12);
    }
}

TEST(APstc, SingleThetaReturnsImmediately) {
    const ProblemInstance p({3.0}, 2, {0.5, 1.5});
    Rng rng(61);
    QueryLedger ledger;
    const PstcReport r = a_pstc(p, rng, PstcConfig{}, ledger);
    EXPECT_EQ(r.chosen_index, 0U);
    EXPECT_TRUE(r.rounds.empty());
    EXPECT_EQ(ledger.snapshot().boost_iterations, 0U);
}

TEST(APstc, AdaptiveFindsTheBestCutoffOnRandomTables) {
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ProblemInstance p = synthetic_instance(16, 4, seed, Landscape::uniform);
        Rng rng(seed);
        QueryLedger ledger;
        const PstcReport r = a_pstc(p, rng, PstcConfig{}, ledger);
        const std::size_t best = exhaustive_argmax_cutoff(p, r.ell_threshold);
        std::size_t best_count = 0, got = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            best_count += p.loss(best, j) <= r.ell_threshold;
            got += p.loss(r.chosen_index, j) <= r.ell_threshold;
        }
        hits += got == best_count ? 1 : 0;
    }
    EXPECT_GE(hits, 80);
}

TEST(APstc, BestObjectiveNeverDecreases) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const ProblemInstance p = synthetic_instance(32, 8, seed, Landscape::basin);
        for (const XiMode mode : {XiMode::fixed, XiMode::adaptive}) {
            PstcConfig config;
            config.xi_mode = mode;
            Rng rng(seed);
            QueryLedger ledger;
            const PstcReport r = a_pstc(p, rng, config, ledger);
            ASSERT_EQ(r.rounds.size(), 5U);
            for (std::size_t k = 1; k < r.rounds.size(); ++k) {
                EXPECT_GE(r.rounds[k].l_best, r.rounds[k - 1].l_best);
                if (mode == XiMode::adaptive) {
                    EXPECT_GE(r.rounds[k].xi_threshold, r.rounds[k - 1].xi_threshold);
                } else {
                    EXPECT_EQ(r.rounds[k].xi_threshold, r.initial_xi_threshold);
                }
            }
        }
    }
}

TEST(APstc, ParallelCallsEqualRounds) {
    for (const std::size_t rounds : {1U, 3U, 7U}) {
        PstcConfig config;
        config.outer_rounds = rounds;
        Rng rng(62);
        QueryLedger ledger;
        (void)a_pstc(synthetic_instance(16, 4, 1, Landscape::basin), rng, config, ledger);
        EXPECT_EQ(ledger.snapshot().quantum_parallel_calls, rounds);
    }
}

TEST(APstc, ThresholdPolicies) {
    const ProblemInstance p = synthetic_instance(16, 64, 3, Landscape::uniform);
    PstcConfig sampled;
    sampled.threshold_mode = ThresholdMode::sampled_average;
    Rng r1(63), r2(63);
    QueryLedger l1, l2;
    const PstcReport a = a_pstc(p, r1, PstcConfig{}, l1);
    const PstcReport b = a_pstc(p, r2, sampled, l2);
    EXPECT_NE(a.ell_threshold, b.ell_threshold);

    PstcConfig fixed_xi;
    fixed_xi.xi_threshold = 0.5;
    fixed_xi.xi_mode = XiMode::fixed;
    Rng r3(64);
    QueryLedger l3;
    EXPECT_EQ(a_pstc(p, r3, fixed_xi, l3).initial_xi_threshold, 0.5);
}

TEST(APstc, DefaultRoundsAreLogOfM) {
    EXPECT_EQ(resolved_outer_rounds(PstcConfig{}, 2), 1U);
    EXPECT_EQ(resolved_outer_rounds(PstcConfig{}, 256), 8U);
    PstcConfig c;
    c.outer_rounds = 3;
    EXPECT_EQ(resolved_outer_rounds(c, 256), 3U);
}

TEST(APstc, ZeroRestartCapRejected) {
    PstcConfig config;
    config.restart_cap = 0;
    Rng rng(65);
    QueryLedger ledger;
    EXPECT_THROW((void)a_pstc(counterexample_instance(4), rng, config, ledger), ContractError);
}

} // namespace
} // namespace qopt
