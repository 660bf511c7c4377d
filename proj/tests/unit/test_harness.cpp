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
#include "qopt/harness/run_report.hpp"
#include "qopt/harness/scaling.hpp"
#include "qopt/problems/problems.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace qopt {
namespace {

TEST(FitLogLog, RecoversExactPowerLaw) {
    std::vector<ScalingPoint> pts;
    for (const std::size_t m : {16U, 64U, 256U, 1024U}) {
        pts.push_back({m, 3.0 * std::sqrt(static_cast<double>(m))});
    }
    const ScalingFit fit = fit_log_log(pts);
    EXPECT_NEAR(fit.slope, 0.5, 1e-12);
    EXPECT_NEAR(fit.intercept, std::log2(3.0), 1e-12);
    EXPECT_NEAR(fit.r2, 1.0, 1e-12);
}

TEST(FitLogLog, NeedsThreeDistinctPoints) {
    const std::vector<ScalingPoint> one = {{16, 4.0}};
    EXPECT_THROW((void)fit_log_log(one), FitError);
    const std::vector<ScalingPoint> dup = {{16, 4.0}, {16, 5.0}, {64, 8.0}};
    EXPECT_THROW((void)fit_log_log(dup), FitError);
    const std::vector<ScalingPoint> zero = {{16, 0.0}, {64, 5.0}, {256, 8.0}};
    EXPECT_THROW((void)fit_log_log(zero), FitError);
}

TEST(Median, OddAndEven) {
    EXPECT_EQ(median({5, 1, 3}), 3.0);
    EXPECT_EQ(median({4, 1, 3, 2}), 2.5);
    EXPECT_THROW((void)median({}), FitError);
}

TEST(VerifyLemmas, DefaultsPass) {
    const LemmaSummary s = verify_lemmas(LemmaOptions{});
    EXPECT_TRUE(s.passed());
    EXPECT_EQ(s.tables, 16U * 50U);
    for (const LemmaCheck &l : s.lemmas) {
        EXPECT_GT(l.checks, 0U) << l.name;
        EXPECT_LE(l.max_error, 1e-10) << l.name;
    }
}

TEST(VerifyLemmas, SingleSampleEdge) {
    LemmaOptions o;
    o.n_max = 0;
    EXPECT_TRUE(verify_lemmas(o).passed());
}

TEST(VerifyLemmas, CorruptedTableIsCaught) {
    LemmaOptions o;
    o.corrupt = true;
    o.trials = 5;
    EXPECT_FALSE(verify_lemmas(o).passed());
}

TEST(RunReport, CounterexampleBothAlgorithms) {
    const ProblemInstance p = counterexample_instance(8);
    RunOptions pstc;
    pstc.algorithm = Algorithm::pstc;
    pstc.seed = 3;
    pstc.pstc.ell_threshold = 2.0;
    const RunReport a = run_algorithm(p, pstc);
    EXPECT_EQ(a.chosen_index, 1U);
    EXPECT_EQ(a.l_pstc_at_chosen, 1.0);

    RunOptions avg;
    avg.algorithm = Algorithm::avg;
    avg.seed = 3;
    const RunReport b = run_algorithm(p, avg);
    EXPECT_GE(b.chosen_index, 1U);
    EXPECT_LE(b.chosen_index, 8U);
    EXPECT_EQ(b.ell_threshold, 2.0);

    const nlohmann::json j = to_json(a);
    for (const char *key : {"algorithm", "seed", "chosen_index", "L_avg_at_chosen",
                            "L_pstc_at_chosen", "ledger", "wall_time_ms"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["algorithm"], "pstc");
    EXPECT_EQ(j["ledger"]["circuit_runs"], a.ledger.circuit_runs);
}

TEST(RunReport, DeterministicGivenSeed) {
    const ProblemInstance p = synthetic_instance(32, 4, 8, Landscape::basin);
    for (const Algorithm alg : {Algorithm::avg, Algorithm::pstc}) {
        RunOptions o;
        o.algorithm = alg;
        o.seed = 11;
        nlohmann::json a = to_json(run_algorithm(p, o));
        nlohmann::json b = to_json(run_algorithm(p, o));
        a.erase("wall_time_ms");
        b.erase("wall_time_ms");
        EXPECT_EQ(a, b);
    }
}

TEST(RunReport, ParseAlgorithm) {
    EXPECT_EQ(parse_algorithm("avg"), Algorithm::avg);
    EXPECT_EQ(parse_algorithm("pstc"), Algorithm::pstc);
    EXPECT_THROW((void)parse_algorithm("sgd"), ContractError);
}

ScalingOptions small_sweep(Algorithm alg, unsigned threads) {
    ScalingOptions o;
    o.run.algorithm = alg;
    o.run.seed = 5;
    o.m_list = {16, 32, 64};
    o.num_samples = 4;
    o.seeds = 6;
    o.threads = threads;
    return o;
}

TEST(Scaling, CsvIsReproducibleAcrossThreadCounts) {
    for (const Algorithm alg : {Algorithm::avg, Algorithm::pstc}) {
        std::ostringstream a, b;
        write_csv(a, run_scaling(small_sweep(alg, 1)).rows);
        write_csv(b, run_scaling(small_sweep(alg, 3)).rows);
        EXPECT_EQ(a.str(), b.str());
        EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "algorithm,M,N,seed,cost,success");
    }
}

TEST(Scaling, RowsGroupedAndFitReported) {
    const ScalingResult r = run_scaling(small_sweep(Algorithm::avg, 2));
    ASSERT_EQ(r.rows.size(), 18U);
    EXPECT_EQ(r.rows.front().num_thetas, 16U);
    EXPECT_EQ(r.rows.back().num_thetas, 64U);
    EXPECT_EQ(r.fit.points.size(), 3U);
    EXPECT_TRUE(std::isfinite(r.fit.slope));
    for (const ScalingRow &row : r.rows) {
        EXPECT_EQ(row.cost % 4, 0U); // N loss evaluations per oracle call
    }
}

TEST(Scaling, SingleMIsFitError) {
    ScalingOptions o = small_sweep(Algorithm::avg, 1);
    o.m_list = {64};
    EXPECT_THROW((void)run_scaling(o), FitError);
}

TEST(Scaling, PstcParallelCallsIndependentOfN) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        std::uint64_t calls[2];
        int k = 0;
        for (const std::size_t n : {4U, 16U}) {
            RunOptions o;
            o.algorithm = Algorithm::pstc;
            o.seed = seed;
            calls[k++] =
                run_algorithm(synthetic_instance(64, n, seed, Landscape::basin), o).ledger.quantum_parallel_calls;
        }
        EXPECT_EQ(calls[0], calls[1]);
    }
}

} // namespace
} // namespace qopt
