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
#include "qopt/oracles/oracles.hpp"
#include "qopt/problems/problems.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace qopt {
namespace {

double fraction_at(const ProblemInstance &p, std::size_t i, double thr) {
    QueryLedger ledger;
    return row_sum_fraction(build_cutoff_table(p, thr, ledger), i);
}

TEST(Counterexample, OptimaDisagreeForEveryM) {
    for (const std::size_t m : {4U, 8U, 16U, 32U}) {
        const ProblemInstance p = counterexample_instance(m);
        EXPECT_EQ(p.num_samples(), 3U);
        EXPECT_EQ(*p.canonical_threshold(), 2.0);
        const std::size_t avg = exhaustive_argmin_mean_loss(p) + 1;
        const std::size_t cut = exhaustive_argmax_cutoff(p, 2.0) + 1;
        EXPECT_EQ(avg, m);
        EXPECT_EQ(cut, 1U);
        // Index ratio equals M, so it is unbounded in M.
        EXPECT_EQ(avg / cut, m);
        EXPECT_NEAR(mean_loss(p, 0), 1.9, 1e-15);
        EXPECT_EQ(fraction_at(p, 0, 2.0), 1.0);
        for (std::size_t i = 1; i < m; ++i) {
            EXPECT_DOUBLE_EQ(fraction_at(p, i, 2.0), 2.0 / 3.0);
        }
        EXPECT_EQ(p.theta_values().front(), 1.0);
        EXPECT_EQ(p.theta_values().back(), static_cast<double>(m));
    }
}

TEST(Counterexample, RejectsSmallOrOddM) {
    EXPECT_THROW((void)counterexample_instance(2), ProblemError);
    EXPECT_THROW((void)counterexample_instance(12), ProblemError);
}

TEST(Synthetic, DeterministicInSeed) {
    for (const Landscape l : {Landscape::uniform, Landscape::basin}) {
        const ProblemInstance a = synthetic_instance(32, 8, 17, l);
        const ProblemInstance b = synthetic_instance(32, 8, 17, l);
        const ProblemInstance c = synthetic_instance(32, 8, 18, l);
        EXPECT_TRUE(std::equal(a.losses().begin(), a.losses().end(), b.losses().begin()));
        EXPECT_FALSE(std::equal(a.losses().begin(), a.losses().end(), c.losses().begin()));
    }
}

TEST(Synthetic, UniformLossesInUnitInterval) {
    const ProblemInstance p = synthetic_instance(64, 16, 3, Landscape::uniform);
    for (double v : p.losses()) {
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, 1.0);
    }
}

TEST(Synthetic, BasinHasUniqueMinimumAndGrowsAwayFromIt) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const ProblemInstance p = synthetic_instance(64, 8, seed, Landscape::basin);
        const std::size_t c = exhaustive_argmin_mean_loss(p);
        EXPECT_EQ(mean_loss(p, c), 0.0);
        for (std::size_t i = 0; i < 64; ++i) {
            if (i != c) {
                EXPECT_GT(mean_loss(p, i), 0.0);
            }
        }
        for (std::size_t i = c + 1; i < 64; ++i) {
            EXPECT_GE(mean_loss(p, i), mean_loss(p, i - 1));
        }
        for (std::size_t i = c; i > 0; --i) {
            EXPECT_GE(mean_loss(p, i - 1), mean_loss(p, i));
        }
    }
}

TEST(Synthetic, Validation) {
    EXPECT_THROW((void)synthetic_instance(12, 4, 0, Landscape::basin), ProblemError);
    EXPECT_THROW((void)synthetic_instance(16, 0, 0, Landscape::basin), ProblemError);
    EXPECT_EQ(parse_landscape("basin"), Landscape::basin);
    EXPECT_THROW((void)parse_landscape("ridge"), ProblemError);
}

TEST(Outliers, CleanDataOptimaCoincide) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const OutlierInstance inst = outlier_classifier_instance(24, 0, seed);
        const std::size_t avg = exhaustive_argmin_mean_loss(inst.problem);
        const std::size_t cut = exhaustive_argmax_cutoff(inst.problem, 0.0);
        EXPECT_EQ(avg, cut) << "seed " << seed;
        EXPECT_EQ(inst.clean_error(avg), 0.0);
    }
}

TEST(Outliers, CutoffBoundaryNoWorseOnCleanPoints) {
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const OutlierInstance inst = outlier_classifier_instance(32, 4, seed);
        EXPECT_EQ(std::count_if(inst.points.begin(), inst.points.end(),
                                [](const LabeledPoint &p) { return p.is_outlier; }),
                  4);
        const std::size_t avg = exhaustive_argmin_mean_loss(inst.problem);
        const std::size_t cut = exhaustive_argmax_cutoff(inst.problem, 0.0);
        wins += inst.clean_error(cut) <= inst.clean_error(avg) ? 1 : 0;
        // The cut-off optimum misclassifies only outliers.
        EXPECT_EQ(inst.clean_error(cut), 0.0);
    }
    EXPECT_GE(wins, 16);
}

TEST(Outliers, OutliersPullTheAverageBoundary) {
    int shifted = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const OutlierInstance clean = outlier_classifier_instance(32, 0, seed);
        const OutlierInstance dirty = outlier_classifier_instance(32, 6, seed);
        shifted += exhaustive_argmin_mean_loss(dirty.problem) >
                           exhaustive_argmin_mean_loss(clean.problem)
                       ? 1
                       : 0;
    }
    EXPECT_GE(shifted, 15);
}

TEST(Outliers, SinglePoint) {
    const OutlierInstance inst = outlier_classifier_instance(1, 0, 5);
    const LabeledPoint &pt = inst.points.front();
    const ProblemInstance &p = inst.problem;
    const std::size_t avg = exhaustive_argmin_mean_loss(p);
    const std::size_t cut = exhaustive_argmax_cutoff(p, 0.0);
    for (std::size_t i = 0; i < p.num_thetas(); ++i) {
        const bool correct = (pt.x > p.theta_values()[i] ? 1 : -1) == pt.label;
        EXPECT_EQ(mean_loss(p, i) == 0.0, correct);
    }
    EXPECT_EQ(mean_loss(p, avg), 0.0);
    EXPECT_EQ(p.loss(cut, 0), 0.0);
}

TEST(Outliers, Validation) {
    EXPECT_THROW((void)outlier_classifier_instance(0, 0, 1), ProblemError);
    EXPECT_THROW((void)outlier_classifier_instance(3, 4, 1), ProblemError);
}

} // namespace
} // namespace qopt
