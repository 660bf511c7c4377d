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

#include "qopt/harness/run_report.hpp"
#include "qopt/problems/problems.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qopt {

struct ScalingPoint {
    std::size_t num_thetas = 0;
    double median_cost = 0.0;
};

struct ScalingFit {
    std::vector<ScalingPoint> points;
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Least squares on (log2 M, log2 cost). Throws FitError with fewer than 3
/// distinct M values or a non-positive cost.
[[nodiscard]] ScalingFit fit_log_log(std::span<const ScalingPoint> points);

/// Median; the mean of the two middle values for even sizes. Throws FitError when empty.
[[nodiscard]] double median(std::vector<double> values);

struct ScalingOptions {
    RunOptions run;
    std::vector<std::size_t> m_list;
    std::size_t num_samples = 8;
    std::size_t seeds = 100;
    Landscape landscape = Landscape::basin;
    /// 0 means std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct ScalingRow {
    Algorithm algorithm = Algorithm::avg;
    std::size_t num_thetas = 0;
    std::size_t num_samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t cost = 0;
    bool success = false;
};

struct ScalingResult {
    std::vector<ScalingRow> rows; ///< grouped by M in m_list order, seeds ascending
    ScalingFit fit;
};

/// Seed of trial `trial` at grid size M; the instance and the run both derive from it.
[[nodiscard]] std::uint64_t trial_seed(std::uint64_t base, std::size_t num_thetas,
                                       std::size_t trial);

/**
 * Cost of one run. avg: classical loss evaluations up to the last
 * improvement of the minimum (the total is fixed by the query budget).
 * pstc: boost iterations plus circuit runs.
 */
[[nodiscard]] std::uint64_t scaling_cost(const RunReport &report);

/// Runs every (M, trial) on a basin or uniform instance and fits the medians.
[[nodiscard]] ScalingResult run_scaling(const ScalingOptions &options);

void write_csv(std::ostream &out, std::span<const ScalingRow> rows);

} // namespace qopt
