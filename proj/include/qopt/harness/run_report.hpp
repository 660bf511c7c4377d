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

#include "qopt/avg/average_approach.hpp"
#include "qopt/oracles/problem.hpp"
#include "qopt/oracles/query_ledger.hpp"
#include "qopt/pstc/pstc.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace qopt {

enum class Algorithm { avg, pstc };

[[nodiscard]] Algorithm parse_algorithm(const std::string &name);
[[nodiscard]] std::string to_string(Algorithm algorithm);

struct RunOptions {
    Algorithm algorithm = Algorithm::pstc;
    std::uint64_t seed = 0;
    AvgOptions avg;
    PstcConfig pstc;
};

struct RunReport {
    Algorithm algorithm = Algorithm::pstc;
    std::uint64_t seed = 0;
    std::size_t num_thetas = 0;
    std::size_t num_samples = 0;
    std::size_t chosen_index = 1; ///< 1-based
    double l_avg_at_chosen = 0.0;
    double l_pstc_at_chosen = 0.0;
    /// Threshold the cut-off objective was evaluated with.
    double ell_threshold = 0.0;
    QueryCounts ledger;
    /// Ledger when the final answer was first reached.
    QueryCounts ledger_at_best;
    double wall_time_ms = 0.0;
    /// Algorithm-specific trace (outer rounds or minimum-finding runs).
    nlohmann::json details;
};

/// Threshold used to report the cut-off objective of an average-approach
/// answer: the instance's canonical threshold, else the global mean loss.
[[nodiscard]] double reporting_threshold(const ProblemInstance &problem);

/// Fraction of true samples of row i with loss <= threshold.
[[nodiscard]] double cutoff_fraction(const ProblemInstance &problem, std::size_t i,
                                     double threshold);

/// Run one optimizer with all randomness drawn from options.seed.
[[nodiscard]] RunReport run_algorithm(const ProblemInstance &problem, const RunOptions &options);

[[nodiscard]] nlohmann::json to_json(const RunReport &report);

} // namespace qopt
