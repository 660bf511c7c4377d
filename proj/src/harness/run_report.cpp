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

#include "qopt/harness/run_report.hpp"

#include "qopt/errors.hpp"
#include "qopt/rng.hpp"

#include <chrono>
#include <numeric>

namespace qopt {

Algorithm parse_algorithm(const std::string &name) {
    if (name == "avg") {
        return Algorithm::avg;
    }
    if (name == "pstc") {
        return Algorithm::pstc;
    }
    throw ContractError("unknown algorithm: " + name);
}

std::string to_string(Algorithm algorithm) {
    return algorithm == Algorithm::avg ? "avg" : "pstc";
}

double reporting_threshold(const ProblemInstance &problem) {
    if (problem.canonical_threshold()) {
        return *problem.canonical_threshold();
    }
    const auto losses = problem.losses();
    return std::accumulate(losses.begin(), losses.end(), 0.0) /
           static_cast<double>(losses.size());
}

double cutoff_fraction(const ProblemInstance &problem, std::size_t i, double threshold) {
    std::size_t count = 0;
    for (const double v : problem.row(i)) {
        count += v <= threshold ? 1 : 0;
    }
    return static_cast<double>(count) / static_cast<double>(problem.num_samples());
}

RunReport run_algorithm(const ProblemInstance &problem, const RunOptions &options) {
    RunReport report;
    report.algorithm = options.algorithm;
    report.seed = options.seed;
    report.num_thetas = problem.num_thetas();
    report.num_samples = problem.num_samples();
    Rng rng(options.seed);
    QueryLedger ledger;
    const auto start = std::chrono::steady_clock::now();

    if (options.algorithm == Algorithm::avg) {
        const AvgReport avg = average_approach(problem, rng, options.avg, ledger);
        report.chosen_index = avg.chosen_index + 1;
        report.l_avg_at_chosen = avg.l_avg;
        report.ell_threshold = reporting_threshold(problem);
        report.l_pstc_at_chosen = cutoff_fraction(problem, avg.chosen_index, report.ell_threshold);
        report.ledger = avg.ledger;
        report.ledger_at_best = avg.ledger_at_best;
        nlohmann::json runs = nlohmann::json::array();
        for (const DhResult &r : avg.runs) {
            runs.push_back({{"index", r.index + 1},
                            {"oracle_calls", r.oracle_calls},
                            {"calls_at_last_improvement", r.calls_at_last_improvement},
                            {"grover_iterations", r.grover_iterations},
                            {"searches", r.searches},
                            {"improvements", r.improvements},
                            {"full_circuit", r.used_full_circuit}});
        }
        report.details = {{"runs", runs}};
    } else {
        const PstcReport pstc = a_pstc(problem, rng, options.pstc, ledger);
        report.chosen_index = pstc.chosen_index + 1;
        report.l_avg_at_chosen = pstc.l_avg;
        report.l_pstc_at_chosen = pstc.l_pstc;
        report.ell_threshold = pstc.ell_threshold;
        report.ledger = pstc.ledger;
        report.ledger_at_best = pstc.ledger_at_best;
        nlohmann::json rounds = nlohmann::json::array();
        for (const PstcRound &r : pstc.rounds) {
            nlohmann::json row = {{"round", r.round},
                                  {"xi_threshold", r.xi_threshold},
                                  {"region_size", r.region_size},
                                  {"outcome", to_string(r.outcome)},
                                  {"best_index", r.best_index + 1},
                                  {"l_best", r.l_best},
                                  {"boost_iterations", r.boost_iterations},
                                  {"circuit_runs", r.circuit_runs}};
            row["candidate"] = r.candidate ? nlohmann::json(*r.candidate + 1) : nlohmann::json();
            rounds.push_back(std::move(row));
        }
        report.details = {{"initial_xi_threshold", pstc.initial_xi_threshold},
                          {"rounds", rounds}};
    }
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

nlohmann::json to_json(const RunReport &report) {
    return {{"algorithm", to_string(report.algorithm)},
            {"seed", report.seed},
            {"M", report.num_thetas},
            {"N", report.num_samples},
            {"chosen_index", report.chosen_index},
            {"L_avg_at_chosen", report.l_avg_at_chosen},
            {"L_pstc_at_chosen", report.l_pstc_at_chosen},
            {"ell_threshold", report.ell_threshold},
            {"ledger", report.ledger},
            {"ledger_at_best", report.ledger_at_best},
            {"wall_time_ms", report.wall_time_ms},
            {"details", report.details}};
}

} // namespace qopt
