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

#include "qopt/harness/scaling.hpp"

#include "qopt/errors.hpp"
#include "qopt/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

namespace qopt {

ScalingFit fit_log_log(std::span<const ScalingPoint> points) {
    std::set<std::size_t> distinct;
    for (const ScalingPoint &p : points) {
        if (p.num_thetas == 0 || !(p.median_cost > 0.0)) {
            throw FitError("log-log fit needs positive M and cost");
        }
        distinct.insert(p.num_thetas);
    }
    if (distinct.size() < 3) {
        throw FitError("log-log fit needs at least 3 distinct M values");
    }
    const double k = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const ScalingPoint &p : points) {
        const double x = std::log2(static_cast<double>(p.num_thetas));
        const double y = std::log2(p.median_cost);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    ScalingFit fit;
    fit.points.assign(points.begin(), points.end());
    fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / k;
    const double mean_y = sy / k;
    double ss_res = 0.0, ss_tot = 0.0;
    for (const ScalingPoint &p : points) {
        const double x = std::log2(static_cast<double>(p.num_thetas));
        const double y = std::log2(p.median_cost);
        const double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw FitError("median of an empty sample");
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return 0.5 * (values[mid - 1] + values[mid]);
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t num_thetas, std::size_t trial) {
    return derive_seed(derive_seed(base, num_thetas), trial);
}

std::uint64_t scaling_cost(const RunReport &report) {
    if (report.algorithm == Algorithm::avg) {
        return report.ledger_at_best.classical_loss_evals;
    }
    return report.ledger.boost_iterations + report.ledger.circuit_runs;
}

ScalingResult run_scaling(const ScalingOptions &options) {
    std::set<std::size_t> distinct(options.m_list.begin(), options.m_list.end());
    if (distinct.size() < 3) {
        throw FitError("scaling needs at least 3 distinct M values");
    }
    if (options.seeds == 0) {
        throw ContractError("scaling needs at least one seed");
    }
    const std::size_t total = options.m_list.size() * options.seeds;
    std::vector<ScalingRow> rows(total);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t k = next++; k < total; k = next++) {
            try {
                const std::size_t m = options.m_list[k / options.seeds];
                const std::size_t trial = k % options.seeds;
                const std::uint64_t seed = trial_seed(options.run.seed, m, trial);
                const ProblemInstance problem = synthetic_instance(
                    m, options.num_samples, derive_seed(seed, 1), options.landscape);
                RunOptions run = options.run;
                run.seed = seed;
                const RunReport report = run_algorithm(problem, run);
                ScalingRow &row = rows[k];
                row.algorithm = run.algorithm;
                row.num_thetas = m;
                row.num_samples = options.num_samples;
                row.seed = seed;
                row.cost = scaling_cost(report);
                const std::size_t chosen = report.chosen_index - 1;
                if (run.algorithm == Algorithm::avg) {
                    row.success = mean_loss(problem, chosen) ==
                                  mean_loss(problem, exhaustive_argmin_mean_loss(problem));
                } else {
                    const double thr = report.ell_threshold;
                    row.success = cutoff_fraction(problem, chosen, thr) ==
                                  cutoff_fraction(problem, exhaustive_argmax_cutoff(problem, thr),
                                                  thr);
                }
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = total;
            }
        }
    };

    unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(total)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (std::thread &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    ScalingResult result;
    std::vector<ScalingPoint> points;
    for (std::size_t g = 0; g < options.m_list.size(); ++g) {
        std::vector<double> costs;
        for (std::size_t s = 0; s < options.seeds; ++s) {
            costs.push_back(static_cast<double>(rows[g * options.seeds + s].cost));
        }
        points.push_back({options.m_list[g], median(std::move(costs))});
    }
    result.rows = std::move(rows);
    result.fit = fit_log_log(points);
    return result;
}

void write_csv(std::ostream &out, std::span<const ScalingRow> rows) {
    out << "algorithm,M,N,seed,cost,success\n";
    for (const ScalingRow &r : rows) {
        out << to_string(r.algorithm) << ',' << r.num_thetas << ',' << r.num_samples << ','
            << r.seed << ',' << r.cost << ',' << (r.success ? 1 : 0) << '\n';
    }
}

} // namespace qopt
