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

#include "qopt/oracles/problem.hpp"

#include "qopt/errors.hpp"

#include <cmath>
#include <fstream>

namespace qopt {

ProblemInstance::ProblemInstance(std::vector<double> theta_values, std::size_t num_samples,
                                 std::vector<double> losses,
                                 std::optional<double> canonical_threshold)
    : thetas_(std::move(theta_values)), num_samples_(num_samples), losses_(std::move(losses)),
      canonical_threshold_(canonical_threshold) {
    if (!is_power_of_two(thetas_.size())) {
        throw ProblemError("parameter grid size " + std::to_string(thetas_.size()) +
                           " is not a power of two");
    }
    if (num_samples_ == 0) {
        throw ProblemError("a problem needs at least one sample");
    }
    if (losses_.size() != thetas_.size() * num_samples_) {
        throw ProblemError("loss table has " + std::to_string(losses_.size()) +
                           " entries; expected " +
                           std::to_string(thetas_.size() * num_samples_));
    }
    for (std::size_t i = 1; i < thetas_.size(); ++i) {
        if (!(thetas_[i - 1] < thetas_[i])) {
            throw ProblemError("theta_values must be strictly ascending");
        }
    }
    for (double l : losses_) {
        if (!std::isfinite(l) || l < 0.0) {
            throw ProblemError("losses must be finite and non-negative");
        }
    }
    if (canonical_threshold_ && !std::isfinite(*canonical_threshold_)) {
        throw ProblemError("canonical threshold must be finite");
    }
}

ProblemInstance ProblemInstance::from_rows(std::vector<double> theta_values,
                                           const std::vector<std::vector<double>> &rows,
                                           std::optional<double> canonical_threshold) {
    if (rows.size() != theta_values.size()) {
        throw ProblemError("loss_table needs one row per theta value");
    }
    const std::size_t n = rows.empty() ? 0 : rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * n);
    for (const auto &r : rows) {
        if (r.size() != n) {
            throw ProblemError("loss_table rows have different lengths");
        }
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return ProblemInstance(std::move(theta_values), n, std::move(flat), canonical_threshold);
}

ProblemInstance
ProblemInstance::from_function(std::vector<double> theta_values, std::size_t num_samples,
                               const std::function<double(std::size_t, std::size_t)> &loss,
                               std::optional<double> canonical_threshold) {
    std::vector<double> flat(theta_values.size() * num_samples);
    for (std::size_t i = 0; i < theta_values.size(); ++i) {
        for (std::size_t j = 0; j < num_samples; ++j) {
            flat[i * num_samples + j] = loss(i, j);
        }
    }
    return ProblemInstance(std::move(theta_values), num_samples, std::move(flat),
                           canonical_threshold);
}

double mean_loss(const ProblemInstance &problem, std::size_t i) {
    double sum = 0.0;
    for (double l : problem.row(i)) {
        sum += l;
    }
    return sum / static_cast<double>(problem.num_samples());
}

std::size_t exhaustive_argmin_mean_loss(const ProblemInstance &problem) {
    std::size_t best = 0;
    double best_value = mean_loss(problem, 0);
    for (std::size_t i = 1; i < problem.num_thetas(); ++i) {
        const double v = mean_loss(problem, i);
        if (v < best_value) {
            best = i;
            best_value = v;
        }
    }
    return best;
}

std::size_t exhaustive_argmax_cutoff(const ProblemInstance &problem, double threshold) {
    std::size_t best = 0;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < problem.num_thetas(); ++i) {
        std::size_t count = 0;
        for (const double v : problem.row(i)) {
            count += v <= threshold ? 1 : 0;
        }
        if (i == 0 || count > best_count) {
            best = i;
            best_count = count;
        }
    }
    return best;
}

ProblemInstance problem_from_json(const nlohmann::json &doc) {
    try {
        auto thetas = doc.at("theta_values").get<std::vector<double>>();
        auto rows = doc.at("loss_table").get<std::vector<std::vector<double>>>();
        std::optional<double> threshold;
        if (doc.contains("ell_threshold") && !doc.at("ell_threshold").is_null()) {
            threshold = doc.at("ell_threshold").get<double>();
        }
        return ProblemInstance::from_rows(std::move(thetas), rows, threshold);
    } catch (const nlohmann::json::exception &e) {
        throw ProblemError(std::string("malformed problem document: ") + e.what());
    }
}

nlohmann::json problem_to_json(const ProblemInstance &problem) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < problem.num_thetas(); ++i) {
        const auto r = problem.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    nlohmann::json doc{{"theta_values", problem.theta_values()}, {"loss_table", rows}};
    if (problem.canonical_threshold()) {
        doc["ell_threshold"] = *problem.canonical_threshold();
    }
    return doc;
}

ProblemInstance load_problem(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ProblemError("cannot open problem file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw ProblemError("problem file '" + path + "' is not valid JSON: " + e.what());
    }
    return problem_from_json(doc);
}

void save_problem(const ProblemInstance &problem, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw ProblemError("cannot write problem file '" + path + "'");
    }
    out << problem_to_json(problem).dump(2) << '\n';
}

} // namespace qopt
