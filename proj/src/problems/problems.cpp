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

#include "qopt/problems/problems.hpp"

#include "qopt/errors.hpp"
#include "qopt/rng.hpp"

#include <cmath>

namespace qopt {

ProblemInstance counterexample_instance(std::size_t num_thetas) {
    if (num_thetas < 4 || !is_power_of_two(num_thetas)) {
        throw ProblemError("counterexample needs a power-of-two M >= 4");
    }
    std::vector<double> thetas(num_thetas);
    std::vector<std::vector<double>> rows(num_thetas, {2.5, 2.0, 2.0});
    for (std::size_t i = 0; i < num_thetas; ++i) {
        thetas[i] = static_cast<double>(i + 1);
    }
    rows.front() = {1.9, 1.9, 1.9};
    rows.back() = {2.1, 1.0, 0.0};
    return ProblemInstance::from_rows(std::move(thetas), rows, 2.0);
}

Landscape parse_landscape(const std::string &name) {
    if (name == "uniform") {
        return Landscape::uniform;
    }
    if (name == "basin") {
        return Landscape::basin;
    }
    throw ProblemError("unknown landscape: " + name);
}

ProblemInstance synthetic_instance(std::size_t num_thetas, std::size_t num_samples,
                                   std::uint64_t seed, Landscape landscape) {
    if (num_thetas == 0 || !is_power_of_two(num_thetas)) {
        throw ProblemError("M must be a power of two");
    }
    if (num_samples == 0) {
        throw ProblemError("N must be positive");
    }
    Rng rng(seed);
    std::vector<double> thetas(num_thetas);
    for (std::size_t i = 0; i < num_thetas; ++i) {
        thetas[i] = static_cast<double>(i);
    }
    if (landscape == Landscape::uniform) {
        std::vector<double> losses(num_thetas * num_samples);
        for (double &v : losses) {
            v = rng.uniform01();
        }
        return ProblemInstance(std::move(thetas), num_samples, std::move(losses));
    }
    const std::size_t center = rng.uniform_index(num_thetas);
    std::vector<double> scale(num_samples);
    for (double &v : scale) {
        v = 0.5 + rng.uniform01();
    }
    return ProblemInstance::from_function(
        std::move(thetas), num_samples, [&](std::size_t i, std::size_t j) {
            const double d =
                (static_cast<double>(i) - static_cast<double>(center)) / kBasinWidth;
            return scale[j] * (1.0 - std::exp(-d * d));
        });
}

double OutlierInstance::clean_error(std::size_t i) const {
    const double theta = problem.theta_values().at(i);
    std::size_t clean = 0;
    std::size_t wrong = 0;
    for (const LabeledPoint &p : points) {
        if (p.is_outlier) {
            continue;
        }
        ++clean;
        const int predicted = p.x > theta ? 1 : -1;
        wrong += predicted != p.label ? 1 : 0;
    }
    return clean == 0 ? 0.0 : static_cast<double>(wrong) / static_cast<double>(clean);
}

OutlierInstance outlier_classifier_instance(std::size_t num_points, std::size_t outlier_count,
                                            std::uint64_t seed) {
    if (num_points == 0) {
        throw ProblemError("need at least one point");
    }
    if (outlier_count > num_points) {
        throw ProblemError("more outliers than points");
    }
    Rng rng(seed);
    std::vector<LabeledPoint> points;
    points.reserve(num_points);
    for (std::size_t k = 0; k < num_points - outlier_count; ++k) {
        const bool positive = rng.uniform01() < 0.5;
        const double u = 0.25 + 0.75 * rng.uniform01();
        points.push_back({positive ? u : -u, positive ? 1 : -1, false});
    }
    for (std::size_t k = 0; k < outlier_count; ++k) {
        points.push_back({1.5 + 0.5 * rng.uniform01(), -1, true});
    }

    std::vector<double> thetas(kOutlierGridSize);
    for (std::size_t i = 0; i < kOutlierGridSize; ++i) {
        thetas[i] = -2.0 + 4.0 * (static_cast<double>(i) + 0.5) /
                               static_cast<double>(kOutlierGridSize);
    }
    ProblemInstance problem = ProblemInstance::from_function(
        thetas, num_points,
        [&](std::size_t i, std::size_t j) {
            const LabeledPoint &p = points[j];
            const int predicted = p.x > thetas[i] ? 1 : -1;
            const double d = p.x - thetas[i];
            return predicted == p.label ? 0.0 : d * d;
        },
        0.0);
    return OutlierInstance{std::move(problem), std::move(points)};
}

} // namespace qopt
