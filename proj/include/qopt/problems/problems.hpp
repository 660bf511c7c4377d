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

#include "qopt/oracles/problem.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qopt {

/**
 * Three samples, M parameters on the grid 1..M. Row 1 is [1.9, 1.9, 1.9],
 * rows 2..M-1 are [2.5, 2, 2], row M is [2.1, 1, 0]; canonical threshold 2.
 * The mean loss is smallest at row M while the fraction under the threshold
 * is largest at row 1. Throws ProblemError unless M >= 4 is a power of two.
 */
[[nodiscard]] ProblemInstance counterexample_instance(std::size_t num_thetas = 8);

enum class Landscape {
    uniform, ///< iid losses in [0, 1)
    basin,   ///< single well around a random center
};

[[nodiscard]] Landscape parse_landscape(const std::string &name);

/// Width of the basin well in grid steps.
inline constexpr double kBasinWidth = 2.0;

/**
 * Seeded synthetic instance on the grid 0..M-1. In basin mode each sample j
 * has a scale v_j in [0.5, 1.5) and loss(i, j) = v_j (1 - exp(-(d / w)^2))
 * with d the grid distance to the center, so the center is the unique zero
 * of every row and the mean grows away from it.
 */
[[nodiscard]] ProblemInstance synthetic_instance(std::size_t num_thetas, std::size_t num_samples,
                                                 std::uint64_t seed, Landscape landscape);

struct LabeledPoint {
    double x = 0.0;
    int label = 1; ///< -1 or +1
    bool is_outlier = false;
};

/// Threshold classifiers: predict +1 when x > theta. Loss is the squared
/// distance to the threshold for a misclassified point, 0 otherwise.
struct OutlierInstance {
    ProblemInstance problem;
    std::vector<LabeledPoint> points;

    /// 0-1 error of boundary i on the points that are not outliers.
    [[nodiscard]] double clean_error(std::size_t i) const;
};

inline constexpr std::size_t kOutlierGridSize = 64;

/**
 * num_points 1-D points, of which outlier_count are mislabeled extremes:
 * clean points have label -1 on [-1, -0.25] and +1 on [0.25, 1], outliers
 * sit on [1.5, 2] with label -1. Thresholds form a 64-point grid over
 * [-2, 2]; the canonical loss threshold is 0 (correctly classified).
 */
[[nodiscard]] OutlierInstance outlier_classifier_instance(std::size_t num_points,
                                                          std::size_t outlier_count,
                                                          std::uint64_t seed);

} // namespace qopt
