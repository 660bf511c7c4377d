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

#include "qopt/qsim/register.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace qopt {

/**
 * Discretized optimization problem: a parameter grid of M = 2^m values, N
 * samples, and the loss table loss(i, j) >= 0.
 *
 * N need not be a power of two. Circuits use padded_samples() = next power of
 * two; the padding samples never pass a loss threshold and are excluded from
 * averages, which divide by the true N.
 */
class ProblemInstance {
  public:
    /// `losses` is row-major M x N. Throws ProblemError on a malformed instance.
    ProblemInstance(std::vector<double> theta_values, std::size_t num_samples,
                    std::vector<double> losses,
                    std::optional<double> canonical_threshold = std::nullopt);

    static ProblemInstance from_rows(std::vector<double> theta_values,
                                     const std::vector<std::vector<double>> &rows,
                                     std::optional<double> canonical_threshold = std::nullopt);

    /// Materialize loss(i, j) for every grid point and sample.
    static ProblemInstance
    from_function(std::vector<double> theta_values, std::size_t num_samples,
                  const std::function<double(std::size_t, std::size_t)> &loss,
                  std::optional<double> canonical_threshold = std::nullopt);

    [[nodiscard]] std::size_t num_thetas() const noexcept { return thetas_.size(); }
    [[nodiscard]] std::size_t num_samples() const noexcept { return num_samples_; }
    [[nodiscard]] std::size_t padded_samples() const noexcept {
        return static_cast<std::size_t>(next_power_of_two(num_samples_));
    }
    [[nodiscard]] unsigned theta_qubits() const noexcept { return log2_floor(thetas_.size()); }
    [[nodiscard]] unsigned sample_qubits() const noexcept { return log2_floor(padded_samples()); }
    [[nodiscard]] RegisterLayout layout() const noexcept {
        return {sample_qubits(), theta_qubits()};
    }

    [[nodiscard]] const std::vector<double> &theta_values() const noexcept { return thetas_; }
    [[nodiscard]] double loss(std::size_t i, std::size_t j) const noexcept {
        return losses_[i * num_samples_ + j];
    }
    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return {losses_.data() + i * num_samples_, num_samples_};
    }
    [[nodiscard]] std::span<const double> losses() const noexcept { return losses_; }

    /// Threshold attached by the instance's author (e.g. the value a
    /// worked example is stated with). Unset for generic instances.
    [[nodiscard]] std::optional<double> canonical_threshold() const noexcept {
        return canonical_threshold_;
    }

  private:
    std::vector<double> thetas_;
    std::size_t num_samples_;
    std::vector<double> losses_;
    std::optional<double> canonical_threshold_;
};

/// Exact mean loss of row i over the true samples. Not charged to any ledger.
[[nodiscard]] double mean_loss(const ProblemInstance &problem, std::size_t i);

/// Exhaustive argmin of the mean loss; ties resolve to the lowest index.
[[nodiscard]] std::size_t exhaustive_argmin_mean_loss(const ProblemInstance &problem);

/// Exhaustive argmax of the fraction of samples with loss <= threshold;
/// ties resolve to the lowest index. Not charged.
[[nodiscard]] std::size_t exhaustive_argmax_cutoff(const ProblemInstance &problem,
                                                   double threshold);

// JSON document: {"theta_values": [...], "loss_table": [[...], ...],
//                 "ell_threshold": optional number}
[[nodiscard]] ProblemInstance problem_from_json(const nlohmann::json &doc);
[[nodiscard]] nlohmann::json problem_to_json(const ProblemInstance &problem);
[[nodiscard]] ProblemInstance load_problem(const std::string &path);
void save_problem(const ProblemInstance &problem, const std::string &path);

} // namespace qopt
