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

#include "qopt/oracles/oracles.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qopt {

struct LemmaOptions {
    unsigned n_max = 3;
    unsigned m_max = 3;
    std::size_t trials = 50;
    std::uint64_t seed = 0;
    double tolerance = 1e-10;
    /// Compare against expectations computed from a table with one flipped
    /// bit, to confirm the checker can fail.
    bool corrupt = false;
};

struct LemmaCheck {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    double max_error = 0.0;
};

struct LemmaSummary {
    std::vector<LemmaCheck> lemmas;
    std::size_t tables = 0;

    [[nodiscard]] bool passed() const noexcept;
};

/// Random table with m theta qubits and n sample qubits (density drawn per table).
[[nodiscard]] CutoffTable random_cutoff_table(unsigned n, unsigned m, Rng &rng);

/**
 * Exact-probability checks of the partial swap test on random tables for
 * every (n, m) up to (n_max, m_max): the swap test output state, the
 * per-theta and total ancilla probabilities, the uniform theta marginal, the
 * post-selected theta distribution, the prepared overlaps and the amplified
 * search iteration bound.
 */
[[nodiscard]] LemmaSummary verify_lemmas(const LemmaOptions &options);

} // namespace qopt
