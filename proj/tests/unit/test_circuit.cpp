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
#include "qopt/qsim/circuit.hpp"
#include "unit/test_util.hpp"

#include <gtest/gtest.h>

namespace qopt {
namespace {

using testing::max_diff;
using testing::random_state;

Circuit mixed_circuit() {
    auto bits = std::make_shared<const std::vector<std::uint8_t>>(
        std::vector<std::uint8_t>{1, 0, 1, 1, 0, 0, 1, 0});
    auto values = std::make_shared<const std::vector<std::uint64_t>>(
        std::vector<std::uint64_t>{1, 2, 3, 0});
    auto marked = std::make_shared<const std::vector<std::uint8_t>>(
        std::vector<std::uint8_t>{0, 1, 0, 0});
    Circuit c(6);
    c.hadamard(Register{0, 3})
        .x(5)
        .bit_oracle({Register{0, 3}}, 3, bits)
        .controlled_swap(5, Register{0, 2}, Register{2, 2})
        .value_oracle({Register{0, 2}}, Register{4, 2}, values)
        .phase_flip(Register{1, 2}, marked, PhaseCondition{1, 1})
        .reflect_zero(Register{0, 6})
        .hadamard(Register{2, 2});
    return c;
}

TEST(Circuit, InverseUndoesPreparation) {
    const Circuit c = mixed_circuit();
    ASSERT_TRUE(c.is_invertible());
    Rng rng(21);
    for (int t = 0; t < 20; ++t) {
        StateVector s = random_state(6, rng);
        const StateVector before = s;
        c.apply(s);
        c.apply_inverse(s);
        EXPECT_LT(max_diff(s, before), 1e-10);
    }
}

TEST(Circuit, InverseCircuitMatchesApplyInverse) {
    const Circuit c = mixed_circuit();
    Rng rng(22);
    StateVector a = random_state(6, rng);
    StateVector b = a;
    c.apply_inverse(a);
    c.inverse().apply(b);
    EXPECT_EQ(max_diff(a, b), 0.0);
    EXPECT_EQ(c.inverse().gates().size(), c.gates().size());
}

TEST(Circuit, MatchesDirectGateCalls) {
    Rng rng(23);
    StateVector a = random_state(4, rng);
    StateVector b = a;
    Circuit c(4);
    c.hadamard(Register{0, 2}).x(3).controlled_swap(3, Register{0, 1}, Register{1, 1});
    c.apply(a);
    apply_hadamard(b, Register{0, 2});
    apply_x(b, 3);
    apply_controlled_swap(b, 3, Register{0, 1}, Register{1, 1});
    EXPECT_EQ(max_diff(a, b), 0.0);
}

TEST(Circuit, MeasurementMakesItNonInvertible) {
    Circuit c(2);
    c.hadamard(Register{0, 1}).measure(Register{0, 1});
    EXPECT_FALSE(c.is_invertible());
    StateVector s(2);
    EXPECT_THROW(c.apply(s), ContractError);
    EXPECT_THROW(c.apply_inverse(s), ContractError);
    EXPECT_THROW((void)c.inverse(), ContractError);
}

TEST(Circuit, SizeMismatchIsLayoutError) {
    Circuit c(3);
    c.hadamard(Register{0, 3});
    StateVector s(2);
    EXPECT_THROW(c.apply(s), LayoutError);
    Circuit other(4);
    EXPECT_THROW(c.append(other), LayoutError);
}

TEST(Circuit, AppendConcatenates) {
    Circuit a(2);
    a.hadamard(Register{0, 1});
    Circuit b(2);
    b.x(1);
    a.append(b);
    ASSERT_EQ(a.gates().size(), 2U);
    StateVector s(2);
    a.apply(s);
    EXPECT_NEAR(s[2].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s[3].real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Circuit, CopiesShareOracleTables) {
    const Circuit a = mixed_circuit();
    const Circuit b = a; // NOLINT(performance-unnecessary-copy-initialization)
    const auto &ga = std::get<gate::BitOracle>(a.gates()[2]);
    const auto &gb = std::get<gate::BitOracle>(b.gates()[2]);
    EXPECT_EQ(ga.table.get(), gb.table.get());
}

} // namespace
} // namespace qopt
