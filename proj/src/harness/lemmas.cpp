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

#include "qopt/harness/lemmas.hpp"

#include "qopt/amplify/amplify.hpp"
#include "qopt/pstc/pstc.hpp"
#include "qopt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qopt {
namespace {

enum Check {
    swap_test_state,
    ancilla_zero_per_theta,
    ancilla_zero_total,
    theta_marginal_uniform,
    post_selected_theta,
    prepared_overlap,
    boost_iteration_bound,
    num_checks,
};

const char *const kNames[num_checks] = {
    "swap_test_state",        "ancilla_zero_per_theta", "ancilla_zero_total",
    "theta_marginal_uniform", "post_selected_theta",    "prepared_overlap",
    "boost_iteration_bound",
};

class Recorder {
  public:
    explicit Recorder(double tol) : tol_(tol) {
        for (int k = 0; k < num_checks; ++k) {
            summary_.lemmas.push_back({kNames[k], 0, 0, 0.0});
        }
    }

    void close(Check c, double got, double want) { error(c, std::abs(got - want)); }

    void error(Check c, double err) {
        LemmaCheck &l = summary_.lemmas[c];
        ++l.checks;
        l.max_error = std::max(l.max_error, err);
        if (!(err <= tol_)) {
            ++l.failures;
        }
    }

    void holds(Check c, bool ok) {
        LemmaCheck &l = summary_.lemmas[c];
        ++l.checks;
        l.failures += ok ? 0 : 1;
    }

    LemmaSummary &summary() { return summary_; }

  private:
    double tol_;
    LemmaSummary summary_;
};

// Overlap count / Npad per row, from the bits alone.
std::vector<double> overlaps_of(const CutoffTable &table) {
    std::vector<double> out(table.num_thetas());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<double>(table.row_count(i)) /
                 static_cast<double>(table.padded_samples());
    }
    return out;
}

// Swap-test output written out from its closed form:
// 1/2 |0>(|phi psi> + |psi phi>) + 1/2 |1>(|phi psi> - |psi phi>), per theta.
std::vector<Amplitude> expected_swap_state(const CutoffTable &table, const RegisterLayout &layout,
                                           std::optional<std::size_t> fixed_theta) {
    const std::size_t npad = table.padded_samples();
    const std::size_t half = std::size_t{2} * npad; // values of an (n+1)-qubit register
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(npad));
    std::vector<Amplitude> out(std::size_t{1} << layout.num_qubits(), Amplitude{0.0, 0.0});

    const std::size_t m = table.num_thetas();
    const double theta_amp = fixed_theta ? 1.0 : 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t t = 0; t < m; ++t) {
        if (fixed_theta && *fixed_theta != t) {
            continue;
        }
        std::vector<double> phi(half, 0.0);
        std::vector<double> psi(half, 0.0);
        for (std::size_t j = 0; j < npad; ++j) {
            phi[j | (table.bit(t, j) ? npad : 0)] = inv_sqrt_n;
            psi[j | npad] = inv_sqrt_n;
        }
        for (std::size_t a = 0; a < half; ++a) {
            for (std::size_t b = 0; b < half; ++b) {
                const double fwd = phi[a] * psi[b];
                const double rev = psi[a] * phi[b];
                const std::uint64_t base = layout.reg_a().place(a) | layout.reg_b().place(b) |
                                           layout.theta().place(t);
                out[base] += theta_amp * 0.5 * (fwd + rev);
                out[base | layout.ancilla().place(1)] += theta_amp * 0.5 * (fwd - rev);
            }
        }
    }
    return out;
}

double p_ancilla_zero(const StateVector &state) {
    return marginal_probability(state, Register{0, 1})[0];
}

void check_table(const CutoffTable &table, const CutoffTable &expect, Rng &rng, Recorder &rec) {
    const RegisterLayout layout = table.layout();
    const std::size_t m = table.num_thetas();
    const std::vector<double> ov = overlaps_of(expect);

    StateVector state(layout.num_qubits());
    q1query_prefix(table).apply(state);

    // Swap test output state against its closed form.
    {
        const std::vector<Amplitude> want = expected_swap_state(expect, layout, std::nullopt);
        double err = 0.0;
        const auto amps = state.amplitudes();
        for (std::size_t i = 0; i < amps.size(); ++i) {
            err = std::max(err, std::abs(amps[i] - want[i]));
        }
        rec.error(swap_test_state, err);
    }

    // Per-theta ancilla probability against 1/2 + 1/2 |<phi|psi>|^2.
    for (std::size_t t = 0; t < m; ++t) {
        StateVector single(layout.num_qubits());
        q1query_prefix(table, t).apply(single);
        rec.close(ancilla_zero_per_theta, p_ancilla_zero(single), 0.5 + 0.5 * ov[t] * ov[t]);
    }

    double sum_sq = 0.0;
    double sum_xi = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        sum_sq += ov[t] * ov[t];
        sum_xi += 0.5 + 0.5 * ov[t] * ov[t];
    }
    rec.close(ancilla_zero_total, p_ancilla_zero(state),
              0.5 + sum_sq / (2.0 * static_cast<double>(m)));

    const std::vector<double> marginal = marginal_probability(state, layout.theta());
    for (std::size_t t = 0; t < m; ++t) {
        rec.close(theta_marginal_uniform, marginal[t], 1.0 / static_cast<double>(m));
    }

    const std::vector<double> post = conditional_theta_distribution(state, layout);
    for (std::size_t t = 0; t < m; ++t) {
        rec.close(post_selected_theta, post[t], (0.5 + 0.5 * ov[t] * ov[t]) / sum_xi);
    }

    // Overlaps read back from the prepared input: the A register amplitudes
    // at a fixed B basis state give phi_theta up to a known factor.
    {
        QueryLedger scratch;
        const StateVector input = prepare_pstc_input(table, scratch);
        const std::size_t npad = table.padded_samples();
        const double sqrt_m = std::sqrt(static_cast<double>(m));
        const double sqrt_n = std::sqrt(static_cast<double>(npad));
        const std::uint64_t b_fixed = layout.reg_b().place(npad); // index 0, flag 1
        for (std::size_t t = 0; t < m; ++t) {
            double overlap = 0.0;
            for (std::size_t j = 0; j < npad; ++j) {
                // <phi|psi> picks the components with flag 1.
                const std::uint64_t idx =
                    layout.reg_a().place(j | npad) | b_fixed | layout.theta().place(t);
                const double phi = input[idx].real() * sqrt_m * sqrt_n;
                overlap += phi / sqrt_n;
            }
            rec.close(prepared_overlap, overlap, ov[t]);
        }
    }

    // Planned iterations for a random nonempty region stay below the bound.
    {
        QueryLedger scratch;
        const PstcContext context(table, scratch);
        const double xi_threshold = context.xi(rng.uniform_index(m));
        std::vector<std::uint8_t> marked(m);
        std::size_t width = 0;
        for (std::size_t t = 0; t < m; ++t) {
            marked[t] = context.xi(t) >= xi_threshold ? 1 : 0;
            width += marked[t];
        }
        Marking marking = make_marking(layout.theta(), marked,
                                       PhaseCondition{layout.ancilla().place(1), 0});
        const double p = std::min(1.0, marked_mass(context.prepared(), marking));
        const std::uint64_t iterations = plan_iterations(p).iterations;
        const double bound =
            std::ceil((std::numbers::pi / 4.0) *
                      std::sqrt(2.0 * static_cast<double>(m) / static_cast<double>(width)));
        rec.holds(boost_iteration_bound, static_cast<double>(iterations) <= bound);
    }
}

CutoffTable flip_one_bit(const CutoffTable &table, Rng &rng) {
    const std::size_t m = table.num_thetas();
    const std::size_t n = table.num_samples();
    std::vector<std::uint8_t> bits(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            bits[i * n + j] = table.bit(i, j) ? 1 : 0;
        }
    }
    const std::size_t k = rng.uniform_index(bits.size());
    bits[k] ^= 1U;
    return CutoffTable::from_bits(m, n, bits, table.threshold());
}

} // namespace

bool LemmaSummary::passed() const noexcept {
    return std::all_of(lemmas.begin(), lemmas.end(),
                       [](const LemmaCheck &l) { return l.failures == 0; });
}

CutoffTable random_cutoff_table(unsigned n, unsigned m, Rng &rng) {
    const std::size_t rows = std::size_t{1} << m;
    const std::size_t cols = std::size_t{1} << n;
    const double density = rng.uniform01();
    std::vector<std::uint8_t> bits(rows * cols);
    for (auto &b : bits) {
        b = rng.uniform01() < density ? 1 : 0;
    }
    return CutoffTable::from_bits(rows, cols, bits);
}

LemmaSummary verify_lemmas(const LemmaOptions &options) {
    Recorder rec(options.tolerance);
    std::size_t tables = 0;
    for (unsigned n = 0; n <= options.n_max; ++n) {
        for (unsigned m = 0; m <= options.m_max; ++m) {
            Rng rng(derive_seed(options.seed, (std::uint64_t{n} << 8) | m));
            for (std::size_t t = 0; t < options.trials; ++t) {
                const CutoffTable table = random_cutoff_table(n, m, rng);
                const CutoffTable expect = options.corrupt ? flip_one_bit(table, rng) : table;
                check_table(table, expect, rng, rec);
                ++tables;
            }
        }
    }
    rec.summary().tables = tables;
    return rec.summary();
}

} // namespace qopt
