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

// qopt: lemma checks, single optimizer runs and scaling sweeps.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or input error.

#include "qopt/errors.hpp"
#include "qopt/harness/lemmas.hpp"
#include "qopt/harness/run_report.hpp"
#include "qopt/harness/scaling.hpp"
#include "qopt/oracles/problem.hpp"
#include "qopt/problems/problems.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigFlags {
    std::optional<double> ell_threshold;
    bool canonical_threshold = false;
    std::string xi_mode = "adaptive";
    std::string p_mode = "exact";
    std::size_t rounds = 0;
    std::size_t restart_cap = 64;
    std::string threshold_mode = "full";
    std::size_t threshold_samples = 0;
    std::optional<double> xi_threshold;
    double scale = 100.0;
    unsigned repetitions = 1;
    double budget_factor = 8.0;
    std::string dh_mode = "auto";
};

void add_config_flags(CLI::App *cmd, ConfigFlags &f) {
    cmd->add_option("--ell-threshold", f.ell_threshold, "fixed loss threshold");
    cmd->add_flag("--canonical-threshold", f.canonical_threshold,
                  "use the instance's own loss threshold");
    cmd->add_option("--xi-mode", f.xi_mode)->check(CLI::IsMember({"static", "adaptive"}));
    cmd->add_option("--p-mode", f.p_mode)->check(CLI::IsMember({"exact", "unknown"}));
    cmd->add_option("--rounds", f.rounds, "outer rounds (0: ceil(log2 M))");
    cmd->add_option("--restart-cap", f.restart_cap)->check(CLI::PositiveNumber);
    cmd->add_option("--threshold-mode", f.threshold_mode)
        ->check(CLI::IsMember({"full", "sampled"}));
    cmd->add_option("--threshold-samples", f.threshold_samples);
    cmd->add_option("--xi-threshold", f.xi_threshold);
    cmd->add_option("--scale", f.scale, "sum oracle quantization scale")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--repetitions", f.repetitions)->check(CLI::PositiveNumber);
    cmd->add_option("--budget-factor", f.budget_factor)->check(CLI::PositiveNumber);
    cmd->add_option("--dh-mode", f.dh_mode)->check(CLI::IsMember({"auto", "full", "ledger"}));
}

qopt::RunOptions to_run_options(const ConfigFlags &f, const std::string &algorithm,
                                std::uint64_t seed, const qopt::ProblemInstance *problem) {
    qopt::RunOptions run;
    run.algorithm = qopt::parse_algorithm(algorithm);
    run.seed = seed;
    run.pstc.ell_threshold = f.ell_threshold;
    if (f.canonical_threshold && !f.ell_threshold && problem != nullptr) {
        if (!problem->canonical_threshold()) {
            throw UsageError("instance has no canonical threshold");
        }
        run.pstc.ell_threshold = problem->canonical_threshold();
    }
    run.pstc.xi_mode = f.xi_mode == "static" ? qopt::XiMode::fixed : qopt::XiMode::adaptive;
    run.pstc.p_mode = f.p_mode == "exact" ? qopt::PMode::exact : qopt::PMode::unknown;
    run.pstc.outer_rounds = f.rounds;
    run.pstc.restart_cap = f.restart_cap;
    run.pstc.threshold_mode = f.threshold_mode == "full" ? qopt::ThresholdMode::full_average
                                                         : qopt::ThresholdMode::sampled_average;
    run.pstc.threshold_samples = f.threshold_samples;
    run.pstc.xi_threshold = f.xi_threshold;
    run.avg.scale = f.scale;
    run.avg.repetitions = f.repetitions;
    run.avg.dh.budget_factor = f.budget_factor;
    run.avg.dh.mode = f.dh_mode == "full"     ? qopt::DhMode::full_circuit
                      : f.dh_mode == "ledger" ? qopt::DhMode::ledger_only
                                              : qopt::DhMode::automatic;
    return run;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) {
        out.push_back(part);
    }
    return out;
}

std::uint64_t to_u64(const std::string &s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception &) {
        throw UsageError("not a number: " + s);
    }
    if (used != s.size()) {
        throw UsageError("not a number: " + s);
    }
    return v;
}

// Builtins: counterexample[:M], basin:M:N[:seed], uniform:M:N[:seed],
// outliers:P:O[:seed]. Anything else is read as a JSON file.
qopt::ProblemInstance resolve_problem(const std::string &source) {
    const std::vector<std::string> parts = split(source, ':');
    const std::string &name = parts.empty() ? source : parts.front();
    if (name == "counterexample") {
        if (parts.size() > 2) {
            throw UsageError("usage: counterexample[:M]");
        }
        return qopt::counterexample_instance(parts.size() == 2 ? to_u64(parts[1]) : 8);
    }
    if (name == "basin" || name == "uniform") {
        if (parts.size() < 3 || parts.size() > 4) {
            throw UsageError("usage: " + name + ":M:N[:seed]");
        }
        const std::uint64_t seed = parts.size() == 4 ? to_u64(parts[3]) : 0;
        return qopt::synthetic_instance(to_u64(parts[1]), to_u64(parts[2]), seed,
                                        qopt::parse_landscape(name));
    }
    if (name == "outliers") {
        if (parts.size() < 3 || parts.size() > 4) {
            throw UsageError("usage: outliers:P:O[:seed]");
        }
        const std::uint64_t seed = parts.size() == 4 ? to_u64(parts[3]) : 0;
        return qopt::outlier_classifier_instance(to_u64(parts[1]), to_u64(parts[2]), seed).problem;
    }
    if (!std::filesystem::exists(source)) {
        throw UsageError("unknown builtin or missing file: " + source);
    }
    return qopt::load_problem(source);
}

int cmd_verify(const qopt::LemmaOptions &options) {
    const qopt::LemmaSummary summary = qopt::verify_lemmas(options);
    nlohmann::json out = {{"tables", summary.tables}, {"passed", summary.passed()}};
    nlohmann::json lemmas = nlohmann::json::array();
    for (const qopt::LemmaCheck &l : summary.lemmas) {
        lemmas.push_back({{"name", l.name},
                          {"checks", l.checks},
                          {"failures", l.failures},
                          {"max_error", l.max_error}});
        std::cerr << (l.failures == 0 ? "PASS " : "FAIL ") << l.name << " (" << l.checks
                  << " checks, max error " << l.max_error << ")\n";
    }
    out["lemmas"] = lemmas;
    std::cout << out.dump() << '\n';
    return summary.passed() ? 0 : kCheckFailed;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Statevector experiments for threshold-based quantum optimizers"};
    app.require_subcommand(1);

    qopt::LemmaOptions lemma;
    auto *verify = app.add_subcommand("verify-lemmas", "exact checks of the swap test identities");
    verify->add_option("--n-max", lemma.n_max)->check(CLI::Range(0U, 6U));
    verify->add_option("--m-max", lemma.m_max)->check(CLI::Range(0U, 6U));
    verify->add_option("--trials", lemma.trials)->check(CLI::PositiveNumber);
    verify->add_option("--seed", lemma.seed);
    verify->add_flag("--corrupt", lemma.corrupt, "self-test: compare against a corrupted table");

    std::string algorithm;
    std::string problem_spec;
    std::uint64_t seed = 0;
    ConfigFlags flags;
    auto *run = app.add_subcommand("run", "run one optimizer and print its report as JSON");
    run->add_option("--algorithm", algorithm)->required()->check(CLI::IsMember({"avg", "pstc"}));
    run->add_option("--problem", problem_spec, "JSON file or builtin name")->required();
    run->add_option("--seed", seed);
    add_config_flags(run, flags);

    std::string m_list;
    std::size_t n = 8;
    std::size_t seeds = 100;
    std::string out_path;
    std::string landscape = "basin";
    unsigned threads = 0;
    auto *scaling = app.add_subcommand("scaling", "cost sweep over M with a log-log fit");
    scaling->add_option("--algorithm", algorithm)
        ->required()
        ->check(CLI::IsMember({"avg", "pstc"}));
    scaling->add_option("--m-list", m_list, "comma separated grid sizes")->required();
    scaling->add_option("--n", n)->check(CLI::PositiveNumber);
    scaling->add_option("--seeds", seeds)->check(CLI::PositiveNumber);
    scaling->add_option("--out", out_path, "CSV output path")->required();
    scaling->add_option("--seed", seed);
    scaling->add_option("--landscape", landscape)->check(CLI::IsMember({"basin", "uniform"}));
    scaling->add_option("--threads", threads);
    add_config_flags(scaling, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*verify) {
            return cmd_verify(lemma);
        }
        if (*run) {
            const qopt::ProblemInstance problem = resolve_problem(problem_spec);
            const qopt::RunOptions options = to_run_options(flags, algorithm, seed, &problem);
            std::cout << qopt::to_json(qopt::run_algorithm(problem, options)).dump() << '\n';
            return 0;
        }
        qopt::ScalingOptions options;
        options.run = to_run_options(flags, algorithm, seed, nullptr);
        for (const std::string &m : split(m_list, ',')) {
            options.m_list.push_back(to_u64(m));
        }
        options.num_samples = n;
        options.seeds = seeds;
        options.landscape = qopt::parse_landscape(landscape);
        options.threads = threads;
        const qopt::ScalingResult result = qopt::run_scaling(options);
        std::ofstream csv(out_path);
        if (!csv) {
            throw UsageError("cannot write " + out_path);
        }
        qopt::write_csv(csv, result.rows);
        nlohmann::json points = nlohmann::json::array();
        for (const qopt::ScalingPoint &p : result.fit.points) {
            points.push_back({{"M", p.num_thetas}, {"median_cost", p.median_cost}});
        }
        std::cout << nlohmann::json{{"algorithm", algorithm},
                                    {"points", points},
                                    {"slope", result.fit.slope},
                                    {"intercept", result.fit.intercept},
                                    {"r2", result.fit.r2}}
                         .dump()
                  << '\n';
        return 0;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const qopt::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
}
