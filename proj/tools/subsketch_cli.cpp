#include "subsketch/error.hpp"
#include "subsketch/generators.hpp"
#include "subsketch/pipeline.hpp"
#include "subsketch/report.hpp"
#include "subsketch/suites.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kValidationFailure = 3;

std::uint64_t env_seed() {
    const char* raw = std::getenv("SUBSKETCH_SEED");
    if (raw == nullptr || *raw == '\0') {
        return 0;
    }
    try {
        std::size_t used = 0;
        const auto v = std::stoull(raw, &used, 10);
        if (used != std::string(raw).size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw subsketch::ConfigError("SUBSKETCH_SEED must be a decimal integer");
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw subsketch::ConfigError("cannot write " + path);
    }
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sublinear-time makespan estimation by weighted random sampling"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    try {
        seed = env_seed();
    } catch (const subsketch::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }

    subsketch::EstimateOptions options;
    options.seed = seed;
    std::string instance_path;
    std::string generate_text;
    std::string mode = "known";
    std::string solver = "automatic";
    std::string out_path;
    double sketch_delta = 0.0;

    auto* estimate = app.add_subcommand("estimate", "estimate the optimal makespan of one instance");
    auto* inst_opt = estimate->add_option("--instance", instance_path, "instance file (text or JSON array)");
    auto* gen_opt = estimate->add_option("--generate", generate_text, "generator spec family:n[:a[:b]]");
    inst_opt->excludes(gen_opt);
    estimate->add_option("--mode", mode, "known | adaptive | deterministic")->capture_default_str();
    estimate->add_option("--m", options.m, "number of machines")->capture_default_str();
    estimate->add_option("--epsilon", options.epsilon, "approximation parameter")->capture_default_str();
    estimate->add_option("--gamma0", options.gamma0, "failure probability")->capture_default_str();
    estimate->add_option("--seed", options.seed, "RNG seed (default $SUBSKETCH_SEED or 0)");
    estimate->add_flag("--validate", options.validate, "compare against the exact optimum");
    estimate->add_flag("--emit-schedule", options.emit_schedule, "expand a concrete schedule");
    estimate->add_option("--out", out_path, "report file (default stdout)");
    auto* delta_opt =
        estimate->add_option("--sketch-delta", sketch_delta, "override the sampled-mode sketch delta");
    estimate->add_option("--budget-scale", options.budget_scale, "multiplier on the sample budgets")
        ->capture_default_str();
    estimate->add_option("--max-draws", options.max_draws, "refuse budgets above this many draws")
        ->capture_default_str();
    estimate->add_option("--solver", solver, "exact_bb | lpt | automatic")->capture_default_str();

    std::string suite;
    std::uint64_t trials = 0;
    std::uint64_t suite_seed = seed;
    auto* validate = app.add_subcommand("validate", "run a statistical validation suite");
    validate->add_option("--suite", suite, "suite name")->required();
    validate->add_option("--trials", trials, "trial count (0 = suite default)");
    validate->add_option("--seed", suite_seed, "RNG seed (default $SUBSKETCH_SEED or 0)");

    std::string family = "uniform";
    std::uint64_t gen_n = 1;
    std::uint64_t gen_seed = seed;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "write a synthetic instance");
    gen->add_option("--family", family, "uniform | two_point | log_uniform | one_giant | geometric")
        ->capture_default_str();
    gen->add_option("--n", gen_n, "number of jobs")->required();
    gen->add_option("--seed", gen_seed, "RNG seed (default $SUBSKETCH_SEED or 0)");
    gen->add_option("--out", gen_out, "instance file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*estimate) {
            options.mode = subsketch::parse_mode(mode);
            options.solver = subsketch::parse_strategy(solver);
            if (*delta_opt) {
                options.sketch_delta = sketch_delta;
                if (subsketch::Params::c > 1.0 / (4.0 * sketch_delta)) {
                    std::cerr << "warning: sketch delta " << sketch_delta << " exceeds 1/(4c) = "
                              << 1.0 / (4.0 * subsketch::Params::c)
                              << "; the count guarantees assume the smaller delta\n";
                }
            }
            subsketch::Instance instance;
            if (!instance_path.empty()) {
                instance = subsketch::load_instance(instance_path);
            } else if (!generate_text.empty()) {
                instance = subsketch::generate(subsketch::GeneratorSpec::parse(generate_text, options.seed));
            } else {
                throw subsketch::ConfigError("estimate needs --instance or --generate");
            }
            const auto report = subsketch::run_estimate(instance, options);
            write_output(out_path, subsketch::to_json_line(report) + "\n");
            if (report.validation && !report.validation->pass) {
                std::cerr << "validation failed: ratio " << report.validation->ratio << " outside ["
                          << report.validation->lower << ", " << report.validation->upper << "]\n";
                return kValidationFailure;
            }
            return kOk;
        }
        if (*validate) {
            const auto summary = subsketch::run_validation_suite(suite, trials, suite_seed);
            for (const auto& line : summary.lines) {
                std::printf("%s %s: %s observed=%.6g threshold=%.6g ci=[%.6g, %.6g] %s\n",
                            line.pass ? "PASS" : "FAIL", summary.suite.c_str(), line.label.c_str(),
                            line.observed, line.threshold, line.ci_low, line.ci_high, line.detail.c_str());
            }
            return summary.pass() ? kOk : kValidationFailure;
        }
        if (*gen) {
            const auto instance = subsketch::generate(subsketch::GeneratorSpec{family, gen_n, gen_seed, {}});
            subsketch::save_instance(instance, gen_out);
            return kOk;
        }
    } catch (const subsketch::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return kOk;
}
