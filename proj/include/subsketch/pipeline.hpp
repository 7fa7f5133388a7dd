#pragma once

#include "subsketch/instance_model.hpp"
#include "subsketch/report.hpp"
#include "subsketch/scheduler.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace subsketch {

enum class Mode { known, adaptive, deterministic };

std::string to_string(Mode mode);
//! Throws ConfigError.
Mode parse_mode(const std::string& s);

struct EstimateOptions {
    Mode mode = Mode::known;
    int m = 2;
    double epsilon = 0.5;
    double gamma0 = 1.0 / 12.0;
    std::uint64_t seed = 0;
    //! Overrides the sketch delta epsilon / (12 c m) in the sampled modes.
    std::optional<double> sketch_delta;
    double budget_scale = 1.0;
    //! Upper limit on sampler draws; budgets beyond it are a configuration error.
    std::uint64_t max_draws = 250'000'000;
    SolverStrategy solver = SolverStrategy::automatic;
    bool validate = false;
    bool emit_schedule = false;
};

//! Sketch, Meta-Algorithm, and optional validation against the exact optimum
//! and schedule expansion. Validation envelope on T / OPT: [1, 1 + eps] in
//! deterministic mode, [1 - 3 eps, 1 + 3 eps] in the sampled modes.
ExperimentReport run_estimate(const Instance& instance, const EstimateOptions& options);

//! The sketch built by one pipeline run, without scheduling.
struct SketchRun {
    SketchInstance sketch;
    std::uint64_t draws = 0;
    bool fallback = false;
    std::uint64_t dropped = 0;
};
SketchRun build_sketch(const Instance& instance, const EstimateOptions& options);

} // namespace subsketch
