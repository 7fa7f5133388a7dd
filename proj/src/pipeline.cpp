#include "subsketch/pipeline.hpp"

#include "subsketch/error.hpp"
#include "subsketch/exact_oracle.hpp"
#include "subsketch/sketch_adaptive.hpp"
#include "subsketch/sketch_known.hpp"
#include "subsketch/wrs_oracle.hpp"

#include <chrono>

namespace subsketch {

std::string to_string(Mode mode) {
    switch (mode) {
    case Mode::known:
        return "known";
    case Mode::adaptive:
        return "adaptive";
    case Mode::deterministic:
        return "deterministic";
    }
    return "unknown";
}

Mode parse_mode(const std::string& s) {
    if (s == "known") {
        return Mode::known;
    }
    if (s == "adaptive") {
        return Mode::adaptive;
    }
    if (s == "deterministic") {
        return Mode::deterministic;
    }
    throw ConfigError("unknown mode '" + s + "'");
}

namespace {

double sketch_delta_of(const Params& params, const EstimateOptions& options) {
    return options.sketch_delta.value_or(params.sketch_delta);
}

} // namespace

SketchRun build_sketch(const Instance& instance, const EstimateOptions& options) {
    if (instance.empty()) {
        throw ConfigError("instance has no jobs");
    }
    const Params params = Params::make(options.m, options.epsilon, options.gamma0);
    SketchRun run;
    if (options.mode == Mode::deterministic) {
        run.sketch = deterministic_sketch(instance, options.epsilon);
        return run;
    }
    const double delta = sketch_delta_of(params, options);
    auto sampler = SamplerIndex::build(instance, options.seed);
    if (options.mode == Mode::known) {
        const auto config =
            KnownNConfig::make(instance.size(), options.m, delta, options.gamma0, options.budget_scale);
        if (instance.size() >= 1.0 / (delta * delta) && config.K0 + config.K > options.max_draws) {
            throw ConfigError("known-n budget of " + std::to_string(config.K0 + config.K) +
                              " draws exceeds the limit of " + std::to_string(options.max_draws) +
                              "; raise delta or lower the budget scale");
        }
        auto result = sketch_known_n(sampler, config);
        run.sketch = std::move(result.sketch);
        run.fallback = result.deterministic_fallback;
        run.dropped = result.dropped.size();
    } else {
        auto config = AdaptiveConfig::make(options.m, delta, options.gamma0, options.budget_scale);
        config.max_draws = options.max_draws;
        auto result = sketch_adaptive(sampler, config);
        run.sketch = std::move(result.sketch);
        run.dropped = result.unmarked.size();
    }
    run.draws = sampler.draws_used();
    return run;
}

ExperimentReport run_estimate(const Instance& instance, const EstimateOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const Params params = Params::make(options.m, options.epsilon, options.gamma0);

    ExperimentReport report;
    report.mode = to_string(options.mode);
    report.m = options.m;
    report.epsilon = options.epsilon;
    report.gamma0 = options.gamma0;
    report.seed = options.seed;
    report.sketch_delta =
        options.mode == Mode::deterministic ? options.epsilon / 8.0 : sketch_delta_of(params, options);
    report.budget_scale = options.mode == Mode::deterministic ? 1.0 : options.budget_scale;
    report.solver = to_string(options.solver);
    report.n = instance.size();

    const SketchRun run = build_sketch(instance, options);
    report.sketch_entries = run.sketch.size();
    report.draws_used = run.draws;
    report.fallback = run.fallback;
    report.dropped_intervals = run.dropped;

    if (options.emit_schedule) {
        const auto scheduled = meta_sketch_schedule(run.sketch, options.m, options.epsilon, options.solver);
        report.estimate = scheduled.meta.T;
        report.expanded_makespan = expand_schedule(instance, run.sketch, scheduled.schedule).makespan;
    } else {
        report.estimate = meta_approx(run.sketch, options.m, options.epsilon, options.solver).T;
    }
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (options.validate) {
        ValidationBlock v;
        v.exact_opt = exact_opt(instance.times(), options.m);
        v.ratio = report.estimate / v.exact_opt;
        if (options.mode == Mode::deterministic) {
            v.lower = 1.0;
            v.upper = 1.0 + options.epsilon;
        } else {
            v.lower = 1.0 - 3.0 * options.epsilon;
            v.upper = 1.0 + 3.0 * options.epsilon;
        }
        const double slack = 1e-9;
        v.pass = v.ratio >= v.lower - slack && v.ratio <= v.upper + slack;
        report.validation = v;
    }
    return report;
}

} // namespace subsketch
