#include "subsketch/error.hpp"
#include "subsketch/generators.hpp"
#include "subsketch/pipeline.hpp"
#include "subsketch/report.hpp"
#include "subsketch/sketch_adaptive.hpp"
#include "subsketch/suites.hpp"

#include <doctest.h>

#include <cmath>

using namespace subsketch;

namespace {

ExperimentReport without_time(ExperimentReport r) {
    r.wall_time_ms = 0.0;
    return r;
}

} // namespace

TEST_CASE("generator families produce positive times of the requested size") {
    for (const auto& family : generator_families()) {
        const auto inst = generate(GeneratorSpec{family, 501, 3, {}});
        CHECK(inst.size() == 501);
        for (double p : inst.times()) {
            CHECK(p > 0.0);
        }
    }
    const auto tp = generate(GeneratorSpec{"two_point", 11, 1, {}});
    CHECK(tp.total_time() == doctest::Approx(6 * 100.0 + 5 * 1.0));
    const auto giant = generate(GeneratorSpec{"one_giant", 100, 1, {}});
    CHECK(giant.max_time() == doctest::Approx(100.0));
    CHECK(giant.total_time() == doctest::Approx(199.0));
    const auto u = generate(GeneratorSpec{"uniform", 1000, 2, {3.0, 4.0}});
    for (double p : u.times()) {
        CHECK(p >= 3.0);
        CHECK(p <= 4.0);
    }
}

TEST_CASE("generator specs parse and reject bad input") {
    const auto s = GeneratorSpec::parse("log_uniform:250:2:50", 9);
    CHECK(s.family == "log_uniform");
    CHECK(s.n == 250);
    CHECK(s.seed == 9);
    REQUIRE(s.params.size() == 2);
    CHECK(s.params[1] == 50.0);
    CHECK_THROWS_AS(GeneratorSpec::parse("nope:10", 0), ConfigError);
    CHECK_THROWS_AS(GeneratorSpec::parse("uniform", 0), ConfigError);
    CHECK_THROWS_AS(generate(GeneratorSpec{"uniform", 0, 0, {}}), ConfigError);
    CHECK_THROWS_AS(generate(GeneratorSpec{"uniform", 5, 0, {-1.0, 2.0}}), ConfigError);
}

TEST_CASE("generation is reproducible from the seed") {
    const auto a = generate(GeneratorSpec{"geometric", 300, 77, {}});
    const auto b = generate(GeneratorSpec{"geometric", 300, 77, {}});
    for (std::size_t j = 0; j < a.size(); ++j) {
        CHECK(a[j] == b[j]);
    }
}

TEST_CASE("deterministic pipeline on four unit jobs") {
    EstimateOptions o;
    o.mode = Mode::deterministic;
    o.m = 2;
    o.epsilon = 0.3;
    o.validate = true;
    const auto r = run_estimate(Instance({1, 1, 1, 1}), o);
    CHECK(r.estimate >= 2.0);
    CHECK(r.estimate <= 1.3 * 2.0);
    CHECK(r.draws_used == 0);
    REQUIRE(r.validation);
    CHECK(r.validation->exact_opt == 2.0);
    CHECK(r.validation->ratio == doctest::Approx(r.estimate / 2.0));
    CHECK(r.validation->pass);
}

TEST_CASE("known mode on one job takes the fallback path") {
    EstimateOptions o;
    o.mode = Mode::known;
    o.epsilon = 0.3;
    const auto r = run_estimate(Instance({6.0}), o);
    CHECK(r.fallback);
    CHECK(r.estimate == doctest::Approx((1 + 0.1) * 6.0));
    CHECK_FALSE(r.validation);
}

TEST_CASE("adaptive mode on one giant job keeps the giant exact and accounts for every draw") {
    auto config = AdaptiveConfig::make(2, 0.2, 1.0 / 12.0, 1e-3);
    const auto inst = generate(GeneratorSpec{"one_giant", 10000, 5, {}});
    auto sampler = SamplerIndex::build(inst, 5);
    const auto r = sketch_adaptive(sampler, config);
    REQUIRE_FALSE(r.sketch.empty());
    CHECK(r.sketch[0].count == 1);
    CHECK(r.sketch[0].source == EntrySource::exact_count);
    std::uint64_t rounds = 0;
    for (int j = 1; j <= r.rounds.round; ++j) {
        rounds += r.horizon.K0 << j;
    }
    CHECK(r.draws == config.K_init + r.horizon.K0 + rounds);
    CHECK(r.unmarked.empty());
}

TEST_CASE("full-constant known-n budgets above the draw limit are refused") {
    EstimateOptions o;
    o.mode = Mode::known;
    const auto inst = generate(GeneratorSpec{"uniform", 100000, 1, {}});
    CHECK_THROWS_AS(run_estimate(inst, o), ConfigError);
    o.m = 0;
    CHECK_THROWS_AS(run_estimate(inst, o), ConfigError);
}

TEST_CASE("same inputs give identical reports") {
    EstimateOptions o;
    o.mode = Mode::known;
    o.sketch_delta = 0.1;
    o.budget_scale = 1e-4;
    o.seed = 17;
    o.validate = true;
    o.emit_schedule = true;
    const auto inst = generate(GeneratorSpec{"two_point", 2000, 1, {}});
    const auto a = without_time(run_estimate(inst, o));
    const auto b = without_time(run_estimate(inst, o));
    CHECK(to_json_line(a) == to_json_line(b));
    CHECK(a.expanded_makespan.has_value());
    o.seed = 18;
    const auto c = without_time(run_estimate(inst, o));
    CHECK(c.draws_used == a.draws_used);
}

TEST_CASE("reports round-trip through JSON") {
    ExperimentReport r;
    r.mode = "adaptive";
    r.m = 3;
    r.epsilon = 0.1;
    r.gamma0 = 1.0 / 12.0;
    r.seed = 123456789012345ULL;
    r.sketch_delta = 0.1 / 144.0;
    r.budget_scale = 0.3;
    r.solver = "lpt";
    r.n = 99;
    r.estimate = 1.0 / 3.0;
    r.sketch_entries = 4;
    r.draws_used = 77;
    r.wall_time_ms = 0.12345678901234;
    r.dropped_intervals = 2;
    r.validation = ValidationBlock{2.0, 1.0 / 6.0, -0.5, 2.5, true};
    r.expanded_makespan = 3.25;
    const auto line = to_json_line(r);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(report_from_json(line) == r);

    ExperimentReport bare;
    bare.mode = "deterministic";
    CHECK(report_from_json(to_json_line(bare)) == bare);
    const auto many = reports_from_jsonl(to_jsonl({r, bare}));
    REQUIRE(many.size() == 2);
    CHECK(many[1] == bare);
    CHECK_THROWS_AS(report_from_json("{not json"), ParseError);
}

TEST_CASE("validation suites by name") {
    CHECK(suite_names().size() == 10);
    CHECK_THROWS_AS(run_validation_suite("nope", 1, 0), ConfigError);
    const auto chisq = run_validation_suite("sampler_chisq", 1, 3);
    CHECK(chisq.pass());
    bool saw_123 = false;
    for (const auto& l : chisq.lines) {
        saw_123 = saw_123 || l.label.find("n=3 ") != std::string::npos;
    }
    CHECK(saw_123);
    CHECK(run_validation_suite("lemma4", 0, 0).pass());
}

TEST_CASE("collision suite at small trial counts") {
    const auto s = run_validation_suite("collision_bounds", 20000, 1);
    CHECK(s.lines.size() == 4);
    CHECK(s.pass());
}

TEST_CASE("wilson interval") {
    const auto [lo, hi] = wilson_interval(50, 100, 1.96);
    CHECK(lo == doctest::Approx(0.4038).epsilon(1e-3));
    CHECK(hi == doctest::Approx(0.5962).epsilon(1e-3));
    const auto [l0, h0] = wilson_interval(0, 0);
    CHECK(l0 == 0.0);
    CHECK(h0 == 1.0);
}

TEST_CASE("least-squares line") {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{3, 5, 7, 9};
    const auto f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r2 == doctest::Approx(1.0));
}
