#include "oracles.hpp"

#include "subsketch/error.hpp"
#include "subsketch/instance_model.hpp"
#include "subsketch/scheduler.hpp"
#include "subsketch/sketch_common.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

using namespace subsketch;

TEST_CASE("interval index at the anchor and at an interior point") {
    const IntervalScheme s(100.0, 0.5);
    CHECK(s.interval_index(100.0) == 1);
    CHECK(s.interval_index(30.0) == 2);
    CHECK(s.interval_index(50.0) == 2);
    CHECK(s.interval_index(50.000001) == 1);
    CHECK(s.interval_index(25.0) == 3);
}

TEST_CASE("interval index rejects values outside (0, anchor]") {
    const IntervalScheme s(10.0, 0.1);
    CHECK_THROWS_AS(s.interval_index(0.0), DomainError);
    CHECK_THROWS_AS(s.interval_index(-1.0), DomainError);
    CHECK_THROWS_AS(s.interval_index(10.5), DomainError);
    CHECK(s.locate(10.5) == 0);
    CHECK(s.locate(0.0) == 0);
}

TEST_CASE("interval index agrees with a linear scan over boundaries") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> delta_dist(0.01, 0.6);
    std::uniform_real_distribution<double> exp_dist(-6.0, 0.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double delta = delta_dist(rng);
        const double anchor = 37.5;
        const double p = anchor * std::pow(10.0, exp_dist(rng));
        const IntervalScheme s(anchor, delta);
        CHECK(s.interval_index(p) == oracle::linear_scan_interval(p, anchor, delta));
    }
}

TEST_CASE("interval index is monotone and upper(k) is the top of interval k") {
    const IntervalScheme s(3.0, 0.07);
    int prev = 1;
    for (double p = 3.0; p > 1e-3; p *= 0.991) {
        const int k = s.interval_index(p);
        CHECK(k >= prev);
        prev = k;
    }
    for (int k = 1; k < 200; ++k) {
        CHECK(s.interval_index(s.upper(k)) == k);
        CHECK(s.lower(k) == s.upper(k + 1));
    }
}

TEST_CASE("sketch entries keep rounded times reproducible from their intervals") {
    const IntervalScheme s(8.0, 0.2);
    const SketchInstance sk(s, {make_entry(s, 4, 2, EntrySource::exact_count),
                                make_entry(s, 1, 3, EntrySource::deterministic)});
    REQUIRE(sk.size() == 2);
    CHECK(sk[0].interval == 1);
    CHECK(sk[1].interval == 4);
    for (const auto& e : sk.entries()) {
        CHECK(e.rounded_time == s.upper(e.interval));
    }
    CHECK(sk.total_jobs() == 5);
    CHECK(sk.find(4) == 1);
    CHECK(sk.find(2) == -1);
    CHECK(sk.expand().size() == 5);
}

TEST_CASE("sketch instance rejects malformed entries") {
    const IntervalScheme s(8.0, 0.2);
    CHECK_THROWS(SketchInstance(s, {make_entry(s, 1, 0, EntrySource::deterministic)}));
    CHECK_THROWS(SketchInstance(s, {make_entry(s, 2, 1, EntrySource::deterministic),
                                    make_entry(s, 2, 1, EntrySource::deterministic)}));
    auto bad = make_entry(s, 2, 1, EntrySource::deterministic);
    bad.rounded_time *= 1.01;
    CHECK_THROWS(SketchInstance(s, {bad}));
}

TEST_CASE("quality of an exact sketch has zero alpha and zero discards") {
    const Instance inst({5, 4, 3, 3, 3});
    const auto sk = deterministic_sketch_delta(inst, 0.05);
    const double opt = oracle::brute_force_opt(inst.times(), 2);
    const double sopt = oracle::sketch_opt(sk, 2);
    const auto q = validate_sketch_quality(inst, sk, opt, sopt);
    REQUIRE(std::holds_alternative<SketchQuality>(q));
    CHECK(std::get<SketchQuality>(q).alpha == 0.0);
    CHECK(std::get<SketchQuality>(q).beta2 == 0.0);
}

TEST_CASE("deterministic sketch has exact counts and discards at most 2 delta OPT") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> times(10);
        std::exponential_distribution<double> d(0.3);
        for (auto& p : times) {
            p = 0.001 + d(rng);
        }
        const Instance inst(times);
        const double eps = 0.4;
        const auto sk = deterministic_sketch(inst, eps);
        const double opt = oracle::brute_force_opt(inst.times(), 2);
        const auto q = validate_sketch_quality(inst, sk, opt, oracle::sketch_opt(sk, 2));
        REQUIRE(std::holds_alternative<SketchQuality>(q));
        CHECK(std::get<SketchQuality>(q).alpha == 0.0);
        CHECK(std::get<SketchQuality>(q).beta2 <= 2 * eps / 8 + 1e-12);
    }
}

TEST_CASE("quality triple of a perturbed sketch matches a hand computation") {
    const Instance inst({10, 10, 10, 10, 1, 1, 1, 1, 1, 1});
    const IntervalScheme s(10.0, 0.1);
    const int k_small = s.interval_index(1.0);
    const SketchInstance sk(s, {make_entry(s, 1, 5, EntrySource::birthday)});
    const double opt = oracle::brute_force_opt(inst.times(), 2);
    const double sopt = oracle::sketch_opt(sk, 2);
    const auto q = validate_sketch_quality(inst, sk, opt, sopt);
    REQUIRE(std::holds_alternative<SketchQuality>(q));
    const auto& t = std::get<SketchQuality>(q);
    CHECK(k_small > 1);
    CHECK(t.alpha == doctest::Approx(0.25));
    CHECK(t.beta1 == doctest::Approx(std::fabs(30.0 / 23.0 - 1.0)));
    CHECK(t.beta2 == doctest::Approx(6.0 / 23.0));
}

TEST_CASE("quality reports a violation for a sketch entry without real jobs") {
    const Instance inst({4, 4});
    const IntervalScheme s(4.0, 0.1);
    const SketchInstance sk(s, {make_entry(s, 1, 2, EntrySource::deterministic),
                                make_entry(s, 3, 1, EntrySource::birthday)});
    const auto q = validate_sketch_quality(inst, sk, 4.0, oracle::sketch_opt(sk, 2));
    CHECK(std::holds_alternative<QualityViolation>(q));
}

TEST_CASE("sketch schedule column sums and loads") {
    const IntervalScheme s(2.0, 0.5);
    const SketchInstance sk(s, {make_entry(s, 1, 3, EntrySource::deterministic),
                                make_entry(s, 2, 2, EntrySource::deterministic)});
    SketchSchedule sched{2, {{2, 0}, {1, 2}}};
    CHECK(sched.column_sum(0) == 3);
    CHECK(sched.column_sum(1) == 2);
    CHECK(sched.load(0, sk) == 4.0);
    CHECK(sched.load(1, sk) == 4.0);
    CHECK(sched.makespan(sk) == 4.0);
}

TEST_CASE("concrete schedule makespan recomputation") {
    const std::vector<double> t{3, 2, 2};
    const std::vector<int> a{0, 1, 1};
    CHECK(ConcreteSchedule::recompute(t, a, 2) == 4.0);
}

TEST_CASE("params derivation is deterministic and validated") {
    const auto a = Params::make(2, 0.5, 1.0 / 12.0);
    const auto b = Params::make(2, 0.5, 1.0 / 12.0);
    CHECK(a.sketch_delta == b.sketch_delta);
    CHECK(a.sketch_delta == doctest::Approx(0.5 / 96.0));
    CHECK(a.meta_delta == doctest::Approx(0.5 / 3.0));
    CHECK(a.h_meta == 12);
    CHECK_THROWS_AS(Params::make(0, 0.5, 0.05), ConfigError);
    CHECK_THROWS_AS(Params::make(2, 0.0, 0.05), ConfigError);
    CHECK_THROWS_AS(Params::make(2, 1.0, 0.05), ConfigError);
    CHECK_THROWS_AS(Params::make(2, 0.5, 0.2), ConfigError);
}

TEST_CASE("ceil_tolerant absorbs representation error only") {
    CHECK(ceil_tolerant(3.0) == 3);
    CHECK(ceil_tolerant(0.1 * 3 / 0.1) == 3);
    CHECK(ceil_tolerant(3.01) == 4);
    CHECK(ceil_tolerant(-0.5) == 0);
}

TEST_CASE("instance parsing from text and JSON") {
    CHECK(parse_instance("1.5\n2\n\n3e0\n").size() == 3);
    CHECK(parse_instance("  [1, 2.5, 3]").total_time() == doctest::Approx(6.5));
    try {
        parse_instance("1\n2\nabc\n");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    try {
        parse_instance("1\n-2\n");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    try {
        parse_instance("[1,\n2,\n}");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_instance("[1, \"x\"]"), ParseError);
}

TEST_CASE("instance files round-trip exactly") {
    const Instance inst({0.1, 1.0 / 3.0, 12345.678901234567});
    const auto path = std::filesystem::temp_directory_path() / "subsketch_roundtrip.txt";
    save_instance(inst, path);
    const auto back = load_instance(path);
    std::filesystem::remove(path);
    REQUIRE(back.size() == inst.size());
    for (std::size_t j = 0; j < inst.size(); ++j) {
        CHECK(back[j] == inst[j]);
    }
}

TEST_CASE("instance rejects nonpositive times") {
    CHECK_THROWS_AS(Instance({1.0, 0.0}), DomainError);
}
