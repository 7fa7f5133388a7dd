#include "subsketch/error.hpp"
#include "subsketch/sketch_adaptive.hpp"

#include <doctest.h>

#include <cmath>

using namespace subsketch;

TEST_CASE("d0 is the smallest integer meeting the probability target") {
    for (double gamma0 : {1.0 / 12.0, 0.03, 0.001}) {
        for (int m : {1, 2, 4}) {
            const double delta = 0.1;
            const auto c = AdaptiveConfig::make(m, delta, gamma0);
            const double base = std::pow(1.0 - delta / m, m / delta);
            CHECK(std::pow(base, static_cast<double>(c.d0)) <= gamma0);
            if (c.d0 > 1) {
                CHECK(std::pow(base, static_cast<double>(c.d0 - 1)) > gamma0);
            }
            CHECK(c.K_init == static_cast<std::uint64_t>(std::ceil(m / delta * c.d0 - 1e-9)));
        }
    }
    CHECK_THROWS_AS(AdaptiveConfig::make(0, 0.1, 0.05), ConfigError);
    CHECK_THROWS_AS(AdaptiveConfig::make(1, 0.5, 0.05), ConfigError);
    CHECK_THROWS_AS(AdaptiveConfig::make(1, 0.1, 0.1), ConfigError);
}

TEST_CASE("horizon constants by hand") {
    const auto c = AdaptiveConfig::make(2, 0.2, 1.0 / 12.0);
    const auto hc = HorizonConstants::make(c, 10);
    const double beta0 = 0.008 / (32.0 * 2 * 10);
    CHECK(hc.beta0 == doctest::Approx(beta0));
    CHECK(hc.K0_exact == doctest::Approx(8.0 / beta0 * std::log(std::exp(1.0) * 12.0 / beta0)));
    CHECK(hc.K0 == static_cast<std::uint64_t>(std::ceil(hc.K0_exact)));
    CHECK(hc.h1_threshold == doctest::Approx(8.0 * beta0 * static_cast<double>(hc.K0)));
    CHECK(hc.interval_min == doctest::Approx(0.2 * static_cast<double>(hc.K0) / 20.0));
}

TEST_CASE("birthday grid") {
    const auto c = AdaptiveConfig::make(1, 0.1, 1.0 / 12.0);
    CHECK(grid_l(0.1, 0) == 1.0);
    CHECK(grid_l(0.1, 2) == doctest::Approx(1.21));
    const double gamma_t = 0.1 / 12.0 / (5 * 1.21);
    CHECK(grid_u(c, 5, 2) == static_cast<std::uint64_t>(std::ceil(3 * std::exp(1.0) / 0.01 * std::log(1 / gamma_t))));
    CHECK(grid_u(c, 5, 3) >= grid_u(c, 5, 2));
}

TEST_CASE("w0 of an equal-time instance") {
    auto s = SamplerIndex::build(Instance(std::vector<double>(20, 3.0)), 1);
    const auto c = AdaptiveConfig::make(1, 0.1, 1.0 / 12.0);
    CHECK(estimate_w0(s, c) == 3.0);
    CHECK(s.draws_used() == c.K_init);
}

TEST_CASE("w0 finds a dominant job") {
    std::vector<double> w(100, 1.0);
    w[3] = 1e6;
    auto s = SamplerIndex::build(Instance(w), 2);
    CHECK(estimate_w0(s, AdaptiveConfig::make(2, 0.1, 1.0 / 12.0)) == 1e6);
}

TEST_CASE("horizon from samples") {
    const auto c = AdaptiveConfig::make(1, 0.1, 0.03);
    REQUIRE(c.d0 == 4);
    const IntervalScheme s(1.0, 0.1);
    SampleTally all_top(s);
    for (int i = 0; i < 40; ++i) {
        all_top.add(Sample{0, 1.0});
    }
    CHECK(determine_h(all_top, c) == 1);

    SampleTally spread(s);
    for (int i = 0; i < 10; ++i) {
        spread.add(Sample{0, s.upper(1)});
        spread.add(Sample{1, s.upper(5)});
    }
    spread.add(Sample{2, s.upper(7)}); // exactly d0 / 4 = 1 sample beyond interval 5
    CHECK(determine_h(spread, c) == 5);
    spread.add(Sample{3, s.upper(9)});
    CHECK(determine_h(spread, c) == 7);
}

TEST_CASE("a round with nothing to mark changes nothing") {
    auto s = SamplerIndex::build(Instance({1, 2, 3}), 1);
    const auto c = AdaptiveConfig::make(1, 0.1, 1.0 / 12.0);
    const auto hc = HorizonConstants::make(c, 3);
    RoundState st;
    st.h2[1] = IntervalProgress{true, 2, 7};
    const auto after = adaptive_round(s, st, IntervalScheme(3.0, 0.1), c, hc);
    CHECK(s.draws_used() == 0);
    CHECK(after.round == 0);
    CHECK(after.h2.at(1).estimate == 7);
}

TEST_CASE("rounds double, marking only grows and gs never decreases") {
    const Instance inst(std::vector<double>(300, 1.0));
    auto s = SamplerIndex::build(inst, 4);
    auto c = AdaptiveConfig::make(1, 0.2, 1.0 / 12.0, 1e-3);
    c.trace = true;
    const auto hc = HorizonConstants::make(c, 1);
    RoundState st;
    st.h2[1] = IntervalProgress{};
    int prev_gs = 1;
    bool was_marked = false;
    for (int j = 1; j <= 12 && !st.all_marked(); ++j) {
        const auto before = s.draws_used();
        st = adaptive_round(s, std::move(st), IntervalScheme(1.0, 0.2), c, hc);
        CHECK(s.draws_used() - before == (hc.K0 << j));
        CHECK(st.last_budget == (hc.K0 << j));
        CHECK(st.h2.at(1).gs >= prev_gs);
        CHECK((st.h2.at(1).marked || !was_marked));
        prev_gs = st.h2.at(1).gs;
        was_marked = st.h2.at(1).marked;
    }
    CHECK(st.all_marked());
    const double est = static_cast<double>(st.h2.at(1).estimate);
    CHECK(est >= 300.0 * std::pow(1.2, -8));
    CHECK(est <= 300.0 * std::pow(1.2, 10));
    CHECK_FALSE(st.trace.empty());
}

TEST_CASE("adaptive sketch of one job") {
    auto s = SamplerIndex::build(Instance({4.0}), 1);
    const auto r = sketch_adaptive(s, AdaptiveConfig::make(1, 0.2, 1.0 / 12.0, 1e-3));
    REQUIRE(r.sketch.size() == 1);
    CHECK(r.sketch[0].count == 1);
    CHECK(r.sketch[0].rounded_time == 4.0);
    CHECK(r.unmarked.empty());
}

TEST_CASE("adaptive draw accounting") {
    const Instance inst(std::vector<double>(500, 2.0));
    auto s = SamplerIndex::build(inst, 9);
    const auto c = AdaptiveConfig::make(2, 0.2, 1.0 / 12.0, 1e-2);
    const auto r = sketch_adaptive(s, c);
    CHECK(r.draws == s.draws_used());
    std::uint64_t rounds = 0;
    for (int j = 1; j <= r.rounds.round; ++j) {
        rounds += r.horizon.K0 << j;
    }
    CHECK(r.draws == c.K_init + r.horizon.K0 + rounds);
    CHECK(r.draws <= 2 * r.rounds.last_budget + c.K_init + r.horizon.K0);
}

TEST_CASE("draw limit") {
    const Instance inst(std::vector<double>(500, 2.0));
    auto tight = AdaptiveConfig::make(2, 0.2, 1.0 / 12.0);
    tight.max_draws = 1000;
    auto s = SamplerIndex::build(inst, 9);
    CHECK_THROWS_AS(sketch_adaptive(s, tight), ConfigError);

    auto c = AdaptiveConfig::make(2, 0.2, 1.0 / 12.0, 1e-2);
    const auto hc_draws = [&] {
        auto probe = SamplerIndex::build(inst, 9);
        return sketch_adaptive(probe, c).horizon.K0;
    }();
    c.max_draws = c.K_init + hc_draws + 1;
    auto s2 = SamplerIndex::build(inst, 9);
    const auto r = sketch_adaptive(s2, c);
    CHECK(r.rounds.round == 0);
    CHECK(r.draws <= c.max_draws);
}
