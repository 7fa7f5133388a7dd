#include "subsketch/sketch_adaptive.hpp"

#include "subsketch/error.hpp"

#include <algorithm>
#include <cmath>

namespace subsketch {

AdaptiveConfig AdaptiveConfig::make(int m, double delta, double gamma0, double budget_scale) {
    if (m < 1) {
        throw ConfigError("adaptive sketch needs m >= 1");
    }
    if (!(delta > 0.0 && delta <= 1.0 / 3.0 + 1e-15)) {
        throw ConfigError("adaptive sketch needs delta in (0, 1/3]");
    }
    if (!(gamma0 > 0.0 && gamma0 <= 1.0 / 12.0 + 1e-15)) {
        throw ConfigError("gamma0 must lie in (0, 1/12]");
    }
    if (!(budget_scale > 0.0 && budget_scale <= 1.0)) {
        throw ConfigError("budget scale must lie in (0, 1]");
    }
    AdaptiveConfig c;
    c.m = m;
    c.delta = delta;
    c.gamma0 = gamma0;
    c.budget_scale = budget_scale;

    const double per_d = (m / delta) * std::log1p(-delta / m); // log of (1-delta/m)^{m/delta}
    auto holds = [&](std::uint64_t d) { return static_cast<double>(d) * per_d <= std::log(gamma0); };
    std::uint64_t d = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(std::log(gamma0) / per_d)));
    while (d > 1 && holds(d - 1)) {
        --d;
    }
    while (!holds(d)) {
        ++d;
    }
    c.d0 = d;
    c.K_init = static_cast<std::uint64_t>(ceil_tolerant(m / delta * static_cast<double>(d)));
    return c;
}

HorizonConstants HorizonConstants::make(const AdaptiveConfig& config, int h) {
    HorizonConstants hc;
    hc.h = h;
    hc.beta0 = std::pow(config.delta, 3) / (32.0 * config.m * h);
    hc.K0_exact = 8.0 / hc.beta0 * std::log(std::exp(1.0) / (hc.beta0 * config.gamma0));
    hc.K0 = static_cast<std::uint64_t>(
        std::max<std::int64_t>(1, ceil_tolerant(config.budget_scale * hc.K0_exact)));
    const auto K0 = static_cast<double>(hc.K0);
    hc.h1_threshold = 8.0 * hc.beta0 * K0;
    hc.interval_min = config.delta * K0 / (config.m * h);
    return hc;
}

double grid_l(double delta, int t) {
    return std::pow(1.0 + delta, t);
}

std::uint64_t grid_u(const AdaptiveConfig& config, int h, int t) {
    const double gamma_t = config.delta * config.gamma0 / (h * grid_l(config.delta, t));
    const double u = 3.0 * std::exp(1.0) / (config.delta * config.delta) * std::log(1.0 / gamma_t);
    return static_cast<std::uint64_t>(ceil_tolerant(u));
}

bool RoundState::all_marked() const {
    return std::all_of(h2.begin(), h2.end(), [](const auto& kv) { return kv.second.marked; });
}

double estimate_w0(SamplerIndex& sampler, const AdaptiveConfig& config, SampleTally* tally_out) {
    std::vector<double> times;
    times.reserve(config.K_init);
    double w0 = 0.0;
    for (std::uint64_t i = 0; i < config.K_init; ++i) {
        const auto s = sampler.sample_one();
        w0 = std::max(w0, s.processing_time);
        if (tally_out) {
            times.push_back(s.processing_time);
        }
    }
    if (tally_out) {
        *tally_out = SampleTally(IntervalScheme(w0, config.delta));
        for (double p : times) {
            tally_out->add(Sample{0, p});
        }
    }
    return w0;
}

double estimate_w0(SamplerIndex& sampler, const AdaptiveConfig& config) {
    return estimate_w0(sampler, config, nullptr);
}

int determine_h(const SampleTally& tally, const AdaptiveConfig& config) {
    const double limit = static_cast<double>(config.d0) / 4.0;
    const auto& X = tally.interval_counts();
    // Suffix sums over the occupied intervals, from the top down.
    std::uint64_t beyond = 0;
    int h = 1;
    for (auto it = X.rbegin(); it != X.rend(); ++it) {
        if (it->first < 1) {
            continue;
        }
        if (static_cast<double>(beyond + it->second) > limit) {
            h = std::max(h, it->first);
            break;
        }
        beyond += it->second;
    }
    return h;
}

RoundState adaptive_round(SamplerIndex& sampler, RoundState state, const IntervalScheme& scheme,
                          const AdaptiveConfig& config, const HorizonConstants& hc) {
    if (state.all_marked()) {
        return state;
    }
    const int j = state.round + 1;
    if (j >= 64 || hc.K0 > (~std::uint64_t{0} >> j)) {
        throw ConfigError("adaptive round budget overflows");
    }
    const std::uint64_t budget = hc.K0 << j;
    SampleTally tally(scheme);
    tally.draw(sampler, budget);
    state.round = j;
    state.last_budget = budget;
    state.draws += budget;

    const double inv_sqrt_e = 1.0 / std::sqrt(std::exp(1.0));
    for (auto& [k, progress] : state.h2) {
        if (progress.marked) {
            continue;
        }
        const auto X = tally.interval_count(k);
        int t = 0;
        while (true) {
            const auto need = static_cast<std::uint64_t>(ceil_tolerant(grid_l(config.delta, t + 1))) *
                              grid_u(config, hc.h, t + 1);
            if (X < need) {
                break;
            }
            ++t;
        }
        if (t < 1 || t < progress.gs) {
            continue;
        }
        const std::uint64_t u_t = grid_u(config, hc.h, t);
        const auto group_size = static_cast<std::size_t>(X / u_t);
        const auto lengths = distinct_prefix_lengths(tally.log(k), group_size, u_t);
        for (int i = progress.gs; i <= t && !progress.marked; ++i) {
            const double l_i = grid_l(config.delta, i);
            const std::uint64_t u_i = grid_u(config, hc.h, i);
            const auto prefix = static_cast<std::size_t>(ceil_tolerant(l_i));
            const auto g = count_distinct_groups(lengths, prefix, u_i);
            if (static_cast<double>(g) <= inv_sqrt_e * static_cast<double>(u_i)) {
                progress.marked = true;
                progress.estimate = static_cast<std::uint64_t>(std::llround(l_i * l_i));
            }
            if (config.trace) {
                state.trace.push_back(RoundTraceEvent{j, k, t, i, count_distinct_groups(lengths, prefix, u_t),
                                                      g, u_i, progress.marked});
            }
        }
        if (!progress.marked) {
            progress.gs = t;
        }
    }
    return state;
}

AdaptiveResult sketch_adaptive(SamplerIndex& sampler, const AdaptiveConfig& config) {
    AdaptiveResult out;
    const std::uint64_t start = sampler.draws_used();

    SampleTally init(IntervalScheme(1.0, config.delta));
    out.w0 = estimate_w0(sampler, config, &init);
    const IntervalScheme scheme(out.w0, config.delta);
    const int h = determine_h(init, config);
    out.horizon = HorizonConstants::make(config, h);

    if (config.max_draws != 0 && config.K_init + out.horizon.K0 > config.max_draws) {
        throw ConfigError("adaptive budget K0 = " + std::to_string(out.horizon.K0) +
                          " exceeds the draw limit; raise delta or lower the budget scale");
    }
    SampleTally tally(scheme);
    tally.draw(sampler, out.horizon.K0);
    out.classes = classify_intervals(tally, h, out.horizon.interval_min, out.horizon.h1_threshold);

    std::vector<SketchEntry> entries;
    for (int k : out.classes.h1) {
        entries.push_back(make_entry(scheme, k, count_h1(tally, k), EntrySource::exact_count));
    }
    for (int k : out.classes.h2) {
        out.rounds.h2.emplace(k, IntervalProgress{});
    }
    while (!out.rounds.all_marked() && out.rounds.round < config.max_rounds) {
        const int j = out.rounds.round + 1;
        if (j >= 64 || out.horizon.K0 > (~std::uint64_t{0} >> j)) {
            break;
        }
        const std::uint64_t next = out.horizon.K0 << j;
        if (config.max_draws != 0 && sampler.draws_used() - start + next > config.max_draws) {
            break;
        }
        out.rounds = adaptive_round(sampler, std::move(out.rounds), scheme, config, out.horizon);
    }
    for (const auto& [k, progress] : out.rounds.h2) {
        if (progress.marked) {
            entries.push_back(make_entry(scheme, k, progress.estimate, EntrySource::birthday));
        } else {
            out.unmarked.push_back(k);
        }
    }
    out.sketch = SketchInstance(scheme, std::move(entries));
    out.draws = sampler.draws_used() - start;
    return out;
}

} // namespace subsketch
