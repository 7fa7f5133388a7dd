#include "subsketch/sketch_known.hpp"

#include "subsketch/error.hpp"

#include <algorithm>
#include <cmath>

namespace subsketch {

KnownNConfig KnownNConfig::make(std::uint64_t n, int m, double delta, double gamma0,
                                double budget_scale) {
    if (n < 1 || m < 1) {
        throw ConfigError("known-n sketch needs n >= 1 and m >= 1");
    }
    if (!(delta > 0.0 && delta < 0.5)) {
        throw ConfigError("known-n sketch needs delta in (0, 1/2)");
    }
    if (!(gamma0 > 0.0 && gamma0 <= 1.0 / 12.0 + 1e-15)) {
        throw ConfigError("gamma0 must lie in (0, 1/12]");
    }
    if (!(budget_scale > 0.0 && budget_scale <= 1.0)) {
        throw ConfigError("budget scale must lie in (0, 1]");
    }
    KnownNConfig c;
    c.n = n;
    c.m = m;
    c.delta = delta;
    c.gamma0 = gamma0;
    c.budget_scale = budget_scale;

    const auto nd = static_cast<double>(n);
    c.K0 = static_cast<std::uint64_t>(ceil_tolerant(std::log2(1.0 / gamma0)));
    c.h0 = 3.0 * std::sqrt(nd);
    c.group_size = static_cast<std::size_t>(ceil_tolerant(c.h0));
    c.h = std::log(nd * nd / delta) / delta;
    const double grid_points = std::log(c.h0) / std::log1p(delta);
    c.tau = delta * c.h * std::log(16.0 * c.h * grid_points / gamma0);
    c.K_exact = 36.0 * m / std::pow(delta, 4) * std::sqrt(nd) * c.tau;
    c.K = static_cast<std::uint64_t>(std::max<std::int64_t>(1, ceil_tolerant(budget_scale * c.K_exact)));
    c.f_n = 36.0 * std::log(2.0 * nd / gamma0);
    c.interval_min = delta * static_cast<double>(c.K) / (m * c.h);
    return c;
}

double estimate_pmax_upper(SamplerIndex& sampler, const KnownNConfig& config) {
    double best = 0.0;
    for (std::uint64_t i = 0; i < config.K0; ++i) {
        best = std::max(best, sampler.sample_one().processing_time);
    }
    return 2.0 * static_cast<double>(config.n) * best;
}

Classification classify_intervals(const SampleTally& tally, double h, double interval_min,
                                  double h1_threshold) {
    Classification out;
    for (const auto& [k, X] : tally.interval_counts()) {
        if (k < 1 || static_cast<double>(k) > h || static_cast<double>(X) < interval_min) {
            continue;
        }
        if (static_cast<double>(tally.max_job_count(k)) >= h1_threshold) {
            out.h1.push_back(k);
        } else {
            out.h2.push_back(k);
        }
    }
    return out;
}

Classification classify_intervals(const SampleTally& tally, const KnownNConfig& config) {
    return classify_intervals(tally, config.h, config.interval_min, config.f_n);
}

std::uint64_t count_h1(const SampleTally& tally, int k) {
    return tally.distinct_jobs(k);
}

BirthdayResult birthday_estimate(std::span<const SampleTally::JobId> samples,
                                 std::size_t group_size, double delta, double h0) {
    if (group_size == 0 || samples.size() < group_size) {
        throw InsufficientSamples("birthday estimate needs at least one full group");
    }
    BirthdayResult out;
    out.groups = samples.size() / group_size;
    const auto lengths = distinct_prefix_lengths(samples, group_size, out.groups);
    const double threshold = static_cast<double>(out.groups) / std::sqrt(std::exp(1.0));
    for (int i = 0;; ++i) {
        const double l = std::pow(1.0 + delta, i);
        if (l > h0 * (1.0 + 1e-12)) {
            break;
        }
        const auto prefix = static_cast<std::size_t>(ceil_tolerant(l));
        if (prefix > group_size) {
            break;
        }
        const auto g = count_distinct_groups(lengths, prefix, out.groups);
        if (static_cast<double>(g) <= threshold) {
            out.l = l;
            out.estimate = static_cast<std::uint64_t>(std::llround(l * l));
            return out;
        }
    }
    out.l = h0;
    out.estimate = static_cast<std::uint64_t>(std::llround(h0 * h0));
    out.saturated = true;
    return out;
}

BirthdayResult birthday_estimate(std::span<const SampleTally::JobId> samples,
                                 const KnownNConfig& config) {
    return birthday_estimate(samples, config.group_size, config.delta, config.h0);
}

KnownNResult sketch_known_n(SamplerIndex& sampler, const KnownNConfig& config) {
    KnownNResult out;
    const std::uint64_t start = sampler.draws_used();
    const auto n = static_cast<double>(config.n);
    if (n < 1.0 / (config.delta * config.delta)) {
        out.deterministic_fallback = true;
        out.sketch = deterministic_sketch_delta(sampler.instance(), config.delta);
        return out;
    }

    out.pmax_upper = estimate_pmax_upper(sampler, config);
    const IntervalScheme scheme(out.pmax_upper, config.delta);
    SampleTally tally(scheme);
    tally.draw(sampler, config.K);
    out.classes = classify_intervals(tally, config);

    std::vector<SketchEntry> entries;
    for (int k : out.classes.h1) {
        entries.push_back(make_entry(scheme, k, count_h1(tally, k), EntrySource::exact_count));
    }
    for (int k : out.classes.h2) {
        const auto samples = tally.log(k);
        if (samples.size() < config.group_size) {
            out.dropped.push_back(k);
            continue;
        }
        const auto est = birthday_estimate(samples, config);
        entries.push_back(make_entry(scheme, k, est.estimate, EntrySource::birthday, est.saturated));
    }
    out.sketch = SketchInstance(scheme, std::move(entries));
    out.draws = sampler.draws_used() - start;
    return out;
}

} // namespace subsketch
