#include "subsketch/sketch_common.hpp"

#include "subsketch/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace subsketch {

void SampleTally::add(const Sample& s) {
    if (s.job_index > std::numeric_limits<JobId>::max()) {
        throw DomainError("job index exceeds the tally's 32-bit range");
    }
    const int k = scheme_.locate(s.processing_time);
    ++total_;
    ++X_[k];
    if (k == 0) {
        return;
    }
    const auto j = static_cast<JobId>(s.job_index);
    if (j >= x_.size()) {
        x_.resize(std::max<std::size_t>(j + 1, x_.size() * 2), 0);
        job_interval_.resize(x_.size(), 0);
    }
    ++x_[j];
    job_interval_[j] = k;
    log_[k].push_back(j);
}

void SampleTally::draw(SamplerIndex& sampler, std::uint64_t k) {
    for (std::uint64_t i = 0; i < k; ++i) {
        add(sampler.sample_one());
    }
}

std::uint64_t SampleTally::interval_count(int k) const {
    const auto it = X_.find(k);
    return it == X_.end() ? 0 : it->second;
}

std::uint64_t SampleTally::job_count(std::size_t j) const {
    return j < x_.size() ? x_[j] : 0;
}

std::uint64_t SampleTally::max_job_count(int k) const {
    std::uint64_t best = 0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
        if (job_interval_[j] == k) {
            best = std::max(best, x_[j]);
        }
    }
    return best;
}

std::uint64_t SampleTally::distinct_jobs(int k) const {
    std::uint64_t count = 0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
        count += job_interval_[j] == k && x_[j] > 0;
    }
    return count;
}

std::span<const SampleTally::JobId> SampleTally::log(int k) const {
    const auto it = log_.find(k);
    if (it == log_.end()) {
        return {};
    }
    return it->second;
}

std::vector<std::size_t> distinct_prefix_lengths(std::span<const SampleTally::JobId> samples,
                                                 std::size_t group_size, std::size_t groups) {
    if (group_size * groups > samples.size()) {
        throw InsufficientSamples("not enough samples for the requested groups");
    }
    std::vector<std::size_t> lengths(groups, group_size);
    std::unordered_set<SampleTally::JobId> seen;
    seen.reserve(group_size * 2);
    for (std::size_t g = 0; g < groups; ++g) {
        seen.clear();
        const auto group = samples.subspan(g * group_size, group_size);
        for (std::size_t i = 0; i < group.size(); ++i) {
            if (!seen.insert(group[i]).second) {
                lengths[g] = i;
                break;
            }
        }
    }
    return lengths;
}

std::size_t count_distinct_groups(std::span<const std::size_t> prefix_lengths, std::size_t prefix,
                                  std::size_t groups) {
    groups = std::min(groups, prefix_lengths.size());
    return static_cast<std::size_t>(
        std::count_if(prefix_lengths.begin(), prefix_lengths.begin() + static_cast<std::ptrdiff_t>(groups),
                      [prefix](std::size_t len) { return prefix <= len; }));
}

SketchInstance deterministic_sketch_delta(const Instance& instance, double delta) {
    if (instance.empty()) {
        return SketchInstance(IntervalScheme(1.0, delta), {});
    }
    const IntervalScheme scheme(instance.max_time(), delta);
    const auto n = static_cast<double>(instance.size());
    const auto h = static_cast<int>(
        std::max<std::int64_t>(0, ceil_tolerant(std::log(delta / n) / std::log1p(-delta))));
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(h) + 1, 0);
    for (double p : instance.times()) {
        const int k = scheme.locate(p);
        if (k >= 1 && k <= h) {
            ++counts[static_cast<std::size_t>(k)];
        }
    }
    std::vector<SketchEntry> entries;
    for (int k = 1; k <= h; ++k) {
        if (counts[static_cast<std::size_t>(k)] > 0) {
            entries.push_back(make_entry(scheme, k, counts[static_cast<std::size_t>(k)],
                                         EntrySource::deterministic));
        }
    }
    return SketchInstance(scheme, std::move(entries));
}

double collision_pr_upper(double n, double k, double delta) {
    return std::exp(-(k - 1.0) * k / (2.0 * n * (1.0 + delta)));
}

double collision_pr_lower(double n, double k, double delta) {
    const double a = 1.0 + delta;
    return std::exp(-a * k * k / (2.0 * n) - 2.0 * a * a * k * k * k / (3.0 * n * n));
}

} // namespace subsketch
