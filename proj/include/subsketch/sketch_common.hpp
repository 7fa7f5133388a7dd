#pragma once

#include "subsketch/instance_model.hpp"
#include "subsketch/wrs_oracle.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace subsketch {

//! Per-interval and per-job counts of one batch of draws, plus the job
//! indices of each interval in draw order. Samples outside (0, anchor] are
//! counted under interval 0 and not logged.
class SampleTally {
public:
    using JobId = std::uint32_t;

    explicit SampleTally(IntervalScheme scheme) : scheme_(scheme) {}

    void add(const Sample& s);
    //! Draws k samples from `sampler` and adds them.
    void draw(SamplerIndex& sampler, std::uint64_t k);

    const IntervalScheme& scheme() const noexcept { return scheme_; }
    std::uint64_t total() const noexcept { return total_; }

    //! X_k; interval 0 collects out-of-range samples.
    std::uint64_t interval_count(int k) const;
    //! x_j.
    std::uint64_t job_count(std::size_t j) const;
    //! Largest x_j over the jobs logged in interval k.
    std::uint64_t max_job_count(int k) const;
    //! Number of distinct jobs logged in interval k.
    std::uint64_t distinct_jobs(int k) const;

    const std::map<int, std::uint64_t>& interval_counts() const noexcept { return X_; }
    std::span<const JobId> log(int k) const;

private:
    IntervalScheme scheme_;
    std::uint64_t total_ = 0;
    std::map<int, std::uint64_t> X_;
    std::vector<std::uint64_t> x_;     // indexed by job, grown on demand
    std::vector<int> job_interval_;   // 0 until the job is seen
    std::map<int, std::vector<JobId>> log_;
};

//! For `groups` consecutive groups of `group_size` samples, the length of the
//! longest all-distinct prefix of each group. A prefix of length L is all
//! distinct iff L <= result[g].
std::vector<std::size_t> distinct_prefix_lengths(std::span<const SampleTally::JobId> samples,
                                                 std::size_t group_size, std::size_t groups);

//! Number of groups whose first `prefix` samples are all distinct.
std::size_t count_distinct_groups(std::span<const std::size_t> prefix_lengths, std::size_t prefix,
                                  std::size_t groups);

//! Exact two-pass sketch: anchor p_max, intervals 1..h with h the smallest
//! integer such that n (1 - delta)^h <= delta. Empty instance gives an empty sketch.
SketchInstance deterministic_sketch_delta(const Instance& instance, double delta);

//! Upper bound on the probability that k weighted draws from n items whose
//! weights lie within a factor (1 + delta) are all distinct.
double collision_pr_upper(double n, double k, double delta);
//! Matching lower bound; valid for k < n / (2 (1 + delta)).
double collision_pr_lower(double n, double k, double delta);

} // namespace subsketch
