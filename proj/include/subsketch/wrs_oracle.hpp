#pragma once

#include "subsketch/instance_model.hpp"
#include "subsketch/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace subsketch {

struct Sample {
    std::size_t job_index = 0;
    double processing_time = 0.0;
};

//! Weighted sampling tree over the jobs of an instance. Leaves hold the
//! processing times, internal node i holds W(i) = W(2i) + W(2i+1). The tree is
//! an implicit heap padded with zero-weight leaves to a power of two.
//!
//! Every draw walks root to leaf; draws_used() counts them and is the cost
//! unit reported by the sketch algorithms.
class SamplerIndex {
public:
    //! Throws DomainError on an empty instance.
    static SamplerIndex build(const Instance& instance, std::uint64_t seed);

    Sample sample_one();
    //! k >= 1 draws with replacement; throws DomainError for k == 0.
    std::vector<Sample> sample_many(std::size_t k);

    std::uint64_t draws_used() const noexcept { return draws_; }
    //! Levels on a root-to-leaf path, including both ends.
    std::size_t height() const noexcept { return height_; }
    //! Nodes visited by the most recent draw.
    std::size_t last_visit_count() const noexcept { return last_visits_; }

    double root_weight() const noexcept { return weight_[1]; }
    std::size_t size() const noexcept { return n_; }
    const Instance& instance() const noexcept { return instance_; }

    //! Largest relative deviation |W(i) - W(2i) - W(2i+1)| / W(i) over internal nodes.
    double audit() const;

private:
    SamplerIndex() = default;

    Instance instance_;
    std::vector<double> weight_; // 1-based heap, leaves at [leaves_, 2 * leaves_)
    std::size_t n_ = 0;
    std::size_t leaves_ = 1;
    std::size_t height_ = 1;
    CounterRng rng_;
    std::uint64_t draws_ = 0;
    std::size_t last_visits_ = 0;
};

} // namespace subsketch
