#include "subsketch/wrs_oracle.hpp"

#include "subsketch/error.hpp"

#include <algorithm>
#include <cmath>

namespace subsketch {

SamplerIndex SamplerIndex::build(const Instance& instance, std::uint64_t seed) {
    if (instance.empty()) {
        throw DomainError("cannot build a sampler over an empty instance");
    }
    SamplerIndex index;
    index.instance_ = instance;
    index.n_ = instance.size();
    while (index.leaves_ < index.n_) {
        index.leaves_ *= 2;
        ++index.height_;
    }
    index.weight_.assign(2 * index.leaves_, 0.0);
    std::copy(instance.times().begin(), instance.times().end(),
              index.weight_.begin() + static_cast<std::ptrdiff_t>(index.leaves_));
    for (std::size_t i = index.leaves_ - 1; i >= 1; --i) {
        index.weight_[i] = index.weight_[2 * i] + index.weight_[2 * i + 1];
    }
    index.rng_ = CounterRng(seed);
    return index;
}

Sample SamplerIndex::sample_one() {
    std::size_t node = 1;
    std::size_t visits = 1;
    while (node < leaves_) {
        const double left = weight_[2 * node];
        const double right = weight_[2 * node + 1];
        const double r = rng_.uniform01();
        // Ties and rounding residue at the bracket boundary go left.
        node = (right <= 0.0 || r * weight_[node] <= left) ? 2 * node : 2 * node + 1;
        ++visits;
    }
    ++draws_;
    last_visits_ = visits;
    const std::size_t j = node - leaves_;
    return Sample{j, instance_[j]};
}

std::vector<Sample> SamplerIndex::sample_many(std::size_t k) {
    if (k == 0) {
        throw DomainError("sample_many needs k >= 1");
    }
    std::vector<Sample> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.push_back(sample_one());
    }
    return out;
}

double SamplerIndex::audit() const {
    double worst = 0.0;
    for (std::size_t i = 1; i < leaves_; ++i) {
        const double sum = weight_[2 * i] + weight_[2 * i + 1];
        if (weight_[i] > 0.0) {
            worst = std::max(worst, std::fabs(weight_[i] - sum) / weight_[i]);
        } else if (sum != 0.0) {
            return 1.0;
        }
    }
    return worst;
}

} // namespace subsketch
