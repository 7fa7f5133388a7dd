#pragma once

#include <cstdint>

namespace subsketch {

//! Counter-based 64-bit generator: output i is a bijective mix of
//! (key + i * golden_gamma), i.e. SplitMix64. Two generators with the same key
//! produce the same stream; the stream can be positioned with seek().
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key = 0) noexcept : key_(key) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = key_ + (++counter_) * kGamma;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    //! Uniform double in [0, 1) with 53 bits of mantissa.
    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t counter() const noexcept { return counter_; }
    void seek(std::uint64_t counter) noexcept { counter_ = counter; }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace subsketch
