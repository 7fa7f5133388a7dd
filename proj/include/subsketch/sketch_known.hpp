#pragma once

#include "subsketch/instance_model.hpp"
#include "subsketch/sketch_common.hpp"
#include "subsketch/wrs_oracle.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace subsketch {

//! Constants of the known-n sketch. `budget_scale` multiplies the main sample
//! budget K; thresholds that depend on K use the scaled value.
struct KnownNConfig {
    std::uint64_t n = 1;
    int m = 1;
    double delta = 0.1;
    double gamma0 = 1.0 / 12.0;
    double budget_scale = 1.0;

    std::uint64_t K0 = 0;       // ceil(log2(1 / gamma0))
    double h = 0.0;             // (1/delta) ln(n^2 / delta)
    double tau = 0.0;           // delta h ln(16 h log_{1+delta}(3 sqrt n) / gamma0)
    double K_exact = 0.0;       // (36 m / delta^4) sqrt(n) tau
    std::uint64_t K = 0;        // ceil(budget_scale * K_exact)
    double f_n = 0.0;           // 36 ln(2n / gamma0)
    double interval_min = 0.0;  // delta K / (m h)
    double h0 = 0.0;            // 3 sqrt(n)
    std::size_t group_size = 0; // ceil(h0)

    //! Throws ConfigError on out-of-range input.
    static KnownNConfig make(std::uint64_t n, int m, double delta, double gamma0,
                             double budget_scale = 1.0);
};

struct Classification {
    std::vector<int> h1;
    std::vector<int> h2;
};

struct BirthdayResult {
    std::uint64_t estimate = 0;
    bool saturated = false;
    std::size_t groups = 0;
    double l = 0.0; // grid point that met the criterion
};

//! 2 n max(p) over K0 fresh draws.
double estimate_pmax_upper(SamplerIndex& sampler, const KnownNConfig& config);

//! H = {1 <= k <= h : X_k >= interval_min}; H1 are the members holding a job
//! with x_j >= h1_threshold.
Classification classify_intervals(const SampleTally& tally, double h, double interval_min,
                                  double h1_threshold);
Classification classify_intervals(const SampleTally& tally, const KnownNConfig& config);

//! Distinct jobs logged in interval k.
std::uint64_t count_h1(const SampleTally& tally, int k);

//! Splits `samples` into full groups of `group_size` (the tail is dropped) and
//! walks l = (1+delta)^i <= h0; returns round(l^2) at the first l where at most
//! u / sqrt(e) groups have an all-distinct prefix of ceil(l) samples. Without a
//! hit returns round(h0^2), flagged saturated. Throws InsufficientSamples when
//! no full group exists.
BirthdayResult birthday_estimate(std::span<const SampleTally::JobId> samples,
                                 std::size_t group_size, double delta, double h0);
BirthdayResult birthday_estimate(std::span<const SampleTally::JobId> samples,
                                 const KnownNConfig& config);

struct KnownNResult {
    SketchInstance sketch;
    bool deterministic_fallback = false;
    double pmax_upper = 0.0;
    Classification classes;
    std::vector<int> dropped; // H2 intervals without one full group
    std::uint64_t draws = 0;
};

//! Full known-n sketch. For n < 1/delta^2 the deterministic sketch at the same
//! delta is returned and no draws are made.
KnownNResult sketch_known_n(SamplerIndex& sampler, const KnownNConfig& config);

} // namespace subsketch
