#pragma once

#include "subsketch/instance_model.hpp"
#include "subsketch/sketch_common.hpp"
#include "subsketch/sketch_known.hpp"
#include "subsketch/wrs_oracle.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace subsketch {

//! Constants of the adaptive sketch that do not depend on the horizon h.
//! `budget_scale` multiplies K0 (and therefore every round budget).
struct AdaptiveConfig {
    int m = 1;
    double delta = 0.1;
    double gamma0 = 1.0 / 12.0;
    double budget_scale = 1.0;
    int max_rounds = 30;
    //! 0 = unlimited. K0 above it throws ConfigError; a round that would cross
    //! it is not started and its intervals stay unmarked.
    std::uint64_t max_draws = 0;
    bool trace = false;

    std::uint64_t d0 = 0;     // smallest d with (1 - delta/m)^{(m/delta) d} <= gamma0
    std::uint64_t K_init = 0; // (m/delta) d0, rounded up

    //! Throws ConfigError on out-of-range input.
    static AdaptiveConfig make(int m, double delta, double gamma0, double budget_scale = 1.0);
};

//! Constants fixed once h is known.
struct HorizonConstants {
    int h = 1;
    double beta0 = 0.0;        // delta^3 / (32 m h)
    double K0_exact = 0.0;     // (8 / beta0) ln(e / (beta0 gamma0))
    std::uint64_t K0 = 0;      // ceil(budget_scale * K0_exact)
    double h1_threshold = 0.0; // 8 beta0 K0
    double interval_min = 0.0; // delta K0 / (m h)

    static HorizonConstants make(const AdaptiveConfig& config, int h);
};

//! Birthday grid point t: l_t = (1+delta)^t, u_t = ceil(3e/delta^2 ln(1/gamma_t)),
//! gamma_t = delta gamma0 / (h l_t).
double grid_l(double delta, int t);
std::uint64_t grid_u(const AdaptiveConfig& config, int h, int t);

struct IntervalProgress {
    bool marked = false;
    int gs = 1;
    std::uint64_t estimate = 0;
};

//! One birthday test made during a round, for debugging.
struct RoundTraceEvent {
    int round = 0;
    int interval = 0;
    int t = 0;
    int i = 0;
    std::size_t g_over_ut = 0;
    std::size_t g_over_ui = 0;
    std::uint64_t u_i = 0;
    bool marked = false;
};

struct RoundState {
    int round = 0;               // index j of the last completed round
    std::uint64_t last_budget = 0;
    std::map<int, IntervalProgress> h2;
    std::uint64_t draws = 0;
    std::vector<RoundTraceEvent> trace;

    bool all_marked() const;
};

//! Max processing time over K_init fresh draws.
double estimate_w0(SamplerIndex& sampler, const AdaptiveConfig& config);
//! Same, also returning the tally of those draws under the w0 scheme.
double estimate_w0(SamplerIndex& sampler, const AdaptiveConfig& config, SampleTally* tally_out);

//! Smallest h >= 1 with sum_{k > h} X_k <= d0 / 4.
int determine_h(const SampleTally& tally, const AdaptiveConfig& config);

//! Draws 2^j K0 fresh samples and tries to mark every unmarked interval.
//! With nothing left to mark the state is returned untouched.
RoundState adaptive_round(SamplerIndex& sampler, RoundState state, const IntervalScheme& scheme,
                          const AdaptiveConfig& config, const HorizonConstants& hc);

struct AdaptiveResult {
    SketchInstance sketch;
    double w0 = 0.0;
    HorizonConstants horizon;
    Classification classes;
    RoundState rounds;
    std::vector<int> unmarked; // intervals still open when max_rounds was hit
    std::uint64_t draws = 0;
};

AdaptiveResult sketch_adaptive(SamplerIndex& sampler, const AdaptiveConfig& config);

} // namespace subsketch
