// One PASS/FAIL line per acceptance criterion. Optima come from the
// independent oracles in oracles.hpp, not from the library.

#include "oracles.hpp"

#include "subsketch/suites.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct Criterion {
    int id;
    const char* name;
    const char* suite;
};

constexpr Criterion kCriteria[] = {
    {1, "meta-algorithm sandwich", "meta_sandwich"},
    {2, "sketch-to-schedule bound", "expansion_bound"},
    {3, "sampler distribution law", "sampler_chisq"},
    {4, "collision bounds", "collision_bounds"},
    {5, "birthday envelope", "birthday_envelope"},
    {6, "known-n end-to-end envelope", "known_n_opt"},
    {7, "adaptive end-to-end envelope", "adaptive_opt"},
    {8, "sublinearity", "sublinearity"},
    {9, "deterministic scheme", "deterministic"},
    {10, "numeric self-check of the K0 tail bound", "lemma4"},
};

} // namespace

int main(int argc, char** argv) {
    std::uint64_t seed = 20240601;
    if (const char* env = std::getenv("SUBSKETCH_SEED")) {
        seed = std::strtoull(env, nullptr, 10);
    }
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;

    const subsketch::OptOracles oracles{
        [](std::span<const double> jobs, int m) {
            return oracle::jobs_opt(jobs, m);
        },
        [](const subsketch::SketchInstance& s, int m) { return oracle::sketch_opt(s, m); }};

    int failures = 0;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.id != only) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        bool pass = false;
        std::string summary;
        try {
            const auto s = subsketch::run_validation_suite(c.suite, 0, seed, oracles);
            pass = s.pass();
            for (const auto& l : s.lines) {
                char buf[512];
                std::snprintf(buf, sizeof buf, "\n    %s %s: observed %.6g vs %.6g, ci [%.4g, %.4g] %s",
                              l.pass ? "ok  " : "MISS", l.label.c_str(), l.observed, l.threshold, l.ci_low,
                              l.ci_high, l.detail.c_str());
                summary += buf;
            }
        } catch (const std::exception& e) {
            summary = std::string("\n    error: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d (%s) [%.1fs]%s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    summary.c_str());
        std::fflush(stdout);
        failures += !pass;
    }
    return failures == 0 ? 0 : 1;
}
