#pragma once

#include "subsketch/instance_model.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace subsketch {

//! Ground-truth optimum providers. Default to exact_opt; tests substitute
//! independent implementations.
struct OptOracles {
    std::function<double(std::span<const double>, int)> jobs;
    std::function<double(const SketchInstance&, int)> sketch;

    static OptOracles library();
};

struct CriterionLine {
    std::string label;
    bool pass = false;
    double observed = 0.0;  //!< frequency, statistic or worst ratio
    double threshold = 0.0; //!< what `observed` is compared against
    double ci_low = 0.0;    //!< Wilson 99.7% band on a frequency, else equal to observed
    double ci_high = 0.0;
    std::string detail;
};

struct SuiteSummary {
    std::string suite;
    std::vector<CriterionLine> lines;
    bool pass() const;
};

const std::vector<std::string>& suite_names();

//! Runs one named suite. `trials` = 0 selects the suite's default count.
//! Trial t of a run uses seed + t. Throws ConfigError for an unknown name.
SuiteSummary run_validation_suite(const std::string& suite, std::uint64_t trials, std::uint64_t seed,
                                  const OptOracles& oracles = OptOracles::library());

//! Wilson score interval at z standard errors.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 3.0);

//! Least-squares slope of y on x and the coefficient of determination.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

} // namespace subsketch
