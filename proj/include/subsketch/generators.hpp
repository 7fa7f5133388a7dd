#pragma once

#include "subsketch/instance_model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace subsketch {

//! Synthetic instance families. Parameters a and b default per family:
//!   uniform      U[a, b]                               a = 1, b = 2
//!   two_point    ceil(n/2) jobs of a, the rest of b     a = 100, b = 1
//!   log_uniform  exp(U[ln a, ln b])                    a = 1, b = 1000
//!   one_giant    n - 1 jobs of a, one job of b          a = 1, b = n a
//!   geometric    b * 2^-G, G ~ Geometric(a)             a = 0.5, b = 100
struct GeneratorSpec {
    std::string family = "uniform";
    std::uint64_t n = 1;
    std::uint64_t seed = 0;
    std::vector<double> params; // a, b; missing values take the defaults

    //! Parses "family:n[:a[:b]]". Throws ConfigError.
    static GeneratorSpec parse(const std::string& text, std::uint64_t seed);
};

const std::vector<std::string>& generator_families();

//! Throws ConfigError on an unknown family, n = 0 or nonpositive parameters.
Instance generate(const GeneratorSpec& spec);

} // namespace subsketch
