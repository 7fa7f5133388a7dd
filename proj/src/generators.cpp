#include "subsketch/generators.hpp"

#include "subsketch/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace subsketch {

const std::vector<std::string>& generator_families() {
    static const std::vector<std::string> families{"uniform", "two_point", "log_uniform", "one_giant",
                                                   "geometric"};
    return families;
}

GeneratorSpec GeneratorSpec::parse(const std::string& text, std::uint64_t seed) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ':');) {
        parts.push_back(part);
    }
    if (parts.size() < 2 || parts.size() > 4) {
        throw ConfigError("generator spec must look like family:n[:a[:b]], got '" + text + "'");
    }
    GeneratorSpec spec;
    spec.family = parts[0];
    spec.seed = seed;
    const auto& families = generator_families();
    if (std::find(families.begin(), families.end(), spec.family) == families.end()) {
        throw ConfigError("unknown generator family '" + spec.family + "'");
    }
    try {
        const long long n = std::stoll(parts[1]);
        if (n < 1) {
            throw ConfigError("generator n must be positive");
        }
        spec.n = static_cast<std::uint64_t>(n);
        for (std::size_t i = 2; i < parts.size(); ++i) {
            spec.params.push_back(std::stod(parts[i]));
        }
    } catch (const std::logic_error&) {
        throw ConfigError("malformed number in generator spec '" + text + "'");
    }
    return spec;
}

Instance generate(const GeneratorSpec& spec) {
    const auto& families = generator_families();
    if (std::find(families.begin(), families.end(), spec.family) == families.end()) {
        throw ConfigError("unknown generator family '" + spec.family + "'");
    }
    if (spec.n < 1) {
        throw ConfigError("generator n must be positive");
    }
    auto param = [&](std::size_t i, double fallback) {
        const double v = i < spec.params.size() ? spec.params[i] : fallback;
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError("generator parameters must be positive");
        }
        return v;
    };

    std::mt19937_64 rng(spec.seed);
    std::vector<double> times;
    times.reserve(spec.n);
    const auto n = static_cast<double>(spec.n);

    if (spec.family == "uniform") {
        const double a = param(0, 1.0);
        const double b = param(1, 2.0);
        std::uniform_real_distribution<double> dist(std::min(a, b), std::max(a, b));
        for (std::uint64_t j = 0; j < spec.n; ++j) {
            times.push_back(std::max(dist(rng), std::min(a, b)));
        }
    } else if (spec.family == "two_point") {
        const double a = param(0, 100.0);
        const double b = param(1, 1.0);
        const std::uint64_t high = (spec.n + 1) / 2;
        for (std::uint64_t j = 0; j < spec.n; ++j) {
            times.push_back(j < high ? a : b);
        }
    } else if (spec.family == "log_uniform") {
        const double a = param(0, 1.0);
        const double b = param(1, 1000.0);
        std::uniform_real_distribution<double> dist(std::log(std::min(a, b)), std::log(std::max(a, b)));
        for (std::uint64_t j = 0; j < spec.n; ++j) {
            times.push_back(std::exp(dist(rng)));
        }
    } else if (spec.family == "one_giant") {
        const double a = param(0, 1.0);
        const double b = param(1, n * a);
        for (std::uint64_t j = 0; j + 1 < spec.n; ++j) {
            times.push_back(a);
        }
        times.push_back(b);
    } else {
        const double q = param(0, 0.5);
        const double b = param(1, 100.0);
        if (q >= 1.0) {
            throw ConfigError("geometric success probability must lie in (0, 1)");
        }
        std::geometric_distribution<int> dist(q);
        for (std::uint64_t j = 0; j < spec.n; ++j) {
            times.push_back(b * std::ldexp(1.0, -std::min(dist(rng), 1000)));
        }
    }
    return Instance(std::move(times));
}

} // namespace subsketch
