#pragma once

// Ground-truth helpers for the tests. None of them calls into the library's
// own optimum or interval code.

#include "subsketch/instance_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracle {

// Minimal makespan by trying all m^n assignments.
inline double brute_force_opt(std::span<const double> jobs, int m) {
    const std::size_t n = jobs.size();
    if (n == 0) {
        return 0.0;
    }
    if (std::pow(static_cast<double>(m), static_cast<double>(n)) > 2e7) {
        throw std::runtime_error("brute force beyond reach");
    }
    std::vector<int> who(n, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::vector<double> loads(static_cast<std::size_t>(m), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            loads[static_cast<std::size_t>(who[j])] += jobs[j];
        }
        best = std::min(best, *std::max_element(loads.begin(), loads.end()));
        std::size_t pos = 0;
        while (pos < n && ++who[pos] == m) {
            who[pos++] = 0;
        }
        if (pos == n) {
            break;
        }
    }
    return best;
}

// Two machines, jobs grouped by distinct value: tries every split of every
// group. Exact for any job list with few distinct values.
inline double multiset_opt_two_machines(const std::map<double, std::uint64_t>& groups) {
    double total = 0.0;
    double combos = 1.0;
    for (const auto& [p, c] : groups) {
        total += p * static_cast<double>(c);
        combos *= static_cast<double>(c + 1);
    }
    if (combos > 2e8) {
        throw std::runtime_error("multiset enumeration beyond reach");
    }
    std::vector<std::pair<double, std::uint64_t>> g(groups.begin(), groups.end());
    std::vector<std::uint64_t> take(g.size(), 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        double first = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            first += g[i].first * static_cast<double>(take[i]);
        }
        best = std::min(best, std::max(first, total - first));
        std::size_t pos = 0;
        while (pos < g.size() && ++take[pos] > g[pos].second) {
            take[pos++] = 0;
        }
        if (pos == g.size()) {
            break;
        }
    }
    return best;
}

// OPT for a job list: brute force when small, otherwise the two-machine
// multiset enumeration.
inline double jobs_opt(std::span<const double> jobs, int m) {
    if (std::pow(static_cast<double>(m), static_cast<double>(jobs.size())) <= 2e7) {
        return brute_force_opt(jobs, m);
    }
    if (m != 2) {
        throw std::runtime_error("no oracle for this instance");
    }
    std::map<double, std::uint64_t> groups;
    for (double p : jobs) {
        ++groups[p];
    }
    return multiset_opt_two_machines(groups);
}

inline double sketch_opt(const subsketch::SketchInstance& sketch, int m) {
    if (sketch.total_jobs() <= 12) {
        const auto jobs = sketch.expand();
        return brute_force_opt(jobs, m);
    }
    if (m != 2) {
        throw std::runtime_error("no oracle for this sketch");
    }
    std::map<double, std::uint64_t> groups;
    for (const auto& e : sketch.entries()) {
        groups[e.rounded_time] += e.count;
    }
    return multiset_opt_two_machines(groups);
}

// Two machines, ceil(n/2) jobs of a and floor(n/2) of b with a = 100 b and
// n/2 even: pairing gives two equal halves.
inline double two_point_pairing_opt(std::uint64_t n, double a, double b) {
    return (static_cast<double>((n + 1) / 2) * a + static_cast<double>(n / 2) * b) / 2.0;
}

// Interval of p by walking the boundaries anchor (1-d)^k downwards.
inline int linear_scan_interval(double p, double anchor, double delta) {
    int k = 1;
    double lower = anchor * (1.0 - delta);
    while (p <= lower) {
        ++k;
        lower *= 1.0 - delta;
    }
    return k;
}

template <class It>
std::size_t set_size(It first, It last) {
    return std::set<typename std::iterator_traits<It>::value_type>(first, last).size();
}

} // namespace oracle
