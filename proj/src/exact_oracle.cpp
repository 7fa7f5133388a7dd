#include "subsketch/exact_oracle.hpp"

#include "subsketch/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace subsketch {

namespace {

constexpr double kEnumerationLimit = 1e8;

double enumerate_assignments(std::span<const double> jobs, int m) {
    std::vector<double> sorted(jobs.begin(), jobs.end());
    std::sort(sorted.rbegin(), sorted.rend());
    std::vector<double> loads(static_cast<std::size_t>(m), 0.0);
    double best = std::accumulate(sorted.begin(), sorted.end(), 0.0);

    std::function<void(std::size_t, int, double)> rec = [&](std::size_t j, int used, double current) {
        if (current >= best) {
            return;
        }
        if (j == sorted.size()) {
            best = current;
            return;
        }
        const int reach = std::min(m, used + 1);
        for (int i = 0; i < reach; ++i) {
            auto& load = loads[static_cast<std::size_t>(i)];
            load += sorted[j];
            rec(j + 1, std::max(used, i + 1), std::max(current, load));
            load -= sorted[j];
        }
    };
    rec(0, 0, 0.0);
    return best;
}

bool integral(std::span<const double> jobs, double& total) {
    total = 0.0;
    for (double p : jobs) {
        if (p != std::floor(p) || p > 1e9) {
            return false;
        }
        total += p;
    }
    return true;
}

double two_machine_bitset(std::span<const double> jobs, double total) {
    const auto S = static_cast<std::size_t>(total);
    std::vector<std::uint64_t> bits(S / 64 + 1, 0);
    bits[0] = 1;
    for (double p : jobs) {
        const auto shift = static_cast<std::size_t>(p);
        const std::size_t word = shift / 64;
        const std::size_t bit = shift % 64;
        for (std::size_t w = bits.size(); w-- > word;) {
            std::uint64_t v = bits[w - word] << bit;
            if (bit != 0 && w > word) {
                v |= bits[w - word - 1] >> (64 - bit);
            }
            bits[w] |= v;
        }
    }
    for (std::size_t L = S / 2 + 1; L-- > 0;) {
        if (bits[L / 64] >> (L % 64) & 1U) {
            return static_cast<double>(S - L);
        }
    }
    return total;
}

double load_set_dp(std::span<const double> jobs, int m) {
    std::vector<long long> sorted;
    for (double p : jobs) {
        sorted.push_back(static_cast<long long>(p));
    }
    std::sort(sorted.rbegin(), sorted.rend());
    // Upper bound from longest-processing-time order.
    std::vector<long long> lpt(static_cast<std::size_t>(m), 0);
    for (long long p : sorted) {
        *std::min_element(lpt.begin(), lpt.end()) += p;
    }
    const long long ub = *std::max_element(lpt.begin(), lpt.end());

    std::set<std::vector<long long>> states{std::vector<long long>(static_cast<std::size_t>(m), 0)};
    for (long long p : sorted) {
        std::set<std::vector<long long>> next;
        for (const auto& s : states) {
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (i > 0 && s[i] == s[i - 1]) {
                    continue;
                }
                if (s[i] + p > ub) {
                    continue;
                }
                auto t = s;
                t[i] += p;
                std::sort(t.begin(), t.end());
                next.insert(std::move(t));
            }
        }
        if (next.size() > 2'000'000) {
            throw OracleScaleError("load-set DP exceeded its state budget");
        }
        states = std::move(next);
    }
    long long best = ub;
    for (const auto& s : states) {
        best = std::min(best, s.back());
    }
    return static_cast<double>(best);
}

} // namespace

double exact_opt(std::span<const double> jobs, int m) {
    if (m < 1) {
        throw DomainError("exact_opt needs m >= 1");
    }
    if (jobs.empty()) {
        return 0.0;
    }
    const double total = std::accumulate(jobs.begin(), jobs.end(), 0.0);
    if (m == 1) {
        return total;
    }
    if (jobs.size() <= static_cast<std::size_t>(m)) {
        return *std::max_element(jobs.begin(), jobs.end());
    }
    if (static_cast<double>(jobs.size()) * std::log(static_cast<double>(m)) <= std::log(kEnumerationLimit)) {
        return enumerate_assignments(jobs, m);
    }
    double int_total = 0.0;
    if (integral(jobs, int_total)) {
        if (m == 2 && int_total <= 4e9) {
            return two_machine_bitset(jobs, int_total);
        }
        if (std::pow(int_total / m, m - 1) <= 5e7) {
            return load_set_dp(jobs, m);
        }
    }
    throw OracleScaleError("instance too large for the exact oracle (n = " +
                           std::to_string(jobs.size()) + ", m = " + std::to_string(m) + ")");
}

double exact_opt(const SketchInstance& sketch, int m) {
    if (m < 1) {
        throw DomainError("exact_opt needs m >= 1");
    }
    if (sketch.empty()) {
        return 0.0;
    }
    if (m != 2) {
        const auto jobs = sketch.expand();
        return exact_opt(jobs, m);
    }
    const auto& entries = sketch.entries();
    std::size_t free_slot = 0;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].count > entries[free_slot].count) {
            free_slot = i;
        }
    }
    double combos = 1.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i != free_slot) {
            combos *= static_cast<double>(entries[i].count) + 1.0;
        }
    }
    if (combos > kEnumerationLimit) {
        const auto jobs = sketch.expand();
        return exact_opt(jobs, m);
    }

    const double total = sketch.total_mass();
    const double p_free = entries[free_slot].rounded_time;
    const auto n_free = static_cast<double>(entries[free_slot].count);
    double best = total;
    std::function<void(std::size_t, double)> rec = [&](std::size_t i, double load) {
        if (i == entries.size()) {
            const double c = std::floor((total / 2.0 - load) / p_free);
            for (double cand : {c, c + 1.0}) {
                const double k = std::clamp(cand, 0.0, n_free);
                const double L = load + k * p_free;
                best = std::min(best, std::max(L, total - L));
            }
            return;
        }
        if (i == free_slot) {
            rec(i + 1, load);
            return;
        }
        for (std::uint64_t c = 0; c <= entries[i].count; ++c) {
            rec(i + 1, load + static_cast<double>(c) * entries[i].rounded_time);
        }
    };
    rec(0, 0.0);
    return best;
}

} // namespace subsketch
