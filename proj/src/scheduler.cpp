#include "subsketch/scheduler.hpp"

#include "subsketch/error.hpp"
#include "subsketch/exact_oracle.hpp"
#include "subsketch/sketch_common.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

namespace subsketch {

namespace {

constexpr double kTol = 1e-9;

std::vector<std::size_t> decreasing_order(std::span<const double> jobs) {
    std::vector<std::size_t> order(jobs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return jobs[a] > jobs[b]; });
    return order;
}

std::size_t least_loaded(const std::vector<double>& loads) {
    return static_cast<std::size_t>(std::min_element(loads.begin(), loads.end()) - loads.begin());
}

SolveResult solve_lpt(std::span<const double> jobs, int m) {
    SolveResult out;
    out.used = SolverStrategy::lpt;
    out.ratio = 4.0 / 3.0 - 1.0 / (3.0 * m);
    out.assignment.assign(jobs.size(), 0);
    std::vector<double> loads(static_cast<std::size_t>(m), 0.0);
    for (std::size_t j : decreasing_order(jobs)) {
        const std::size_t i = least_loaded(loads);
        loads[i] += jobs[j];
        out.assignment[j] = static_cast<int>(i);
    }
    out.makespan = loads.empty() ? 0.0 : *std::max_element(loads.begin(), loads.end());
    return out;
}

class BranchAndBound {
public:
    BranchAndBound(std::span<const double> jobs, int m)
        : jobs_(jobs), m_(m), order_(decreasing_order(jobs)),
          loads_(static_cast<std::size_t>(m), 0.0), current_(jobs.size(), 0) {
        const double total = std::accumulate(jobs.begin(), jobs.end(), 0.0);
        lower_ = std::max(total / m, jobs.empty() ? 0.0 : jobs[order_.front()]);
        remaining_.assign(order_.size() + 1, 0.0);
        for (std::size_t d = order_.size(); d-- > 0;) {
            remaining_[d] = remaining_[d + 1] + jobs[order_[d]];
        }
    }

    SolveResult run() {
        auto seed = solve_lpt(jobs_, m_);
        best_ = seed.makespan;
        best_assignment_ = seed.assignment;
        if (best_ > lower_ * (1.0 + 1e-12)) {
            search(0, 0.0);
        }
        SolveResult out;
        out.used = SolverStrategy::exact_bb;
        out.ratio = 1.0;
        out.makespan = best_;
        out.assignment = best_assignment_;
        return out;
    }

private:
    void search(std::size_t depth, double current) {
        if (done_) {
            return;
        }
        if (depth == order_.size()) {
            if (current < best_) {
                best_ = current;
                best_assignment_ = current_;
                done_ = best_ <= lower_ * (1.0 + 1e-12);
            }
            return;
        }
        // Remaining work cannot all fit below best_ on the machines' free room.
        double room = 0.0;
        for (double l : loads_) {
            room += std::max(0.0, best_ - l);
        }
        if (room < remaining_[depth] * (1.0 - 1e-12)) {
            return;
        }
        // A load multiset explored once at this depth found everything below the best_ of
        // that time, which is at least the current best_.
        if (visited_.size() < kMemoCap) {
            std::string key(sizeof(std::size_t) + loads_.size() * sizeof(double), '\0');
            std::vector<double> sorted(loads_);
            std::sort(sorted.begin(), sorted.end());
            std::memcpy(key.data(), &depth, sizeof depth);
            std::memcpy(key.data() + sizeof depth, sorted.data(), sorted.size() * sizeof(double));
            if (!visited_.insert(std::move(key)).second) {
                return;
            }
        }
        const std::size_t j = order_[depth];
        const double p = jobs_[j];
        for (std::size_t i = 0; i < loads_.size(); ++i) {
            bool repeat = false;
            for (std::size_t q = 0; q < i; ++q) {
                repeat = repeat || loads_[q] == loads_[i];
            }
            if (repeat || loads_[i] + p >= best_) {
                continue;
            }
            loads_[i] += p;
            current_[j] = static_cast<int>(i);
            search(depth + 1, std::max(current, loads_[i]));
            loads_[i] -= p;
        }
    }

    std::span<const double> jobs_;
    int m_;
    std::vector<std::size_t> order_;
    std::vector<double> loads_;
    std::vector<int> current_;
    std::vector<double> remaining_;
    double lower_ = 0.0;
    double best_ = 0.0;
    std::vector<int> best_assignment_;
    bool done_ = false;
    static constexpr std::size_t kMemoCap = 4'000'000;
    std::unordered_set<std::string> visited_;
};

// Exact optimum for job lists with repeated sizes. State: remaining count per
// distinct size, machines left. Each machine takes a configuration holding the
// largest remaining job.
class GroupedDp {
public:
    GroupedDp(std::span<const double> jobs, int m) : jobs_(jobs), m_(m) {
        for (std::size_t j : decreasing_order(jobs)) {
            if (values_.empty() || jobs[j] != values_.back()) {
                values_.push_back(jobs[j]);
                counts_.push_back(0);
            }
            ++counts_.back();
        }
        radix_.assign(values_.size(), 1);
        states_ = 1;
        work_ = static_cast<double>(m);
        for (std::size_t g = values_.size(); g-- > 0;) {
            radix_[g] = states_;
            states_ *= static_cast<std::size_t>(counts_[g] + 1);
            const auto c = static_cast<double>(counts_[g]);
            work_ *= (c + 1) * (c + 2) / 2;
        }
    }

    bool tractable() const { return work_ <= 2e7 && static_cast<double>(states_) * m_ <= 4e6; }

    SolveResult run() {
        memo_.assign(states_ * static_cast<std::size_t>(m_), -1.0);
        std::vector<int> rem(counts_);
        const double opt = value(rem, m_);

        SolveResult out;
        out.used = SolverStrategy::exact_bb;
        out.makespan = opt;
        out.assignment.assign(jobs_.size(), 0);
        // Replay the optimal configurations, then hand out concrete jobs.
        std::vector<std::vector<int>> per_machine;
        for (int k = m_; k >= 1; --k) {
            std::vector<int> chosen(values_.size(), 0);
            if (k == 1) {
                chosen = rem;
            } else if (index(rem) != 0) {
                std::vector<int> c(values_.size(), 0);
                const bool ok = replay(rem, k, c, first_nonzero(rem), 0.0, value(rem, k), chosen);
                (void)ok;
            }
            for (std::size_t g = 0; g < rem.size(); ++g) {
                rem[g] -= chosen[g];
            }
            per_machine.push_back(std::move(chosen));
        }
        std::vector<std::vector<std::size_t>> by_value(values_.size());
        for (std::size_t j : decreasing_order(jobs_)) {
            const auto g = static_cast<std::size_t>(
                std::lower_bound(values_.begin(), values_.end(), jobs_[j], std::greater<>()) - values_.begin());
            by_value[g].push_back(j);
        }
        for (std::size_t i = 0; i < per_machine.size(); ++i) {
            for (std::size_t g = 0; g < values_.size(); ++g) {
                for (int c = 0; c < per_machine[i][g]; ++c) {
                    out.assignment[by_value[g].back()] = static_cast<int>(i);
                    by_value[g].pop_back();
                }
            }
        }
        return out;
    }

private:
    std::size_t index(const std::vector<int>& rem) const {
        std::size_t idx = 0;
        for (std::size_t g = 0; g < rem.size(); ++g) {
            idx += static_cast<std::size_t>(rem[g]) * radix_[g];
        }
        return idx;
    }

    static std::size_t first_nonzero(const std::vector<int>& rem) {
        std::size_t g = 0;
        while (g < rem.size() && rem[g] == 0) {
            ++g;
        }
        return g;
    }

    double load(const std::vector<int>& c) const {
        double total = 0.0;
        for (std::size_t g = 0; g < c.size(); ++g) {
            total += values_[g] * c[g];
        }
        return total;
    }

    double value(std::vector<int>& rem, int k) {
        const std::size_t idx = index(rem);
        if (idx == 0) {
            return 0.0;
        }
        if (k == 1) {
            return load(rem);
        }
        double& slot = memo_[idx * static_cast<std::size_t>(m_) + static_cast<std::size_t>(k - 1)];
        if (slot >= 0.0) {
            return slot;
        }
        const std::size_t first = first_nonzero(rem);
        const double floor = std::max(load(rem) / k, values_[first]);
        double best = std::numeric_limits<double>::infinity();
        std::vector<int> c(values_.size(), 0);
        c[first] = 1;
        search(rem, k, c, first, values_[first], floor, best);
        slot = best;
        return best;
    }

    // Enumerates configurations c <= rem that extend c at groups >= g.
    void search(std::vector<int>& rem, int k, std::vector<int>& c, std::size_t g, double partial,
                double floor, double& best) {
        if (partial >= best || best <= floor) {
            return;
        }
        if (g == rem.size()) {
            for (std::size_t q = 0; q < rem.size(); ++q) {
                rem[q] -= c[q];
            }
            const double rest = value(rem, k - 1);
            for (std::size_t q = 0; q < rem.size(); ++q) {
                rem[q] += c[q];
            }
            best = std::min(best, std::max(partial, rest));
            return;
        }
        const int base = c[g];
        for (int extra = rem[g] - base; extra >= 0; --extra) {
            c[g] = base + extra;
            search(rem, k, c, g + 1, partial + values_[g] * extra, floor, best);
        }
        c[g] = base;
    }

    bool replay(std::vector<int>& rem, int k, std::vector<int>& c, std::size_t g, double partial,
                double target, std::vector<int>& out) {
        if (g == rem.size()) {
            if (c[first_nonzero(rem)] == 0 || partial > target) {
                return false;
            }
            for (std::size_t q = 0; q < rem.size(); ++q) {
                rem[q] -= c[q];
            }
            const double rest = value(rem, k - 1);
            for (std::size_t q = 0; q < rem.size(); ++q) {
                rem[q] += c[q];
            }
            if (std::max(partial, rest) <= target) {
                out = c;
                return true;
            }
            return false;
        }
        for (int take = rem[g]; take >= 0; --take) {
            c[g] = take;
            if (replay(rem, k, c, g + 1, partial + values_[g] * take, target, out)) {
                return true;
            }
        }
        c[g] = 0;
        return false;
    }

    std::span<const double> jobs_;
    int m_;
    std::vector<double> values_;
    std::vector<int> counts_;
    std::vector<std::size_t> radix_;
    std::size_t states_ = 1;
    double work_ = 0.0;
    std::vector<double> memo_;
};

} // namespace

std::string to_string(SolverStrategy s) {
    switch (s) {
    case SolverStrategy::exact_bb:
        return "exact_bb";
    case SolverStrategy::lpt:
        return "lpt";
    case SolverStrategy::automatic:
        return "automatic";
    }
    return "unknown";
}

SolverStrategy parse_strategy(const std::string& s) {
    if (s == "exact_bb") {
        return SolverStrategy::exact_bb;
    }
    if (s == "lpt") {
        return SolverStrategy::lpt;
    }
    if (s == "automatic") {
        return SolverStrategy::automatic;
    }
    throw ConfigError("unknown solver strategy '" + s + "'");
}

SolveResult solve_largest(std::span<const double> jobs, int m, SolverStrategy strategy) {
    if (m < 1) {
        throw DomainError("solver needs m >= 1");
    }
    if (strategy == SolverStrategy::automatic) {
        strategy = jobs.size() <= kExactSolverCap ? SolverStrategy::exact_bb : SolverStrategy::lpt;
    }
    if (strategy == SolverStrategy::lpt) {
        return solve_lpt(jobs, m);
    }
    if (jobs.size() > kExactSolverCap) {
        throw StrategyError("exact_bb handles at most " + std::to_string(kExactSolverCap) +
                            " jobs; use lpt for " + std::to_string(jobs.size()));
    }
    if (GroupedDp dp(jobs, m); dp.tractable()) {
        return dp.run();
    }
    return BranchAndBound(jobs, m).run();
}

ListResult list_schedule(std::span<const double> jobs, int m, double deadline,
                         std::span<const double> initial_loads) {
    ListResult out;
    out.loads.assign(static_cast<std::size_t>(m), 0.0);
    for (std::size_t i = 0; i < initial_loads.size() && i < out.loads.size(); ++i) {
        out.loads[i] = initial_loads[i];
    }
    out.assignment.assign(jobs.size(), -1);
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const std::size_t i = least_loaded(out.loads);
        if (out.loads[i] + jobs[j] > deadline * (1.0 + kTol)) {
            out.ok = false;
            out.failed_job = j;
            return out;
        }
        out.loads[i] += jobs[j];
        out.assignment[j] = static_cast<int>(i);
    }
    return out;
}

namespace {

struct LargestSplit {
    std::vector<double> jobs;       // the largest sketch jobs, decreasing
    std::vector<std::size_t> entry; // sketch entry of each
};

LargestSplit take_largest(const SketchInstance& sketch, std::size_t h) {
    LargestSplit out;
    for (std::size_t e = 0; e < sketch.size() && out.jobs.size() < h; ++e) {
        const auto take = std::min<std::uint64_t>(sketch[e].count, h - out.jobs.size());
        for (std::uint64_t c = 0; c < take; ++c) {
            out.jobs.push_back(sketch[e].rounded_time);
            out.entry.push_back(e);
        }
    }
    return out;
}

MetaResult meta_core(const SketchInstance& sketch, int m, double epsilon, SolverStrategy strategy,
                     LargestSplit& split, SolveResult& solved) {
    if (m < 1) {
        throw ConfigError("m must be at least 1");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ConfigError("epsilon must lie in (0, 1)");
    }
    MetaResult r;
    r.delta = epsilon / 3.0;
    r.h = static_cast<std::size_t>(ceil_tolerant(m / r.delta));
    if (sketch.empty()) {
        return r;
    }
    split = take_largest(sketch, r.h);
    solved = solve_largest(split.jobs, m, strategy);
    r.largest_count = split.jobs.size();
    r.used = solved.used;
    r.solver_ratio = solved.ratio;
    r.T0 = solved.makespan;
    r.P = sketch.total_mass();
    r.T = (1.0 + r.delta) * std::max(r.T0, r.P / m);
    return r;
}

} // namespace

MetaResult meta_approx(const SketchInstance& sketch, int m, double epsilon, SolverStrategy strategy) {
    LargestSplit split;
    SolveResult solved;
    return meta_core(sketch, m, epsilon, strategy, split, solved);
}

MetaScheduleResult meta_sketch_schedule(const SketchInstance& sketch, int m, double epsilon,
                                        SolverStrategy strategy) {
    MetaScheduleResult out;
    LargestSplit split;
    SolveResult solved;
    out.meta = meta_core(sketch, m, epsilon, strategy, split, solved);

    const std::size_t t = sketch.size();
    out.schedule.m = m;
    out.schedule.counts.assign(static_cast<std::size_t>(m), std::vector<std::uint64_t>(t, 0));
    std::vector<double> loads(static_cast<std::size_t>(m), 0.0);
    std::vector<std::uint64_t> left(t, 0);
    for (std::size_t e = 0; e < t; ++e) {
        left[e] = sketch[e].count;
    }
    for (std::size_t q = 0; q < split.jobs.size(); ++q) {
        const auto i = static_cast<std::size_t>(solved.assignment[q]);
        ++out.schedule.counts[i][split.entry[q]];
        --left[split.entry[q]];
        loads[i] += split.jobs[q];
    }

    std::size_t k0 = 0;
    while (k0 < t && left[k0] == 0) {
        ++k0;
    }
    if (k0 == t) {
        return out;
    }
    const double T = out.meta.T;
    std::size_t i = 0;
    while (k0 < t) {
        if (i >= static_cast<std::size_t>(m)) {
            throw Error("fill loop ran out of machines before placing every job");
        }
        ++out.fill_iterations;
        const double p = sketch[k0].rounded_time;
        const double room = std::max(0.0, (T - loads[i]) / p);
        const auto fits = static_cast<std::uint64_t>(std::floor(room + kTol));
        const std::uint64_t placed = std::min(left[k0], fits);
        out.schedule.counts[i][k0] += placed;
        loads[i] += static_cast<double>(placed) * p;
        left[k0] -= placed;
        if (left[k0] == 0) {
            do {
                ++k0;
            } while (k0 < t && left[k0] == 0);
        } else {
            ++i;
        }
    }
    return out;
}

ConcreteSchedule expand_schedule(const Instance& instance, const SketchInstance& sketch,
                                 const SketchSchedule& schedule) {
    const auto m = static_cast<std::size_t>(schedule.m);
    ConcreteSchedule out;
    out.m = schedule.m;
    out.assignment.assign(instance.size(), 0);

    // Slot cursor per entry: current machine and slots left on it.
    std::vector<std::size_t> machine(sketch.size(), 0);
    std::vector<std::uint64_t> slots(sketch.size(), 0);
    std::vector<std::size_t> surplus_target(sketch.size(), 0);
    for (std::size_t e = 0; e < sketch.size(); ++e) {
        slots[e] = schedule.counts[0][e];
        for (std::size_t i = 1; i < m; ++i) {
            if (schedule.counts[i][e] > schedule.counts[surplus_target[e]][e]) {
                surplus_target[e] = i;
            }
        }
    }
    const auto& scheme = sketch.scheme();
    for (std::size_t j = 0; j < instance.size(); ++j) {
        const int e = sketch.find(scheme.locate(instance[j]));
        if (e < 0) {
            out.assignment[j] = 0;
            continue;
        }
        const auto ue = static_cast<std::size_t>(e);
        while (slots[ue] == 0 && machine[ue] + 1 < m) {
            ++machine[ue];
            slots[ue] = schedule.counts[machine[ue]][ue];
        }
        if (slots[ue] > 0) {
            --slots[ue];
            out.assignment[j] = static_cast<int>(machine[ue]);
        } else {
            out.assignment[j] = static_cast<int>(surplus_target[ue]);
        }
    }
    out.makespan = ConcreteSchedule::recompute(instance.times(), out.assignment, out.m);
    return out;
}

double expansion_bound(const SketchQuality& q, int m, double opt) {
    return ((1.0 + q.beta1) * (1.0 + q.alpha / (1.0 - q.alpha) * m) + q.beta2) * opt;
}

SketchInstance deterministic_sketch(const Instance& instance, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ConfigError("epsilon must lie in (0, 1)");
    }
    return deterministic_sketch_delta(instance, epsilon / 8.0);
}

std::variant<SketchQuality, QualityViolation>
measure_sketch_quality(const Instance& instance, const SketchInstance& sketch, int m) {
    const double instance_opt = exact_opt(instance.times(), m);
    const double sketch_opt = exact_opt(sketch, m);
    return validate_sketch_quality(instance, sketch, instance_opt, sketch_opt);
}

} // namespace subsketch
