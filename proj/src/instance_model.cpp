#include "subsketch/instance_model.hpp"

#include "subsketch/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace subsketch {

Instance::Instance(std::vector<double> processing_times) : times_(std::move(processing_times)) {
    for (std::size_t j = 0; j < times_.size(); ++j) {
        const double p = times_[j];
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw DomainError("processing time of job " + std::to_string(j) +
                              " must be positive and finite");
        }
        max_ = std::max(max_, p);
        total_ += p;
    }
}

IntervalScheme::IntervalScheme(double anchor, double delta) : anchor_(anchor), delta_(delta) {
    if (!(anchor > 0.0) || !std::isfinite(anchor)) {
        throw DomainError("interval anchor must be positive and finite");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw DomainError("interval delta must lie in (0, 1)");
    }
    log_shrink_ = std::log1p(-delta);
}

int IntervalScheme::index_unchecked(double p) const noexcept {
    // x = log_{1-delta}(p / anchor) >= 0; interval k holds x in [k-1, k).
    double x = std::log(p / anchor_) / log_shrink_;
    if (x < 0.0) {
        x = 0.0;
    }
    const double nearest = std::nearbyint(x);
    if (std::fabs(x - nearest) <= 1e-11 * std::max(1.0, x)) {
        x = nearest;
    }
    const double k = std::floor(x) + 1.0;
    if (k >= static_cast<double>(std::numeric_limits<int>::max())) {
        return std::numeric_limits<int>::max();
    }
    return static_cast<int>(k);
}

int IntervalScheme::interval_index(double p) const {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw DomainError("interval_index: processing time must be positive");
    }
    if (p > anchor_) {
        throw DomainError("interval_index: processing time exceeds the anchor");
    }
    return index_unchecked(p);
}

int IntervalScheme::locate(double p) const noexcept {
    if (!(p > 0.0) || p > anchor_ || !std::isfinite(p)) {
        return 0;
    }
    return index_unchecked(p);
}

double IntervalScheme::upper(int k) const {
    if (k < 1) {
        throw DomainError("interval numbering starts at 1");
    }
    return anchor_ * std::exp(static_cast<double>(k - 1) * log_shrink_);
}

SketchInstance::SketchInstance(IntervalScheme scheme, std::vector<SketchEntry> entries)
    : scheme_(scheme), entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const SketchEntry& a, const SketchEntry& b) { return a.interval < b.interval; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.count < 1) {
            throw DomainError("sketch entries need a count of at least 1");
        }
        if (e.interval < 1 || e.rounded_time != scheme_.upper(e.interval)) {
            throw DomainError("sketch entry time does not match its interval");
        }
        if (i > 0 && entries_[i - 1].interval == e.interval) {
            throw DomainError("duplicate sketch interval " + std::to_string(e.interval));
        }
    }
}

std::uint64_t SketchInstance::total_jobs() const noexcept {
    std::uint64_t total = 0;
    for (const auto& e : entries_) {
        total += e.count;
    }
    return total;
}

double SketchInstance::total_mass() const noexcept {
    double total = 0.0;
    for (const auto& e : entries_) {
        total += static_cast<double>(e.count) * e.rounded_time;
    }
    return total;
}

int SketchInstance::find(int interval) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), interval,
                               [](const SketchEntry& e, int k) { return e.interval < k; });
    if (it == entries_.end() || it->interval != interval) {
        return -1;
    }
    return static_cast<int>(it - entries_.begin());
}

std::vector<double> SketchInstance::expand() const {
    std::vector<double> jobs;
    jobs.reserve(static_cast<std::size_t>(total_jobs()));
    for (const auto& e : entries_) {
        jobs.insert(jobs.end(), static_cast<std::size_t>(e.count), e.rounded_time);
    }
    return jobs;
}

SketchEntry make_entry(const IntervalScheme& scheme, int k, std::uint64_t count,
                       EntrySource source, bool saturated) {
    return SketchEntry{k, count, scheme.upper(k), source, saturated};
}

std::variant<SketchQuality, QualityViolation>
validate_sketch_quality(const Instance& instance, const SketchInstance& sketch,
                        double instance_opt, double sketch_opt) {
    const auto& scheme = sketch.scheme();
    std::vector<std::uint64_t> true_counts(sketch.size(), 0);
    double discarded = 0.0;
    for (double p : instance.times()) {
        const int slot = sketch.find(scheme.locate(p));
        if (slot < 0) {
            discarded += p;
        } else {
            ++true_counts[static_cast<std::size_t>(slot)];
        }
    }

    SketchQuality q;
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sketch.size(); ++i) {
        const auto n = static_cast<double>(true_counts[i]);
        const auto est = static_cast<double>(sketch[i].count);
        q.alpha = std::max(q.alpha, n > 0 ? std::fabs(est - n) / n : inf);
    }
    q.beta1 = std::fabs(sketch_opt / instance_opt - 1.0);
    q.beta2 = discarded / instance_opt;

    if (q.alpha >= 1.0) {
        return QualityViolation{"per-interval count ratio alpha >= 1", q};
    }
    if (q.beta1 >= 1.0) {
        return QualityViolation{"OPT ratio beta1 >= 1", q};
    }
    if (q.beta2 >= 1.0) {
        return QualityViolation{"discarded mass beta2 >= 1", q};
    }
    return q;
}

std::uint64_t SketchSchedule::column_sum(std::size_t entry) const {
    std::uint64_t sum = 0;
    for (const auto& row : counts) {
        sum += row[entry];
    }
    return sum;
}

double SketchSchedule::load(std::size_t machine, const SketchInstance& sketch) const {
    double load = 0.0;
    for (std::size_t j = 0; j < sketch.size(); ++j) {
        load += static_cast<double>(counts[machine][j]) * sketch[j].rounded_time;
    }
    return load;
}

double SketchSchedule::makespan(const SketchInstance& sketch) const {
    double best = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        best = std::max(best, load(i, sketch));
    }
    return best;
}

double ConcreteSchedule::recompute(std::span<const double> times, std::span<const int> assignment,
                                   int m) {
    std::vector<double> loads(static_cast<std::size_t>(m), 0.0);
    for (std::size_t j = 0; j < times.size(); ++j) {
        loads.at(static_cast<std::size_t>(assignment[j])) += times[j];
    }
    return loads.empty() ? 0.0 : *std::max_element(loads.begin(), loads.end());
}

std::int64_t ceil_tolerant(double x) {
    const double nearest = std::nearbyint(x);
    if (std::fabs(x - nearest) <= 1e-9 * std::max(1.0, std::fabs(x))) {
        return static_cast<std::int64_t>(nearest);
    }
    return static_cast<std::int64_t>(std::ceil(x));
}

Params Params::make(int m, double epsilon, double gamma0) {
    if (m < 1) {
        throw ConfigError("m must be at least 1");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ConfigError("epsilon must lie in (0, 1)");
    }
    if (!(gamma0 > 0.0 && gamma0 <= 1.0 / 12.0 + 1e-15)) {
        throw ConfigError("gamma0 must lie in (0, 1/12]");
    }
    Params p;
    p.m = m;
    p.epsilon = epsilon;
    p.gamma0 = gamma0;
    p.sketch_delta = epsilon / (12.0 * c * m);
    p.meta_delta = epsilon / 3.0;
    p.h_meta = static_cast<std::size_t>(ceil_tolerant(m / p.meta_delta));
    if (c > 1.0 / (4.0 * p.sketch_delta)) {
        throw ConfigError("sketch delta violates c <= 1/(4 delta)");
    }
    return p;
}

} // namespace subsketch
