#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace subsketch {

//! Full job list. Ground truth: only the sampling oracle, the deterministic
//! two-pass sketch and post-hoc checks read it directly.
class Instance {
public:
    Instance() = default;
    explicit Instance(std::vector<double> processing_times);

    std::size_t size() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }
    double operator[](std::size_t j) const { return times_[j]; }
    std::span<const double> times() const noexcept { return times_; }

    double max_time() const noexcept { return max_; }
    double total_time() const noexcept { return total_; }

private:
    std::vector<double> times_;
    double max_ = 0.0;
    double total_ = 0.0;
};

//! Geometric partition of (0, anchor]: interval k = (anchor(1-d)^k, anchor(1-d)^(k-1)].
class IntervalScheme {
public:
    IntervalScheme() = default;
    IntervalScheme(double anchor, double delta);

    double anchor() const noexcept { return anchor_; }
    double delta() const noexcept { return delta_; }

    //! Unique k >= 1 with p in interval k. Throws DomainError for p <= 0 or p > anchor.
    int interval_index(double p) const;
    //! Same as interval_index, but returns 0 for p outside (0, anchor].
    int locate(double p) const noexcept;

    //! Top of interval k, i.e. the rounded time of its jobs.
    double upper(int k) const;
    double lower(int k) const { return upper(k + 1); }

private:
    int index_unchecked(double p) const noexcept;

    double anchor_ = 1.0;
    double delta_ = 0.5;
    double log_shrink_ = 0.0; // ln(1 - delta) < 0
};

enum class EntrySource { exact_count, birthday, deterministic };

struct SketchEntry {
    int interval = 0;
    std::uint64_t count = 0;
    double rounded_time = 0.0;
    EntrySource source = EntrySource::deterministic;
    //! Birthday search ran out of grid points; count is the h0^2 overestimate.
    bool saturated = false;
};

//! Compressed instance: per interval an estimated count and the rounded time.
//! Entries are kept in increasing interval order (strictly decreasing time).
class SketchInstance {
public:
    SketchInstance() = default;
    SketchInstance(IntervalScheme scheme, std::vector<SketchEntry> entries);

    const IntervalScheme& scheme() const noexcept { return scheme_; }
    const std::vector<SketchEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const SketchEntry& operator[](std::size_t i) const { return entries_[i]; }

    std::uint64_t total_jobs() const noexcept;
    double total_mass() const noexcept;
    //! Position of the entry for interval k, or -1.
    int find(int interval) const noexcept;

    //! Expands entries into a job list (one value per sketch job). For oracles.
    std::vector<double> expand() const;

private:
    IntervalScheme scheme_;
    std::vector<SketchEntry> entries_;
};

//! Builds a sketch entry whose rounded time is scheme.upper(k).
SketchEntry make_entry(const IntervalScheme& scheme, int k, std::uint64_t count,
                       EntrySource source, bool saturated = false);

struct SketchQuality {
    double alpha = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
};

struct QualityViolation {
    std::string reason;
    SketchQuality measured; // components may be infinite
};

//! Smallest (alpha, beta1, beta2) under which `sketch` is a sketch of `instance`:
//! per-entry count ratio, OPT ratio and discarded mass relative to OPT.
//! `instance_opt` and `sketch_opt` must come from an exact oracle.
std::variant<SketchQuality, QualityViolation>
validate_sketch_quality(const Instance& instance, const SketchInstance& sketch,
                        double instance_opt, double sketch_opt);

//! Counts of interval-j jobs per machine; counts[i][j] refers to sketch entry j.
struct SketchSchedule {
    int m = 0;
    std::vector<std::vector<std::uint64_t>> counts;

    std::uint64_t column_sum(std::size_t entry) const;
    double load(std::size_t machine, const SketchInstance& sketch) const;
    double makespan(const SketchInstance& sketch) const;
};

struct ConcreteSchedule {
    int m = 0;
    std::vector<int> assignment; // job -> machine in [0, m)
    double makespan = 0.0;

    static double recompute(std::span<const double> times, std::span<const int> assignment, int m);
};

//! Run parameters and the constants derived from them.
struct Params {
    static constexpr int c = 4;

    int m = 1;
    double epsilon = 0.5;
    double gamma0 = 1.0 / 12.0;

    double sketch_delta = 0.0; // epsilon / (12 c m)
    double meta_delta = 0.0;   // epsilon / 3
    std::size_t h_meta = 0;    // ceil(m / meta_delta)

    //! Throws ConfigError on out-of-range input.
    static Params make(int m, double epsilon, double gamma0);
};

//! ceil(x) that ignores a few ulps of representation error above an integer.
std::int64_t ceil_tolerant(double x);

//! Loads a job list from text (one decimal per line) or a JSON array;
//! format chosen by the first non-blank byte.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

} // namespace subsketch
