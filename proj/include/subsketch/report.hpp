#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subsketch {

struct ValidationBlock {
    double exact_opt = 0.0;
    double ratio = 0.0; //!< T / exact_opt
    double lower = 0.0; //!< envelope on the ratio
    double upper = 0.0;
    bool pass = false;

    bool operator==(const ValidationBlock&) const = default;
};

//! One estimation run.
struct ExperimentReport {
    std::string mode; //!< known | adaptive | deterministic
    int m = 1;
    double epsilon = 0.0;
    double gamma0 = 0.0;
    std::uint64_t seed = 0;
    double sketch_delta = 0.0;
    double budget_scale = 1.0;
    std::string solver;
    std::uint64_t n = 0;
    double estimate = 0.0; //!< T
    std::uint64_t sketch_entries = 0;
    std::uint64_t draws_used = 0;
    double wall_time_ms = 0.0;
    bool fallback = false;
    std::uint64_t dropped_intervals = 0;
    std::optional<ValidationBlock> validation;
    std::optional<double> expanded_makespan;

    bool operator==(const ExperimentReport&) const = default;
};

//! Single-line JSON object; doubles are written so that they parse back exactly.
std::string to_json_line(const ExperimentReport& r);
//! Throws ParseError on malformed input.
ExperimentReport report_from_json(const std::string& line);

//! One JSON object per line.
std::string to_jsonl(const std::vector<ExperimentReport>& reports);
std::vector<ExperimentReport> reports_from_jsonl(const std::string& text);

} // namespace subsketch
