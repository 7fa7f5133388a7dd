#include "subsketch/report.hpp"

#include "subsketch/error.hpp"

#include <json.hpp>

#include <sstream>

namespace subsketch {

namespace {

using nlohmann::json;

json to_json(const ExperimentReport& r) {
    json j = {
        {"mode", r.mode},
        {"params",
         {{"m", r.m},
          {"epsilon", r.epsilon},
          {"gamma0", r.gamma0},
          {"seed", r.seed},
          {"sketch_delta", r.sketch_delta},
          {"budget_scale", r.budget_scale},
          {"solver", r.solver}}},
        {"n", r.n},
        {"estimate", r.estimate},
        {"sketch_entries", r.sketch_entries},
        {"draws_used", r.draws_used},
        {"wall_time_ms", r.wall_time_ms},
        {"fallback", r.fallback},
        {"dropped_intervals", r.dropped_intervals},
    };
    if (r.validation) {
        const auto& v = *r.validation;
        j["validation"] = {{"exact_opt", v.exact_opt},
                           {"ratio", v.ratio},
                           {"lower", v.lower},
                           {"upper", v.upper},
                           {"pass", v.pass}};
    }
    if (r.expanded_makespan) {
        j["expanded_makespan"] = *r.expanded_makespan;
    }
    return j;
}

} // namespace

std::string to_json_line(const ExperimentReport& r) {
    return to_json(r).dump();
}

ExperimentReport report_from_json(const std::string& line) {
    ExperimentReport r;
    try {
        const auto j = json::parse(line);
        r.mode = j.at("mode").get<std::string>();
        const auto& p = j.at("params");
        r.m = p.at("m").get<int>();
        r.epsilon = p.at("epsilon").get<double>();
        r.gamma0 = p.at("gamma0").get<double>();
        r.seed = p.at("seed").get<std::uint64_t>();
        r.sketch_delta = p.at("sketch_delta").get<double>();
        r.budget_scale = p.at("budget_scale").get<double>();
        r.solver = p.at("solver").get<std::string>();
        r.n = j.at("n").get<std::uint64_t>();
        r.estimate = j.at("estimate").get<double>();
        r.sketch_entries = j.at("sketch_entries").get<std::uint64_t>();
        r.draws_used = j.at("draws_used").get<std::uint64_t>();
        r.wall_time_ms = j.at("wall_time_ms").get<double>();
        r.fallback = j.at("fallback").get<bool>();
        r.dropped_intervals = j.at("dropped_intervals").get<std::uint64_t>();
        if (j.contains("validation")) {
            const auto& v = j.at("validation");
            r.validation = ValidationBlock{v.at("exact_opt").get<double>(), v.at("ratio").get<double>(),
                                           v.at("lower").get<double>(), v.at("upper").get<double>(),
                                           v.at("pass").get<bool>()};
        }
        if (j.contains("expanded_makespan")) {
            r.expanded_makespan = j.at("expanded_makespan").get<double>();
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what(), 0);
    }
    return r;
}

std::string to_jsonl(const std::vector<ExperimentReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        out += to_json_line(r);
        out += '\n';
    }
    return out;
}

std::vector<ExperimentReport> reports_from_jsonl(const std::string& text) {
    std::vector<ExperimentReport> out;
    std::istringstream in(text);
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            out.push_back(report_from_json(line));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return out;
}

} // namespace subsketch
