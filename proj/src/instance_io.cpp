#include "subsketch/error.hpp"
#include "subsketch/instance_model.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace subsketch {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset; ++i) {
        line += text[i] == '\n';
    }
    return line;
}

Instance parse_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON instance: ") + e.what(),
                         line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
    }
    if (!doc.is_array()) {
        throw ParseError("JSON instance must be an array of numbers", 1);
    }
    std::vector<double> times;
    times.reserve(doc.size());
    for (std::size_t j = 0; j < doc.size(); ++j) {
        const auto& v = doc[j];
        if (!v.is_number() || !(v.get<double>() > 0.0)) {
            throw ParseError("JSON element " + std::to_string(j) + " is not a positive number", 0);
        }
        times.push_back(v.get<double>());
    }
    return Instance(std::move(times));
}

Instance parse_lines(std::string_view text) {
    std::vector<double> times;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (line.empty()) {
            continue;
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
        if (ec != std::errc{} || ptr != line.data() + line.size()) {
            throw ParseError("expected one decimal number, got '" + std::string(line) + "'", line_no);
        }
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw ParseError("processing time must be positive and finite", line_no);
        }
        times.push_back(value);
    }
    return Instance(std::move(times));
}

} // namespace

Instance parse_instance(std::string_view text) {
    const std::string_view body = trim(text);
    if (!body.empty() && body.front() == '[') {
        return parse_json(text);
    }
    return parse_lines(text);
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open instance file " + path.string(), 0);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write instance file " + path.string());
    }
    out << std::setprecision(17);
    for (double p : instance.times()) {
        out << p << '\n';
    }
}

} // namespace subsketch
