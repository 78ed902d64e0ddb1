#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rqmc/correspondence.hpp"

namespace rqmc {

inline std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

namespace detail {
inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    return out;
}
} // namespace detail

// Stable field order and %.12e floats so identical reports serialize to
// identical bytes.
inline std::string report_to_json(const CorrespondenceReport& report) {
    std::ostringstream out;
    out << "{\"system\": \"" << to_string(report.system) << "\", \"branch\": \""
        << to_string(report.branch) << "\", \"units\": \"" << detail::json_escape(report.units)
        << "\", \"entries\": [";
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        const auto& e = report.entries[i];
        if (i) out << ", ";
        out << "{\"n\": " << e.n << ", \"distance\": " << format_float(e.distance)
            << ", \"residual\": " << format_float(e.residual) << ", \"S\": "
            << format_float(e.action) << "}";
    }
    out << "], \"exponent\": " << format_float(report.exponent) << ", \"exponent_stderr\": "
        << format_float(report.exponent_stderr) << ", \"monotone\": "
        << (report.monotone ? "true" : "false") << ", \"window_policy\": \""
        << detail::json_escape(report.window_policy) << "\", \"version\": \"1\"}\n";
    return out.str();
}

inline CorrespondenceReport report_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    CorrespondenceReport report;
    report.system = parse_system(j.at("system").get<std::string>());
    report.branch = parse_branch(j.at("branch").get<std::string>());
    report.units = j.at("units").get<std::string>();
    for (const auto& e : j.at("entries")) {
        ConvergenceEntry entry;
        entry.n = e.at("n").get<int>();
        entry.distance = e.at("distance").get<double>();
        entry.residual = e.at("residual").get<double>();
        entry.action = e.at("S").get<double>();
        report.entries.push_back(entry);
    }
    report.exponent = j.at("exponent").get<double>();
    report.exponent_stderr = j.at("exponent_stderr").get<double>();
    report.monotone = j.at("monotone").get<bool>();
    report.window_policy = j.at("window_policy").get<std::string>();
    if (j.at("version").get<std::string>() != "1") {
        throw std::invalid_argument("unsupported report version");
    }
    return report;
}

} // namespace rqmc
