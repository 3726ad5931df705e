#pragma once

#include <cstdio>
#include <ctime>
#include <sstream>
#include <string>

#include <json.hpp>

#include "verify.hpp"

namespace appellf2 {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

inline nlohmann::ordered_json to_json(const EntryReport& e) {
    nlohmann::ordered_json j;
    j["locator"] = e.locator;
    j["status"] = to_string(e.status);
    j["points_tested"] = e.points_tested;
    j["max_rel_error"] = e.max_rel_error;
    j["max_abs_error"] = e.max_abs_error;
    if (e.worst_point)
        j["worst_point"] = {{"x", e.worst_point->x}, {"y", e.worst_point->y}};
    else
        j["worst_point"] = nullptr;
    j["eval_errors"] = e.eval_errors;
    j["oracle_failures"] = e.oracle_failures;
    j["messages"] = e.messages;
    if (!e.points.empty()) {
        auto& pts = j["points"] = nlohmann::ordered_json::array();
        for (const auto& p : e.points)
            pts.push_back({{"x", p.point.x},
                           {"y", p.point.y},
                           {"closed", p.closed},
                           {"oracle", p.oracle},
                           {"abs_error", p.abs_error},
                           {"rel_error", p.rel_error}});
    }
    return j;
}

inline nlohmann::ordered_json to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    auto& summary = j["summary"];
    summary["entries"] = r.entries.size();
    for (Status s : all_statuses) summary[to_string(s)] = r.count(s);
    j["tolerances"] = {{"pass_tol", r.tolerances.pass_tol},
                       {"oracle_tol", r.tolerances.oracle_tol},
                       {"misprint_threshold", r.tolerances.misprint_threshold}};
    j["oracle"] = {{"method", r.oracle},
                   {"grid",
                    {{"nx", r.grid.nx},
                     {"ny", r.grid.ny},
                     {"x_range", {r.grid.x_min, r.grid.x_max}},
                     {"y_range", {r.grid.y_min, r.grid.y_max}},
                     {"s_max", r.grid.s_max}}}};
    if (r.timestamp) j["timestamp"] = *r.timestamp;
    auto& entries = j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : r.entries) entries.push_back(to_json(e));
    return j;
}

inline std::string to_json_text(const VerificationReport& r) { return to_json(r).dump(2) + "\n"; }

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string to_csv(const VerificationReport& r) {
    std::ostringstream os;
    os << "locator,status,max_rel_error,points_tested\n";
    for (const auto& e : r.entries)
        os << csv_quote(e.locator) << ',' << to_string(e.status) << ','
           << format_double(e.max_rel_error) << ',' << e.points_tested << '\n';
    return os.str();
}

inline std::string to_text(const VerificationReport& r) {
    std::ostringstream os;
    for (const auto& e : r.entries) {
        char head[96];
        std::snprintf(head, sizeof head, "%-18s rel=%-24s n=%-3zu ", to_string(e.status).c_str(),
                      format_double(e.max_rel_error).c_str(), e.points_tested);
        os << head << e.locator;
        if (e.eval_errors) os << " [eval errors: " << e.eval_errors << "]";
        if (e.oracle_failures) os << " [oracle failures: " << e.oracle_failures << "]";
        os << '\n';
    }
    os << r.entries.size() << " entries:";
    for (Status s : all_statuses) os << ' ' << to_string(s) << '=' << r.count(s);
    os << '\n';
    if (r.timestamp) os << "generated " << *r.timestamp << '\n';
    return os.str();
}

}  // namespace appellf2
