#include "ineq/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

namespace ineq {

bool report_passes(double lhs, double rhs, double tolerance, Sense sense) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
    switch (sense) {
        case Sense::GreaterEq: return lhs >= rhs - tolerance * scale;
        case Sense::LessEq: return lhs <= rhs + tolerance * scale;
        case Sense::CloseTo: return std::abs(lhs - rhs) <= tolerance * scale;
    }
    return false;
}

InequalityReport InequalityReport::make(std::string name, double lhs, double rhs,
                                        double constant_used, double tolerance, Sense sense) {
    InequalityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.constant_used = constant_used;
    r.ratio = rhs != 0.0 ? lhs / rhs : std::numeric_limits<double>::infinity();
    r.tolerance = tolerance;
    r.sense = sense;
    r.passed = report_passes(lhs, rhs, tolerance, sense);
    return r;
}

namespace {

using nlohmann::json;

const char* sense_name(Sense s) {
    switch (s) {
        case Sense::GreaterEq: return "ge";
        case Sense::LessEq: return "le";
        case Sense::CloseTo: return "close";
    }
    return "?";
}

json report_json(const InequalityReport& r) {
    json j;
    j["name"] = r.name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["constant_used"] = r.constant_used;
    j["ratio"] = std::isfinite(r.ratio) ? json(r.ratio) : json();
    j["passed"] = r.passed;
    j["tolerance"] = r.tolerance;
    j["sense"] = sense_name(r.sense);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

} // namespace

std::string report_to_json(const InequalityReport& r) { return report_json(r).dump(2); }

std::string reports_to_json(const RunManifest& manifest,
                            const std::vector<InequalityReport>& reports) {
    json j;
    json params = json::object();
    for (const auto& [k, v] : manifest.parameters) params[k] = v;
    j["manifest"] = {{"command", manifest.command},
                     {"parameters", params},
                     {"seed", manifest.seed},
                     {"version", manifest.version}};
    j["reports"] = json::array();
    std::size_t passed = 0;
    for (const auto& r : reports) {
        j["reports"].push_back(report_json(r));
        if (r.passed) ++passed;
    }
    j["summary"] = {{"total", reports.size()},
                    {"passed", passed},
                    {"failed", reports.size() - passed}};
    return j.dump(2);
}

std::string reports_to_csv(const std::vector<InequalityReport>& reports) {
    std::string out = "name,lhs,rhs,constant_used,ratio,passed,tolerance,sense\n";
    char buf[512];
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.17g,%d,%.17g,%s\n",
                      r.name.c_str(), r.lhs, r.rhs, r.constant_used, r.ratio,
                      r.passed ? 1 : 0, r.tolerance, sense_name(r.sense));
        out += buf;
    }
    return out;
}

} // namespace ineq
