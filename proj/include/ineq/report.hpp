#pragma once

#include <string>
#include <vector>

namespace ineq {

// Direction of the comparison a check performs.
//   GreaterEq: passes iff lhs >= rhs - tol*scale   (most inequalities)
//   LessEq:    passes iff lhs <= rhs + tol*scale   (counting/eigenvalue-sum bounds)
//   CloseTo:   passes iff |lhs - rhs| <= tol*scale (identities)
// scale = max(|lhs|, |rhs|, 1).
enum class Sense { GreaterEq, LessEq, CloseTo };

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant_used = 0.0;
    double ratio = 0.0; // lhs/rhs (sign conventions per check)
    bool passed = false;
    double tolerance = 0.0;
    Sense sense = Sense::GreaterEq;
    std::string note; // optional: flags such as non-rigorous constants

    static InequalityReport make(std::string name, double lhs, double rhs,
                                 double constant_used, double tolerance,
                                 Sense sense = Sense::GreaterEq);
};

// Evaluate the pass rule for the given sense; used by every checker.
bool report_passes(double lhs, double rhs, double tolerance, Sense sense);

// Provenance block for a CLI run.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    unsigned long long seed = 0;
    std::string version;
};

// Serialization (JSON object / CSV row) used by the cli module.
std::string report_to_json(const InequalityReport& r);
std::string reports_to_json(const RunManifest& manifest,
                            const std::vector<InequalityReport>& reports);
std::string reports_to_csv(const std::vector<InequalityReport>& reports);

} // namespace ineq
