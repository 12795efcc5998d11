#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace hm {

enum class Verdict { invariant, not_invariant, indeterminate };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::invariant: return "invariant";
        case Verdict::not_invariant: return "not_invariant";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

/// Exit-code trichotomy shared by the CLI.
inline int exit_code(Verdict v) {
    switch (v) {
        case Verdict::invariant: return 0;
        case Verdict::not_invariant: return 1;
        case Verdict::indeterminate: return 2;
    }
    return 2;
}

struct Thresholds {
    double accept = 1e-8;
    double reject = 1e-3;
};

/// Residuals below this are rounding noise; the cross-level agreement test
/// does not compare them.
inline constexpr double kResidualNoiseFloor = 1e-12;

/// Two truncation levels agree when their residuals are within a factor of
/// 10, or both sit at the rounding floor.
inline bool levels_agree(double r1, double r2) {
    const double a = std::max(r1, kResidualNoiseFloor);
    const double b = std::max(r2, kResidualNoiseFloor);
    return std::max(a, b) <= 10.0 * std::min(a, b);
}

/// Accept / reject / refine from residuals at two truncation levels.
inline Verdict classify_residuals(double r1, double r2, const Thresholds& t) {
    if (r1 < t.accept && r2 < t.accept && levels_agree(r1, r2)) return Verdict::invariant;
    if (r1 > t.reject && r2 > t.reject && levels_agree(r1, r2)) return Verdict::not_invariant;
    return Verdict::indeterminate;
}

struct InvarianceReport {
    std::string theta;
    std::string phi;
    std::vector<std::size_t> levels;
    std::vector<double> residuals;
    Verdict verdict = Verdict::indeterminate;
    std::string criterion;  // "projection" | "multiplicity" | "equivalence"
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    bool invariant() const { return verdict == Verdict::invariant; }
};

inline nlohmann::ordered_json to_json(const InvarianceReport& r) {
    nlohmann::ordered_json j;
    j["theta"] = r.theta;
    j["phi"] = r.phi;
    j["N_levels"] = r.levels;
    j["residuals"] = r.residuals;
    j["verdict"] = to_string(r.verdict);
    j["criterion"] = r.criterion;
    if (!r.details.empty()) j["details"] = r.details;
    return j;
}

}  // namespace hm
