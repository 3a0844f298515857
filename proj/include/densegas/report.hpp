#pragma once

#include <cmath>
#include <string>

#include "json.hpp"

namespace densegas {

using ordered_json = nlohmann::ordered_json;

// Outcome of one named check. pass <=> |residual| <= tolerance.
struct VerificationReport {
    std::string check;
    std::string kind;
    std::string moment;
    std::string model;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    double lhs_error = 0.0;
    double rhs_error = 0.0;
    bool pass = false;
    double wall_time = 0.0;
    ordered_json quadrature = ordered_json::object();
    ordered_json details = ordered_json::object();

    void decide() { pass = std::abs(residual) <= tolerance; }
};

ordered_json to_json(const VerificationReport& r);
VerificationReport report_from_json(const ordered_json& j);

}  // namespace densegas
