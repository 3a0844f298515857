#include "densegas/report.hpp"

namespace densegas {

ordered_json to_json(const VerificationReport& r) {
    ordered_json j;
    j["check"] = r.check;
    j["kind"] = r.kind;
    j["moment"] = r.moment;
    j["model"] = r.model;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["residual"] = r.residual;
    j["tolerance"] = r.tolerance;
    j["lhs_error"] = r.lhs_error;
    j["rhs_error"] = r.rhs_error;
    j["pass"] = r.pass;
    j["quadrature"] = r.quadrature;
    j["details"] = r.details;
    j["wall_time"] = r.wall_time;
    return j;
}

VerificationReport report_from_json(const ordered_json& j) {
    VerificationReport r;
    r.check = j.value("check", "");
    r.kind = j.value("kind", "");
    r.moment = j.value("moment", "");
    r.model = j.value("model", "");
    r.lhs = j.value("lhs", 0.0);
    r.rhs = j.value("rhs", 0.0);
    r.residual = j.value("residual", 0.0);
    r.tolerance = j.value("tolerance", 0.0);
    r.lhs_error = j.value("lhs_error", 0.0);
    r.rhs_error = j.value("rhs_error", 0.0);
    r.pass = j.value("pass", false);
    r.wall_time = j.value("wall_time", 0.0);
    if (j.contains("quadrature")) r.quadrature = j["quadrature"];
    if (j.contains("details")) r.details = j["details"];
    return r;
}

}  // namespace densegas
