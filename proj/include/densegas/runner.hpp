#pragma once

#include <iosfwd>
#include <string>

#include "densegas/config.hpp"
#include "densegas/report.hpp"

namespace densegas {

enum ExitStatus { kExitPass = 0, kExitFailed = 1, kExitConfig = 2, kExitNumerical = 3 };

struct RunOptions {
    int parallel = 1;               // concurrent checks; > 1 sorts the report by check name
    std::ostream* log = nullptr;    // one progress line per finished check
};

struct RunSummary {
    int total = 0;
    int passed = 0;
    int failed = 0;
    double wall_time = 0.0;
    int status = kExitPass;
    std::string failing_check;  // set on a numerical failure
    std::string message;
};

// Runs one descriptor. A descriptor covering several points, moments or seeds yields one
// aggregate report: residual = failing sub-checks, tolerance = allowed_failures.
VerificationReport run_check(const CheckDescriptor& c);

// Streams one JSON line per check, then {"summary": true, total, passed, failed, wall_time}.
RunSummary run(const RunConfig& config, const RunOptions& options, std::ostream& report);
// Same, writing config.output.
RunSummary run(const RunConfig& config, const RunOptions& options = {});

// Flattens a JSONL report to CSV (check, moment, model, lhs, rhs, residual, tolerance, pass).
// selector: all | passed | failed | kind:<kind>. Unknown selector -> ConfigError.
int export_csv(std::istream& report, std::ostream& csv, const std::string& selector = "all");

}  // namespace densegas
