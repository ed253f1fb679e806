#pragma once

// The reproduction suite behind `liouform verify`: twelve self-contained
// checks covering the derivation pipeline, the classification sweeps, and
// the executed integrators. Thresholds are fixed in the implementation;
// tol_override replaces every upper-bound threshold (useful only for
// demonstrating failure behaviour).

#include <optional>
#include <string>
#include <vector>

namespace liouform::verify {

struct CheckResult {
    std::string id;
    std::string title;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    std::optional<double> tol_override;
    std::optional<std::string> only;  // run a single check by id
};

// Known check ids, in execution order.
std::vector<std::string> check_ids();

std::vector<CheckResult> run_checks(const VerifyOptions& opts = {});

}  // namespace liouform::verify
