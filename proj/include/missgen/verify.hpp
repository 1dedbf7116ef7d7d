#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "missgen/modmath.hpp"

namespace missgen {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail; // offending prime / value on failure, summary on success
};

struct VerifyReport {
    u64 pmax = 0;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    std::size_t passed_count() const;
};

/// Runs every module invariant below pmax. Prime-indexed families sweep the
/// odd primes <= pmax; enumeration families scale with pmax and cap at
/// their full ranges (reached at pmax = 2000). inject_fault deliberately
/// corrupts the named quantity so the harness itself can be tested;
/// "cardinality_M" is the supported fault.
VerifyReport run_verification(u64 pmax, const std::string& inject_fault = "");

nlohmann::json verify_doc(const VerifyReport& rep);

} // namespace missgen
