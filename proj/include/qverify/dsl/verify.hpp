// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qverify/dsl/ast.hpp"

namespace qv::dsl {

enum class Status { Pass, Fail, Error };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Error: return "ERROR";
    }
    return "?";
}

struct VerificationReport {
    std::string name;
    Status status = Status::Error;
    long order = 0;
    std::optional<long> first_diff_exp; // FAIL only
    std::string lhs_coeff, rhs_coeff;   // FAIL only; exact strings
    std::string error;                  // ERROR only
    double ms = 0.0;
};

/// Evaluate both sides of an entry at working order N + pad and compare
/// exactly through N (override or the entry default). Evaluation errors
/// become an ERROR report rather than an exception.
VerificationReport verify(const IdentityEntry& entry,
                          std::optional<long> order_override = std::nullopt, long pad = 8);

/// JSON array of reports; coefficients are exact strings, never floats.
std::string reports_to_json(const std::vector<VerificationReport>& reports);

} // namespace qv::dsl
