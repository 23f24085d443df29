// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qv {

/// Base class for all qverify errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Inversion of a non-invertible element (zero, multi-term polynomial,
/// series whose trailing coefficient is not a unit, ...).
struct NotAUnitError : Error {
    explicit NotAUnitError(const std::string& msg) : Error(msg) {}
};

/// Infinite product whose factors do not drift to higher q-exponents.
struct DivergentProductError : Error {
    explicit DivergentProductError(const std::string& msg) : Error(msg) {}
};

/// A q^0 factor equal to zero inside an infinite Pochhammer product.
struct ZeroFactorError : Error {
    explicit ZeroFactorError(const std::string& msg) : Error(msg) {}
};

/// Sum whose minimal term exponent failed to pass the truncation order
/// within the configured index cap.
struct NonTerminatingError : Error {
    explicit NonTerminatingError(const std::string& msg) : Error(msg) {}
};

/// A comparison or coefficient access was requested beyond the
/// guaranteed-exact order of a series.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& msg) : Error(msg) {}
};

} // namespace qv
