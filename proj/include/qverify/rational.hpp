// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <utility>

#include "qverify/errors.hpp"

namespace qv {

/// Arbitrary-precision rational, GMP-backed. Always kept canonical:
/// gcd(num, den) = 1, den > 0, zero is 0/1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {} // NOLINT: implicit by design, rings embed integers
    Rational(long num, long den) {
        if (den == 0) throw NotAUnitError("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    explicit Rational(const mpz_class& n) : v_(n) {}

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_unit() const { return !is_zero(); }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational inv() const {
        if (is_zero()) throw NotAUnitError("Rational: inverse of zero");
        mpq_class r;
        mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
        return Rational(std::move(r));
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { return *this *= o.inv(); }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { Rational r(*this); r.v_ = -r.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    double to_double() const { return v_.get_d(); }

    /// "5", "-5/6" -- exact decimal-string form used by reports.
    std::string str() const { return v_.get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.v_;
    }

private:
    mpq_class v_;
};

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_one(const Rational& x) { return x.is_one(); }
inline bool is_unit(const Rational& x) { return x.is_unit(); }
inline Rational inv(const Rational& x) { return x.inv(); }
inline std::string to_coeff_string(const Rational& x) { return x.str(); }

} // namespace qv
