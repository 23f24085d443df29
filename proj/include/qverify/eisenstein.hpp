// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>

#include "qverify/rational.hpp"

namespace qv {

/// Element of Q(omega), omega = e^{2 pi i / 3}, stored on the basis {1, omega}.
/// Every reduction applies omega^2 = -1 - omega eagerly, so equality is a
/// field-by-field comparison.
class Eisenstein {
public:
    Eisenstein() = default;
    Eisenstein(long n) : re_(n) {} // NOLINT: implicit integer embedding
    Eisenstein(Rational re) : re_(std::move(re)) {} // NOLINT: Q embeds in Q(omega)
    Eisenstein(Rational re, Rational om) : re_(std::move(re)), om_(std::move(om)) {}

    static Eisenstein omega() { return {Rational(0), Rational(1)}; }

    /// omega^k for any integer k (k mod 3 taken with nonnegative result):
    /// 1, omega, or -1-omega.
    static Eisenstein omega_pow(long k) {
        long r = k % 3;
        if (r < 0) r += 3;
        switch (r) {
            case 0: return Eisenstein(1);
            case 1: return omega();
            default: return {Rational(-1), Rational(-1)};
        }
    }

    const Rational& re() const { return re_; }
    const Rational& om() const { return om_; }

    bool is_zero() const { return re_.is_zero() && om_.is_zero(); }
    bool is_one() const { return re_.is_one() && om_.is_zero(); }
    bool is_unit() const { return !is_zero(); }
    bool is_rational() const { return om_.is_zero(); }

    /// Field norm N(a + b*omega) = a^2 - ab + b^2; multiplicative.
    Rational norm() const { return re_ * re_ - re_ * om_ + om_ * om_; }

    Eisenstein inv() const {
        if (is_zero()) throw NotAUnitError("Eisenstein: inverse of zero");
        // conj(a + b*omega) = (a - b) - b*omega; x * conj(x) = N(x).
        Rational n = norm();
        return {(re_ - om_) / n, -om_ / n};
    }

    Eisenstein& operator+=(const Eisenstein& o) { re_ += o.re_; om_ += o.om_; return *this; }
    Eisenstein& operator-=(const Eisenstein& o) { re_ -= o.re_; om_ -= o.om_; return *this; }
    Eisenstein& operator*=(const Eisenstein& o) {
        // (a + b w)(c + d w) = ac - bd + (ad + bc - bd) w    [w^2 = -1-w]
        Rational bd = om_ * o.om_;
        Rational ad_bc = re_ * o.om_ + om_ * o.re_;
        re_ = re_ * o.re_ - bd;
        om_ = ad_bc - bd;
        return *this;
    }
    Eisenstein& operator/=(const Eisenstein& o) { return *this *= o.inv(); }

    friend Eisenstein operator+(Eisenstein a, const Eisenstein& b) { return a += b; }
    friend Eisenstein operator-(Eisenstein a, const Eisenstein& b) { return a -= b; }
    friend Eisenstein operator*(Eisenstein a, const Eisenstein& b) { return a *= b; }
    friend Eisenstein operator/(Eisenstein a, const Eisenstein& b) { return a /= b; }
    Eisenstein operator-() const { return {-re_, -om_}; }

    friend bool operator==(const Eisenstein& a, const Eisenstein& b) {
        return a.re_ == b.re_ && a.om_ == b.om_;
    }
    friend bool operator!=(const Eisenstein& a, const Eisenstein& b) { return !(a == b); }

    std::string str() const {
        if (om_.is_zero()) return re_.str();
        std::string s;
        if (!re_.is_zero()) s = re_.str();
        std::string ompart;
        if (om_.is_one()) ompart = "w";
        else if (om_ == Rational(-1)) ompart = "-w";
        else ompart = om_.str() + "*w";
        if (s.empty()) return ompart;
        if (!ompart.empty() && ompart[0] != '-') return s + "+" + ompart;
        return s + ompart;
    }

    friend std::ostream& operator<<(std::ostream& os, const Eisenstein& x) {
        return os << x.str();
    }

private:
    Rational re_, om_;
};

inline bool is_zero(const Eisenstein& x) { return x.is_zero(); }
inline bool is_one(const Eisenstein& x) { return x.is_one(); }
inline bool is_unit(const Eisenstein& x) { return x.is_unit(); }
inline Eisenstein inv(const Eisenstein& x) { return x.inv(); }
inline std::string to_coeff_string(const Eisenstein& x) { return x.str(); }

} // namespace qv
