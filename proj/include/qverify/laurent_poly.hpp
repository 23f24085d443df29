// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "qverify/eisenstein.hpp"
#include "qverify/errors.hpp"
#include "qverify/rational.hpp"

namespace qv {

/// Sparse Laurent polynomial in one named indeterminate over a ring R.
/// The variable name is part of the type, so a- and z-polynomials cannot mix.
/// No zero coefficients are ever stored; exponents may be negative.
template <typename R, char Var>
class LaurentPoly {
public:
    using coeff_type = R;
    static constexpr char var = Var;

    LaurentPoly() = default;
    LaurentPoly(long n) { if (n != 0) terms_.emplace(0, R(n)); } // NOLINT
    LaurentPoly(R c) { if (!qv::is_zero(c)) terms_.emplace(0, std::move(c)); } // NOLINT

    static LaurentPoly monomial(R c, long e) {
        LaurentPoly p;
        if (!qv::is_zero(c)) p.terms_.emplace(e, std::move(c));
        return p;
    }
    /// The bare variable.
    static LaurentPoly gen() { return monomial(R(1), 1); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == 0 &&
               qv::is_one(terms_.begin()->second);
    }
    /// Units are single-term monomials with a unit coefficient.
    bool is_unit() const {
        return terms_.size() == 1 && qv::is_unit(terms_.begin()->second);
    }
    bool is_monomial() const { return terms_.size() <= 1; }

    long min_deg() const {
        if (terms_.empty()) throw Error("LaurentPoly: min_deg of zero polynomial");
        return terms_.begin()->first;
    }
    long max_deg() const {
        if (terms_.empty()) throw Error("LaurentPoly: max_deg of zero polynomial");
        return terms_.rbegin()->first;
    }
    std::size_t term_count() const { return terms_.size(); }

    R coeff(long e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? R(0) : it->second;
    }

    const std::map<long, R>& terms() const { return terms_; }

    LaurentPoly inv() const {
        if (!is_unit())
            throw NotAUnitError("LaurentPoly: inverse of a non-monomial or non-unit");
        const auto& [e, c] = *terms_.begin();
        return monomial(qv::inv(c), -e);
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    friend LaurentPoly operator/(const LaurentPoly& a, const LaurentPoly& b) {
        return a * b.inv();
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [e, c] : terms_) {
            std::string cs = to_coeff_string(c);
            bool neg = cs.size() > 1 && cs[0] == '-';
            if (!s.empty()) {
                s += neg ? "-" : "+";
                if (neg) cs = cs.substr(1);
            }
            bool composite = cs.find('+') != std::string::npos ||
                             cs.find('-', 1) != std::string::npos ||
                             cs.find('*') != std::string::npos;
            if (composite) cs = "(" + cs + ")";
            if (e == 0) {
                s += cs;
            } else {
                if (cs != "1") s += cs + "*";
                s += std::string(1, Var);
                if (e != 1) s += "^" + std::to_string(e);
            }
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
        return os << p.str();
    }

private:
    void add_term(long e, R c) {
        if (qv::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, std::move(c));
        if (!inserted) {
            it->second += c;
            if (qv::is_zero(it->second)) terms_.erase(it);
        }
    }

    std::map<long, R> terms_;
};

template <typename R, char V>
bool is_zero(const LaurentPoly<R, V>& x) { return x.is_zero(); }
template <typename R, char V>
bool is_one(const LaurentPoly<R, V>& x) { return x.is_one(); }
template <typename R, char V>
bool is_unit(const LaurentPoly<R, V>& x) { return x.is_unit(); }
template <typename R, char V>
LaurentPoly<R, V> inv(const LaurentPoly<R, V>& x) { return x.inv(); }
template <typename R, char V>
std::string to_coeff_string(const LaurentPoly<R, V>& x) { return x.str(); }

using PolyA = LaurentPoly<Rational, 'a'>;
using PolyZ = LaurentPoly<Rational, 'z'>;
using PolyZEis = LaurentPoly<Eisenstein, 'z'>;

} // namespace qv
