// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qverify/errors.hpp"

namespace qv::dsl {

enum class Kind {
    Integer,    // ival
    VarQ,
    VarA,
    VarZ,
    Omega,
    Index,      // summation index, `name`
    Add,        // kids[0] + kids[1]
    Sub,
    Mul,
    Div,
    Neg,        // -kids[0]
    Pow,        // kids[0] ^ kids[1]
    Binom2,     // C(kids[0], 2)
    Poch,       // poch(base; step; len) -- kids = {base, step[, len]}; len absent = inf
    Sum,        // sum(binders; body) -- kids[0] = body
    CT,         // ct(kids[0])
    Huff,       // huff(kids[0], ival)
    Scale,      // scale(kids[0], ival)
    SubstOmega, // subst(kids[0]; q -> omega^ival * q)
    SubstA,     // subst(kids[0]; a -> q^ival)
    Phi,        // phi(uppers; lowers; base; arg) -- kids = uppers, lowers, base, arg
    Theta,      // jtp_theta()
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Binder {
    std::string name;
    long lower = 0;
    friend bool operator==(const Binder&, const Binder&) = default;
};

struct Expr {
    Kind kind;
    long ival = 0;
    std::string name;
    std::vector<ExprPtr> kids;
    std::vector<Binder> binders;             // Sum only
    std::size_t phi_uppers = 0, phi_lowers = 0; // Phi: kids layout

    static ExprPtr make(Kind k) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        return e;
    }
    static ExprPtr integer(long v) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Integer;
        e->ival = v;
        return e;
    }
    static ExprPtr unary(Kind k, ExprPtr a) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->kids = {std::move(a)};
        return e;
    }
    static ExprPtr binary(Kind k, ExprPtr a, ExprPtr b) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->kids = {std::move(a), std::move(b)};
        return e;
    }
};

/// Structural equality (names, integers, shapes).
inline bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->ival != b->ival || a->name != b->name ||
        a->binders != b->binders || a->phi_uppers != b->phi_uppers ||
        a->phi_lowers != b->phi_lowers || a->kids.size() != b->kids.size())
        return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!equal(a->kids[i], b->kids[i])) return false;
    return true;
}

/// Coefficient-ring selector for an identity; LaurentZEis is LaurentZ with
/// Eisenstein base coefficients (omega appearing alongside z).
enum class RingKind { Rational, Eisenstein, PolyA, LaurentZ, LaurentZEis };

inline const char* ring_kind_name(RingKind k) {
    switch (k) {
        case RingKind::Rational: return "rational";
        case RingKind::Eisenstein: return "eisenstein";
        case RingKind::PolyA: return "poly-a";
        case RingKind::LaurentZ: return "laurent-z";
        case RingKind::LaurentZEis: return "laurent-z";
    }
    return "?";
}

struct IdentityEntry {
    std::string name;
    long order = 0; // 0 = unspecified; verification falls back to 200
    std::optional<RingKind> ring_hint;
    std::vector<std::string> tags;
    ExprPtr lhs, rhs;
    int line = 0;
};

struct SyntaxError : Error {
    SyntaxError(int line, int col, const std::string& msg)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) + ": " +
                msg),
          line(line),
          col(col) {}
    int line, col;
};

struct UndeclaredVariableError : Error {
    explicit UndeclaredVariableError(const std::string& msg) : Error(msg) {}
};

struct RingConflictError : Error {
    explicit RingConflictError(const std::string& msg) : Error(msg) {}
};

struct NonLowerableError : Error {
    explicit NonLowerableError(const std::string& msg) : Error(msg) {}
};

/// Parse a catalog text into entries. Grammar, informally:
///   identity "NAME" [order INT] [ring IDENT] [tag "..."]* {
///     lhs = EXPR ; rhs = EXPR ;
///   }
/// with `#` line comments. See the bundled catalog for the expression forms.
std::vector<IdentityEntry> parse_catalog(const std::string& text);

/// Parse a single expression (the CLI's expand/ct arguments).
ExprPtr parse_expression(const std::string& text);

/// Render an expression back to parseable text.
std::string to_text(const ExprPtr& e);
std::string to_text(const IdentityEntry& e);

} // namespace qv::dsl
