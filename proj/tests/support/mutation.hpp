// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0
//
// Negative-control mutation: bump the step modulus of the first Pochhammer
// on an entry's right-hand side, (A; q^m) -> (A; q^{m+1}). Raising the step
// never creates a zero factor or a divergent product, so the mutated entry
// must FAIL (not ERROR) with a recorded first difference.

#pragma once

#include <memory>

#include "qverify/dsl/ast.hpp"

namespace qv::testing {

inline dsl::ExprPtr bump_first_poch_step(const dsl::ExprPtr& e, bool& done) {
    using namespace qv::dsl;
    if (done || !e) return e;
    if (e->kind == Kind::Poch) {
        const ExprPtr& step = e->kids[1];
        long m = 0;
        if (step->kind == Kind::VarQ) {
            m = 1;
        } else if (step->kind == Kind::Pow && step->kids[0]->kind == Kind::VarQ &&
                   step->kids[1]->kind == Kind::Integer) {
            m = step->kids[1]->ival;
        }
        if (m >= 1) {
            auto ne = std::make_shared<Expr>(*e);
            ne->kids[1] = Expr::binary(Kind::Pow, Expr::make(Kind::VarQ), Expr::integer(m + 1));
            done = true;
            return ne;
        }
    }
    auto ne = std::make_shared<Expr>(*e);
    for (auto& k : ne->kids) {
        k = bump_first_poch_step(k, done);
        if (done) break;
    }
    return ne;
}

/// Clone with the first rhs Pochhammer step bumped by one.
inline dsl::IdentityEntry mutate_entry(const dsl::IdentityEntry& entry) {
    dsl::IdentityEntry m = entry;
    m.name = entry.name + "-mutated";
    bool done = false;
    m.rhs = bump_first_poch_step(entry.rhs, done);
    if (!done) throw qv::Error("no mutable Pochhammer step on the rhs of " + entry.name);
    return m;
}

} // namespace qv::testing
