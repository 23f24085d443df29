// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "qverify/constant_term.hpp"
#include "qverify/dsl/ast.hpp"
#include "qverify/hypergeom.hpp"
#include "qverify/qseries.hpp"

namespace qv::dsl {

// ---------------------------------------------------------------------------
// Ring inference. The lattice is
//   rational <= eisenstein <= laurent-z(eisenstein)
//   rational <= poly-a
//   rational <= laurent-z <= laurent-z(eisenstein)
// and a/z never mix. ct() consumes z; subst(..; a -> q^j) consumes a.

struct RingScan {
    bool omega = false;
    bool a = false;
    bool z_outside_ct = false;
    bool z_any = false;
};

inline void scan_ring(const ExprPtr& e, RingScan& f, bool under_ct) {
    switch (e->kind) {
        case Kind::Omega: f.omega = true; break;
        case Kind::VarA: f.a = true; break;
        case Kind::VarZ:
        case Kind::Theta:
            f.z_any = true;
            if (!under_ct) f.z_outside_ct = true;
            break;
        case Kind::SubstOmega:
            f.omega = true;
            scan_ring(e->kids[0], f, under_ct);
            break;
        case Kind::SubstA: {
            RingScan inner;
            scan_ring(e->kids[0], inner, under_ct);
            // The substituted subtree's a is consumed; z or omega in it would
            // be a conflict surfaced at evaluation.
            f.omega |= inner.omega;
            f.z_any |= inner.z_any;
            f.z_outside_ct |= inner.z_outside_ct;
            break;
        }
        case Kind::CT:
            scan_ring(e->kids[0], f, true);
            break;
        default:
            for (const auto& k : e->kids) scan_ring(k, f, under_ct);
            break;
    }
}

inline RingKind decide_ring(const RingScan& f) {
    if (f.a && f.z_any)
        throw RingConflictError("an identity may not mix the a and z variables");
    if (f.a && f.omega)
        throw RingConflictError("an identity may not mix omega and the a variable");
    if (f.a) return RingKind::PolyA;
    if (f.z_outside_ct) return f.omega ? RingKind::LaurentZEis : RingKind::LaurentZ;
    if (f.omega) return RingKind::Eisenstein;
    return RingKind::Rational;
}

inline RingKind ring_join(RingKind x, RingKind y) {
    if (x == y) return x;
    auto le = [](RingKind lo, RingKind hi) {
        if (lo == RingKind::Rational) return true;
        if (lo == RingKind::Eisenstein)
            return hi == RingKind::Eisenstein || hi == RingKind::LaurentZEis;
        if (lo == RingKind::LaurentZ)
            return hi == RingKind::LaurentZ || hi == RingKind::LaurentZEis;
        return lo == hi;
    };
    if (le(x, y)) return y;
    if (le(y, x)) return x;
    throw RingConflictError(std::string("incompatible rings: ") + ring_kind_name(x) + " vs " +
                            ring_kind_name(y));
}

inline RingKind infer_entry_ring(const IdentityEntry& e) {
    RingScan f;
    scan_ring(e.lhs, f, false);
    scan_ring(e.rhs, f, false);
    RingKind inferred = decide_ring(f);
    if (e.ring_hint) {
        // The hint may widen the ring but never contradict what the
        // expressions require.
        RingKind joined = ring_join(*e.ring_hint, inferred);
        if (joined != *e.ring_hint)
            throw RingConflictError("entry '" + e.name + "' declares ring " +
                                    ring_kind_name(*e.ring_hint) + " but its expressions need " +
                                    ring_kind_name(inferred));
        return joined;
    }
    return inferred;
}

// ---------------------------------------------------------------------------
// Integer polynomials of total degree <= 2 over the summation indices.

using IndexMap = std::map<std::string, std::size_t>;

struct Poly2 {
    long c0 = 0;
    std::vector<long> lin;
    std::map<std::pair<std::size_t, std::size_t>, long> quad;
    std::vector<std::pair<LinearForm, long>> binom;

    explicit Poly2(std::size_t arity = 0) : lin(arity, 0) {}

    bool is_constant() const {
        if (!quad.empty() || !binom.empty()) return false;
        for (long c : lin)
            if (c != 0) return false;
        return true;
    }
    bool is_linear() const { return quad.empty() && binom.empty(); }
    int degree() const {
        if (!quad.empty() || !binom.empty()) return 2;
        return is_constant() ? 0 : 1;
    }

    LinearForm linear_form() const {
        if (!is_linear())
            throw NonLowerableError("expected a linear expression in the summation indices");
        return {c0, lin};
    }

    QuadForm quad_form() const {
        QuadForm q;
        q.c0 = c0;
        q.lin = lin;
        for (const auto& [ij, c] : quad) q.quad.emplace_back(ij.first, ij.second, c);
        q.binom = binom;
        return q;
    }

    Poly2& operator+=(const Poly2& o) {
        c0 += o.c0;
        if (lin.size() < o.lin.size()) lin.resize(o.lin.size(), 0);
        for (std::size_t i = 0; i < o.lin.size(); ++i) lin[i] += o.lin[i];
        for (const auto& [ij, c] : o.quad) quad[ij] += c;
        for (const auto& b : o.binom) binom.push_back(b);
        prune();
        return *this;
    }
    Poly2 operator-() const {
        Poly2 r = *this;
        r.c0 = -r.c0;
        for (auto& c : r.lin) c = -c;
        for (auto& [ij, c] : r.quad) c = -c;
        for (auto& [L, c] : r.binom) c = -c;
        return r;
    }
    Poly2 operator*(const Poly2& o) const {
        if (degree() + o.degree() > 2)
            throw NonLowerableError("exponent expressions must be quadratic in the indices");
        std::size_t arity = std::max(lin.size(), o.lin.size());
        Poly2 r(arity);
        r.c0 = c0 * o.c0;
        for (std::size_t i = 0; i < arity; ++i)
            r.lin[i] = c0 * (i < o.lin.size() ? o.lin[i] : 0) +
                       o.c0 * (i < lin.size() ? lin[i] : 0);
        for (std::size_t i = 0; i < lin.size(); ++i) {
            if (lin[i] == 0) continue;
            for (std::size_t j = 0; j < o.lin.size(); ++j) {
                if (o.lin[j] == 0) continue;
                auto key = std::minmax(i, j);
                r.quad[{key.first, key.second}] += lin[i] * o.lin[j];
            }
        }
        // degree-2 parts scale only by the other side's constant
        for (const auto& [ij, c] : quad) r.quad[ij] += c * o.c0;
        for (const auto& [ij, c] : o.quad) r.quad[ij] += c * c0;
        for (const auto& [L, c] : binom) r.binom.emplace_back(L, c * o.c0);
        for (const auto& [L, c] : o.binom) r.binom.emplace_back(L, c * c0);
        r.prune();
        return r;
    }

private:
    void prune() {
        for (auto it = quad.begin(); it != quad.end();)
            it = it->second == 0 ? quad.erase(it) : std::next(it);
        std::erase_if(binom, [](const auto& b) { return b.second == 0; });
    }
};

inline Poly2 lower_int_poly(const ExprPtr& e, const IndexMap& idx, std::size_t arity) {
    switch (e->kind) {
        case Kind::Integer: {
            Poly2 p(arity);
            p.c0 = e->ival;
            return p;
        }
        case Kind::Index: {
            auto it = idx.find(e->name);
            if (it == idx.end())
                throw UndeclaredVariableError("undeclared index '" + e->name +
                                              "' in an exponent");
            Poly2 p(arity);
            p.lin[it->second] = 1;
            return p;
        }
        case Kind::Add: {
            Poly2 p = lower_int_poly(e->kids[0], idx, arity);
            p += lower_int_poly(e->kids[1], idx, arity);
            return p;
        }
        case Kind::Sub: {
            Poly2 p = lower_int_poly(e->kids[0], idx, arity);
            p += -lower_int_poly(e->kids[1], idx, arity);
            return p;
        }
        case Kind::Neg: return -lower_int_poly(e->kids[0], idx, arity);
        case Kind::Mul:
            return lower_int_poly(e->kids[0], idx, arity) *
                   lower_int_poly(e->kids[1], idx, arity);
        case Kind::Pow: {
            Poly2 base = lower_int_poly(e->kids[0], idx, arity);
            if (e->kids[1]->kind != Kind::Integer || e->kids[1]->ival < 0)
                throw NonLowerableError("exponent powers must be nonnegative integers");
            long p = e->kids[1]->ival;
            Poly2 r(arity);
            r.c0 = 1;
            for (long i = 0; i < p; ++i) r = r * base;
            return r;
        }
        case Kind::Binom2: {
            Poly2 arg = lower_int_poly(e->kids[0], idx, arity);
            if (!arg.is_linear())
                throw NonLowerableError("C(., 2) arguments must be linear in the indices");
            if (arg.is_constant()) {
                Poly2 p(arity);
                p.c0 = arg.c0 * (arg.c0 - 1) / 2;
                return p;
            }
            Poly2 p(arity);
            p.binom.emplace_back(arg.linear_form(), 1);
            return p;
        }
        case Kind::Omega:
            throw RingConflictError("omega is a coefficient, not an exponent");
        case Kind::VarQ:
        case Kind::VarA:
        case Kind::VarZ:
            throw NonLowerableError("series variables cannot appear in exponents");
        default:
            throw NonLowerableError("expression is not an integer exponent form");
    }
}

inline long lower_const_int(const ExprPtr& e) {
    Poly2 p = lower_int_poly(e, {}, 0);
    if (!p.is_constant()) throw NonLowerableError("expected a constant integer expression");
    return p.c0;
}

// ---------------------------------------------------------------------------
// Unit-monomial lowering: c * omega^w * var^d * q^{J(indices)}.

struct Monomial {
    Rational coeff = Rational(1);
    long omega_pow = 0;
    long var_pow = 0; // power of a or z, whichever the ring carries
    Poly2 q_pow;

    explicit Monomial(std::size_t arity = 0) : q_pow(arity) {}
};

inline Monomial lower_monomial(const ExprPtr& e, const IndexMap& idx, std::size_t arity) {
    Monomial m(arity);
    switch (e->kind) {
        case Kind::Integer: m.coeff = Rational(e->ival); return m;
        case Kind::Omega: m.omega_pow = 1; return m;
        case Kind::VarQ: m.q_pow.c0 = 1; return m;
        case Kind::VarA:
        case Kind::VarZ: m.var_pow = 1; return m;
        case Kind::Neg: {
            m = lower_monomial(e->kids[0], idx, arity);
            m.coeff = -m.coeff;
            return m;
        }
        case Kind::Mul: {
            m = lower_monomial(e->kids[0], idx, arity);
            Monomial r = lower_monomial(e->kids[1], idx, arity);
            m.coeff *= r.coeff;
            m.omega_pow += r.omega_pow;
            m.var_pow += r.var_pow;
            m.q_pow += r.q_pow;
            return m;
        }
        case Kind::Div: {
            m = lower_monomial(e->kids[0], idx, arity);
            Monomial r = lower_monomial(e->kids[1], idx, arity);
            m.coeff /= r.coeff;
            m.omega_pow -= r.omega_pow;
            m.var_pow -= r.var_pow;
            m.q_pow += -r.q_pow;
            return m;
        }
        case Kind::Pow: {
            Monomial base = lower_monomial(e->kids[0], idx, arity);
            if (e->kids[0]->kind == Kind::VarQ) {
                // q^{linear form}
                m.q_pow = lower_int_poly(e->kids[1], idx, arity);
                return m;
            }
            long p = lower_const_int(e->kids[1]);
            m.coeff = ring_pow(base.coeff, p);
            m.omega_pow = base.omega_pow * p;
            m.var_pow = base.var_pow * p;
            Poly2 jp(arity);
            for (long i = 0; i < std::abs(p); ++i) jp += base.q_pow;
            m.q_pow = p >= 0 ? jp : -jp;
            return m;
        }
        case Kind::Binom2: {
            m.coeff = Rational(lower_const_int(e));
            return m;
        }
        default:
            throw NonLowerableError("expected a unit-monomial expression (c omega^w var^d q^j)");
    }
}

// ---------------------------------------------------------------------------
// Ring element construction from lowered monomial parts.

template <typename R>
R ring_from_rational(const Rational& c) {
    if constexpr (std::is_same_v<R, Rational>) return c;
    else if constexpr (std::is_same_v<R, Eisenstein>) return Eisenstein(c);
    else if constexpr (std::is_same_v<R, PolyZEis>) return PolyZEis(Eisenstein(c));
    else return R(c);
}

template <typename R>
R ring_omega_pow(long k) {
    if constexpr (std::is_same_v<R, Eisenstein>) return Eisenstein::omega_pow(k);
    else if constexpr (std::is_same_v<R, PolyZEis>) return PolyZEis(Eisenstein::omega_pow(k));
    else {
        if (k % 3 == 0) return R(1);
        throw RingConflictError("omega requires the eisenstein coefficient ring");
    }
}

/// The q-free part of a monomial as a ring element.
template <typename R>
R monomial_ring_coeff(const Monomial& m) {
    R c = ring_from_rational<R>(m.coeff);
    if (m.omega_pow != 0) c = c * ring_omega_pow<R>(m.omega_pow);
    if (m.var_pow != 0) c = c * ring_var_monomial<R>(m.var_pow);
    return c;
}

// ---------------------------------------------------------------------------
// Evaluator.

template <typename R>
QSeries<R> evaluate(const ExprPtr& e, long W);

namespace detail {

inline void collect_factors(const ExprPtr& e, bool inverted,
                            std::vector<std::pair<ExprPtr, bool>>& out) {
    if (e->kind == Kind::Mul) {
        collect_factors(e->kids[0], inverted, out);
        collect_factors(e->kids[1], inverted, out);
    } else if (e->kind == Kind::Div) {
        collect_factors(e->kids[0], inverted, out);
        collect_factors(e->kids[1], !inverted, out);
    } else {
        out.emplace_back(e, inverted);
    }
}

inline bool has_index_vars(const ExprPtr& e) {
    if (e->kind == Kind::Index) return true;
    if (e->kind == Kind::Sum) return false; // inner sums bind their own indices
    for (const auto& k : e->kids)
        if (has_index_vars(k)) return true;
    return false;
}

/// Apply one Pochhammer factor to acc, multiplying or dividing binomially.
template <typename R>
QSeries<R> apply_poch(QSeries<R> acc, const ExprPtr& poch, bool inverted, long W) {
    Monomial base = lower_monomial(poch->kids[0], {}, 0);
    Monomial step = lower_monomial(poch->kids[1], {}, 0);
    if (!step.coeff.is_one() || step.omega_pow != 0 || step.var_pow != 0 ||
        !step.q_pow.is_constant())
        throw NonLowerableError("Pochhammer step must be a constant power of q");
    long m = step.q_pow.c0;
    long j = base.q_pow.c0;
    if (!base.q_pow.is_constant())
        throw NonLowerableError("Pochhammer base exponent must be constant here");
    R C = monomial_ring_coeff<R>(base);
    if (is_zero(C)) return acc; // (0;q)_n = 1
    std::optional<long> len;
    if (poch->kids.size() > 2) {
        long n = lower_const_int(poch->kids[2]);
        len = n;
    }
    if (len.has_value()) {
        for (long k = 0; k < *len; ++k) {
            long t = j + k * m;
            if (t == 0 && is_one(C)) {
                if (inverted)
                    throw NotAUnitError("division by an exactly-zero Pochhammer");
                return QSeries<R>::zero();
            }
            acc = inverted ? div_one_minus(acc, C, t, W) : mul_one_minus(acc, C, t);
        }
        return acc;
    }
    qv::detail::check_infinite_poch(m);
    long neg = qv::detail::infinite_poch_neg_support(j, m);
    acc = acc.truncated(W - neg);
    for (long k = 0;; ++k) {
        long t = j + k * m;
        if (t > W - 1 - neg) break;
        if (t == 0 && is_one(C))
            throw ZeroFactorError("infinite Pochhammer contains the zero factor (1 - q^0)");
        acc = inverted ? div_one_minus(acc, C, t, W - neg) : mul_one_minus(acc, C, t);
    }
    return acc;
}

template <typename R>
QSeries<R> eval_product(const ExprPtr& node, long W) {
    std::vector<std::pair<ExprPtr, bool>> factors;
    collect_factors(node, false, factors);
    QSeries<R> acc = QSeries<R>::one();
    for (const auto& [f, inverted] : factors) {
        // poch(...)^p composes binomially as well.
        if (f->kind == Kind::Pow && f->kids[0]->kind == Kind::Poch &&
            f->kids[1]->kind == Kind::Integer) {
            long p = f->kids[1]->ival;
            bool inv_here = (p < 0) != inverted;
            for (long i = 0; i < std::abs(p); ++i)
                acc = apply_poch(std::move(acc), f->kids[0], inv_here, W);
            continue;
        }
        if (f->kind == Kind::Poch) {
            acc = apply_poch(std::move(acc), f, inverted, W);
            continue;
        }
        // Unit monomials multiply exactly; anything that fails to lower as
        // one falls back to general evaluation (which raises the precise
        // error for genuinely invalid factors).
        bool handled = false;
        try {
            Monomial mono = lower_monomial(f, {}, 0);
            if (mono.q_pow.is_constant()) {
                R c = monomial_ring_coeff<R>(mono);
                QSeries<R> g = QSeries<R>::monomial(std::move(c), mono.q_pow.c0);
                acc = inverted ? acc * qv::inv(g, W) : acc * g;
                handled = true;
            }
        } catch (const Error&) {
            handled = false;
        }
        if (handled) continue;
        QSeries<R> g = evaluate<R>(f, W);
        acc = inverted ? div(acc, g, W) : acc * g;
    }
    return acc;
}

/// Lower a sum node to a SumSpec plus hoisted index-free factors, then run
/// the summation engine.
template <typename R>
QSeries<R> eval_sum(const ExprPtr& node, long W) {
    const auto& binders = node->binders;
    std::size_t arity = binders.size();
    IndexMap imap;
    for (std::size_t i = 0; i < arity; ++i) {
        if (imap.count(binders[i].name))
            throw NonLowerableError("duplicate summation index '" + binders[i].name + "'");
        imap[binders[i].name] = i;
    }
    SumSpec<R> spec;
    spec.arity = arity;
    spec.lower.resize(arity);
    for (std::size_t i = 0; i < arity; ++i) spec.lower[i] = binders[i].lower;
    spec.sign = LinearForm::constant(0);
    spec.var_exp = LinearForm{0, std::vector<long>(arity, 0)};
    Poly2 q_exp(arity);
    Poly2 sign(arity);
    Poly2 var_exp(arity);

    std::vector<std::pair<ExprPtr, bool>> factors;
    collect_factors(node->kids[0], false, factors);
    std::vector<std::pair<ExprPtr, bool>> hoisted;

    // Expand small integer powers of index-dependent factors in place.
    for (std::size_t fi = 0; fi < factors.size(); ++fi) {
        auto [f, inverted] = factors[fi];
        if (f->kind == Kind::Pow && f->kids[0]->kind == Kind::Poch &&
            f->kids[1]->kind == Kind::Integer) {
            long p = f->kids[1]->ival;
            bool inv_here = (p < 0) != inverted;
            for (long i = 0; i < std::abs(p); ++i) factors.emplace_back(f->kids[0], inv_here);
            continue;
        }
        if (f->kind == Kind::Neg) {
            spec.const_coeff = -spec.const_coeff;
            factors.emplace_back(f->kids[0], inverted);
            continue;
        }
        if (f->kind == Kind::Poch) {
            Monomial base = lower_monomial(f->kids[0], imap, arity);
            Monomial step = lower_monomial(f->kids[1], imap, arity);
            if (!step.coeff.is_one() || step.omega_pow != 0 || step.var_pow != 0 ||
                !step.q_pow.is_constant())
                throw NonLowerableError("Pochhammer step must be a constant power of q");
            SumPochFactor<R> pf;
            pf.c = monomial_ring_coeff<R>(base);
            pf.j = base.q_pow.linear_form();
            pf.m = step.q_pow.c0;
            if (f->kids.size() > 2) {
                Poly2 lp = lower_int_poly(f->kids[2], imap, arity);
                pf.len = lp.linear_form();
            }
            (inverted ? spec.den : spec.num).push_back(std::move(pf));
            continue;
        }
        if (f->kind == Kind::Pow) {
            const ExprPtr& b = f->kids[0];
            const ExprPtr& x = f->kids[1];
            bool base_minus_one =
                (b->kind == Kind::Integer && b->ival == -1) ||
                (b->kind == Kind::Neg && b->kids[0]->kind == Kind::Integer &&
                 b->kids[0]->ival == 1);
            if (base_minus_one) {
                Poly2 s = lower_int_poly(x, imap, arity);
                sign += s; // (-1)^{-E} has the same parity
                continue;
            }
            if (b->kind == Kind::VarQ) {
                Poly2 qe = lower_int_poly(x, imap, arity);
                q_exp += inverted ? -qe : qe;
                continue;
            }
            if (b->kind == Kind::VarA || b->kind == Kind::VarZ) {
                Poly2 ve = lower_int_poly(x, imap, arity);
                var_exp += inverted ? -ve : ve;
                continue;
            }
            if (b->kind == Kind::Omega) {
                long k = lower_const_int(x);
                R w = ring_omega_pow<R>(inverted ? -k : k);
                spec.const_coeff = spec.const_coeff * w;
                continue;
            }
        }
        if (f->kind == Kind::VarQ) {
            Poly2 one_q(arity);
            one_q.c0 = 1;
            q_exp += inverted ? -one_q : one_q;
            continue;
        }
        if (f->kind == Kind::VarA || f->kind == Kind::VarZ) {
            Poly2 one_v(arity);
            one_v.c0 = 1;
            var_exp += inverted ? -one_v : one_v;
            continue;
        }
        if (f->kind == Kind::Omega) {
            R w = ring_omega_pow<R>(inverted ? -1 : 1);
            spec.const_coeff = spec.const_coeff * w;
            continue;
        }
        if (f->kind == Kind::Integer || f->kind == Kind::Binom2) {
            Rational c(0);
            if (f->kind == Kind::Integer) c = Rational(f->ival);
            else c = Rational(lower_const_int(f));
            if (c.is_zero()) {
                if (inverted) throw NotAUnitError("division by zero constant");
                return QSeries<R>::zero(W);
            }
            R rc = ring_from_rational<R>(inverted ? c.inv() : c);
            spec.const_coeff = spec.const_coeff * rc;
            continue;
        }
        if (!has_index_vars(f)) {
            hoisted.emplace_back(f, inverted);
            continue;
        }
        throw NonLowerableError(
            "sum bodies must be products of hypergeometric factors; offending factor: " +
            to_text(f));
    }
    if (!sign.is_linear())
        throw NonLowerableError("the (-1) exponent must be linear in the indices");
    if (!var_exp.is_linear())
        throw NonLowerableError("variable exponents must be linear in the indices");
    spec.sign = sign.linear_form();
    spec.var_exp = var_exp.linear_form();
    spec.q_exp = q_exp.quad_form();

    QSeries<R> result = sum_eval(spec, W);
    for (const auto& [f, inverted] : hoisted) {
        QSeries<R> g = evaluate<R>(f, W);
        result = inverted ? div(result, g, W) : result * g;
    }
    return result;
}

template <typename R>
QSeries<R> eval_phi(const ExprPtr& node, long W) {
    PhiSpec<R> spec;
    auto param = [&](const ExprPtr& p) -> PhiParam<R> {
        Monomial m = lower_monomial(p, {}, 0);
        if (m.var_pow != 0)
            throw NonLowerableError("phi parameters must be monomials in q (and omega)");
        if (!m.q_pow.is_constant())
            throw NonLowerableError("phi parameters must not reference summation indices");
        return {monomial_ring_coeff<R>(m), m.q_pow.c0};
    };
    for (std::size_t i = 0; i < node->phi_uppers; ++i) spec.upper.push_back(param(node->kids[i]));
    for (std::size_t i = 0; i < node->phi_lowers; ++i)
        spec.lower.push_back(param(node->kids[node->phi_uppers + i]));
    Monomial base = lower_monomial(node->kids[node->kids.size() - 2], {}, 0);
    if (!base.coeff.is_one() || base.omega_pow != 0 || base.var_pow != 0 ||
        !base.q_pow.is_constant())
        throw NonLowerableError("phi base must be a power of q");
    spec.m = base.q_pow.c0;
    spec.arg = param(node->kids.back());
    return phi_eval(spec, W);
}

} // namespace detail

template <typename R>
QSeries<R> evaluate(const ExprPtr& e, long W) {
    switch (e->kind) {
        case Kind::Integer: return QSeries<R>::constant(R(e->ival));
        case Kind::VarQ: return QSeries<R>::monomial(R(1), 1);
        case Kind::VarA:
            if constexpr (std::is_same_v<R, PolyA>) return QSeries<R>::constant(PolyA::gen());
            else throw RingConflictError("the a variable requires the poly-a ring");
        case Kind::VarZ:
            if constexpr (std::is_same_v<R, PolyZ> || std::is_same_v<R, PolyZEis>)
                return QSeries<R>::constant(R::gen());
            else
                throw RingConflictError("the z variable requires a Laurent-z ring");
        case Kind::Omega:
            if constexpr (std::is_same_v<R, Eisenstein> || std::is_same_v<R, PolyZEis>)
                return QSeries<R>::constant(ring_omega_pow<R>(1));
            else
                throw RingConflictError("omega requires the eisenstein coefficient ring");
        case Kind::Index:
            throw UndeclaredVariableError("summation index '" + e->name +
                                          "' used outside a sum");
        case Kind::Add: return evaluate<R>(e->kids[0], W) + evaluate<R>(e->kids[1], W);
        case Kind::Sub: return evaluate<R>(e->kids[0], W) - evaluate<R>(e->kids[1], W);
        case Kind::Neg: return -evaluate<R>(e->kids[0], W);
        case Kind::Mul:
        case Kind::Div:
        case Kind::Poch: return detail::eval_product<R>(e, W);
        case Kind::Pow: {
            if (e->kids[0]->kind == Kind::Poch) return detail::eval_product<R>(e, W);
            long p = lower_const_int(e->kids[1]);
            QSeries<R> base = evaluate<R>(e->kids[0], W);
            if (p < 0) {
                base = qv::inv(base, W);
                p = -p;
            }
            QSeries<R> acc = QSeries<R>::one();
            for (long i = 0; i < p; ++i) acc = acc * base;
            return acc;
        }
        case Kind::Binom2: return QSeries<R>::constant(R(lower_const_int(e)));
        case Kind::Sum: return detail::eval_sum<R>(e, W);
        case Kind::CT: {
            if constexpr (std::is_same_v<R, Rational>)
                return constant_term(evaluate<PolyZ>(e->kids[0], W));
            else if constexpr (std::is_same_v<R, Eisenstein>)
                return constant_term(evaluate<PolyZEis>(e->kids[0], W));
            else
                throw RingConflictError("ct() must produce a pure-q series");
        }
        case Kind::Huff: return huff(evaluate<R>(e->kids[0], W), e->ival);
        case Kind::Scale: return scale_exponents(evaluate<R>(e->kids[0], W), e->ival);
        case Kind::SubstOmega: {
            if constexpr (std::is_same_v<R, Eisenstein>)
                return subst_omega(evaluate<Rational>(e->kids[0], W), e->ival);
            else
                throw RingConflictError("subst(..; q -> omega^k q) requires the eisenstein ring");
        }
        case Kind::SubstA: {
            if constexpr (std::is_same_v<R, Rational>)
                return specialize_a(evaluate<PolyA>(e->kids[0], W), e->ival);
            else
                throw RingConflictError("subst(..; a -> q^j) produces a rational-coefficient series");
        }
        case Kind::Phi: return detail::eval_phi<R>(e, W);
        case Kind::Theta: {
            if constexpr (std::is_same_v<R, PolyZ>) return theta_z(W);
            else if constexpr (std::is_same_v<R, PolyZEis>)
                return map_coeffs<PolyZEis>(theta_z(W), [](long, const PolyZ& p) {
                    PolyZEis out;
                    for (const auto& [d, c] : p.terms())
                        out += PolyZEis::monomial(Eisenstein(c), d);
                    return out;
                });
            else
                throw RingConflictError("jtp_theta() lives in a Laurent-z ring (use it under ct)");
        }
    }
    throw Error("unhandled expression node");
}

} // namespace qv::dsl
