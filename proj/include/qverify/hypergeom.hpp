// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qverify/qseries.hpp"

namespace qv {

// ---------------------------------------------------------------------------
// Integer forms in the summation indices.

/// c0 + sum_i coeffs[i] * n_i
struct LinearForm {
    long c0 = 0;
    std::vector<long> coeffs;

    static LinearForm constant(long c) { return {c, {}}; }
    static LinearForm index(std::size_t i, std::size_t arity) {
        LinearForm f;
        f.coeffs.assign(arity, 0);
        f.coeffs[i] = 1;
        return f;
    }

    long eval(std::span<const long> idx) const {
        long v = c0;
        for (std::size_t i = 0; i < coeffs.size() && i < idx.size(); ++i)
            v += coeffs[i] * idx[i];
        return v;
    }
    bool is_constant() const {
        for (long c : coeffs)
            if (c != 0) return false;
        return true;
    }
    long coeff(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : 0; }
};

/// Integer-valued quadratic form:
///   c0 + sum lin[i] n_i + sum quad (i,j,c): c n_i n_j + sum binom (L,c): c C(L,2)
struct QuadForm {
    long c0 = 0;
    std::vector<long> lin;
    std::vector<std::tuple<std::size_t, std::size_t, long>> quad;
    std::vector<std::pair<LinearForm, long>> binom;

    long eval(std::span<const long> idx) const {
        long v = c0;
        for (std::size_t i = 0; i < lin.size() && i < idx.size(); ++i) v += lin[i] * idx[i];
        for (const auto& [i, j, c] : quad) v += c * idx[i] * idx[j];
        for (const auto& [L, c] : binom) {
            long x = L.eval(idx);
            v += c * (x * (x - 1) / 2);
        }
        return v;
    }
};

// ---------------------------------------------------------------------------
// SumSpec: declarative q-hypergeometric summand.

/// One Pochhammer factor (c q^{j}; q^m)_{len} of a summand; c is any unit
/// (or zero) ring constant, j may depend on the indices, len is a linear
/// form or infinite.
template <CoeffRing R>
struct SumPochFactor {
    R c;
    LinearForm j;
    long m = 1;
    std::optional<LinearForm> len; // nullopt = infinite
};

/// Multi-index sum of terms
///   const_coeff * (-1)^{sign} * var^{var_exp} * q^{q_exp} * prod num / prod den.
template <CoeffRing R>
struct SumSpec {
    std::size_t arity = 1;
    std::vector<long> lower;           // per-index lower bounds; defaults to 0
    LinearForm sign;                   // exponent of (-1)
    QuadForm q_exp;                    // exponent of q
    LinearForm var_exp;                // exponent of the ring variable, if any
    R const_coeff = R(1);
    std::vector<SumPochFactor<R>> num, den;
    long index_cap = 20000;

    long lower_bound(std::size_t i) const { return i < lower.size() ? lower[i] : 0; }
};

/// Ring-variable monomial var^e; only defined for Laurent-polynomial rings.
template <CoeffRing R>
R ring_var_monomial(long e) {
    if (e == 0) return R(1);
    throw Error("this coefficient ring has no polynomial variable");
}
template <typename C, char V>
LaurentPoly<C, V> ring_var_monomial_impl(long e) {
    return LaurentPoly<C, V>::monomial(C(1), e);
}
template <>
inline PolyA ring_var_monomial<PolyA>(long e) { return ring_var_monomial_impl<Rational, 'a'>(e); }
template <>
inline PolyZ ring_var_monomial<PolyZ>(long e) { return ring_var_monomial_impl<Rational, 'z'>(e); }
template <>
inline PolyZEis ring_var_monomial<PolyZEis>(long e) {
    return ring_var_monomial_impl<Eisenstein, 'z'>(e);
}

template <CoeffRing R>
R ring_pow(R base, long e) {
    if (e < 0) return ring_pow(inv(base), -e);
    R r(1);
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

namespace detail {

/// Negative q-support contributed by one factor at a given index tuple:
/// numerator factors may dip below q^0, denominator factors with negative
/// exponents raise the valuation instead.
template <CoeffRing R>
long factor_neg_support(const SumPochFactor<R>& f, std::span<const long> idx) {
    long j = f.j.eval(idx);
    if (f.m >= 1 && j >= 0) return 0;
    long neg = 0;
    if (f.len.has_value()) {
        long n = f.len->eval(idx);
        for (long k = 0; k < n; ++k) neg += std::min<long>(0, j + k * f.m);
    } else {
        check_infinite_poch(f.m);
        neg = infinite_poch_neg_support(j, f.m);
    }
    return neg;
}

/// Lower bound for the minimal q-exponent of the term at idx.
template <CoeffRing R>
long term_valuation_bound(const SumSpec<R>& spec, std::span<const long> idx) {
    long v = spec.q_exp.eval(idx);
    for (const auto& f : spec.num) v += factor_neg_support(f, idx);
    for (const auto& f : spec.den) v -= factor_neg_support(f, idx);
    return v;
}

/// Assembled term plus whether a vanished numerator factor provably
/// persists for all larger values of the innermost index.
template <CoeffRing R>
struct AssembledTerm {
    QSeries<R> series;
    bool zero_persists_inner = false;
};

template <CoeffRing R>
AssembledTerm<R> assemble_term(const SumSpec<R>& spec, std::span<const long> idx, long N,
                               long val_bound) {
    // Working cap for the non-exact pieces (denominators, infinite factors).
    long cap = N + std::max<long>(0, -val_bound) + 1;
    long sgn = spec.sign.eval(idx);
    long ve = spec.var_exp.eval(idx);
    R coef = spec.const_coeff * ring_var_monomial<R>(ve);
    if (((sgn % 2) + 2) % 2 == 1) coef = -coef;
    QSeries<R> acc = QSeries<R>::monomial(std::move(coef), spec.q_exp.eval(idx));

    std::size_t inner = spec.arity - 1;
    // Numerator factors.
    for (const auto& f : spec.num) {
        if (is_zero(f.c)) continue; // (0; q^m)_n = 1
        long j = f.j.eval(idx);
        if (f.len.has_value()) {
            long n = f.len->eval(idx);
            for (long k = 0; k < n; ++k) {
                long t = j + k * f.m;
                if (t == 0 && is_one(f.c)) {
                    bool persists = f.j.is_constant() && f.len->coeff(inner) >= 0;
                    return {QSeries<R>::zero(), persists};
                }
                acc = mul_one_minus(acc, f.c, t);
            }
        } else {
            check_infinite_poch(f.m);
            long neg = infinite_poch_neg_support(j, f.m);
            acc = acc.truncated(cap - neg);
            for (long k = 0;; ++k) {
                long t = j + k * f.m;
                if (t > cap - 1 - neg) break;
                if (t == 0 && is_one(f.c))
                    throw ZeroFactorError(
                        "infinite Pochhammer factor vanishes inside a summand");
                acc = mul_one_minus(acc, f.c, t);
            }
        }
    }
    // Denominator factors.
    for (const auto& f : spec.den) {
        if (is_zero(f.c)) continue;
        long j = f.j.eval(idx);
        if (f.len.has_value()) {
            long n = f.len->eval(idx);
            for (long k = 0; k < n; ++k) {
                long t = j + k * f.m;
                if (t == 0 && is_one(f.c))
                    throw NotAUnitError("summand divides by an exactly-zero Pochhammer factor");
                acc = div_one_minus(acc, f.c, t, cap);
            }
        } else {
            check_infinite_poch(f.m);
            long neg = infinite_poch_neg_support(j, f.m);
            for (long k = 0;; ++k) {
                long t = j + k * f.m;
                if (t > cap - 1 - neg) break;
                if (t == 0 && is_one(f.c))
                    throw ZeroFactorError(
                        "infinite Pochhammer factor vanishes inside a summand");
                acc = div_one_minus(acc, f.c, t, cap);
            }
            acc = acc.truncated(cap);
        }
    }
    if (acc.order() < N)
        throw PrecisionError("summand lost precision during assembly");
    return {std::move(acc), false};
}

/// Enumerate index level `level` with the per-level monotone cutoff.
/// Returns the minimal term valuation bound seen in the subtree.
template <CoeffRing R>
long sum_enumerate(const SumSpec<R>& spec, long N, std::vector<long>& idx, std::size_t level,
                   QSeries<R>& acc) {
    long subtree_min = kExactOrder;
    long prev_bound = std::numeric_limits<long>::min();
    for (long v = spec.lower_bound(level);; ++v) {
        if (v - spec.lower_bound(level) > spec.index_cap)
            throw NonTerminatingError(
                "sum index " + std::to_string(level) +
                " exceeded the index cap without passing the truncation order");
        idx[level] = v;
        long bound;
        if (level + 1 == spec.arity) {
            bound = term_valuation_bound(spec, idx);
            subtree_min = std::min(subtree_min, bound);
            if (bound < N) {
                auto t = assemble_term(spec, idx, N, bound);
                if (t.zero_persists_inner) break;
                acc = acc + t.series;
            }
        } else {
            bound = sum_enumerate(spec, N, idx, level + 1, acc);
            subtree_min = std::min(subtree_min, bound);
        }
        // Stop once the valuation bound has passed the order and stopped
        // decreasing; never on the first value, where a quadratic with a
        // negative linear part may still be ramping down.
        if (v > spec.lower_bound(level) && bound > N - 1 && bound >= prev_bound) break;
        prev_bound = bound;
    }
    return subtree_min;
}

} // namespace detail

/// Evaluate a SumSpec exactly through order N. Terms whose minimal possible
/// q-exponent is >= N are never assembled; each index stops once its
/// valuation bound has passed N and stopped decreasing.
template <CoeffRing R>
QSeries<R> sum_eval(const SumSpec<R>& spec, long N) {
    if (spec.arity == 0) throw Error("sum_eval: no summation indices");
    QSeries<R> acc = QSeries<R>::zero();
    std::vector<long> idx(spec.arity, 0);
    detail::sum_enumerate(spec, N, idx, 0, acc);
    return acc.truncated(N);
}

/// Relabel the summation indices of a SumSpec by `perm` (new position i
/// reads old index perm[i]); evaluation must be invariant under this.
template <CoeffRing R>
SumSpec<R> permute_indices(const SumSpec<R>& spec, const std::vector<std::size_t>& perm) {
    auto permute_linear = [&](const LinearForm& f) {
        LinearForm g;
        g.c0 = f.c0;
        g.coeffs.assign(spec.arity, 0);
        for (std::size_t i = 0; i < spec.arity; ++i) g.coeffs[i] = f.coeff(perm[i]);
        return g;
    };
    SumSpec<R> out = spec;
    out.lower.assign(spec.arity, 0);
    for (std::size_t i = 0; i < spec.arity; ++i) out.lower[i] = spec.lower_bound(perm[i]);
    out.sign = permute_linear(spec.sign);
    out.var_exp = permute_linear(spec.var_exp);
    out.q_exp.c0 = spec.q_exp.c0;
    out.q_exp.lin.assign(spec.arity, 0);
    std::vector<std::size_t> inv_perm(spec.arity);
    for (std::size_t i = 0; i < spec.arity; ++i) inv_perm[perm[i]] = i;
    for (std::size_t i = 0; i < spec.arity; ++i)
        out.q_exp.lin[i] = i < spec.arity && perm[i] < spec.q_exp.lin.size()
                               ? spec.q_exp.lin[perm[i]]
                               : 0;
    out.q_exp.quad.clear();
    for (const auto& [i, j, c] : spec.q_exp.quad) {
        std::size_t a = inv_perm[i], b = inv_perm[j];
        out.q_exp.quad.emplace_back(std::min(a, b), std::max(a, b), c);
    }
    out.q_exp.binom.clear();
    for (const auto& [L, c] : spec.q_exp.binom) out.q_exp.binom.emplace_back(permute_linear(L), c);
    out.num.clear();
    out.den.clear();
    for (const auto& f : spec.num)
        out.num.push_back({f.c, permute_linear(f.j), f.m,
                           f.len ? std::optional<LinearForm>(permute_linear(*f.len))
                                 : std::nullopt});
    for (const auto& f : spec.den)
        out.den.push_back({f.c, permute_linear(f.j), f.m,
                           f.len ? std::optional<LinearForm>(permute_linear(*f.len))
                                 : std::nullopt});
    return out;
}

// ---------------------------------------------------------------------------
// Basic hypergeometric series r_phi_s.

/// Parameter or argument monomial c q^{qpow}; c may be zero.
template <CoeffRing R>
struct PhiParam {
    R c;
    long qpow = 0;
};

/// r_phi_s(upper; lower; q^m, arg) with the convention factor
/// [(-1)^n q^{m C(n,2)}]^{1+s-r}.
template <CoeffRing R>
struct PhiSpec {
    std::vector<PhiParam<R>> upper, lower;
    long m = 1;
    PhiParam<R> arg;
    long index_cap = 20000;
};

template <CoeffRing R>
QSeries<R> phi_eval(const PhiSpec<R>& spec, long N) {
    detail::check_infinite_poch(spec.m);
    if (is_zero(spec.arg.c)) return QSeries<R>::one().truncated(N); // only the n = 0 term
    long excess = 1 + static_cast<long>(spec.lower.size()) - static_cast<long>(spec.upper.size());
    QSeries<R> acc = QSeries<R>::zero();
    long prev_bound = std::numeric_limits<long>::min();
    for (long n = 0;; ++n) {
        if (n > spec.index_cap)
            throw NonTerminatingError("phi_eval exceeded the index cap");
        // Valuation bound of term n.
        long bound = n * spec.arg.qpow + excess * spec.m * (n * (n - 1) / 2);
        for (const auto& p : spec.upper)
            if (!is_zero(p.c))
                for (long k = 0; k < n; ++k) bound += std::min<long>(0, p.qpow + k * spec.m);
        if (bound < N) {
            long cap = N + std::max<long>(0, -bound) + 1;
            R coef = ring_pow(spec.arg.c, n);
            if (excess % 2 != 0 && n % 2 == 1) coef = -coef;
            QSeries<R> term = QSeries<R>::monomial(
                std::move(coef), n * spec.arg.qpow + excess * spec.m * (n * (n - 1) / 2));
            bool vanished = false;
            for (const auto& p : spec.upper) {
                if (is_zero(p.c)) continue; // (0;q)_n = 1
                for (long k = 0; k < n && !vanished; ++k) {
                    long t = p.qpow + k * spec.m;
                    if (t == 0 && is_one(p.c)) vanished = true;
                    else term = mul_one_minus(term, p.c, t);
                }
            }
            if (!vanished) {
                for (long k = 0; k < n; ++k)
                    term = div_one_minus(term, R(1), spec.m + k * spec.m, cap);
                for (const auto& p : spec.lower) {
                    if (is_zero(p.c)) continue;
                    for (long k = 0; k < n; ++k) {
                        long t = p.qpow + k * spec.m;
                        if (t == 0 && is_one(p.c))
                            throw ZeroFactorError("phi_eval: zero factor in a lower parameter");
                        term = div_one_minus(term, p.c, t, cap);
                    }
                }
                acc = acc + term;
            }
        }
        if (n > 0 && bound > N - 1 && bound >= prev_bound) break;
        prev_bound = bound;
    }
    return acc.truncated(N);
}

// ---------------------------------------------------------------------------
// The terminating S_M family and its recurrence / closed-form checks.

/// S_M = sum_n (q^{2M};q)_n (q^{2-2M};q^2)_n / ((q^{4M+1};q^2)_n (q^3;q^3)_n)
///         * (-1)^n q^{C(n,2) + n + 2Mn}.
/// Terminates at n = 0 for M = 0 and at n = M for M >= 1.
inline QSeriesQ s_m_eval(long M, long N) {
    if (M < 0) throw Error("s_m_eval: M must be nonnegative");
    SumSpec<Rational> s;
    s.arity = 1;
    s.sign = LinearForm::index(0, 1);
    s.q_exp.binom.emplace_back(LinearForm::index(0, 1), 1);
    s.q_exp.lin = {2 * M + 1};
    auto n = LinearForm::index(0, 1);
    s.num.push_back({Rational(1), LinearForm::constant(2 * M), 1, n});
    s.num.push_back({Rational(1), LinearForm::constant(2 - 2 * M), 2, n});
    s.den.push_back({Rational(1), LinearForm::constant(4 * M + 1), 2, n});
    s.den.push_back({Rational(1), LinearForm::constant(3), 3, n});
    return sum_eval(s, N);
}

struct CheckResult {
    bool ok = false;
    std::optional<long> first_diff;
};

/// Checks, through order N, both the simplified ratio
///   S_M (1-q^{2M-1})(1-q^{6M-3}) = S_{M-1} (1-q^{4M-3})(1-q^{4M-1})
/// and the raw recurrence
///   S_M (1-q^{2M-1})^2 (q^2+q^{4M}+q^{1+2M}) = q^2 (1-q^{4M-3})(1-q^{4M-1}) S_{M-1}.
inline CheckResult s_m_recurrence_check(long M, long N) {
    if (M < 1) throw Error("s_m_recurrence_check: M must be >= 1");
    QSeriesQ sm = s_m_eval(M, N);
    QSeriesQ smp = s_m_eval(M - 1, N);
    Rational one(1);
    QSeriesQ lhs1 = mul_one_minus(mul_one_minus(sm, one, 2 * M - 1), one, 6 * M - 3);
    QSeriesQ rhs1 = mul_one_minus(mul_one_minus(smp, one, 4 * M - 3), one, 4 * M - 1);
    auto d1 = first_difference(lhs1, rhs1, N);

    QSeriesQ tri = QSeriesQ::monomial(one, 2) + QSeriesQ::monomial(one, 4 * M) +
                   QSeriesQ::monomial(one, 2 * M + 1);
    QSeriesQ lhs2 = mul_one_minus(mul_one_minus(sm, one, 2 * M - 1), one, 2 * M - 1) * tri;
    QSeriesQ rhs2 =
        shift(mul_one_minus(mul_one_minus(smp, one, 4 * M - 3), one, 4 * M - 1), 2);
    auto d2 = first_difference(lhs2, rhs2, N);

    CheckResult r;
    r.ok = !d1.has_value() && !d2.has_value();
    r.first_diff = d1.has_value() ? d1 : d2;
    return r;
}

/// S_M = (q^{2M+1};q^2)_inf (q^{6M+3};q^6)_inf / ((q^{4M+1};q^2)_inf (q^3;q^6)_inf)
/// through order N.
inline CheckResult s_m_closed_form_check(long M, long N) {
    if (M < 0) throw Error("s_m_closed_form_check: M must be nonnegative");
    QSeriesQ lhs = s_m_eval(M, N);
    ProdSpec<Rational> p;
    p.factors.push_back({Rational(1), 2 * M + 1, 2, std::nullopt, 1});
    p.factors.push_back({Rational(1), 6 * M + 3, 6, std::nullopt, 1});
    p.factors.push_back({Rational(1), 4 * M + 1, 2, std::nullopt, -1});
    p.factors.push_back({Rational(1), 3, 6, std::nullopt, -1});
    QSeriesQ rhs = eta_quotient(p, N);
    auto d = first_difference(lhs, rhs, N);
    return {!d.has_value(), d};
}

// ---------------------------------------------------------------------------
// The bivariate identity over Q[a, a^{-1}] coefficients.

/// LHS sum of the a-generalized identity:
///   sum_n (a;q)_n (a^{-1}q^2;q^2)_n / ((a^2 q;q^2)_n (q^3;q^3)_n)
///         * (-1)^n a^n q^{C(n,2)+n}.
inline QSeriesA rr_a_generalization_lhs(long N) {
    SumSpec<PolyA> s;
    s.arity = 1;
    s.sign = LinearForm::index(0, 1);
    s.q_exp.binom.emplace_back(LinearForm::index(0, 1), 1);
    s.q_exp.lin = {1};
    s.var_exp = LinearForm::index(0, 1);
    auto n = LinearForm::index(0, 1);
    s.num.push_back({PolyA::gen(), LinearForm::constant(0), 1, n});
    s.num.push_back({PolyA::monomial(Rational(1), -1), LinearForm::constant(2), 2, n});
    s.den.push_back({PolyA::monomial(Rational(1), 2), LinearForm::constant(1), 2, n});
    s.den.push_back({PolyA(1), LinearForm::constant(3), 3, n});
    return sum_eval(s, N);
}

/// RHS product (aq;q^2)_inf (a^3 q^3;q^6)_inf / ((a^2 q;q^2)_inf (q^3;q^6)_inf).
inline QSeriesA rr_a_generalization_rhs(long N) {
    ProdSpec<PolyA> p;
    p.factors.push_back({PolyA::monomial(Rational(1), 1), 1, 2, std::nullopt, 1});
    p.factors.push_back({PolyA::monomial(Rational(1), 3), 3, 6, std::nullopt, 1});
    p.factors.push_back({PolyA::monomial(Rational(1), 2), 1, 2, std::nullopt, -1});
    p.factors.push_back({PolyA(1), 3, 6, std::nullopt, -1});
    return eta_quotient(p, N);
}

/// Substitute a = q^{epow} (epow >= 0) into a poly-a series whose
/// a-exponents are all nonnegative. Exactness is preserved: with d >= 0 and
/// epow >= 0 every target exponent gathers only from lower q-exponents.
inline QSeriesQ specialize_a(const QSeriesA& f, long epow) {
    if (epow < 0) throw Error("specialize_a: exponent must be nonnegative");
    long lo = f.min_exp();
    long hi = std::min(f.support_end(), f.order());
    if (f.is_zero_through_order()) return QSeriesQ::zero(f.order());
    long window_end = lo;
    for (long e = lo; e < hi; ++e) {
        for (const auto& [d, coef] : f.coeff(e).terms()) {
            if (d < 0) throw Error("specialize_a: negative a-exponent in coefficient");
            window_end = std::max(window_end, std::min(e + d * epow + 1, f.order()));
        }
    }
    std::vector<Rational> c(static_cast<std::size_t>(window_end - lo), Rational(0));
    for (long e = lo; e < hi; ++e) {
        for (const auto& [d, coef] : f.coeff(e).terms()) {
            long target = e + d * epow;
            if (target < window_end) c[static_cast<std::size_t>(target - lo)] += coef;
        }
    }
    return QSeriesQ::from_coeffs(lo, f.order(), std::move(c));
}

struct BivariateReport {
    bool ok = false;
    std::optional<long> first_diff;
    long max_a_degree = 0;
};

/// Full bivariate check through q-order N, exact at every a-degree.
/// Coefficients are sparse exact Laurent polynomials, so no a-degree cap is
/// needed; the maximum degree encountered is reported.
inline BivariateReport bivariate_rr_a_check(long N) {
    QSeriesA lhs = rr_a_generalization_lhs(N);
    QSeriesA rhs = rr_a_generalization_rhs(N);
    BivariateReport rep;
    rep.first_diff = first_difference(lhs, rhs, N);
    rep.ok = !rep.first_diff.has_value();
    for (long e = lhs.min_exp(); e < std::min(lhs.support_end(), lhs.order()); ++e)
        if (!lhs.coeff(e).is_zero())
            rep.max_a_degree = std::max(rep.max_a_degree, lhs.coeff(e).max_deg());
    return rep;
}

// ---------------------------------------------------------------------------
// Floating-point limit check (the only inexact computation in the library):
// sum_{n<terms} (1/3)_n / n! * (-1/3)^n  ==  (3/4)^{1/3}  within tol.

inline bool float_1f0_check(long terms, double tol) {
    if (terms < 1) throw Error("float_1f0_check: terms must be >= 1");
    double sum = 0.0, term = 1.0;
    for (long n = 0; n < terms; ++n) {
        sum += term;
        term *= (1.0 / 3.0 + static_cast<double>(n)) / (static_cast<double>(n) + 1.0) *
                (-1.0 / 3.0);
    }
    // A double computation cannot certify agreement below its own rounding
    // error, so the discrepancy is floored at a few ulps.
    double err = std::abs(sum - std::cbrt(3.0 / 4.0));
    double rounding_floor = 8.0 * std::numeric_limits<double>::epsilon();
    return std::max(err, rounding_floor) < tol;
}

} // namespace qv
