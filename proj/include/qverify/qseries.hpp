// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <concepts>
#include <cstdlib>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qverify/eisenstein.hpp"
#include "qverify/errors.hpp"
#include "qverify/laurent_poly.hpp"
#include "qverify/rational.hpp"

namespace qv {

template <typename R>
concept CoeffRing = requires(const R a, const R b) {
    R(0);
    R(1);
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { a == b } -> std::convertible_to<bool>;
    { is_zero(a) } -> std::convertible_to<bool>;
    { is_one(a) } -> std::convertible_to<bool>;
    { is_unit(a) } -> std::convertible_to<bool>;
    { inv(a) } -> std::convertible_to<R>;
    { to_coeff_string(a) } -> std::convertible_to<std::string>;
};

/// Order value meaning "exact at every exponent" (finite-support series:
/// polynomials, monomials, terminated products).
inline constexpr long kExactOrder = std::numeric_limits<long>::max() / 4;

namespace detail {
inline long sat_add(long order, long shift) {
    if (order >= kExactOrder) return kExactOrder;
    return std::min(order + shift, kExactOrder);
}
} // namespace detail

/// Truncated Laurent series in q over a coefficient ring R.
///
/// The series is exactly zero below min_exp(); coefficients are exactly
/// known at every exponent e with min_exp() <= e < order(). Stored
/// coefficients cover [min_exp, min_exp + size); exponents between the end
/// of storage and order() are exactly zero. order() == kExactOrder marks a
/// finite-support series that is exact everywhere.
///
/// Values are immutable in practice: every operation is a pure function
/// returning a fresh series.
template <CoeffRing R>
class QSeries {
public:
    using coeff_type = R;

    QSeries() : min_exp_(kExactOrder), order_(kExactOrder) {} // exact zero

    static QSeries zero(long order = kExactOrder) {
        QSeries f;
        f.min_exp_ = order;
        f.order_ = order;
        return f;
    }
    static QSeries constant(R c) { return monomial(std::move(c), 0); }
    static QSeries monomial(R c, long e) {
        QSeries f;
        if (is_zero(c)) return f;
        f.min_exp_ = e;
        f.order_ = kExactOrder;
        f.c_.push_back(std::move(c));
        return f;
    }
    static QSeries one() { return constant(R(1)); }

    /// Build from an explicit coefficient window. Storage above `order` is
    /// meaningless and dropped.
    static QSeries from_coeffs(long min_exp, long order, std::vector<R> coeffs) {
        QSeries f;
        f.min_exp_ = min_exp;
        f.order_ = order;
        f.c_ = std::move(coeffs);
        if (f.support_end() > order)
            f.c_.resize(static_cast<std::size_t>(std::max<long>(0, order - min_exp)));
        f.normalize();
        return f;
    }

    long min_exp() const { return min_exp_; }
    long order() const { return order_; }
    bool is_exact() const { return order_ == kExactOrder; }
    long support_end() const { return min_exp_ + static_cast<long>(c_.size()); }
    /// True iff the series is zero at every exponent below order().
    bool is_zero_through_order() const { return c_.empty(); }

    const R& coeff(long e) const {
        if (e >= order_)
            throw PrecisionError("QSeries: coefficient at q^" + std::to_string(e) +
                                 " requested beyond guaranteed order " +
                                 std::to_string(order_));
        if (e < min_exp_ || e >= support_end()) return zero_coeff();
        return c_[static_cast<std::size_t>(e - min_exp_)];
    }

    /// Restrict the exactness claim to `order` and drop storage above it.
    QSeries truncated(long order) const {
        QSeries f(*this);
        if (order < f.order_) {
            f.order_ = order;
            if (f.support_end() > order)
                f.c_.resize(static_cast<std::size_t>(std::max<long>(0, order - f.min_exp_)));
            f.normalize();
        }
        return f;
    }

    friend QSeries operator+(const QSeries& f, const QSeries& g) {
        long order = std::min(f.order_, g.order_);
        long lo = std::min(f.min_exp_, g.min_exp_);
        long hi = lo;
        if (!f.c_.empty()) hi = std::max(hi, f.support_end());
        if (!g.c_.empty()) hi = std::max(hi, g.support_end());
        hi = std::min(hi, order);
        if (hi < lo) return zero(order);
        std::vector<R> c(static_cast<std::size_t>(hi - lo), R(0));
        for (long e = f.min_exp_; e < std::min(f.support_end(), hi); ++e)
            c[static_cast<std::size_t>(e - lo)] = f.coeff(e);
        for (long e = g.min_exp_; e < std::min(g.support_end(), hi); ++e)
            c[static_cast<std::size_t>(e - lo)] += g.coeff(e);
        return from_coeffs(lo, order, std::move(c));
    }
    friend QSeries operator-(const QSeries& f, const QSeries& g) { return f + (-g); }
    QSeries operator-() const {
        QSeries f(*this);
        for (auto& x : f.c_) x = -x;
        return f;
    }

    friend QSeries operator*(const QSeries& f, const QSeries& g) {
        if (f.c_.empty() && f.is_exact()) return QSeries();
        if (g.c_.empty() && g.is_exact()) return QSeries();
        long order = std::min(detail::sat_add(f.order_, g.min_exp_),
                              detail::sat_add(g.order_, f.min_exp_));
        if (f.c_.empty() || g.c_.empty()) return zero(order);
        long lo = f.min_exp_ + g.min_exp_;
        long hi = std::min(f.support_end() + g.support_end() - 1, order);
        if (hi < lo) return zero(order);
        std::vector<R> c(static_cast<std::size_t>(hi - lo), R(0));
        long fe = f.support_end(), ge = g.support_end();
        for (long i = f.min_exp_; i < fe; ++i) {
            const R& fi = f.c_[static_cast<std::size_t>(i - f.min_exp_)];
            if (is_zero(fi)) continue;
            long jmax = std::min(ge - 1, hi - 1 - i);
            for (long j = g.min_exp_; j <= jmax; ++j) {
                const R& gj = g.c_[static_cast<std::size_t>(j - g.min_exp_)];
                if (is_zero(gj)) continue;
                c[static_cast<std::size_t>(i + j - lo)] += fi * gj;
            }
        }
        return from_coeffs(lo, order, std::move(c));
    }

    friend bool operator==(const QSeries& f, const QSeries& g) {
        long through = std::min(f.order_, g.order_);
        long lo = std::min(f.min_exp_, g.min_exp_);
        long hi = lo;
        if (!f.c_.empty()) hi = std::max(hi, f.support_end());
        if (!g.c_.empty()) hi = std::max(hi, g.support_end());
        hi = std::min(hi, through);
        for (long e = lo; e < hi; ++e)
            if (!(f.coeff(e) == g.coeff(e))) return false;
        return true;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        for (long e = min_exp_; e < support_end(); ++e) {
            const R& x = coeff(e);
            if (is_zero(x)) continue;
            if (!s.empty()) s += " + ";
            s += "(" + to_coeff_string(x) + ")";
            if (e != 0) s += "*q^" + std::to_string(e);
        }
        if (s.empty()) s = "0";
        if (!is_exact()) s += " + O(q^" + std::to_string(order_) + ")";
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const QSeries& f) {
        return os << f.str();
    }

private:
    static const R& zero_coeff() {
        static const R z(0);
        return z;
    }

    void normalize() {
        std::size_t lead = 0;
        while (lead < c_.size() && is_zero(c_[lead])) ++lead;
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            min_exp_ += static_cast<long>(lead);
        }
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
        if (c_.empty()) min_exp_ = order_;
    }

    long min_exp_;
    long order_;
    std::vector<R> c_;
};

using QSeriesQ = QSeries<Rational>;
using QSeriesEis = QSeries<Eisenstein>;
using QSeriesA = QSeries<PolyA>;
using ZQSeries = QSeries<PolyZ>;
using ZQSeriesEis = QSeries<PolyZEis>;

// ---------------------------------------------------------------------------
// Binomial fast paths: multiply / divide by (1 - C q^t) in O(window).

template <CoeffRing R>
QSeries<R> mul_one_minus(const QSeries<R>& f, const R& C, long t) {
    if (is_zero(C)) return f;
    if (f.is_zero_through_order() && f.is_exact()) return QSeries<R>();
    long lo = f.min_exp() + std::min<long>(0, t);
    long order = detail::sat_add(f.order(), std::min<long>(0, t));
    long hi = std::min(detail::sat_add(f.support_end(), std::max<long>(0, t)), order);
    if (f.is_zero_through_order()) return QSeries<R>::zero(order);
    if (hi < lo) return QSeries<R>::zero(order);
    std::vector<R> c(static_cast<std::size_t>(hi - lo), R(0));
    for (long e = lo; e < hi; ++e) {
        R v(0);
        if (e >= f.min_exp() && e < std::min(f.support_end(), f.order())) v = f.coeff(e);
        long src = e - t;
        if (src >= f.min_exp() && src < std::min(f.support_end(), f.order()))
            v = v - C * f.coeff(src);
        c[static_cast<std::size_t>(e - lo)] = std::move(v);
    }
    return QSeries<R>::from_coeffs(lo, order, std::move(c));
}

/// f / (1 - C q^t). `cap` bounds the computed order when f is exact
/// (the quotient generally has infinite support).
template <CoeffRing R>
QSeries<R> div_one_minus(const QSeries<R>& f, const R& C, long t, long cap) {
    if (is_zero(C)) return f;
    if (t == 0) {
        R u = R(1) - C;
        if (!is_unit(u))
            throw NotAUnitError("division by non-unit constant factor (1 - c)");
        R ui = inv(u);
        QSeries<R> g = f;
        return QSeries<R>::monomial(std::move(ui), 0) * g;
    }
    if (t < 0) {
        // 1 - C q^t = -C q^t (1 - C^{-1} q^{-t})
        if (!is_unit(C))
            throw NotAUnitError("division by binomial with non-unit trailing coefficient");
        R ci = inv(C);
        QSeries<R> g = QSeries<R>::monomial(-ci, -t) * f;
        return div_one_minus(g, ci, -t, cap);
    }
    if (f.is_zero_through_order() && f.is_exact()) return QSeries<R>();
    long order = std::min(f.order(), cap);
    long lo = f.min_exp();
    if (f.is_zero_through_order() || lo >= order) return QSeries<R>::zero(order);
    std::vector<R> c(static_cast<std::size_t>(order - lo), R(0));
    for (long e = lo; e < order; ++e) {
        R v(0);
        if (e < std::min(f.support_end(), f.order()) && e >= f.min_exp()) v = f.coeff(e);
        long src = e - t;
        if (src >= lo) v = v + C * c[static_cast<std::size_t>(src - lo)];
        c[static_cast<std::size_t>(e - lo)] = std::move(v);
    }
    return QSeries<R>::from_coeffs(lo, order, std::move(c));
}

/// Multiplicative inverse. The trailing coefficient (at the effective
/// valuation) must be a unit of R. `cap` bounds the computed order when f
/// is exact.
template <CoeffRing R>
QSeries<R> inv(const QSeries<R>& f, long cap) {
    if (f.is_zero_through_order())
        throw NotAUnitError("QSeries: inverse of a series that is zero through its order");
    long v = f.min_exp();
    const R& u0 = f.coeff(v);
    if (!is_unit(u0))
        throw NotAUnitError("QSeries: trailing coefficient is not a unit");
    if (f.is_exact() && f.support_end() - v == 1)
        return QSeries<R>::monomial(inv(u0), -v); // exact monomial inverse
    long order;
    if (f.is_exact())
        order = detail::sat_add(cap, 0);
    else
        order = std::min(f.order() - 2 * v, cap);
    long lo = -v;
    if (order <= lo)
        throw PrecisionError("QSeries: inverse has no exactly-known coefficients at this order");
    R u0i = inv(u0);
    std::vector<R> h(static_cast<std::size_t>(order - lo), R(0));
    h[0] = u0i;
    long ulen = std::min(f.support_end(), f.order()) - v; // unit part length
    for (long k = 1; k < order - lo; ++k) {
        R acc(0);
        for (long i = 1; i <= std::min(k, ulen - 1); ++i) {
            const R& ui = f.coeff(v + i);
            if (is_zero(ui)) continue;
            acc += ui * h[static_cast<std::size_t>(k - i)];
        }
        if (!is_zero(acc)) h[static_cast<std::size_t>(k)] = -(u0i * acc);
    }
    return QSeries<R>::from_coeffs(lo, order, std::move(h));
}

template <CoeffRing R>
QSeries<R> div(const QSeries<R>& f, const QSeries<R>& g, long cap) {
    return f * inv(g, cap);
}

/// Multiply by q^t.
template <CoeffRing R>
QSeries<R> shift(const QSeries<R>& f, long t) {
    if (f.is_zero_through_order()) {
        if (f.is_exact()) return f;
        return QSeries<R>::zero(detail::sat_add(f.order(), t));
    }
    return QSeries<R>::monomial(R(1), t) * f;
}

// ---------------------------------------------------------------------------
// Pochhammer products and eta quotients.

namespace detail {
inline void check_infinite_poch(long m) {
    if (m < 1)
        throw DivergentProductError(
            "infinite Pochhammer with step modulus " + std::to_string(m) +
            " has factors that never leave low q-orders");
}

inline long infinite_poch_neg_support(long j, long m) {
    long neg = 0;
    for (long k = 0; j + k * m < 0; ++k) neg += j + k * m;
    return neg;
}
} // namespace detail

/// (C q^j; q^m)_n = prod_{k=0}^{n-1} (1 - C q^{j+km}), exact through N.
///
/// Finite n with a vanishing q^0 factor (C == 1, j+km == 0) yields the zero
/// series; for n = infinity the same configuration is an error, as is m < 1.
template <CoeffRing R>
QSeries<R> pochhammer(const R& C, long j, long m, std::optional<long> n, long N) {
    QSeries<R> acc = QSeries<R>::one();
    if (is_zero(C)) return acc; // (0; q^m)_n = 1
    const long support_guard = std::max<long>(8 * (std::abs(N) + 16), 4096);
    if (n.has_value()) {
        for (long k = 0; k < *n; ++k) {
            long t = j + k * m;
            if (t == 0 && is_one(C)) return QSeries<R>::zero(); // exact zero
            acc = mul_one_minus(acc, C, t);
            if (acc.support_end() - acc.min_exp() > support_guard)
                acc = acc.truncated(N);
        }
        return acc;
    }
    detail::check_infinite_poch(m);
    long neg = detail::infinite_poch_neg_support(j, m);
    // Bound every intermediate window; the slack |neg| pays for the order
    // lost to the negative-exponent factors.
    acc = acc.truncated(N - neg);
    for (long k = 0;; ++k) {
        long t = j + k * m;
        if (t > N - 1 - neg) break;
        if (t == 0 && is_one(C))
            throw ZeroFactorError("infinite Pochhammer contains the zero factor (1 - q^0)");
        acc = mul_one_minus(acc, C, t);
    }
    return acc.truncated(N);
}

/// One factor (c q^j; q^m)_n ^ delta of an eta-quotient-style product.
template <CoeffRing R>
struct ProdFactor {
    R c;
    long j;
    long m;
    std::optional<long> n; // nullopt = infinite
    long delta = 1;
};

/// Declarative product of Pochhammer symbols raised to integer powers.
template <CoeffRing R>
struct ProdSpec {
    std::vector<ProdFactor<R>> factors;
};

/// Evaluate a ProdSpec through order N. Negative powers divide factor by
/// factor; an exactly-zero finite Pochhammer in a denominator is NotAUnit,
/// in a numerator it collapses the whole product to zero.
template <CoeffRing R>
QSeries<R> eta_quotient(const ProdSpec<R>& spec, long N) {
    QSeries<R> acc = QSeries<R>::one();
    for (const auto& fac : spec.factors) {
        if (fac.delta == 0 || is_zero(fac.c)) continue;
        for (long rep = 0; rep < std::abs(fac.delta); ++rep) {
            if (fac.n.has_value()) {
                for (long k = 0; k < *fac.n; ++k) {
                    long t = fac.j + k * fac.m;
                    if (t == 0 && is_one(fac.c)) {
                        if (fac.delta > 0) return QSeries<R>::zero(); // zero numerator factor
                        throw NotAUnitError("eta quotient divides by an exactly-zero Pochhammer");
                    }
                    acc = fac.delta > 0 ? mul_one_minus(acc, fac.c, t)
                                        : div_one_minus(acc, fac.c, t, N);
                }
            } else {
                detail::check_infinite_poch(fac.m);
                long neg = detail::infinite_poch_neg_support(fac.j, fac.m);
                acc = acc.truncated(N - neg);
                for (long k = 0;; ++k) {
                    long t = fac.j + k * fac.m;
                    if (t > N - 1 - neg) break;
                    if (t == 0 && is_one(fac.c))
                        throw ZeroFactorError(
                            "infinite Pochhammer contains the zero factor (1 - q^0)");
                    acc = fac.delta > 0 ? mul_one_minus(acc, fac.c, t)
                                        : div_one_minus(acc, fac.c, t, N);
                }
            }
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Huffing, dissection, exponent scaling, omega substitution.

/// Keep exactly the coefficients at exponents divisible by m, at their
/// original exponents.
template <CoeffRing R>
QSeries<R> huff(const QSeries<R>& f, long m) {
    if (m < 1) throw Error("huff: modulus must be positive");
    if (m == 1 || f.is_zero_through_order()) return f;
    std::vector<R> c;
    long lo = f.min_exp();
    long hi = std::min(f.support_end(), f.order());
    c.reserve(static_cast<std::size_t>(hi - lo));
    for (long e = lo; e < hi; ++e) {
        long r = e % m;
        c.push_back(r == 0 ? f.coeff(e) : R(0));
    }
    return QSeries<R>::from_coeffs(lo, f.order(), std::move(c));
}

/// Split into m components by exponent residue class; component r holds the
/// exponents congruent to r (mod m). Components sum to f.
template <CoeffRing R>
std::vector<QSeries<R>> dissect(const QSeries<R>& f, long m) {
    if (m < 1) throw Error("dissect: modulus must be positive");
    std::vector<QSeries<R>> out;
    out.reserve(static_cast<std::size_t>(m));
    long lo = f.min_exp();
    long hi = std::min(f.support_end(), f.order());
    for (long r = 0; r < m; ++r) {
        std::vector<R> c;
        if (!f.is_zero_through_order()) {
            c.resize(static_cast<std::size_t>(std::max<long>(0, hi - lo)), R(0));
            for (long e = lo; e < hi; ++e) {
                long rr = ((e % m) + m) % m;
                if (rr == r) c[static_cast<std::size_t>(e - lo)] = f.coeff(e);
            }
        }
        out.push_back(QSeries<R>::from_coeffs(f.is_zero_through_order() ? f.order() : lo,
                                              f.order(), std::move(c)));
    }
    return out;
}

/// q -> q^m on exponents: coefficient at e moves to m*e.
template <CoeffRing R>
QSeries<R> scale_exponents(const QSeries<R>& f, long m) {
    if (m < 1) throw Error("scale_exponents: modulus must be positive");
    if (m == 1) return f;
    long order = f.is_exact() ? kExactOrder : m * (f.order() - 1) + 1;
    if (f.is_zero_through_order()) return QSeries<R>::zero(order);
    long lo = m * f.min_exp();
    long hi = m * (std::min(f.support_end(), f.order()) - 1) + 1;
    std::vector<R> c(static_cast<std::size_t>(hi - lo), R(0));
    for (long e = f.min_exp(); e < std::min(f.support_end(), f.order()); ++e)
        c[static_cast<std::size_t>(m * e - lo)] = f.coeff(e);
    return QSeries<R>::from_coeffs(lo, order, std::move(c));
}

/// Apply fn(exponent, coeff) -> S coefficient-wise, preserving the window.
template <CoeffRing S, CoeffRing R, typename Fn>
QSeries<S> map_coeffs(const QSeries<R>& f, Fn&& fn) {
    if (f.is_zero_through_order())
        return f.is_exact() ? QSeries<S>() : QSeries<S>::zero(f.order());
    long lo = f.min_exp();
    long hi = std::min(f.support_end(), f.order());
    std::vector<S> c;
    c.reserve(static_cast<std::size_t>(hi - lo));
    for (long e = lo; e < hi; ++e) c.push_back(fn(e, f.coeff(e)));
    return QSeries<S>::from_coeffs(lo, f.order(), std::move(c));
}

inline QSeries<Eisenstein> to_eisenstein(const QSeries<Rational>& f) {
    return map_coeffs<Eisenstein>(f, [](long, const Rational& c) { return Eisenstein(c); });
}

/// q -> omega^k q: the coefficient at exponent e picks up omega^{k e}.
inline QSeries<Eisenstein> subst_omega(const QSeries<Rational>& f, long k) {
    return map_coeffs<Eisenstein>(f, [k](long e, const Rational& c) {
        return Eisenstein::omega_pow(k * e) * Eisenstein(c);
    });
}

// ---------------------------------------------------------------------------
// Ramanujan theta functions, built from their sum expansions. Unit tests pin
// them against the product forms (q;q)^2/(q^2;q^2) and (q^2;q^2)^2/(q;q).

inline QSeriesQ theta_phi_neg(long N) {
    std::vector<Rational> c(static_cast<std::size_t>(std::max<long>(N, 1)), Rational(0));
    if (N > 0) c[0] = 1;
    for (long n = 1; n * n < N; ++n)
        c[static_cast<std::size_t>(n * n)] = (n % 2 == 0) ? Rational(2) : Rational(-2);
    return QSeriesQ::from_coeffs(0, std::max<long>(N, 1), std::move(c));
}

inline QSeriesQ theta_psi(long N) {
    std::vector<Rational> c(static_cast<std::size_t>(std::max<long>(N, 1)), Rational(0));
    for (long n = 0; n * (n + 1) / 2 < N; ++n)
        c[static_cast<std::size_t>(n * (n + 1) / 2)] = 1;
    return QSeriesQ::from_coeffs(0, std::max<long>(N, 1), std::move(c));
}

// ---------------------------------------------------------------------------
// Exact comparison helpers.

/// First exponent in [min(min_exps), through) where f and g differ, if any.
/// Throws PrecisionError if either side's guaranteed order is below `through`.
template <CoeffRing R>
std::optional<long> first_difference(const QSeries<R>& f, const QSeries<R>& g, long through) {
    if (std::min(f.order(), g.order()) < through)
        throw PrecisionError(
            "comparison through q^" + std::to_string(through - 1) +
            " exceeds guaranteed orders (" + std::to_string(f.order()) + ", " +
            std::to_string(g.order()) + ")");
    long lo = std::min(f.min_exp(), g.min_exp());
    for (long e = lo; e < through; ++e)
        if (!(f.coeff(e) == g.coeff(e))) return e;
    return std::nullopt;
}

template <CoeffRing R>
bool equal_through(const QSeries<R>& f, const QSeries<R>& g, long through) {
    return !first_difference(f, g, through).has_value();
}

} // namespace qv
