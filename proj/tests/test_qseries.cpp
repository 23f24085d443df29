// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qverify/qseries.hpp"
#include "support/oracles.hpp"

using namespace qv;
using qv::testing::PartClass;
using qv::testing::Rng;

namespace {
QSeriesQ geom(long N) { // 1/(1-q)
    return inv(mul_one_minus(QSeriesQ::one(), Rational(1), 1), N);
}
} // namespace

TEST_CASE("addition and negation") {
    // (1+q) + (-1+q^2) = q + q^2
    QSeriesQ f = QSeriesQ::one() + QSeriesQ::monomial(Rational(1), 1);
    QSeriesQ g = QSeriesQ::monomial(Rational(-1), 0) + QSeriesQ::monomial(Rational(1), 2);
    QSeriesQ s = f + g;
    CHECK(s.coeff(0).is_zero());
    CHECK(s.coeff(1) == Rational(1));
    CHECK(s.coeff(2) == Rational(1));
    CHECK((f + (-f)).is_zero_through_order());
    // q^{-1} + 1 keeps min_exp = -1
    QSeriesQ h = QSeriesQ::monomial(Rational(1), -1) + QSeriesQ::one();
    CHECK(h.min_exp() == -1);
    CHECK(h.coeff(-1) == Rational(1));
    CHECK(h.coeff(0) == Rational(1));
}

TEST_CASE("multiplication contract") {
    // (1-q)(1+q+...+q^{N-1}) telescopes to 1 through the guaranteed order
    long N = 40;
    QSeriesQ g = geom(N);
    QSeriesQ p = mul_one_minus(g, Rational(1), 1);
    CHECK(equal_through(p, QSeriesQ::one(), N));
    // q^{-1} * q = 1
    CHECK(QSeriesQ::monomial(Rational(1), -1) * QSeriesQ::monomial(Rational(1), 1) ==
          QSeriesQ::one());
    // (1-q)(1-q^2) expanded
    QSeriesQ e = pochhammer<Rational>(Rational(1), 1, 1, 2, 50);
    CHECK(e.coeff(0) == Rational(1));
    CHECK(e.coeff(1) == Rational(-1));
    CHECK(e.coeff(2) == Rational(-1));
    CHECK(e.coeff(3) == Rational(1));
    CHECK(e.is_exact());
    // order bookkeeping: truncated * truncated loses nothing at min_exp 0
    Rng rng(5);
    QSeriesQ a = rng.qseries(20) + QSeriesQ::constant(Rational(100)); // nonzero at q^0
    QSeriesQ b = rng.qseries(30) + QSeriesQ::constant(Rational(100));
    CHECK((a * b).order() == 20);
    // negative min_exp costs order, as the contract states
    QSeriesQ shifted = QSeriesQ::monomial(Rational(1), -3) * a; // exact shift
    CHECK((shifted * b).order() == 17);
}

TEST_CASE("inverse requires a unit trailing coefficient") {
    QSeriesQ g = geom(30);
    for (long e = 0; e < 30; ++e) CHECK(g.coeff(e) == Rational(1));
    // q(1-q) inverts to q^{-1}(1+q+...)
    QSeriesQ f = QSeriesQ::monomial(Rational(1), 1) * pochhammer<Rational>(Rational(1), 1, 1, 1, 30);
    QSeriesQ fi = inv(f, 30);
    CHECK(fi.min_exp() == -1);
    CHECK(equal_through(f * fi, QSeriesQ::one(), 25));
    // series over poly-a with non-unit trailing coefficient
    QSeriesA bad = QSeriesA::constant(PolyA(1) + PolyA::gen());
    CHECK_THROWS_AS(inv(bad, 10), NotAUnitError);
    CHECK_THROWS_AS(inv(QSeriesQ::zero(10), 10), NotAUnitError);
}

TEST_CASE("pochhammer examples") {
    // (q;q)_2 = 1 - q - q^2 + q^3
    QSeriesQ p = pochhammer<Rational>(Rational(1), 1, 1, 2, 64);
    CHECK(p == (QSeriesQ::one() - QSeriesQ::monomial(Rational(1), 1)) *
                   (QSeriesQ::one() - QSeriesQ::monomial(Rational(1), 2)));
    // (q^{-1}; q^3)_inf at N=4: (1-q^{-1})(1-q^2), min_exp -1
    QSeriesQ n4 = pochhammer<Rational>(Rational(1), -1, 3, std::nullopt, 4);
    CHECK(n4.min_exp() == -1);
    CHECK(n4.coeff(-1) == Rational(-1));
    CHECK(n4.coeff(0) == Rational(1));
    CHECK(n4.coeff(1) == Rational(1));
    CHECK(n4.coeff(2) == Rational(-1));
    CHECK(n4.coeff(3).is_zero());
    CHECK(n4.order() == 4);
    // (1;q)_1 = 0 exactly (terminating zero factor is allowed for finite n)
    QSeriesQ z = pochhammer<Rational>(Rational(1), 0, 1, 1, 10);
    CHECK(z.is_zero_through_order());
    CHECK(z.is_exact());
    // the same factor in an infinite product is a caller bug
    CHECK_THROWS_AS(pochhammer<Rational>(Rational(1), 0, 1, std::nullopt, 10), ZeroFactorError);
    CHECK_THROWS_AS(pochhammer<Rational>(Rational(1), 1, 0, std::nullopt, 10),
                    DivergentProductError);
}

TEST_CASE("pochhammer recurrence for random parameters") {
    Rng rng(99);
    for (int i = 0; i < 60; ++i) {
        Rational c = rng.nonzero_rational();
        long j = rng.range(-3, 10);
        long m = rng.range(1, 6);
        long N = 140;
        QSeriesQ prev = pochhammer<Rational>(c, j, m, 0, N);
        for (long n = 0; n <= 30; ++n) {
            QSeriesQ next = pochhammer<Rational>(c, j, m, n + 1, N);
            QSeriesQ expect = mul_one_minus(prev, c, j + n * m);
            CHECK(expect == next);
            prev = next;
        }
    }
}

TEST_CASE("eta quotients match the partition oracle") {
    // 1/((q;q^5)(q^4;q^5)) through q^9
    ProdSpec<Rational> rr1;
    rr1.factors.push_back({Rational(1), 1, 5, std::nullopt, -1});
    rr1.factors.push_back({Rational(1), 4, 5, std::nullopt, -1});
    QSeriesQ e = eta_quotient(rr1, 10);
    QSeriesQ oracle = qv::testing::partition_series({{1, 5}, {4, 5}}, 10);
    CHECK(equal_through(e, oracle, 10));
    long expected[] = {1, 1, 1, 1, 2, 2, 3, 3, 4, 5};
    for (long i = 0; i < 10; ++i) CHECK(e.coeff(i) == Rational(expected[i]));

    // 1/((q^2;q^6)(q^3;q^6)) through q^6
    ProdSpec<Rational> au;
    au.factors.push_back({Rational(1), 2, 6, std::nullopt, -1});
    au.factors.push_back({Rational(1), 3, 6, std::nullopt, -1});
    QSeriesQ e2 = eta_quotient(au, 7);
    long expected2[] = {1, 0, 1, 1, 1, 1, 2};
    for (long i = 0; i < 7; ++i) CHECK(e2.coeff(i) == Rational(expected2[i]));

    // empty spec is one
    CHECK(eta_quotient(ProdSpec<Rational>{}, 10) == QSeriesQ::one());
}

TEST_CASE("random negative-power eta quotients against the partition oracle") {
    Rng rng(1234);
    for (int i = 0; i < 20; ++i) {
        ProdSpec<Rational> spec;
        std::vector<PartClass> classes;
        long nf = rng.range(1, 4);
        for (long f = 0; f < nf; ++f) {
            long m = rng.range(1, 8);
            long j = rng.range(1, m);
            long copies = rng.range(1, 2);
            spec.factors.push_back({Rational(1), j, m, std::nullopt, -copies});
            classes.push_back({j, m, copies});
        }
        QSeriesQ e = eta_quotient(spec, 60);
        QSeriesQ oracle = qv::testing::partition_series(classes, 60);
        CHECK(equal_through(e, oracle, 60));
        for (long x = 0; x < 60; ++x) {
            CHECK(e.coeff(x).is_integer());
            CHECK(!(e.coeff(x) < Rational(0)));
        }
    }
}

TEST_CASE("huffing keeps multiples of m at their exponents") {
    // 1 + q + 2q^2 + 3q^3 + 4q^4 -> 1 + 3q^3
    std::vector<Rational> c = {1, 1, 2, 3, 4};
    QSeriesQ f = QSeriesQ::from_coeffs(0, 5, c);
    QSeriesQ h = huff(f, 3);
    CHECK(h.coeff(0) == Rational(1));
    CHECK(h.coeff(1).is_zero());
    CHECK(h.coeff(2).is_zero());
    CHECK(h.coeff(3) == Rational(3));
    CHECK(h.coeff(4).is_zero());
    // negative exponents not divisible by 3 are dropped
    QSeriesQ g = QSeriesQ::monomial(Rational(1), -1) + QSeriesQ::monomial(Rational(1), 3);
    QSeriesQ hg = huff(g, 3);
    CHECK(hg.min_exp() >= 0);
    CHECK(hg.coeff(3) == Rational(1));
    CHECK(huff(f, 1) == f);
}

TEST_CASE("dissection components partition the series") {
    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
        QSeriesQ f = rng.qseries(40, rng.range(-3, 0));
        long m = rng.range(1, 5);
        auto parts = dissect(f, m);
        REQUIRE(parts.size() == static_cast<std::size_t>(m));
        QSeriesQ sum = QSeriesQ::zero(f.order());
        for (long r = 0; r < m; ++r) {
            for (long e = parts[r].min_exp(); e < 40; ++e)
                if (!parts[r].coeff(e).is_zero()) CHECK(((e % m) + m) % m == r);
            sum = sum + parts[r];
        }
        CHECK(equal_through(sum, f, 40));
    }
    // dissect(1+q+q^2+q^3, 2) = [1+q^2, q+q^3]
    std::vector<Rational> c = {1, 1, 1, 1};
    auto parts = dissect(QSeriesQ::from_coeffs(0, 4, c), 2);
    CHECK(parts[0].coeff(0) == Rational(1));
    CHECK(parts[0].coeff(2) == Rational(1));
    CHECK(parts[0].coeff(1).is_zero());
    CHECK(parts[1].coeff(1) == Rational(1));
    CHECK(parts[1].coeff(3) == Rational(1));
    // the three components of phi(-q) sum back to phi(-q)
    QSeriesQ phi = theta_phi_neg(120);
    auto pieces = dissect(phi, 3);
    CHECK(equal_through(pieces[0] + pieces[1] + pieces[2], phi, 120));
}

TEST_CASE("exponent scaling") {
    // scale(1 + q + q^3, 3) = 1 + q^3 + q^9
    std::vector<Rational> c = {1, 1, 0, 1};
    QSeriesQ f = QSeriesQ::from_coeffs(0, 4, c);
    QSeriesQ s = scale_exponents(f, 3);
    CHECK(s.coeff(0) == Rational(1));
    CHECK(s.coeff(3) == Rational(1));
    CHECK(s.coeff(9) == Rational(1));
    CHECK(s.coeff(1).is_zero());
    CHECK(s.order() == 3 * (4 - 1) + 1);
    CHECK(scale_exponents(f, 1) == f);
    CHECK(scale_exponents(QSeriesQ::monomial(Rational(1), -1), 3) ==
          QSeriesQ::monomial(Rational(1), -3));
}

TEST_CASE("omega substitution and the huffing identity") {
    // subst(1 + q + q^2, 1) = 1 + w q + (-1-w) q^2
    std::vector<Rational> c = {1, 1, 1};
    QSeriesQ f = QSeriesQ::from_coeffs(0, 3, c);
    QSeriesEis s = subst_omega(f, 1);
    CHECK(s.coeff(0) == Eisenstein(1));
    CHECK(s.coeff(1) == Eisenstein::omega());
    CHECK(s.coeff(2) == Eisenstein::omega_pow(2));
    CHECK(subst_omega(f, 0) == to_eisenstein(f));
    // exponents divisible by 3 are fixed
    QSeriesQ g = QSeriesQ::one() + QSeriesQ::monomial(Rational(1), 3);
    CHECK(subst_omega(g, 1) == to_eisenstein(g));

    // f(q) + f(wq) + f(w^2 q) = 3 huff(f, 3) for 100 random series at order 100
    Rng rng(31337);
    for (int i = 0; i < 100; ++i) {
        QSeriesQ r = rng.qseries(100, rng.range(-4, 0));
        QSeriesEis lhs = subst_omega(r, 0) + subst_omega(r, 1) + subst_omega(r, 2);
        QSeriesEis rhs = QSeriesEis::constant(Eisenstein(3)) * to_eisenstein(huff(r, 3));
        CHECK(equal_through(lhs, rhs, 100));
    }
}

TEST_CASE("theta builders match their product forms") {
    long N = 200;
    ProdSpec<Rational> phi_spec; // (q;q)^2 / (q^2;q^2)
    phi_spec.factors.push_back({Rational(1), 1, 1, std::nullopt, 2});
    phi_spec.factors.push_back({Rational(1), 2, 2, std::nullopt, -1});
    CHECK(equal_through(theta_phi_neg(N), eta_quotient(phi_spec, N), N));

    ProdSpec<Rational> psi_spec; // (q^2;q^2)^2 / (q;q)
    psi_spec.factors.push_back({Rational(1), 2, 2, std::nullopt, 2});
    psi_spec.factors.push_back({Rational(1), 1, 1, std::nullopt, -1});
    CHECK(equal_through(theta_psi(N), eta_quotient(psi_spec, N), N));
}

TEST_CASE("multiplication is associative and commutative at the overlap order") {
    Rng rng(901);
    for (int i = 0; i < 40; ++i) {
        QSeriesQ a = rng.qseries(rng.range(10, 25), rng.range(-2, 2));
        QSeriesQ b = rng.qseries(rng.range(10, 25), rng.range(-2, 2));
        QSeriesQ c = rng.qseries(rng.range(10, 25), rng.range(-2, 2));
        CHECK(a * b == b * a);
        QSeriesQ l = (a * b) * c, r = a * (b * c);
        long through = std::min(l.order(), r.order());
        CHECK(equal_through(l, r, through));
    }
}

TEST_CASE("comparisons beyond the guaranteed order raise instead of passing") {
    Rng rng(55);
    QSeriesQ a = rng.qseries(20);
    QSeriesQ b = a;
    CHECK(equal_through(a, b, 20));
    CHECK_THROWS_AS(equal_through(a, b, 21), PrecisionError);
    CHECK_THROWS_AS(a.coeff(20), PrecisionError);
    CHECK_THROWS_AS((void)first_difference(a, b, 25), PrecisionError);
}
