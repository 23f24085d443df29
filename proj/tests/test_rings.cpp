// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qverify/eisenstein.hpp"
#include "qverify/laurent_poly.hpp"
#include "qverify/rational.hpp"
#include "support/oracles.hpp"

using namespace qv;
using qv::testing::Rng;

TEST_CASE("rational arithmetic stays canonical") {
    Rational a(1, 2), b(1, 3);
    CHECK(a + b == Rational(5, 6));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(3, -6).den() == 2); // den normalized positive
    CHECK(Rational(3, -6).num() == -1);
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational(2, 3).inv() == Rational(3, 2));
    CHECK((a - a).is_zero());
    CHECK(Rational(-5, 6).str() == "-5/6");
    CHECK_THROWS_AS(Rational(0).inv(), NotAUnitError);
    CHECK_THROWS_AS(Rational(1, 0), NotAUnitError);
}

TEST_CASE("omega powers reduce onto the basis {1, omega}") {
    auto w = Eisenstein::omega();
    CHECK(w * w == Eisenstein(Rational(-1), Rational(-1)));        // w^2 = -1-w
    CHECK(w * w * w == Eisenstein(1));                             // w^3 = 1
    CHECK(Eisenstein::omega_pow(0) == Eisenstein(1));
    CHECK(Eisenstein::omega_pow(2) == Eisenstein(Rational(-1), Rational(-1)));
    CHECK(Eisenstein::omega_pow(-1) == Eisenstein::omega_pow(2)); // w^{-1} = w^2
    CHECK(Eisenstein(1) + w + w * w == Eisenstein(0));
    CHECK((Eisenstein(1) - w) * (Eisenstein(1) - w * w) == Eisenstein(3));
    // 1/(1-w) = (2+w)/3
    CHECK((Eisenstein(1) - w).inv() == Eisenstein(Rational(2, 3), Rational(1, 3)));
}

TEST_CASE("eisenstein norm is multiplicative") {
    Rng rng(2026);
    for (int i = 0; i < 2000; ++i) {
        Eisenstein x = rng.eisenstein(), y = rng.eisenstein();
        CHECK((x * y).norm() == x.norm() * y.norm());
    }
}

TEST_CASE("laurent polynomial basics") {
    PolyA a = PolyA::gen();
    PolyA p = a * a - a; // a^2 - a
    CHECK(p.coeff(2) == Rational(1));
    CHECK(p.coeff(1) == Rational(-1));
    CHECK(p.coeff(0).is_zero());
    CHECK(p.min_deg() == 1);
    CHECK(p.max_deg() == 2);
    CHECK(p.str() == "-1*a+a^2");

    PolyA m = PolyA::monomial(Rational(2, 3), -4);
    CHECK(m.is_unit());
    CHECK(m.inv() == PolyA::monomial(Rational(3, 2), 4));
    CHECK(m * m.inv() == PolyA(1));

    PolyA one_plus_a = PolyA(1) + a;
    CHECK(!one_plus_a.is_unit());
    CHECK_THROWS_AS(one_plus_a.inv(), NotAUnitError);
    CHECK_THROWS_AS(PolyA().inv(), NotAUnitError);
    CHECK_THROWS_AS(PolyA().min_deg(), Error);
}

TEST_CASE("laurent multiplication respects degree bounds over a domain") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        PolyA f = rng.laurent<'a'>(), g = rng.laurent<'a'>();
        if (f.is_zero() || g.is_zero()) continue;
        PolyA fg = f * g;
        REQUIRE(!fg.is_zero());
        CHECK(fg.min_deg() == f.min_deg() + g.min_deg());
        CHECK(fg.max_deg() == f.max_deg() + g.max_deg());
    }
}

namespace {

template <typename R, typename Gen>
void check_ring_axioms(Gen gen, int cases) {
    for (int i = 0; i < cases; ++i) {
        R x = gen(), y = gen(), z = gen();
        CHECK((x + y) + z == x + (y + z));
        CHECK(x + y == y + x);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * y == y * x);
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x + (-x) == R(0));
        CHECK(x * R(1) == x);
        CHECK(x + R(0) == x);
        if (is_unit(x)) CHECK(x * inv(x) == R(1));
    }
}

} // namespace

TEST_CASE("ring axioms hold on random elements") {
    // >= 10^4 cases per ring.
    Rng rng(42);
    check_ring_axioms<Rational>([&] { return rng.rational(); }, 10000);
    check_ring_axioms<Eisenstein>([&] { return rng.eisenstein(); }, 10000);
    check_ring_axioms<PolyA>([&] { return rng.laurent<'a'>(); }, 10000);
    check_ring_axioms<PolyZ>([&] { return rng.laurent<'z'>(); }, 10000);
}
