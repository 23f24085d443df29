// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints exactly one PASS/FAIL line; the
// process exits nonzero if any criterion fails. Orders and time budgets are
// fixed here, not configurable.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qverify/constant_term.hpp"
#include "qverify/dsl/eval.hpp"
#include "qverify/dsl/verify.hpp"
#include "qverify/hypergeom.hpp"
#include "support/mutation.hpp"
#include "support/oracles.hpp"

using namespace qv;
using qv::testing::PartClass;
using qv::testing::Rng;

namespace {

struct Criterion {
    std::string label;
    std::function<bool(std::string&)> run;
};

std::vector<dsl::IdentityEntry> load_catalog() {
    std::ifstream in(QV_CATALOG_PATH, std::ios::binary);
    if (!in) throw Error("cannot open bundled catalog at " QV_CATALOG_PATH);
    std::ostringstream ss;
    ss << in.rdbuf();
    return dsl::parse_catalog(ss.str());
}

const dsl::IdentityEntry& entry(const std::vector<dsl::IdentityEntry>& entries,
                                const std::string& name) {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw Error("catalog entry not found: " + name);
}

bool verify_entry(const std::vector<dsl::IdentityEntry>& entries, const std::string& name,
                  std::string& detail, std::optional<long> order = std::nullopt) {
    auto rep = dsl::verify(entry(entries, name), order);
    if (rep.status == dsl::Status::Pass) return true;
    detail += " [" + name + ": " + status_name(rep.status);
    if (rep.first_diff_exp)
        detail += " at q^" + std::to_string(*rep.first_diff_exp) + " lhs=" + rep.lhs_coeff +
                  " rhs=" + rep.rhs_coeff;
    if (!rep.error.empty()) detail += " " + rep.error;
    detail += "]";
    return false;
}

bool within(double seconds, double budget, std::string& detail) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), " (%.1fs of %.0fs budget)", seconds, budget);
    detail += buf;
    return seconds < budget;
}

// --- criterion 9 property helpers -----------------------------------------

template <typename R, typename Gen>
bool ring_axioms(Gen gen, int cases) {
    for (int i = 0; i < cases; ++i) {
        R x = gen(), y = gen(), z = gen();
        if (!((x + y) + z == x + (y + z))) return false;
        if (!(x * y == y * x)) return false;
        if (!((x * y) * z == x * (y * z))) return false;
        if (!(x * (y + z) == x * y + x * z)) return false;
        if (!(x + (-x) == R(0))) return false;
        if (is_unit(x) && !(x * inv(x) == R(1))) return false;
    }
    return true;
}

} // namespace

int main() {
    auto t_all = std::chrono::steady_clock::now();
    std::vector<dsl::IdentityEntry> entries;
    try {
        entries = load_catalog();
    } catch (const std::exception& ex) {
        std::printf("[FAIL] criterion 0: catalog loads (%s)\n", ex.what());
        return 1;
    }

    std::vector<Criterion> criteria;

    criteria.push_back({"main theorem: double sum = 1/(q^2,q^3;q^6)_inf through q^300 in <60s",
                        [&](std::string& d) {
                            auto t0 = std::chrono::steady_clock::now();
                            bool ok = verify_entry(entries, "AU-conjecture", d, 300);
                            double s = std::chrono::duration<double>(
                                           std::chrono::steady_clock::now() - t0)
                                           .count();
                            return ok && within(s, 60.0, d);
                        }});

    criteria.push_back({"single-sum identity through q^600 in <60s", [&](std::string& d) {
                            auto t0 = std::chrono::steady_clock::now();
                            bool ok = verify_entry(entries, "asym-single-mod18", d, 600);
                            double s = std::chrono::duration<double>(
                                           std::chrono::steady_clock::now() - t0)
                                           .count();
                            return ok && within(s, 60.0, d);
                        }});

    criteria.push_back(
        {"a-generalization through q^120 at every a-degree in <120s; a=q^{2M} matches S_M",
         [&](std::string& d) {
             auto t0 = std::chrono::steady_clock::now();
             auto rep = bivariate_rr_a_check(120);
             if (!rep.ok) {
                 d += " [bivariate diff at q^" + std::to_string(*rep.first_diff) + "]";
                 return false;
             }
             QSeriesA lhs = rr_a_generalization_lhs(120);
             for (long M = 0; M <= 6; ++M) {
                 if (!equal_through(specialize_a(lhs, 2 * M), s_m_eval(M, 120), 120)) {
                     d += " [specialization M=" + std::to_string(M) + " mismatch]";
                     return false;
                 }
             }
             double s =
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
             d += " [max a-degree " + std::to_string(rep.max_a_degree) + "]";
             return within(s, 120.0, d);
         }});

    criteria.push_back({"S_M recurrence and closed form, M = 1..12 at order 200",
                        [&](std::string& d) {
                            for (long M = 1; M <= 12; ++M) {
                                auto r = s_m_recurrence_check(M, 200);
                                auto c = s_m_closed_form_check(M, 200);
                                if (!r.ok || !c.ok) {
                                    d += " [M=" + std::to_string(M) + "]";
                                    return false;
                                }
                            }
                            return true;
                        }});

    criteria.push_back(
        {"contour connection at 120; omega collapse at 60; F-decomposition at 60",
         [&](std::string& d) {
             if (!verify_H_connection(120).ok) {
                 d += " [connection]";
                 return false;
             }
             if (!verify_omega_collapse(60).ok) {
                 d += " [collapse]";
                 return false;
             }
             if (!verify_F_decomposition(60).ok) {
                 d += " [decomposition]";
                 return false;
             }
             return true;
         }});

    criteria.push_back(
        {"theta 3-dissections at 400; product chain steps at 300; huff evaluation at 300",
         [&](std::string& d) {
             bool ok = verify_entry(entries, "theta-phi-3-dissection", d, 400) &&
                       verify_entry(entries, "theta-psi-3-dissection", d, 400);
             for (int k = 1; k <= 5 && ok; ++k)
                 ok = verify_entry(entries, "long-series-step-" + std::to_string(k), d, 300);
             ok = ok && verify_entry(entries, "huff-phi-psi", d, 300) &&
                  verify_entry(entries, "h-calculation", d, 300);
             return ok;
         }});

    criteria.push_back(
        {"theta equals its triple product at 200; reduction steps (i)-(iii) at 150",
         [&](std::string& d) {
             if (!verify_entry(entries, "jtp-theta-product", d, 200)) return false;
             auto rep = verify_au_reduction(150);
             if (!rep.step1.ok) d += " [step i]";
             if (!rep.step2.ok) d += " [step ii]";
             if (!rep.step3.ok) d += " [step iii]";
             return rep.ok();
         }});

    criteria.push_back(
        {"classical catalog at order 200; full catalog run in <300s", [&](std::string& d) {
             auto t0 = std::chrono::steady_clock::now();
             static const char* classical[] = {
                 "RR1",
                 "RR2",
                 "gollnitz-little-1",
                 "gollnitz-little-2",
                 "lebesgue",
                 "css-heine",
                 "css-mod6-1",
                 "css-mod6-2",
                 "gordon-andrews-k2-i1",
                 "gordon-andrews-k2-i2",
                 "gordon-andrews-k3-i1",
                 "gordon-andrews-k3-i2",
                 "gordon-andrews-k3-i3",
                 "gordon-andrews-k4-i1",
                 "gordon-andrews-k4-i2",
                 "gordon-andrews-k4-i3",
                 "gordon-andrews-k4-i4",
                 "kanade-russell-i5",
                 "andrews-uncu-1",
             };
             for (const char* name : classical)
                 if (!verify_entry(entries, name, d, 200)) return false;
             // remaining entries at their catalog orders
             for (const auto& e : entries) {
                 bool done = false;
                 for (const char* name : classical)
                     if (e.name == name) done = true;
                 if (done) continue;
                 if (!verify_entry(entries, e.name, d)) return false;
             }
             double s =
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
             return within(s, 300.0, d);
         }});

    criteria.push_back({"property suites (axioms, recurrence, omega-huff, dissection, CT, "
                        "partition oracle)",
                        [&](std::string& d) {
                            Rng rng(20260809);
                            if (!ring_axioms<Rational>([&] { return rng.rational(); }, 10000) ||
                                !ring_axioms<Eisenstein>([&] { return rng.eisenstein(); },
                                                         10000) ||
                                !ring_axioms<PolyA>([&] { return rng.laurent<'a'>(); }, 10000) ||
                                !ring_axioms<PolyZ>([&] { return rng.laurent<'z'>(); }, 10000)) {
                                d += " [ring axioms]";
                                return false;
                            }
                            for (int i = 0; i < 25; ++i) { // Pochhammer recurrence
                                Rational c = rng.nonzero_rational();
                                long j = rng.range(-3, 10), m = rng.range(1, 6);
                                QSeriesQ prev = pochhammer<Rational>(c, j, m, 0, 140);
                                for (long n = 0; n <= 30; ++n) {
                                    QSeriesQ next = pochhammer<Rational>(c, j, m, n + 1, 140);
                                    if (!(mul_one_minus(prev, c, j + n * m) == next)) {
                                        d += " [poch recurrence]";
                                        return false;
                                    }
                                    prev = next;
                                }
                            }
                            for (int i = 0; i < 100; ++i) { // omega-huff at order 100
                                QSeriesQ f = rng.qseries(100, rng.range(-4, 0));
                                QSeriesEis lhs = subst_omega(f, 0) + subst_omega(f, 1) +
                                                 subst_omega(f, 2);
                                QSeriesEis rhs = QSeriesEis::constant(Eisenstein(3)) *
                                                 to_eisenstein(huff(f, 3));
                                if (!equal_through(lhs, rhs, 100)) {
                                    d += " [omega-huff]";
                                    return false;
                                }
                            }
                            for (int i = 0; i < 60; ++i) { // dissection completeness
                                QSeriesQ f = rng.qseries(60, rng.range(-3, 0));
                                long m = rng.range(1, 6);
                                auto parts = dissect(f, m);
                                QSeriesQ sum = QSeriesQ::zero(f.order());
                                for (const auto& p : parts) sum = sum + p;
                                if (!equal_through(sum, f, 60)) {
                                    d += " [dissection]";
                                    return false;
                                }
                            }
                            for (int i = 0; i < 50; ++i) { // CT linearity
                                auto f = rng.zq_series(25, rng.range(-2, 0));
                                auto g = rng.zq_series(25, rng.range(-2, 0));
                                if (!equal_through(constant_term(f + g),
                                                   constant_term(f) + constant_term(g), 25)) {
                                    d += " [CT linearity]";
                                    return false;
                                }
                            }
                            for (int i = 0; i < 20; ++i) { // random eta quotients vs oracle
                                ProdSpec<Rational> spec;
                                std::vector<PartClass> classes;
                                long nf = rng.range(1, 4);
                                for (long f = 0; f < nf; ++f) {
                                    long m = rng.range(1, 8), j = rng.range(1, m);
                                    long copies = rng.range(1, 2);
                                    spec.factors.push_back(
                                        {Rational(1), j, m, std::nullopt, -copies});
                                    classes.push_back({j, m, copies});
                                }
                                if (!equal_through(eta_quotient(spec, 60),
                                                   qv::testing::partition_series(classes, 60),
                                                   60)) {
                                    d += " [partition oracle]";
                                    return false;
                                }
                            }
                            return true;
                        }});

    criteria.push_back(
        {"negative controls: every bundled identity fails under a one-exponent mutation",
         [&](std::string& d) {
             for (const auto& e : entries) {
                 auto mutated = qv::testing::mutate_entry(e);
                 long order = std::min<long>(e.order > 0 ? e.order : 200, 150);
                 auto rep = dsl::verify(mutated, order);
                 if (rep.status != dsl::Status::Fail || !rep.first_diff_exp.has_value()) {
                     d += " [" + e.name + " -> " + status_name(rep.status) + "]";
                     return false;
                 }
             }
             d += " [" + std::to_string(entries.size()) + " mutations all FAIL]";
             return true;
         }});

    criteria.push_back({"float limit check: 200 terms within 1e-12", [&](std::string& d) {
                            if (!float_1f0_check(200, 1e-12)) return false;
                            if (float_1f0_check(200, 1e-300)) {
                                d += " [accepted an impossible tolerance]";
                                return false;
                            }
                            return true;
                        }});

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& ex) {
            detail += std::string(" [exception: ") + ex.what() + "]";
        }
        double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        std::printf("[%s] criterion %zu: %s%s (%.0f ms)\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].label.c_str(), detail.c_str(), ms);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_all).count();
    std::printf("%d/%zu criteria passed (%.1f s total)\n",
                static_cast<int>(criteria.size()) - failures, criteria.size(), total);
    return failures == 0 ? 0 : 1;
}
