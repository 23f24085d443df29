// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#include "qverify/dsl/verify.hpp"

#include <chrono>
#include <exception>

#include <json.hpp>

#include "qverify/dsl/eval.hpp"

namespace qv::dsl {
namespace {

template <typename R>
void run_verify(const IdentityEntry& e, long N, long W, VerificationReport& rep) {
    QSeries<R> lhs = evaluate<R>(e.lhs, W);
    QSeries<R> rhs = evaluate<R>(e.rhs, W);
    auto d = first_difference(lhs, rhs, N);
    if (!d.has_value()) {
        rep.status = Status::Pass;
        return;
    }
    rep.status = Status::Fail;
    rep.first_diff_exp = *d;
    rep.lhs_coeff = to_coeff_string(lhs.coeff(*d));
    rep.rhs_coeff = to_coeff_string(rhs.coeff(*d));
}

} // namespace

VerificationReport verify(const IdentityEntry& entry, std::optional<long> order_override,
                          long pad) {
    VerificationReport rep;
    rep.name = entry.name;
    long N = order_override.value_or(entry.order > 0 ? entry.order : 200);
    rep.order = N;
    auto t0 = std::chrono::steady_clock::now();
    try {
        RingKind ring = infer_entry_ring(entry);
        long W = N + pad;
        switch (ring) {
            case RingKind::Rational: run_verify<Rational>(entry, N, W, rep); break;
            case RingKind::Eisenstein: run_verify<Eisenstein>(entry, N, W, rep); break;
            case RingKind::PolyA: run_verify<PolyA>(entry, N, W, rep); break;
            case RingKind::LaurentZ: run_verify<PolyZ>(entry, N, W, rep); break;
            case RingKind::LaurentZEis: run_verify<PolyZEis>(entry, N, W, rep); break;
        }
    } catch (const std::exception& ex) {
        rep.status = Status::Error;
        rep.error = ex.what();
    }
    rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                 .count();
    return rep;
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json o;
        o["name"] = r.name;
        o["status"] = status_name(r.status);
        o["order"] = r.order;
        if (r.first_diff_exp.has_value()) {
            o["first_diff_exp"] = *r.first_diff_exp;
            o["lhs_coeff"] = r.lhs_coeff;
            o["rhs_coeff"] = r.rhs_coeff;
        }
        if (r.status == Status::Error) o["error"] = r.error;
        o["ms"] = r.ms;
        arr.push_back(std::move(o));
    }
    return arr.dump(2);
}

} // namespace qv::dsl
