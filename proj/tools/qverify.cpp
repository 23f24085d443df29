// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qverify/dsl/eval.hpp"
#include "qverify/dsl/verify.hpp"

namespace {

using namespace qv;
using namespace qv::dsl;

long default_order() {
    if (const char* env = std::getenv("QVERIFY_DEFAULT_ORDER")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        std::cerr << "warning: ignoring malformed QVERIFY_DEFAULT_ORDER='" << env << "'\n";
    }
    return 200;
}

std::optional<std::string> read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "cannot open '" + path + "'";
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return std::nullopt;
}

std::string coeff_atom(const std::string& s) {
    bool composite = false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-' || s[i] == '*') composite = true;
    return composite ? "(" + s + ")" : s;
}

template <typename R>
void print_series(const QSeries<R>& f, long N) {
    long hi = std::min(f.support_end(), std::min(f.order(), N));
    bool first = true;
    for (long e = f.min_exp(); e < hi; ++e) {
        if (is_zero(f.coeff(e))) continue;
        if (!first) std::cout << " ";
        first = false;
        std::cout << e << ":" << coeff_atom(to_coeff_string(f.coeff(e)));
    }
    std::cout << "\n";
}

int cmd_check(const std::string& catalog_path, std::optional<long> order,
              const std::vector<std::string>& only, int jobs, const std::string& json_path) {
    std::string text;
    if (auto err = read_file(catalog_path, text)) {
        std::cerr << "error: " << *err << "\n";
        return 2;
    }
    std::vector<IdentityEntry> entries;
    try {
        entries = parse_catalog(text);
    } catch (const Error& ex) {
        std::cerr << "error: " << catalog_path << ": " << ex.what() << "\n";
        return 2;
    }
    if (!only.empty()) {
        std::vector<IdentityEntry> selected;
        for (const auto& name : only) {
            bool found = false;
            for (const auto& e : entries)
                if (e.name == name) {
                    selected.push_back(e);
                    found = true;
                }
            if (!found) {
                std::cerr << "error: no identity named '" << name << "' in the catalog\n";
                return 2;
            }
        }
        entries = std::move(selected);
    }
    long fallback = default_order();
    for (auto& e : entries)
        if (e.order <= 0) e.order = fallback;

    std::vector<VerificationReport> reports(entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= entries.size()) break;
            reports[i] = verify(entries[i], order);
        }
    };
    if (jobs > 1) {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    } else {
        worker();
    }

    bool all_pass = true;
    for (const auto& r : reports) {
        std::printf("%-5s %s (order %ld, %.1f ms)", status_name(r.status), r.name.c_str(),
                    r.order, r.ms);
        if (r.status == Status::Fail)
            std::printf("  first diff at q^%ld: lhs=%s rhs=%s", *r.first_diff_exp,
                        r.lhs_coeff.c_str(), r.rhs_coeff.c_str());
        if (r.status == Status::Error) std::printf("  %s", r.error.c_str());
        std::printf("\n");
        all_pass = all_pass && r.status == Status::Pass;
    }
    if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << json_path << "'\n";
            return 2;
        }
        out << reports_to_json(reports) << "\n";
    }
    return all_pass ? 0 : 1;
}

int cmd_expand(const std::string& expr_text, std::optional<long> order) {
    long N = order.value_or(default_order());
    try {
        ExprPtr e = parse_expression(expr_text);
        RingScan f;
        scan_ring(e, f, false);
        RingKind ring = decide_ring(f);
        long W = N + 8;
        switch (ring) {
            case RingKind::Rational: print_series(evaluate<Rational>(e, W), N); break;
            case RingKind::Eisenstein: print_series(evaluate<Eisenstein>(e, W), N); break;
            case RingKind::PolyA: print_series(evaluate<PolyA>(e, W), N); break;
            default:
                std::cerr << "error: expand needs a pure-q or poly-a series; "
                             "use the ct command for z-Laurent expressions\n";
                return 2;
        }
    } catch (const Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}

int cmd_ct(const std::string& expr_text, std::optional<long> order) {
    long N = order.value_or(default_order());
    try {
        ExprPtr e = parse_expression(expr_text);
        RingScan f;
        scan_ring(e, f, false);
        RingKind ring = decide_ring(f);
        long W = N + 8;
        switch (ring) {
            case RingKind::LaurentZ:
                print_series(constant_term(evaluate<PolyZ>(e, W)), N);
                break;
            case RingKind::LaurentZEis:
                print_series(constant_term(evaluate<PolyZEis>(e, W)), N);
                break;
            case RingKind::Rational: // already wrapped in ct(...)
                print_series(evaluate<Rational>(e, W), N);
                break;
            case RingKind::Eisenstein:
                print_series(evaluate<Eisenstein>(e, W), N);
                break;
            default:
                std::cerr << "error: ct needs an expression over the z-Laurent ring\n";
                return 2;
        }
    } catch (const Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qverify: exact truncated verification of q-series identities"};
    app.require_subcommand(1);

    std::string catalog_path;
    std::optional<long> order;
    std::vector<std::string> only;
    int jobs = 1;
    std::string json_path;

    auto* check = app.add_subcommand("check", "verify a catalog of identities");
    check->add_option("catalog", catalog_path, "catalog file (.qid)")->required();
    check->add_option("--order", order, "truncation order override for every entry");
    check->add_option("--only", only, "verify only the named identities");
    check->add_option("--jobs", jobs, "worker threads (entries verify independently)")
        ->check(CLI::PositiveNumber);
    check->add_option("--json", json_path, "write a JSON report to this path");

    std::string expr_text;
    auto* expand = app.add_subcommand("expand", "expand an expression to coefficients");
    expand->add_option("expr", expr_text, "expression text")->required();
    expand->add_option("--order", order, "truncation order");

    auto* ct = app.add_subcommand("ct", "constant term of a z-Laurent expression");
    ct->add_option("expr", expr_text, "expression text")->required();
    ct->add_option("--order", order, "truncation order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (check->parsed()) return cmd_check(catalog_path, order, only, jobs, json_path);
    if (expand->parsed()) return cmd_expand(expr_text, order);
    return cmd_ct(expr_text, order);
}
