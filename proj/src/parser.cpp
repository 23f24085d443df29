// Copyright (c) 2026 The qverify authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "qverify/dsl/ast.hpp"

namespace qv::dsl {
namespace {

enum class Tok { End, Int, Ident, Str, Sym };

struct Token {
    Tok kind = Tok::End;
    long ival = 0;
    std::string text; // identifier, string payload, or symbol spelling
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long v = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                v = v * 10 + (src_[pos_] - '0');
                step();
            }
            tok_.kind = Tok::Int;
            tok_.ival = v;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                s += src_[pos_];
                step();
            }
            tok_.kind = Tok::Ident;
            tok_.text = std::move(s);
            return;
        }
        if (c == '"') {
            step();
            std::string s;
            while (pos_ < src_.size() && src_[pos_] != '"') {
                if (src_[pos_] == '\n') throw SyntaxError(line_, col_, "unterminated string");
                s += src_[pos_];
                step();
            }
            if (pos_ >= src_.size()) throw SyntaxError(line_, col_, "unterminated string");
            step(); // closing quote
            tok_.kind = Tok::Str;
            tok_.text = std::move(s);
            return;
        }
        // Multi-character symbols.
        if (c == '>' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
            tok_.kind = Tok::Sym;
            tok_.text = ">=";
            step();
            step();
            return;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            tok_.kind = Tok::Sym;
            tok_.text = "->";
            step();
            step();
            return;
        }
        static const std::string singles = "+-*/^(){};,=";
        if (singles.find(c) != std::string::npos) {
            tok_.kind = Tok::Sym;
            tok_.text = std::string(1, c);
            step();
            return;
        }
        throw SyntaxError(line_, col_, std::string("unexpected character '") + c + "'");
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') step();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                step();
            } else {
                break;
            }
        }
    }

    void step() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}

    std::vector<IdentityEntry> parse_catalog() {
        std::vector<IdentityEntry> entries;
        while (lex_.peek().kind != Tok::End) entries.push_back(parse_entry());
        return entries;
    }

    ExprPtr parse_single_expression() {
        ExprPtr e = parse_expr();
        expect_end();
        return e;
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw SyntaxError(t.line, t.col, msg);
    }

    Token expect_sym(const std::string& s) {
        Token t = lex_.next();
        if (t.kind != Tok::Sym || t.text != s) fail(t, "expected '" + s + "'");
        return t;
    }

    bool accept_sym(const std::string& s) {
        if (lex_.peek().kind == Tok::Sym && lex_.peek().text == s) {
            lex_.next();
            return true;
        }
        return false;
    }

    Token expect_ident(const std::string& what) {
        Token t = lex_.next();
        if (t.kind != Tok::Ident) fail(t, "expected " + what);
        return t;
    }

    long expect_int() {
        Token t = lex_.next();
        bool neg = false;
        if (t.kind == Tok::Sym && t.text == "-") {
            neg = true;
            t = lex_.next();
        }
        if (t.kind != Tok::Int) fail(t, "expected an integer");
        return neg ? -t.ival : t.ival;
    }

    void expect_end() {
        Token t = lex_.next();
        if (t.kind != Tok::End) fail(t, "unexpected trailing input");
    }

    IdentityEntry parse_entry() {
        Token kw = expect_ident("'identity'");
        if (kw.text != "identity") fail(kw, "expected 'identity'");
        IdentityEntry e;
        e.line = kw.line;
        Token name = lex_.next();
        if (name.kind != Tok::Str) fail(name, "expected a quoted identity name");
        e.name = name.text;
        while (lex_.peek().kind == Tok::Ident) {
            std::string key = lex_.peek().text;
            if (key == "order") {
                lex_.next();
                e.order = expect_int();
            } else if (key == "ring") {
                lex_.next();
                Token r = expect_ident("a ring name");
                if (r.text == "rational") e.ring_hint = RingKind::Rational;
                else if (r.text == "eisenstein") e.ring_hint = RingKind::Eisenstein;
                else if (r.text == "poly_a") e.ring_hint = RingKind::PolyA;
                else if (r.text == "laurent_z") e.ring_hint = RingKind::LaurentZ;
                else fail(r, "unknown ring '" + r.text + "'");
            } else if (key == "tag") {
                lex_.next();
                Token t = lex_.next();
                if (t.kind != Tok::Str) fail(t, "expected a quoted tag");
                e.tags.push_back(t.text);
            } else {
                break;
            }
        }
        expect_sym("{");
        Token lhs_kw = expect_ident("'lhs'");
        if (lhs_kw.text != "lhs") fail(lhs_kw, "expected 'lhs'");
        expect_sym("=");
        e.lhs = parse_expr();
        accept_sym(";");
        Token rhs_kw = expect_ident("'rhs'");
        if (rhs_kw.text != "rhs") fail(rhs_kw, "expected 'rhs'");
        expect_sym("=");
        e.rhs = parse_expr();
        accept_sym(";");
        expect_sym("}");
        return e;
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        while (lex_.peek().kind == Tok::Sym &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            std::string op = lex_.next().text;
            ExprPtr rhs = parse_term();
            e = Expr::binary(op == "+" ? Kind::Add : Kind::Sub, std::move(e), std::move(rhs));
        }
        return e;
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        while (lex_.peek().kind == Tok::Sym &&
               (lex_.peek().text == "*" || lex_.peek().text == "/")) {
            std::string op = lex_.next().text;
            ExprPtr rhs = parse_unary();
            e = Expr::binary(op == "*" ? Kind::Mul : Kind::Div, std::move(e), std::move(rhs));
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (accept_sym("-")) return Expr::unary(Kind::Neg, parse_unary());
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (accept_sym("^")) {
            ExprPtr exp;
            if (accept_sym("-")) {
                Token t = lex_.next();
                if (t.kind != Tok::Int) fail(t, "expected an integer exponent after '^-'");
                exp = Expr::integer(-t.ival);
            } else if (lex_.peek().kind == Tok::Int) {
                exp = Expr::integer(lex_.next().ival);
            } else if (lex_.peek().kind == Tok::Ident) {
                exp = parse_primary();
            } else {
                expect_sym("(");
                exp = parse_expr();
                expect_sym(")");
            }
            return Expr::binary(Kind::Pow, std::move(base), std::move(exp));
        }
        return base;
    }

    ExprPtr parse_primary() {
        const Token& p = lex_.peek();
        if (p.kind == Tok::Int) return Expr::integer(lex_.next().ival);
        if (p.kind == Tok::Sym && p.text == "(") {
            lex_.next();
            ExprPtr e = parse_expr();
            expect_sym(")");
            return e;
        }
        if (p.kind != Tok::Ident) fail(p, "expected an expression");
        Token id = lex_.next();
        const std::string& s = id.text;
        if (s == "q") return Expr::make(Kind::VarQ);
        if (s == "a") return Expr::make(Kind::VarA);
        if (s == "z") return Expr::make(Kind::VarZ);
        if (s == "omega") return Expr::make(Kind::Omega);
        if (s == "inf") fail(id, "'inf' is only valid as a Pochhammer length");
        if (s == "C") return parse_binom(id);
        if (s == "poch") return parse_poch();
        if (s == "sum") return parse_sum();
        if (s == "ct") return parse_wrapped(Kind::CT);
        if (s == "huff") return parse_modular(Kind::Huff);
        if (s == "scale") return parse_modular(Kind::Scale);
        if (s == "subst") return parse_subst();
        if (s == "phi") return parse_phi();
        if (s == "jtp_theta") {
            expect_sym("(");
            expect_sym(")");
            return Expr::make(Kind::Theta);
        }
        // Anything else is a summation index reference.
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Index;
        e->name = s;
        return e;
    }

    ExprPtr parse_binom(const Token& at) {
        expect_sym("(");
        ExprPtr arg = parse_expr();
        expect_sym(",");
        long two = expect_int();
        if (two != 2) fail(at, "only C(., 2) binomials are supported");
        expect_sym(")");
        return Expr::unary(Kind::Binom2, std::move(arg));
    }

    ExprPtr parse_poch() {
        expect_sym("(");
        ExprPtr base = parse_expr();
        expect_sym(";");
        ExprPtr step = parse_expr();
        expect_sym(";");
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Poch;
        e->kids = {std::move(base), std::move(step)};
        if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "inf") {
            lex_.next();
        } else {
            e->kids.push_back(parse_expr());
        }
        expect_sym(")");
        return e;
    }

    ExprPtr parse_sum() {
        expect_sym("(");
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Sum;
        while (true) {
            Token id = expect_ident("a summation index");
            expect_sym(">=");
            long lo = expect_int();
            e->binders.push_back({id.text, lo});
            if (accept_sym(",")) continue;
            break;
        }
        expect_sym(";");
        e->kids.push_back(parse_expr());
        expect_sym(")");
        return e;
    }

    ExprPtr parse_wrapped(Kind k) {
        expect_sym("(");
        ExprPtr body = parse_expr();
        expect_sym(")");
        return Expr::unary(k, std::move(body));
    }

    ExprPtr parse_modular(Kind k) {
        expect_sym("(");
        ExprPtr body = parse_expr();
        expect_sym(",");
        long m = expect_int();
        expect_sym(")");
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->kids = {std::move(body)};
        e->ival = m;
        return e;
    }

    // subst(EXPR; q -> omega*q) | subst(EXPR; q -> omega^K*q) | subst(EXPR; a -> q^J)
    ExprPtr parse_subst() {
        expect_sym("(");
        ExprPtr body = parse_expr();
        expect_sym(";");
        Token var = expect_ident("'q' or 'a'");
        expect_sym("->");
        if (var.text == "q") {
            Token om = expect_ident("'omega'");
            if (om.text != "omega") fail(om, "substitutions for q must be omega^k * q");
            long k = 1;
            if (accept_sym("^")) k = expect_int();
            expect_sym("*");
            Token qq = expect_ident("'q'");
            if (qq.text != "q") fail(qq, "substitutions for q must be omega^k * q");
            expect_sym(")");
            auto e = std::make_shared<Expr>();
            e->kind = Kind::SubstOmega;
            e->kids = {std::move(body)};
            e->ival = k;
            return e;
        }
        if (var.text == "a") {
            Token qq = expect_ident("'q'");
            if (qq.text != "q") fail(qq, "substitutions for a must be q^j");
            long j = 1;
            if (accept_sym("^")) j = expect_int();
            expect_sym(")");
            auto e = std::make_shared<Expr>();
            e->kind = Kind::SubstA;
            e->kids = {std::move(body)};
            e->ival = j;
            return e;
        }
        fail(var, "only q and a can be substituted");
    }

    // phi(u1, u2, ...; l1, l2, ...; base; arg)
    ExprPtr parse_phi() {
        expect_sym("(");
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Phi;
        while (true) {
            e->kids.push_back(parse_expr());
            ++e->phi_uppers;
            if (accept_sym(",")) continue;
            break;
        }
        expect_sym(";");
        while (true) {
            e->kids.push_back(parse_expr());
            ++e->phi_lowers;
            if (accept_sym(",")) continue;
            break;
        }
        expect_sym(";");
        e->kids.push_back(parse_expr()); // base
        expect_sym(";");
        e->kids.push_back(parse_expr()); // argument
        expect_sym(")");
        return e;
    }

    Lexer lex_;
};

int precedence(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

void print(const ExprPtr& e, std::string& out, int parent_prec) {
    int prec = precedence(e->kind);
    bool paren = prec < parent_prec;
    if (paren) out += "(";
    switch (e->kind) {
        case Kind::Integer: {
            if (e->ival < 0) {
                out += "(" + std::to_string(e->ival) + ")";
            } else {
                out += std::to_string(e->ival);
            }
            break;
        }
        case Kind::VarQ: out += "q"; break;
        case Kind::VarA: out += "a"; break;
        case Kind::VarZ: out += "z"; break;
        case Kind::Omega: out += "omega"; break;
        case Kind::Index: out += e->name; break;
        case Kind::Add:
        case Kind::Sub:
            print(e->kids[0], out, prec);
            out += e->kind == Kind::Add ? " + " : " - ";
            print(e->kids[1], out, prec + 1);
            break;
        case Kind::Mul:
        case Kind::Div:
            print(e->kids[0], out, prec);
            out += e->kind == Kind::Mul ? "*" : "/";
            print(e->kids[1], out, prec + 1);
            break;
        case Kind::Neg:
            out += "-";
            print(e->kids[0], out, prec);
            break;
        case Kind::Pow:
            print(e->kids[0], out, prec + 1);
            out += "^";
            if (e->kids[1]->kind == Kind::Integer && e->kids[1]->ival >= 0) {
                out += std::to_string(e->kids[1]->ival);
            } else if (e->kids[1]->kind == Kind::Integer) {
                out += "-" + std::to_string(-e->kids[1]->ival);
            } else if (e->kids[1]->kind == Kind::Index) {
                out += e->kids[1]->name;
            } else {
                out += "(";
                print(e->kids[1], out, 0);
                out += ")";
            }
            break;
        case Kind::Binom2:
            out += "C(";
            print(e->kids[0], out, 0);
            out += ", 2)";
            break;
        case Kind::Poch:
            out += "poch(";
            print(e->kids[0], out, 0);
            out += "; ";
            print(e->kids[1], out, 0);
            out += "; ";
            if (e->kids.size() > 2) print(e->kids[2], out, 0);
            else out += "inf";
            out += ")";
            break;
        case Kind::Sum: {
            out += "sum(";
            bool first = true;
            for (const auto& b : e->binders) {
                if (!first) out += ", ";
                first = false;
                out += b.name + " >= " + std::to_string(b.lower);
            }
            out += "; ";
            print(e->kids[0], out, 0);
            out += ")";
            break;
        }
        case Kind::CT:
            out += "ct(";
            print(e->kids[0], out, 0);
            out += ")";
            break;
        case Kind::Huff:
        case Kind::Scale:
            out += e->kind == Kind::Huff ? "huff(" : "scale(";
            print(e->kids[0], out, 0);
            out += ", " + std::to_string(e->ival) + ")";
            break;
        case Kind::SubstOmega:
            out += "subst(";
            print(e->kids[0], out, 0);
            out += "; q -> omega^" + std::to_string(e->ival) + "*q)";
            break;
        case Kind::SubstA:
            out += "subst(";
            print(e->kids[0], out, 0);
            out += "; a -> q^" + std::to_string(e->ival) + ")";
            break;
        case Kind::Phi: {
            out += "phi(";
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                if (i > 0) {
                    bool boundary = i == e->phi_uppers || i == e->phi_uppers + e->phi_lowers ||
                                    i == e->kids.size() - 1;
                    out += boundary ? "; " : ", ";
                }
                print(e->kids[i], out, 0);
            }
            out += ")";
            break;
        }
        case Kind::Theta: out += "jtp_theta()"; break;
    }
    if (paren) out += ")";
}

} // namespace

std::vector<IdentityEntry> parse_catalog(const std::string& text) {
    return Parser(text).parse_catalog();
}

ExprPtr parse_expression(const std::string& text) {
    return Parser(text).parse_single_expression();
}

std::string to_text(const ExprPtr& e) {
    std::string out;
    print(e, out, 0);
    return out;
}

std::string to_text(const IdentityEntry& e) {
    std::string out = "identity \"" + e.name + "\" order " + std::to_string(e.order);
    if (e.ring_hint) {
        std::string r = ring_kind_name(*e.ring_hint);
        for (auto& c : r)
            if (c == '-') c = '_';
        out += " ring " + r;
    }
    for (const auto& t : e.tags) out += " tag \"" + t + "\"";
    out += " {\n  lhs = " + to_text(e.lhs) + ";\n  rhs = " + to_text(e.rhs) + ";\n}\n";
    return out;
}

} // namespace qv::dsl
