#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toruslocus/laurent.hpp"

namespace toruslocus {

/// Expression text plus the variable ordering that gives exponent positions.
struct ExprSource {
    std::string text;
    std::vector<std::string> variable_order;
};

/// Syntax/semantic error with the character offset it was detected at.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
    size_t position;
};

namespace detail {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    size_t pos;
};

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') { ++i; continue; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Number, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({k, std::string(1, c), i});
        ++i;
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

/// Recursive-descent parser for
///   expr    := ('+'|'-')? term (('+'|'-') term)*
///   term    := factor ('*' factor)*
///   factor  := base ('^' int)?
///   base    := var | literal | '(' expr ')'
///   literal := rational | rational 'i' | 'i'      ("3*i" parses as 3 * i)
///   rational:= int ('/' int)?
/// `i` is reserved; `^` binds tighter than `*`; implicit multiplication of
/// variables is rejected. Every factor is lifted to a LaurentPoly so that
/// parenthesised subexpressions compose with powers and products uniformly.
class Parser {
public:
    Parser(const ExprSource& src) : src_(src), toks_(tokenize(src.text)) {
        for (size_t k = 0; k < src.variable_order.size(); ++k) {
            const std::string& name = src.variable_order[k];
            if (name == "i") throw ParseError("'i' is reserved and cannot name a variable", 0);
            for (size_t j = 0; j < k; ++j)
                if (src.variable_order[j] == name)
                    throw ParseError("duplicate variable name '" + name + "'", 0);
        }
    }

    LaurentPoly run() {
        if (toks_.front().kind == Tok::End) throw ParseError("empty expression", 0);
        LaurentPoly p = expr();
        expect(Tok::End, "end of input");
        return p;
    }

private:
    const Token& peek(size_t ahead = 0) const {
        size_t k = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[k];
    }
    Token advance() { return toks_[pos_++]; }
    void expect(Tok k, const char* what) {
        if (peek().kind != k)
            throw ParseError(std::string("expected ") + what + ", got '" + describe(peek()) + "'",
                             peek().pos);
        advance();
    }
    static std::string describe(const Token& t) {
        return t.kind == Tok::End ? std::string("end of input") : t.text;
    }

    int n() const { return static_cast<int>(src_.variable_order.size()); }

    LaurentPoly expr() {
        bool neg = false;
        if (peek().kind == Tok::Plus) advance();
        else if (peek().kind == Tok::Minus) { neg = true; advance(); }
        LaurentPoly acc = term();
        if (neg) acc = -acc;
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = advance().kind == Tok::Minus;
            LaurentPoly t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    LaurentPoly term() {
        LaurentPoly acc = factor();
        while (peek().kind == Tok::Star) {
            advance();
            acc = acc * factor();
        }
        return acc;
    }

    LaurentPoly factor() {
        LaurentPoly b = base();
        if (peek().kind == Tok::Caret) {
            size_t caret_pos = advance().pos;
            int e = exponent();
            b = poly_pow(b, e, caret_pos);
        }
        return b;
    }

    int exponent() {
        int sign = 1;
        if (peek().kind == Tok::Minus) { sign = -1; advance(); }
        else if (peek().kind == Tok::Plus) advance();
        if (peek().kind != Tok::Number)
            throw ParseError("expected integer exponent", peek().pos);
        Token t = advance();
        try {
            long long v = std::stoll(t.text);
            if (v > 512) throw std::out_of_range("");
            return sign * static_cast<int>(v);
        } catch (const std::out_of_range&) {
            throw ParseError("exponent out of range", t.pos);
        }
    }

    LaurentPoly poly_pow(const LaurentPoly& p, int e, size_t at) {
        if (e < 0) {
            // Laurent inversion is only defined for monomials.
            if (p.term_count() != 1)
                throw ParseError("negative power of a non-monomial", at);
            const auto& [exps, c] = *p.terms().begin();
            if (c.is_zero()) throw ParseError("negative power of zero", at);
            LaurentPoly inv = LaurentPoly::monomial(n(), GaussianRational(1) / c, -exps);
            return poly_pow(inv, -e, at);
        }
        LaurentPoly acc = LaurentPoly::constant(n(), GaussianRational(1));
        LaurentPoly sq = p;
        unsigned k = static_cast<unsigned>(e);
        while (k) {
            if (k & 1u) acc = acc * sq;
            k >>= 1u;
            if (k) sq = sq * sq;
        }
        return acc;
    }

    LaurentPoly base() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::LParen: {
                advance();
                LaurentPoly p = expr();
                expect(Tok::RParen, "')'");
                return p;
            }
            case Tok::Ident: {
                advance();
                if (t.text == "i")
                    return LaurentPoly::constant(n(), GaussianRational::unit_i());
                for (size_t k = 0; k < src_.variable_order.size(); ++k)
                    if (src_.variable_order[k] == t.text)
                        return LaurentPoly::variable(n(), static_cast<int>(k));
                throw ParseError("unknown variable '" + t.text + "'", t.pos);
            }
            case Tok::Number: {
                Rational q = rational();
                // Adjacent `i` ("3i", "23/5i") folds into a Gaussian literal.
                if (peek().kind == Tok::Ident && peek().text == "i") {
                    advance();
                    return LaurentPoly::constant(n(), GaussianRational(Rational(0), q));
                }
                return LaurentPoly::constant(n(), GaussianRational(q));
            }
            default:
                throw ParseError("expected variable, literal, or '('; got '" + describe(t) + "'",
                                 t.pos);
        }
    }

    Rational rational() {
        Token num = advance();
        BigInt a(num.text);
        if (peek().kind == Tok::Slash && peek(1).kind == Tok::Number) {
            advance();
            Token den = advance();
            BigInt b(den.text);
            if (b == 0) throw ParseError("zero denominator in literal", den.pos);
            return Rational(a, b);
        }
        return Rational(a);
    }

    const ExprSource& src_;
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

}  // namespace detail

inline LaurentPoly parse_poly(const ExprSource& src) {
    if (src.variable_order.empty())
        throw ParseError("no variables declared", 0);
    return detail::Parser(src).run();
}

inline LaurentPoly parse_poly(const std::string& text, std::vector<std::string> vars) {
    return parse_poly(ExprSource{text, std::move(vars)});
}

namespace detail {

/// Sign-folded coefficient: `negative` carries the printed sign, `text` the
/// magnitude part ("" means an implicit 1 in front of a monomial).
struct PrintedCoeff {
    bool negative = false;
    std::string text;
};

inline PrintedCoeff print_coeff(const GaussianRational& c, bool constant_term) {
    PrintedCoeff out;
    if (c.im == 0) {
        out.negative = c.re < 0;
        Rational mag = abs(c.re);
        if (mag != 1 || constant_term) out.text = to_string(mag);
    } else if (c.re == 0) {
        out.negative = c.im < 0;
        Rational mag = abs(c.im);
        out.text = mag == 1 ? "i" : to_string(mag) + "*i";
    } else {
        out.negative = c.re < 0;
        GaussianRational d = out.negative ? -c : c;
        out.text = "(" + to_string(d) + ")";
    }
    return out;
}

}  // namespace detail

/// Deterministic pretty-printer: terms in descending graded-lex order, signs
/// folded into the separators ("- i*z" rather than "+ -1*i*z"). Output parses
/// back to an identical term collection.
inline std::string format_poly(const LaurentPoly& p, const std::vector<std::string>& vars) {
    if (static_cast<int>(vars.size()) != p.vars())
        throw std::invalid_argument("format_poly: variable-name count mismatch");
    if (p.is_zero()) return "0";

    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (size_t k = 0; k < vars.size(); ++k) {
            if (e[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[k];
            if (e[k] != 1) mono += "^" + std::to_string(e[k]);
        }
        detail::PrintedCoeff pc = detail::print_coeff(c, mono.empty());

        if (first) {
            if (pc.negative) out += "-";
            first = false;
        } else {
            out += pc.negative ? " - " : " + ";
        }
        if (pc.text.empty()) out += mono;
        else if (mono.empty()) out += pc.text;
        else out += pc.text + "*" + mono;
    }
    return out;
}

}  // namespace toruslocus
