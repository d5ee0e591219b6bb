#include "tcsolve/parser.hpp"

#include "tcsolve/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace tcsolve {

namespace {

// ------------------------------------------------------------------ values

/// Sum over monomials in f, f', ... of exponential-fraction coefficients.
using Expr = std::map<PowerVector, ExpFraction>;

void trim(PowerVector& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void add_to(Expr& e, PowerVector p, const ExpFraction& c) {
    trim(p);
    auto it = e.find(p);
    if (it == e.end()) {
        if (!c.is_zero()) e.emplace(std::move(p), c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) e.erase(it);
}

Expr constant(const ExpFraction& c) {
    Expr e;
    add_to(e, {}, c);
    return e;
}

Expr add(const Expr& a, const Expr& b, bool subtract) {
    Expr out = a;
    for (const auto& [p, c] : b) add_to(out, p, subtract ? -c : c);
    return out;
}

Expr mul(const Expr& a, const Expr& b) {
    Expr out;
    for (const auto& [pa, ca] : a)
        for (const auto& [pb, cb] : b) {
            PowerVector p(std::max(pa.size(), pb.size()), 0);
            for (size_t k = 0; k < pa.size(); ++k) p[k] += pa[k];
            for (size_t k = 0; k < pb.size(); ++k) p[k] += pb[k];
            add_to(out, p, ca * cb);
        }
    return out;
}

bool f_free(const Expr& e) { return e.empty() || (e.size() == 1 && e.begin()->first.empty()); }

ExpFraction scalar_of(const Expr& e) { return e.empty() ? ExpFraction() : e.begin()->second; }

// ------------------------------------------------------------------ lexer

enum class Tok { Number, Ident, Prime, Plus, Minus, Star, Slash, Caret, LParen, RParen, Equals, End };

struct Token {
    Tok kind;
    std::string text;
    size_t column;  // 1-based
};

class Parser {
public:
    Parser(const std::string& text, size_t line, size_t column_offset)
        : text_(text), line_(line), offset_(column_offset) {
        lex();
    }

    Expr expression_to_end() {
        Expr e = expression();
        expect(Tok::End, "end of input");
        return e;
    }

    /// lhs = rhs, both parsed.
    std::pair<Expr, Expr> equation() {
        Expr lhs = expression();
        expect(Tok::Equals, "'='");
        Expr rhs = expression();
        expect(Tok::End, "end of input");
        return {lhs, rhs};
    }

    [[noreturn]] void error(ErrorKind kind, size_t column, const std::string& msg) const {
        std::ostringstream os;
        os << "line " << line_ << ", column " << column + offset_ << ": " << msg;
        fail(kind, os.str());
    }

private:
    static constexpr const char* kOperand = "expected operand (number, z, i, f, f', D<k>(f), exp(...), '(' or '-')";

    void lex() {
        size_t k = 0;
        while (k < text_.size()) {
            char c = text_[k];
            size_t col = k + 1;
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++k;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                size_t s = k;
                while (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) ++k;
                toks_.push_back({Tok::Number, text_.substr(s, k - s), col});
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t s = k;
                while (k < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[k])) || text_[k] == '_')) ++k;
                toks_.push_back({Tok::Ident, text_.substr(s, k - s), col});
            } else {
                Tok t;
                switch (c) {
                    case '\'': t = Tok::Prime; break;
                    case '+': t = Tok::Plus; break;
                    case '-': t = Tok::Minus; break;
                    case '*': t = Tok::Star; break;
                    case '/': t = Tok::Slash; break;
                    case '^': t = Tok::Caret; break;
                    case '(': t = Tok::LParen; break;
                    case ')': t = Tok::RParen; break;
                    case '=': t = Tok::Equals; break;
                    default: error(ErrorKind::SyntaxError, col, std::string("unexpected character '") + c + "'");
                }
                toks_.push_back({t, std::string(1, c), col});
                ++k;
            }
        }
        toks_.push_back({Tok::End, "", text_.size() + 1});
    }

    const Token& peek() const { return toks_[pos_]; }
    bool accept(Tok t) {
        if (peek().kind != t) return false;
        ++pos_;
        return true;
    }
    const Token& expect(Tok t, const char* what) {
        if (peek().kind != t) error(ErrorKind::SyntaxError, peek().column, std::string("expected ") + what);
        return toks_[pos_++];
    }

    // expression := ['-'|'+'] term (('+'|'-') term)*
    Expr expression() {
        Expr e;
        bool first = true;
        for (;;) {
            bool neg = false;
            if (first) {
                if (accept(Tok::Minus)) neg = true;
                else accept(Tok::Plus);
            } else if (accept(Tok::Minus)) {
                neg = true;
            } else if (!accept(Tok::Plus)) {
                break;
            }
            e = add(e, term(), neg);
            first = false;
        }
        return e;
    }

    // term := unary (('*'|'/') unary)*
    Expr term() {
        Expr e = unary();
        for (;;) {
            if (accept(Tok::Star)) {
                e = mul(e, unary());
            } else if (peek().kind == Tok::Slash) {
                size_t col = peek().column;
                ++pos_;
                Expr d = unary();
                e = divide(e, d, col);
            } else {
                return e;
            }
        }
    }

    ExpFraction divisor(const Expr& d, size_t col) const {
        if (!f_free(d)) error(ErrorKind::InvalidInput, col, "division by an expression in f");
        ExpFraction v = scalar_of(d);
        if (v.is_zero()) error(ErrorKind::DivisionByZero, col, "division by zero");
        return v;
    }

    /// Quotient built directly; exact cancellation against a long denominator is not attempted.
    static ExpFraction quotient(const ExpFraction& x, const ExpFraction& y) {
        return {x.num() * y.den(), x.den() * y.num()};
    }

    Expr divide(const Expr& e, const Expr& d, size_t col) const {
        ExpFraction v = divisor(d, col);
        Expr out;
        for (const auto& [p, c] : e) add_to(out, p, quotient(c, v));
        return out;
    }

    // unary := '-' unary | power
    Expr unary() {
        if (accept(Tok::Minus)) return add(Expr{}, unary(), true);
        return power();
    }

    // power := atom ['^' exponent]
    Expr power() {
        size_t base_col = peek().column;
        Expr base = atom();
        if (!accept(Tok::Caret)) return base;
        size_t col = peek().column;
        Rational e = exponent();
        if (e.get_den() == 1) {
            long k = e.get_num().get_si();
            if (k >= 0) {
                Expr out = constant(ExpFraction(1));
                for (long j = 0; j < k; ++j) out = mul(out, base);
                return out;
            }
            ExpFraction v = divisor(base, base_col);
            return constant(quotient(ExpFraction(1), v.pow(static_cast<unsigned>(-k))));
        }
        if (!f_free(base) || !(scalar_of(base) == ExpFraction(RationalFunction::z())))
            error(ErrorKind::RamificationError, col, "fractional powers apply to z only");
        Rational a = abs(e);
        RationalFunction zp = PuiseuxPoly::z_power(GaussianRational(1), a);
        if (sgn(e) < 0) zp = RationalFunction(1) / zp;
        return constant(ExpFraction(zp));
    }

    // exponent := NUMBER | '-' NUMBER | '(' ['-'] NUMBER ['/' NUMBER] ')'
    Rational exponent() {
        bool paren = accept(Tok::LParen);
        bool neg = accept(Tok::Minus);
        Rational e(expect(Tok::Number, "integer exponent").text);
        if (paren && peek().kind == Tok::Slash) {
            size_t col = peek().column;
            ++pos_;
            Rational d(expect(Tok::Number, "exponent denominator").text);
            if (sgn(d) == 0) error(ErrorKind::RamificationError, col, "zero exponent denominator");
            e /= d;
        }
        if (paren) expect(Tok::RParen, "')'");
        e.canonicalize();
        return neg ? Rational(-e) : e;
    }

    Expr atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: {
                ++pos_;
                return constant(ExpFraction(RationalFunction(GaussianRational(Rational(t.text)))));
            }
            case Tok::LParen: {
                ++pos_;
                Expr e = expression();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident: return identifier();
            default: error(ErrorKind::SyntaxError, t.column, kOperand);
        }
    }

    Expr identifier() {
        Token t = toks_[pos_++];
        if (t.text == "z") return constant(ExpFraction(RationalFunction::z()));
        if (t.text == "i") return constant(ExpFraction(RationalFunction(GaussianRational::i())));
        if (t.text == "f") {
            unsigned order = 0;
            while (accept(Tok::Prime)) ++order;
            return unknown(order);
        }
        if (t.text == "exp") return exponential();
        if (t.text.size() > 1 && t.text[0] == 'D' &&
            std::all_of(t.text.begin() + 1, t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            unsigned order = static_cast<unsigned>(std::stoul(t.text.substr(1)));
            expect(Tok::LParen, "'('");
            const Token& arg = peek();
            if (arg.kind != Tok::Ident || arg.text != "f")
                error(ErrorKind::SyntaxError, arg.column, "expected f inside a derivative");
            ++pos_;
            expect(Tok::RParen, "')'");
            return unknown(order);
        }
        error(ErrorKind::UnknownSymbol, t.column, "unknown symbol '" + t.text + "'");
    }

    static Expr unknown(unsigned order) {
        PowerVector p(order + 1, 0);
        p[order] = 1;
        Expr e;
        e.emplace(p, ExpFraction(1));
        return e;
    }

    Expr exponential() {
        size_t col = expect(Tok::LParen, "'('").column;
        Expr arg = expression();
        expect(Tok::RParen, "')'");
        if (!f_free(arg)) error(ErrorKind::InvalidInput, col, "exp of an expression in f");
        auto r = scalar_of(arg).as_rational();
        if (!r || !r->is_polynomial()) error(ErrorKind::InvalidInput, col, "exp needs a polynomial in z");
        PuiseuxPoly a = r->numerator_poly();
        if (!a.constant_term().is_zero())
            error(ErrorKind::NonzeroExponentConstant, col, "exponent must vanish at z = 0; move the constant into the coefficient");
        return constant(ExpFraction(ExpPoly::exp(a)));
    }

    std::string text_;
    size_t line_;
    size_t offset_;
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

// ------------------------------------------------------------------ lowering

ExpFraction lower_function(const Expr& e, const Parser& p) {
    if (!f_free(e)) p.error(ErrorKind::InvalidInput, 1, "expression must not contain f");
    return scalar_of(e);
}

RationalFunction lower_rational(const Expr& e, const Parser& p) {
    auto r = lower_function(e, p).as_rational();
    if (!r) p.error(ErrorKind::InvalidInput, 1, "expected a rational function of z");
    return *r;
}

DiffPoly lower_diff_poly(const Expr& e, const Parser& p) {
    DiffPoly out;
    for (const auto& [powers, c] : e) {
        auto r = c.as_rational();
        if (!r) p.error(ErrorKind::InvalidInput, 1, "coefficients of P must be rational functions of z");
        out += DiffPoly(*r, powers);
    }
    return out;
}

TCEquation lower_equation(const Expr& lhs, const Expr& rhs, const Parser& p) {
    auto h = lower_function(rhs, p).as_exp_poly();
    if (!h) p.error(ErrorKind::InvalidInput, 1, "the right-hand side must be an exponential polynomial");
    DiffPoly all = lower_diff_poly(lhs, p);
    unsigned n = dp_degree_weight(all).degree;
    DiffPoly lead = DiffPoly::f().pow(n);
    DiffPoly rest = all - lead;
    if (n < 2 || dp_degree_weight(rest).degree >= n)
        p.error(ErrorKind::InvalidInput, 1, "left-hand side must be f^n plus terms of lower degree, n >= 2");
    return {n, rest, *h};
}

/// Parses text as one expression and lowers it with the parser still in scope for error positions.
template <class Lower>
auto parse_with(const std::string& text, size_t line, size_t offset, Lower lower) {
    Parser p(text, line, offset);
    Expr e = p.expression_to_end();
    return lower(e, p);
}

// ------------------------------------------------------------------ blocks

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

const char* const kKeys[] = {"equation", "candidate", "ode", "function", "n"};

/// Key and value offset of a block line, when the line starts with a known key.
std::optional<std::pair<std::string, size_t>> block_key(const std::string& line) {
    size_t colon = line.find(':');
    if (colon == std::string::npos) return std::nullopt;
    std::string key = strip(line.substr(0, colon));
    for (const char* k : kKeys)
        if (key == k) return std::make_pair(key, colon + 1);
    return std::nullopt;
}

LinearOde parse_ode(const std::string& text, size_t line, size_t offset, unsigned& order) {
    LinearOde ode;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        std::string item = text.substr(start, comma - start);
        size_t eq = item.find('=');
        size_t col = offset + start;
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "line " << line << ", column " << col + 1 << ": expected r0=, r1=, r2= or order=";
            fail(ErrorKind::SyntaxError, os.str());
        }
        std::string key = strip(item.substr(0, eq));
        std::string value = item.substr(eq + 1);
        size_t value_offset = col + eq + 1;
        if (key == "order") {
            std::string v = strip(value);
            if (v != "1" && v != "2") fail(ErrorKind::InvalidInput, "ode order must be 1 or 2");
            order = v == "1" ? 1 : 2;
        } else if (key == "r0" || key == "r1" || key == "r2") {
            RationalFunction r = parse_with(value, line, value_offset, lower_rational);
            (key == "r0" ? ode.r0 : key == "r1" ? ode.r1 : ode.r2) = r;
        } else {
            std::ostringstream os;
            os << "line " << line << ", column " << col + 1 << ": unknown ode key '" << key << "'";
            fail(ErrorKind::UnknownSymbol, os.str());
        }
        start = comma + 1;
    }
    return ode;
}

bool has_blocks(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (block_key(line)) return true;
    return false;
}

}  // namespace

ExpFraction parse_function(const std::string& text) {
    return parse_with(text, 1, 0, lower_function);
}

RationalFunction parse_rational(const std::string& text) {
    return parse_with(text, 1, 0, lower_rational);
}

DiffPoly parse_diff_poly(const std::string& text) {
    return parse_with(text, 1, 0, lower_diff_poly);
}

TCEquation parse_equation(const std::string& text) {
    Parser p(text, 1, 0);
    auto [lhs, rhs] = p.equation();
    return lower_equation(lhs, rhs, p);
}

std::vector<ParsedInput> cli_parse_all(const std::string& text) {
    std::vector<ParsedInput> out;
    if (!has_blocks(text)) {
        std::string body = strip(text);
        if (body.empty()) fail(ErrorKind::InvalidInput, "empty input");
        ParsedInput in;
        in.equation = parse_equation(body);
        out.push_back(std::move(in));
        return out;
    }
    std::istringstream stream(text);
    std::string line;
    size_t line_no = 0;
    auto current = [&]() -> ParsedInput& {
        if (out.empty()) out.emplace_back();
        return out.back();
    };
    while (std::getline(stream, line)) {
        ++line_no;
        std::string body = line.substr(0, line.find('#'));
        if (strip(body).empty()) continue;
        auto key = block_key(body);
        if (!key) {
            std::ostringstream os;
            os << "line " << line_no << ", column 1: expected equation:, candidate:, ode:, function: or n:";
            fail(ErrorKind::SyntaxError, os.str());
        }
        const auto& [name, offset] = *key;
        std::string value = body.substr(offset);
        if (name == "equation") {
            if (out.empty() || out.back().equation) out.emplace_back();
            Parser p(value, line_no, offset);
            auto [lhs, rhs] = p.equation();
            out.back().equation = lower_equation(lhs, rhs, p);
        } else if (name == "candidate" || name == "function") {
            ExpFraction f = parse_with(value, line_no, offset, lower_function);
            if (name == "candidate") current().candidates.push_back(f);
            else current().function = f;
        } else if (name == "ode") {
            ParsedInput& in = current();
            in.ode = parse_ode(value, line_no, offset, in.ode_order);
        } else {
            std::string v = strip(value);
            if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                fail(ErrorKind::InvalidInput, "line " + std::to_string(line_no) + ": n must be a positive integer");
            current().n = static_cast<unsigned>(std::stoul(v));
        }
    }
    for (auto& in : out)
        if (in.equation && in.ode && in.ode_order == 2) in.equation = in.equation->with_ode(*in.ode);
    return out;
}

ParsedInput cli_parse(const std::string& text) {
    auto all = cli_parse_all(text);
    if (all.size() != 1) fail(ErrorKind::InvalidInput, "expected exactly one equation block");
    return all.front();
}

// ------------------------------------------------------------------ settings

std::vector<double> parse_radii(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = strip(item);
        if (item.empty()) continue;
        size_t used = 0;
        double r = 0.0;
        try {
            r = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || !(r > 0.0)) fail(ErrorKind::InvalidInput, "bad radius '" + item + "'");
        out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void apply_config(CliSettings& settings, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = strip(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        size_t eq = body.find('=');
        std::string where = "config line " + std::to_string(line_no) + ": ";
        if (eq == std::string::npos) fail(ErrorKind::SyntaxError, where + "expected key = value");
        std::string key = strip(body.substr(0, eq));
        std::string value = strip(body.substr(eq + 1));
        try {
            if (key == "tolerance") settings.tolerance = std::stod(value);
            else if (key == "degree_cap") settings.degree_cap = static_cast<unsigned>(std::stoul(value));
            else if (key == "radii") settings.radii = parse_radii(value);
            else if (key == "grid") settings.grid = std::stoi(value);
            else if (key == "assume_small_pole_count") settings.assume_small_pole_count = value == "true" || value == "1";
            else fail(ErrorKind::InvalidInput, where + "unknown key '" + key + "'");
        } catch (const std::logic_error&) {
            fail(ErrorKind::InvalidInput, where + "bad value for " + key);
        }
    }
}

}  // namespace tcsolve
