#include "aq/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace aq::parse {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done()
    {
        skip_ws();
        return pos >= s.size();
    }
    char peek()
    {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c)
    {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }

    Int integer()
    {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected a digit", pos);
        return Int(s.substr(start, pos - start));
    }

    Rational number()
    {
        Int n = integer();
        if (accept('/')) {
            Int d = integer();
            if (d == 0) throw ParseError("zero denominator", pos);
            return Rational(n, d);
        }
        return Rational(n);
    }

    bool at_number()
    {
        return std::isdigit(static_cast<unsigned char>(peek())) != 0;
    }
};

struct Monomial {
    Rational coeff = 1;
    std::vector<std::pair<std::size_t, unsigned>> vars;  // (index, exponent)
    unsigned degree = 0;
};

/// factor := number | x<k> ['^' int]
bool parse_factor(Cursor& cur, Monomial& mono)
{
    if (cur.at_number()) {
        mono.coeff *= cur.number();
        return true;
    }
    if (cur.peek() == 'x') {
        std::size_t at = cur.pos;
        cur.expect('x');
        Int idx = cur.integer();
        if (idx < 1 || idx > 64) throw ParseError("variable index out of range", at);
        unsigned exp = 1;
        if (cur.accept('^')) {
            Int e = cur.integer();
            if (e < 0 || e > 8) throw ParseError("exponent out of range", cur.pos);
            exp = static_cast<unsigned>(e);
        }
        mono.degree += exp;
        if (mono.degree > 2)
            throw ParseError("degree > 2: not a quadratic polynomial", at);
        mono.vars.emplace_back(static_cast<std::size_t>(idx.convert_to<long>()) - 1, exp);
        return true;
    }
    return false;
}

}  // namespace

Rational parse_rational(const std::string& text)
{
    Cursor cur{text};
    bool neg = cur.accept('-');
    if (!neg) cur.accept('+');
    Rational r = cur.number();
    if (!cur.done()) throw ParseError("trailing input", cur.pos);
    return neg ? Rational(-r) : r;
}

forms::QuadraticForm parse_form(const std::string& text)
{
    std::vector<Rational> coeffs;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string part = text.substr(start, comma == std::string::npos ? comma : comma - start);
        coeffs.push_back(parse_rational(part));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return forms::QuadraticForm(coeffs);
}

std::vector<Rational> parse_point(const std::string& text)
{
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string part = text.substr(start, comma == std::string::npos ? comma : comma - start);
        out.push_back(parse_rational(part));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

quadrics::AffineQuadricPoly parse_polynomial(const std::string& text)
{
    Cursor cur{text};
    std::vector<Monomial> monos;
    bool first = true;
    while (!cur.done()) {
        Rational sign = 1;
        if (cur.accept('-')) sign = -1;
        else if (cur.accept('+')) sign = 1;
        else if (!first) throw ParseError("expected '+' or '-'", cur.pos);
        first = false;

        Monomial mono;
        mono.coeff = sign;
        if (!parse_factor(cur, mono)) throw ParseError("expected a number or a variable", cur.pos);
        while (true) {
            if (cur.accept('*')) {
                if (!parse_factor(cur, mono))
                    throw ParseError("expected a factor after '*'", cur.pos);
                continue;
            }
            // juxtaposition: "2x1", "x1x2"
            std::size_t save = cur.pos;
            if (!parse_factor(cur, mono)) {
                cur.pos = save;
                break;
            }
        }
        monos.push_back(mono);
    }
    if (monos.empty()) throw ParseError("empty polynomial", 0);

    std::size_t n = 0;
    for (const auto& m : monos)
        for (auto& [idx, e] : m.vars) n = std::max(n, idx + 1);
    if (n == 0) throw ParseError("no variables: degree < 2", 0);

    forms::QMatrix quad(n, n);
    std::vector<Rational> lin(n, Rational(0));
    Rational cst = 0;
    for (const auto& m : monos) {
        // flatten the variable list of the monomial
        std::vector<std::size_t> idxs;
        for (auto& [idx, e] : m.vars)
            for (unsigned k = 0; k < e; ++k) idxs.push_back(idx);
        if (idxs.empty()) {
            cst += m.coeff;
        } else if (idxs.size() == 1) {
            lin[idxs[0]] += m.coeff;
        } else {
            std::size_t i = idxs[0], j = idxs[1];
            if (i == j) {
                quad(i, i) += m.coeff;
            } else {
                quad(i, j) += m.coeff / 2;
                quad(j, i) += m.coeff / 2;
            }
        }
    }
    return quadrics::AffineQuadricPoly(quad, lin, cst);
}

namespace {

RationalFunction parse_rf_expr(Cursor& cur);

RationalFunction parse_rf_atom(Cursor& cur)
{
    if (cur.accept('(')) {
        RationalFunction inner = parse_rf_expr(cur);
        cur.expect(')');
        return inner;
    }
    if (cur.peek() == 't') {
        cur.expect('t');
        return RationalFunction::t();
    }
    if (cur.at_number()) return RationalFunction(cur.number());
    throw ParseError("expected 't', a number, or '('", cur.pos);
}

RationalFunction parse_rf_power(Cursor& cur)
{
    RationalFunction base = parse_rf_atom(cur);
    if (cur.accept('^')) {
        bool neg = cur.accept('-');
        Int e = cur.integer();
        if (e > 16) throw ParseError("exponent out of range", cur.pos);
        RationalFunction out(Rational(1));
        for (Int k = 0; k < e; ++k) out = out * base;
        if (neg) out = RationalFunction(Rational(1)) / out;
        return out;
    }
    return base;
}

RationalFunction parse_rf_term(Cursor& cur)
{
    RationalFunction acc = parse_rf_power(cur);
    while (true) {
        if (cur.accept('*')) {
            acc = acc * parse_rf_power(cur);
            continue;
        }
        if (cur.accept('/')) {
            RationalFunction d = parse_rf_power(cur);
            if (d.is_zero()) throw ParseError("division by the zero function", cur.pos);
            acc = acc / d;
            continue;
        }
        // juxtaposition
        char c = cur.peek();
        if (c == 't' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
            acc = acc * parse_rf_power(cur);
            continue;
        }
        break;
    }
    return acc;
}

RationalFunction parse_rf_expr(Cursor& cur)
{
    bool neg = cur.accept('-');
    if (!neg) cur.accept('+');
    RationalFunction acc = parse_rf_term(cur);
    if (neg) acc = -acc;
    while (true) {
        if (cur.accept('+')) {
            acc = acc + parse_rf_term(cur);
        } else if (cur.accept('-')) {
            acc = acc - parse_rf_term(cur);
        } else {
            break;
        }
    }
    return acc;
}

}  // namespace

RationalFunction parse_rational_function(const std::string& text)
{
    Cursor cur{text};
    RationalFunction f = parse_rf_expr(cur);
    if (!cur.done()) throw ParseError("trailing input", cur.pos);
    return f;
}

std::vector<RationalFunction> parse_curve_components(const std::string& text)
{
    std::vector<RationalFunction> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t semi = text.find(';', start);
        std::string part = text.substr(start, semi == std::string::npos ? semi : semi - start);
        out.push_back(parse_rational_function(part));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return out;
}

}  // namespace aq::parse
