#ifndef AQ_PARSE_HPP
#define AQ_PARSE_HPP

#include "aq/forms.hpp"
#include "aq/polynomial.hpp"
#include "aq/quadrics.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace aq::parse {

/// Syntax error with a 0-based input position.
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos)
    {
    }
};

/// "3", "-7/2"
Rational parse_rational(const std::string& text);

/// "1,-2,-3" -> <1,-2,-3>
forms::QuadraticForm parse_form(const std::string& text);

/// "1,0,0" -> rational vector
std::vector<Rational> parse_point(const std::string& text);

/// Quadratic polynomials over x1..xn: integer or rational literals, '^'
/// powers, '*' optional. Degree > 2 monomials are rejected.
quadrics::AffineQuadricPoly parse_polynomial(const std::string& text);

/// Rational functions in t with + - * / ^ and parentheses.
RationalFunction parse_rational_function(const std::string& text);

/// Semicolon-separated list of rational functions.
std::vector<RationalFunction> parse_curve_components(const std::string& text);

}  // namespace aq::parse

#endif
