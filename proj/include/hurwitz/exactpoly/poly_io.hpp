#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "hurwitz/exactpoly/poly.hpp"

namespace hurwitz {

using ParamMap = std::map<std::string, Rational>;
using PolyMap = std::map<std::string, QPoly>;

/// Polynomial in `var` from an expression with + - * / ^ and parentheses.
/// Numbers are integers or decimals; names other than `var` must be in
/// `params` (or `polys`). Division is allowed only by constants, exponents
/// must be nonnegative integer literals.
QPoly parse_expression(std::string_view text, const ParamMap &params = {},
                       const std::string &var = "X");
QPoly parse_expression(std::string_view text, const PolyMap &polys, const std::string &var = "X");

/// Polynomial file: `term <coeff> <exponent>` lines (repeated exponents
/// add up) or a single `coeffs <c0> <c1> ...` line. '#' starts a comment.
QPoly parse_polynomial(std::string_view text);
QPoly read_polynomial_file(const std::filesystem::path &path);
/// `term` lines from the highest exponent down.
std::string format_polynomial(const QPoly &f);

} // namespace hurwitz
