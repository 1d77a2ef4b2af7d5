#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hurwitz/exactpoly/field.hpp"

namespace hurwitz {

/// P(beta, gamma) = sum c[i][j] beta^i gamma^j with integer coefficients.
struct BivariatePolynomial {
  std::vector<std::vector<mpz_class>> coeffs; ///< [i][j], i <= deg_beta, j <= deg_gamma

  Rational eval(const Rational &beta, const Rational &gamma) const;
  std::size_t total_degree() const;
  bool is_zero() const;
  /// "gamma - beta^2" style, terms by descending total degree.
  std::string to_string(const std::string &b = "beta", const std::string &g = "gamma") const;
};

using Sample = std::pair<Rational, Rational>;

/// Exact nullspace of the monomial evaluation matrix over Q with monomials
/// ordered by total degree; returns the nullspace vector of least leading
/// monomial, content-free with positive leading coefficient. Throws
/// InvalidArgument when the nullspace is trivial (with suggested bounds) or
/// when several independent relations remain because samples are too few.
BivariatePolynomial interpolate_dependency(const std::vector<Sample> &samples, std::size_t deg_beta,
                                           std::size_t deg_gamma);

/// Lines `sample <beta> <gamma>`; '#' comments.
std::vector<Sample> parse_samples(std::string_view text);
std::vector<Sample> read_samples_file(const std::filesystem::path &path);

} // namespace hurwitz
