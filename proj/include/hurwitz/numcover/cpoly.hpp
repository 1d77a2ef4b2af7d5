#pragma once

#include <cstddef>
#include <vector>

#include "hurwitz/exactpoly/poly.hpp"
#include "hurwitz/numcover/mp.hpp"

namespace hurwitz {

/// Dense complex polynomial at a fixed working precision, constant term
/// first.
class CPoly {
public:
  CPoly() = default;
  CPoly(std::vector<Complex> coeffs, mpfr_prec_t bits);
  static CPoly from_exact(const QPoly &f, mpfr_prec_t bits);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  mpfr_prec_t precision() const { return bits_; }
  const std::vector<Complex> &coeffs() const { return c_; }
  const Complex &operator[](std::size_t i) const { return c_[i]; }

  Complex eval(const Complex &x) const;
  /// f(x) and f'(x) by one Horner pass.
  std::pair<Complex, Complex> eval_with_derivative(const Complex &x) const;
  /// sum |c_i| |x|^i, the scale for relative residuals.
  Real magnitude_at(const Complex &x) const;
  CPoly derivative() const;

  friend CPoly operator+(const CPoly &a, const CPoly &b);
  friend CPoly operator-(const CPoly &a, const CPoly &b);
  friend CPoly operator*(const CPoly &a, const CPoly &b);
  friend CPoly operator*(const CPoly &a, const Complex &s);
  CPoly pow(unsigned e) const;
  CPoly with_precision(mpfr_prec_t bits) const;

private:
  void trim();
  std::vector<Complex> c_;
  mpfr_prec_t bits_ = 53;
};

struct RootOptions {
  std::size_t max_iterations = 2000;
  /// Relative residual target; 0 means 2^(-0.9 * bits).
  double tolerance = 0;
  /// Return the best approximation instead of throwing when the target is
  /// missed (needed for multiple roots).
  bool best_effort = false;
};

struct RootResult {
  std::vector<Complex> roots;
  /// max_i |f(z_i)| / magnitude_at(z_i)
  Real residual;
  std::size_t iterations = 0;
  bool converged = false;
};

/// All roots with multiplicity by Aberth-Ehrlich iteration from points on
/// a circle of radius given by the coefficient bound, slightly rotated.
/// Throws NumericalFailure with the achieved residual on non-convergence
/// unless best_effort is set.
RootResult complex_roots(const CPoly &f, const RootOptions &options = {});

} // namespace hurwitz
