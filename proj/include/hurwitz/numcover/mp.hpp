#pragma once

#include <string>

// gmp must precede mpfr for the mpq interfaces.
#include "hurwitz/exactpoly/field.hpp"

#include <mpfr.h>

namespace hurwitz {

/// MPFR real with a per-value precision in bits. Binary operations round
/// to the larger operand precision.
class Real {
public:
  Real() : Real(53) {}
  explicit Real(mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(double x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(long x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(const Rational &x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
  }
  /// Decimal text such as "-1.25e-3".
  Real(const std::string &text, mpfr_prec_t bits);
  Real(const Real &o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real &&o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real &operator=(const Real &o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real &operator=(Real &&o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  /// Same value rounded to `bits`.
  Real with_precision(mpfr_prec_t bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits (0: enough to
  /// round-trip).
  std::string to_string(int digits = 0) const;
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
#define HURWITZ_REAL_OP(op, fn)                                                                    \
  friend Real operator op(const Real &a, const Real &b) {                                          \
    Real r(std::max(a.precision(), b.precision()));                                                \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                                               \
    return r;                                                                                      \
  }                                                                                                \
  Real &operator op##=(const Real &b) {                                                            \
    if (b.precision() > precision())                                                               \
      mpfr_prec_round(v_, b.precision(), MPFR_RNDN);                                               \
    fn(v_, v_, b.v_, MPFR_RNDN);                                                                   \
    return *this;                                                                                  \
  }
  HURWITZ_REAL_OP(+, mpfr_add)
  HURWITZ_REAL_OP(-, mpfr_sub)
  HURWITZ_REAL_OP(*, mpfr_mul)
  HURWITZ_REAL_OP(/, mpfr_div)
#undef HURWITZ_REAL_OP
  friend Real operator*(const Real &a, double b) {
    Real r(a.precision());
    mpfr_mul_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(double b, const Real &a) { return a * b; }
  friend Real operator/(const Real &a, double b) {
    Real r(a.precision());
    mpfr_div_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real &a, const Real &b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const Real &a, const Real &b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const Real &a, const Real &b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const Real &a, const Real &b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const Real &a, const Real &b) { return mpfr_equal_p(a.v_, b.v_); }

private:
  mpfr_t v_;
};

Real sqrt(const Real &x);
Real abs(const Real &x);
Real atan2(const Real &y, const Real &x);
Real cos(const Real &x);
Real sin(const Real &x);
Real pi(mpfr_prec_t bits);
/// 2^e at the given precision.
Real pow2(long e, mpfr_prec_t bits);
/// Nearest rational with denominator a power of two (exact value of x).
Rational to_rational(const Real &x);
inline const Real &max(const Real &a, const Real &b) { return a < b ? b : a; }
inline const Real &min(const Real &a, const Real &b) { return b < a ? b : a; }

struct Complex {
  Real re, im;

  Complex() = default;
  explicit Complex(mpfr_prec_t bits) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r, double i, mpfr_prec_t bits) : re(r, bits), im(i, bits) {}

  mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }
  Complex with_precision(mpfr_prec_t bits) const {
    return {re.with_precision(bits), im.with_precision(bits)};
  }

  Complex operator-() const { return {-re, -im}; }
  friend Complex operator+(const Complex &a, const Complex &b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex &a, const Complex &b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex &a, const Complex &b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex &a, const Real &s) { return {a.re * s, a.im * s}; }
  friend Complex operator*(const Real &s, const Complex &a) { return {a.re * s, a.im * s}; }
  friend Complex operator/(const Complex &a, const Real &s) { return {a.re / s, a.im / s}; }
  friend Complex operator/(const Complex &a, const Complex &b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Complex &operator+=(const Complex &b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  Complex &operator-=(const Complex &b) {
    re -= b.re;
    im -= b.im;
    return *this;
  }
  Complex &operator*=(const Complex &b) { return *this = *this * b; }

  Complex conj() const { return {re, -im}; }
  /// |z|^2
  Real norm() const { return re * re + im * im; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  std::string to_string(int digits = 0) const;
};

Real abs(const Complex &z);
Real arg(const Complex &z);
Complex polar(const Real &r, const Real &theta);
Complex from_rational(const Rational &x, mpfr_prec_t bits);

} // namespace hurwitz
