#include "hurwitz/numcover/mp.hpp"

#include <vector>

#include "hurwitz/error.hpp"

namespace hurwitz {

Real::Real(const std::string &text, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  char *end = nullptr;
  if (!text.empty())
    mpfr_strtofr(v_, text.c_str(), &end, 10, MPFR_RNDN);
  if (text.empty() || end == text.c_str() || *end != '\0') {
    mpfr_clear(v_);
    throw InvalidArgument("malformed real number '" + text + "'");
  }
}

std::string Real::to_string(int digits) const {
  if (!is_finite())
    return mpfr_nan_p(v_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
  if (digits <= 0)
    digits = static_cast<int>(precision() * 0.30103) + 2;
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return buf.data();
}

Real sqrt(const Real &x) {
  Real r(x.precision());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real abs(const Real &x) {
  Real r(x.precision());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real atan2(const Real &y, const Real &x) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real cos(const Real &x) {
  Real r(x.precision());
  mpfr_cos(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real sin(const Real &x) {
  Real r(x.precision());
  mpfr_sin(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real pow2(long e, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
  return r;
}

Rational to_rational(const Real &x) {
  if (!x.is_finite())
    throw InvalidArgument("non-finite real has no rational value");
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x.raw());
  Rational r(m);
  if (e >= 0)
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

std::string Complex::to_string(int digits) const {
  return re.to_string(digits) + " " + im.to_string(digits);
}

Real abs(const Complex &z) {
  Real r(z.precision());
  mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}

Real arg(const Complex &z) { return atan2(z.im, z.re); }

Complex polar(const Real &r, const Real &theta) { return {r * cos(theta), r * sin(theta)}; }

Complex from_rational(const Rational &x, mpfr_prec_t bits) { return {Real(x, bits), Real(bits)}; }

} // namespace hurwitz
