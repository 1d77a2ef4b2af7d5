#include "hurwitz/exactpoly/field.hpp"

#include <cctype>

#include "hurwitz/error.hpp"

namespace hurwitz {

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  while (!is_prime(n))
    ++n;
  return n;
}

Fp::Fp(std::uint32_t p, long long v) : p_(p) {
  if (p < 2)
    throw InvalidArgument("modulus must be a prime");
  long long r = v % static_cast<long long>(p);
  v_ = static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

Fp Fp::pow(std::uint64_t e) const {
  Fp r = raw(p_, 1), b = *this;
  while (e) {
    if (e & 1)
      r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Fp Fp::inverse() const {
  if (v_ == 0)
    throw InvalidArgument("division by zero in F_" + std::to_string(p_));
  long long a = v_, m = p_, x0 = 1, x1 = 0;
  while (m) {
    long long q = a / m;
    long long t = a - q * m;
    a = m;
    m = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return Fp(p_, x0);
}

bool Fp::is_square() const {
  if (v_ == 0 || p_ == 2)
    return true;
  return pow((p_ - 1) / 2).value() == 1;
}

Fp reduce_mod(const Rational &x, std::uint32_t p) {
  mpz_class num = x.get_num() % p, den = x.get_den() % p;
  if (den == 0)
    throw InvalidArgument("prime " + std::to_string(p) + " divides the denominator of " +
                          to_string(x));
  return Fp(p, num.get_si()) / Fp(p, den.get_si());
}

std::ostream &operator<<(std::ostream &os, const Fp &a) { return os << a.value(); }

std::string to_string(const Rational &x) { return x.get_str(); }

Rational parse_rational(const std::string &text) {
  std::string s = text;
  if (s.empty())
    throw InvalidArgument("empty number");
  auto bad = [&] { return InvalidArgument("malformed number '" + text + "'"); };
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    Rational r;
    try {
      r = Rational(mpz_class(a, 10), mpz_class(b, 10));
    } catch (const std::invalid_argument &) {
      throw bad();
    }
    if (r.get_den() == 0)
      throw InvalidArgument("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
  }
  // Decimal with optional fraction and exponent.
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-')
    neg = s[i++] == '-';
  std::string digits;
  long long scale = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_point)
        --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit)
    throw bad();
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E')
      throw bad();
    std::size_t used = 0;
    long long e;
    try {
      e = std::stoll(s.substr(i + 1), &used);
    } catch (const std::exception &) {
      throw bad();
    }
    if (used != s.size() - i - 1)
      throw bad();
    scale += e;
  }
  mpz_class n(digits, 10), p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r = scale < 0 ? Rational(n, p10) : Rational(n * p10);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

} // namespace hurwitz
