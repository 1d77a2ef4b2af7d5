#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace hurwitz {

using Rational = mpq_class;

// Field interface used by Poly<K>: zero_of, one_of, is_zero, from_int.
inline Rational zero_of(const Rational &) { return 0; }
inline Rational one_of(const Rational &) { return 1; }
inline bool is_zero(const Rational &a) { return sgn(a) == 0; }
inline Rational from_int(const Rational &, long long v) { return Rational(static_cast<long>(v)); }

bool is_prime(std::uint64_t n);
/// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

/// Element of Z/pZ for a prime p < 2^31. A default-constructed value is a
/// zero without a modulus; it adopts the modulus of the other operand.
class Fp {
public:
  Fp() = default;
  Fp(std::uint32_t p, long long v);
  static Fp raw(std::uint32_t p, std::uint32_t v) {
    Fp a;
    a.p_ = p;
    a.v_ = v;
    return a;
  }

  std::uint32_t prime() const { return p_; }
  std::uint32_t value() const { return v_; }

  Fp operator-() const { return raw(p_, v_ == 0 ? 0 : p_ - v_); }
  friend Fp operator+(Fp a, Fp b) {
    std::uint32_t p = a.p_ ? a.p_ : b.p_;
    std::uint64_t s = std::uint64_t(a.v_) + b.v_;
    return raw(p, static_cast<std::uint32_t>(s >= p ? s - p : s));
  }
  friend Fp operator-(Fp a, Fp b) { return a + (-b); }
  friend Fp operator*(Fp a, Fp b) {
    std::uint32_t p = a.p_ ? a.p_ : b.p_;
    return raw(p, p ? static_cast<std::uint32_t>(std::uint64_t(a.v_) * b.v_ % p) : 0);
  }
  Fp inverse() const;
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp &operator+=(Fp b) { return *this = *this + b; }
  Fp &operator-=(Fp b) { return *this = *this - b; }
  Fp &operator*=(Fp b) { return *this = *this * b; }
  Fp &operator/=(Fp b) { return *this = *this / b; }
  Fp pow(std::uint64_t e) const;
  /// Euler's criterion; zero counts as a square.
  bool is_square() const;

  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

private:
  std::uint32_t p_ = 0, v_ = 0;
};

inline Fp zero_of(const Fp &a) { return Fp::raw(a.prime(), 0); }
inline Fp one_of(const Fp &a) { return Fp::raw(a.prime(), 1); }
inline bool is_zero(const Fp &a) { return a.value() == 0; }
inline Fp from_int(const Fp &a, long long v) { return Fp(a.prime(), v); }

/// Reduction of a rational; throws InvalidArgument when p divides the
/// denominator.
Fp reduce_mod(const Rational &x, std::uint32_t p);

std::ostream &operator<<(std::ostream &os, const Fp &a);
std::string to_string(const Rational &x);
/// Accepts "n", "n/d" and decimals such as "-2.5e3".
Rational parse_rational(const std::string &text);

} // namespace hurwitz
