#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hurwitz/error.hpp"
#include "hurwitz/exactpoly/field.hpp"

namespace hurwitz {

namespace poly_detail {
// Unqualified so that argument-dependent lookup sees field types declared
// after this header.
template <class K> bool coeff_is_zero(const K &a) { return is_zero(a); }
} // namespace poly_detail

/// Dense univariate polynomial over a field K, constant term first. The
/// zero polynomial has degree -1. K must provide +, -, *, /, == and the
/// helpers zero_of, one_of, is_zero and from_int; zero_ carries any ring
/// context (the modulus for Fp).
template <class K> class Poly {
public:
  Poly() = default;
  explicit Poly(const K &proto) : zero_(zero_of(proto)) {}
  Poly(std::vector<K> coeffs, const K &proto) : c_(std::move(coeffs)), zero_(zero_of(proto)) {
    trim();
  }

  static Poly constant(const K &c) { return Poly(std::vector<K>{c}, c); }
  static Poly monomial(const K &c, std::size_t k) {
    std::vector<K> v(k + 1, zero_of(c));
    v[k] = c;
    return Poly(std::move(v), c);
  }
  /// The polynomial X.
  static Poly x(const K &proto) { return monomial(one_of(proto), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<K> &coeffs() const { return c_; }
  const K &coeff(std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
  const K &operator[](std::size_t i) const { return coeff(i); }
  const K &lead() const { return c_.empty() ? zero_ : c_.back(); }
  const K &zero() const { return zero_; }
  K one() const { return one_of(zero_); }

  void set_coeff(std::size_t i, const K &v) {
    if (i >= c_.size())
      c_.resize(i + 1, zero_);
    c_[i] = v;
    trim();
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto &a : r.c_)
      a = -a;
    return r;
  }
  Poly &operator+=(const Poly &b) {
    if (c_.size() < b.c_.size())
      c_.resize(b.c_.size(), zero_);
    for (std::size_t i = 0; i < b.c_.size(); ++i)
      c_[i] = c_[i] + b.c_[i];
    trim();
    return *this;
  }
  Poly &operator-=(const Poly &b) {
    if (c_.size() < b.c_.size())
      c_.resize(b.c_.size(), zero_);
    for (std::size_t i = 0; i < b.c_.size(); ++i)
      c_[i] = c_[i] - b.c_[i];
    trim();
    return *this;
  }
  Poly &operator*=(const K &s) {
    if (poly_detail::coeff_is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto &a : c_)
      a = a * s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(Poly a, const K &s) { return a *= s; }
  friend Poly operator*(const K &s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly &a, const Poly &b) {
    if (a.is_zero() || b.is_zero())
      return Poly(a.zero_);
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (poly_detail::coeff_is_zero(a.c_[i]))
        continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r), a.zero_);
  }
  Poly &operator*=(const Poly &b) { return *this = *this * b; }

  friend bool operator==(const Poly &a, const Poly &b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }

  K eval(const K &x) const {
    K r = zero_;
    for (std::size_t i = c_.size(); i-- > 0;)
      r = r * x + c_[i];
    return r;
  }
  /// Value at a point of another ring E, mapping coefficients with `lift`.
  template <class E, class Lift> E eval_in(const E &x, Lift lift) const {
    E r = zero_of(x);
    for (std::size_t i = c_.size(); i-- > 0;)
      r = r * x + lift(c_[i]);
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1)
      return Poly(zero_);
    std::vector<K> r(c_.size() - 1, zero_);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r[i - 1] = from_int(zero_, static_cast<long long>(i)) * c_[i];
    return Poly(std::move(r), zero_);
  }

  /// this(h(X)).
  Poly compose(const Poly &h) const {
    Poly r(zero_);
    for (std::size_t i = c_.size(); i-- > 0;)
      r = r * h + constant(c_[i]);
    return r;
  }

  Poly pow(unsigned e) const {
    Poly r = constant(one()), b = *this;
    while (e) {
      if (e & 1)
        r *= b;
      e >>= 1;
      if (e)
        b *= b;
    }
    return r;
  }

  Poly monic() const {
    if (is_zero())
      return *this;
    return *this * (one() / lead());
  }

  /// Coefficients reversed: X^deg * this(1/X).
  Poly reversed() const {
    std::vector<K> r(c_.rbegin(), c_.rend());
    return Poly(std::move(r), zero_);
  }

private:
  void trim() {
    while (!c_.empty() && poly_detail::coeff_is_zero(c_.back()))
      c_.pop_back();
  }
  std::vector<K> c_;
  K zero_{};
};

using QPoly = Poly<Rational>;
using FpPoly = Poly<Fp>;

template <class K> std::pair<Poly<K>, Poly<K>> divmod(const Poly<K> &a, const Poly<K> &b) {
  if (b.is_zero())
    throw InvalidArgument("polynomial division by zero");
  const K &z = a.zero();
  if (a.degree() < b.degree())
    return {Poly<K>(z), a};
  std::vector<K> r = a.coeffs();
  const int db = b.degree();
  std::vector<K> q(static_cast<std::size_t>(a.degree() - db + 1), z);
  K inv = b.one() / b.lead();
  for (int i = a.degree(); i >= db; --i) {
    K f = r[static_cast<std::size_t>(i)] * inv;
    q[static_cast<std::size_t>(i - db)] = f;
    if (is_zero(f))
      continue;
    for (int j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(i - db + j)] =
          r[static_cast<std::size_t>(i - db + j)] - f * b[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly<K>(std::move(q), z), Poly<K>(std::move(r), z)};
}

template <class K> Poly<K> operator/(const Poly<K> &a, const Poly<K> &b) {
  return divmod(a, b).first;
}
template <class K> Poly<K> operator%(const Poly<K> &a, const Poly<K> &b) {
  return divmod(a, b).second;
}

/// a / b, throwing when the division leaves a remainder.
template <class K> Poly<K> exact_div(const Poly<K> &a, const Poly<K> &b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero())
    throw InvalidArgument("polynomial division is not exact");
  return q;
}

/// Monic gcd; gcd(0, 0) = 0.
template <class K> Poly<K> gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    a = a % b;
    std::swap(a, b);
  }
  return a.monic();
}

/// Extended gcd: returns (g, s, t) with s a + t b = g, g monic.
template <class K> std::tuple<Poly<K>, Poly<K>, Poly<K>> xgcd(Poly<K> a, Poly<K> b) {
  const K &z = a.zero();
  Poly<K> s0 = Poly<K>::constant(a.one()), s1(z), t0(z), t1 = Poly<K>::constant(a.one());
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
    auto s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a.is_zero())
    return {a, s0, t0};
  K inv = a.one() / a.lead();
  return {a * inv, s0 * inv, t0 * inv};
}

/// Resultant by the subresultant pseudo-remainder sequence.
template <class K> K resultant(Poly<K> a, Poly<K> b) {
  const K zero = a.zero(), one = a.one();
  if (a.is_zero() || b.is_zero())
    return zero;
  K s = one;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() % 2) && (b.degree() % 2))
      s = -s;
  }
  if (b.degree() == 0) {
    K r = one;
    for (int i = 0; i < a.degree(); ++i)
      r = r * b.lead();
    return r;
  }
  auto kpow = [&](K x, int e) {
    K r = one;
    for (int i = 0; i < e; ++i)
      r = r * x;
    return r;
  };
  K g = one, h = one;
  for (;;) {
    int delta = a.degree() - b.degree();
    if ((a.degree() % 2) && (b.degree() % 2))
      s = -s;
    // Pseudo-remainder: lc(b)^(delta+1) a mod b.
    Poly<K> r = (a * kpow(b.lead(), delta + 1)) % b;
    a = std::move(b);
    b = r * (one / (g * kpow(h, delta)));
    g = a.lead();
    h = delta == 0 ? h : kpow(g, delta) / kpow(h, delta - 1);
    if (b.is_zero())
      return zero;
    if (b.degree() == 0)
      break;
  }
  int da = a.degree();
  K hh = kpow(b.lead(), da) / kpow(h, da - 1);
  return s * hh;
}

/// (-1)^(d(d-1)/2) res(f, f') / lc(f).
template <class K> K discriminant(const Poly<K> &f) {
  if (f.degree() < 1)
    throw InvalidArgument("discriminant of a constant polynomial");
  int d = f.degree();
  if (d == 1)
    return f.one();
  K r = resultant(f, f.derivative()) / f.lead();
  if ((static_cast<long long>(d) * (d - 1) / 2) % 2)
    r = -r;
  return r;
}

/// Squarefree decomposition over a field of characteristic zero (Yun):
/// f = lc * prod g_i^i with each g_i monic, squarefree and pairwise coprime.
/// Returns the pairs (g_i, i) with deg g_i > 0.
template <class K> std::vector<std::pair<Poly<K>, int>> squarefree_decomposition_char0(const Poly<K> &f) {
  std::vector<std::pair<Poly<K>, int>> out;
  if (f.degree() < 1)
    return out;
  Poly<K> a = f.monic();
  Poly<K> d = a.derivative();
  Poly<K> g = gcd(a, d);
  Poly<K> b = exact_div(a, g), c = exact_div(d, g);
  c = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Poly<K> h = gcd(b, c);
    if (h.degree() > 0)
      out.emplace_back(h, i);
    b = exact_div(b, h);
    c = exact_div(c, h) - b.derivative();
    ++i;
  }
  return out;
}

/// Newton interpolation through (xs[i], ys[i]); xs pairwise distinct.
template <class K> Poly<K> interpolate(const std::vector<K> &xs, const std::vector<K> &ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw InvalidArgument("interpolation needs matching nonempty point lists");
  const K z = zero_of(xs.front());
  std::vector<K> dd = ys;
  const std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      K den = xs[i] - xs[i - j];
      if (is_zero(den))
        throw InvalidArgument("interpolation points are not distinct");
      dd[i] = (dd[i] - dd[i - 1]) / den;
      if (i == j)
        break;
    }
  Poly<K> r = Poly<K>::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    Poly<K> lin(std::vector<K>{-xs[i], one_of(z)}, z);
    r = r * lin + Poly<K>::constant(dd[i]);
  }
  return r;
}

template <class K> std::string to_string(const Poly<K> &f, const std::string &var = "X") {
  if (f.is_zero())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    const K &c = f[i];
    if (is_zero(c))
      continue;
    std::ostringstream cs;
    cs << c;
    std::string s = cs.str();
    bool neg = !s.empty() && s[0] == '-';
    if (neg)
      s = s.substr(1);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = s == "1";
    if (i == 0 || !unit) {
      os << s;
      if (i > 0)
        os << "*";
    }
    if (i >= 1)
      os << var;
    if (i >= 2)
      os << "^" << i;
  }
  return os.str();
}

/// Coefficientwise reduction of a rational polynomial modulo p; throws when
/// p divides a denominator.
FpPoly reduce_mod(const QPoly &f, std::uint32_t p);

/// Content-free integer multiple of f with positive leading coefficient.
QPoly primitive_part(const QPoly &f);

} // namespace hurwitz
