#pragma once

#include "hurwitz/exactpoly/poly.hpp"

namespace hurwitz {

/// num/den in lowest terms with monic denominator.
template <class K> class RationalFunction {
public:
  RationalFunction() = default;
  explicit RationalFunction(Poly<K> num) : RationalFunction(num, Poly<K>::constant(num.one())) {}
  RationalFunction(Poly<K> num, Poly<K> den) {
    if (den.is_zero())
      throw InvalidArgument("rational function with zero denominator");
    Poly<K> g = gcd(num, den);
    if (g.degree() > 0) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
    K l = den.lead();
    num_ = num * (den.one() / l);
    den_ = den.monic();
  }

  const Poly<K> &num() const { return num_; }
  const Poly<K> &den() const { return den_; }
  /// max(deg num, deg den).
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  /// this(h(X)).
  RationalFunction compose(const RationalFunction &h) const {
    const int m = degree();
    const K z = num_.zero();
    Poly<K> a(z), b(z);
    // Homogenised: sum c_i hn^i hd^(m-i).
    std::vector<Poly<K>> hn_pow{Poly<K>::constant(num_.one())}, hd_pow{Poly<K>::constant(num_.one())};
    for (int i = 1; i <= m; ++i) {
      hn_pow.push_back(hn_pow.back() * h.num());
      hd_pow.push_back(hd_pow.back() * h.den());
    }
    for (int i = 0; i <= m; ++i) {
      auto term = hn_pow[static_cast<std::size_t>(i)] * hd_pow[static_cast<std::size_t>(m - i)];
      a += term * num_[static_cast<std::size_t>(i)];
      b += term * den_[static_cast<std::size_t>(i)];
    }
    return RationalFunction(a, b);
  }

  friend bool operator==(const RationalFunction &x, const RationalFunction &y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }

private:
  Poly<K> num_, den_;
};

using QRationalFunction = RationalFunction<Rational>;

/// F == g(h) exactly.
template <class K>
bool verify_composition(const RationalFunction<K> &F, const RationalFunction<K> &g,
                        const RationalFunction<K> &h) {
  return F == g.compose(h);
}

} // namespace hurwitz
