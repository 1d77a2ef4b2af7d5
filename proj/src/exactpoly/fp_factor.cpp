#include "hurwitz/exactpoly/fp_factor.hpp"

#include <random>

namespace hurwitz {

namespace {

void check_prime(const FpPoly &f) {
  std::uint32_t p = f.zero().prime();
  if (p == 0)
    throw InvalidArgument("polynomial has no modulus");
  if (p == 2 || !is_prime(p))
    throw InvalidArgument("factorisation needs an odd prime, got " + std::to_string(p));
}

/// g with g(X)^p = f(X) when f' = 0.
FpPoly pth_root(const FpPoly &f) {
  std::uint32_t p = f.zero().prime();
  std::vector<Fp> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p)
    c.push_back(f[i]);
  return FpPoly(std::move(c), f.zero());
}

bool coeff_less(const FpPoly &a, const FpPoly &b) {
  if (a.degree() != b.degree())
    return a.degree() < b.degree();
  for (std::size_t i = a.coeffs().size(); i-- > 0;)
    if (a[i] != b[i])
      return a[i].value() < b[i].value();
  return false;
}

/// Distinct-degree factorisation of a monic squarefree polynomial.
std::vector<std::pair<FpPoly, int>> distinct_degree(FpPoly f) {
  std::vector<std::pair<FpPoly, int>> out;
  const std::uint32_t p = f.zero().prime();
  FpPoly x = FpPoly::x(f.zero());
  FpPoly h = x;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = powmod(h, p, f);
    FpPoly g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = exact_div(f, g);
      h = h % f;
    }
  }
  if (f.degree() > 0)
    out.emplace_back(f, f.degree());
  return out;
}

/// Splits a monic product of irreducibles of degree d.
void equal_degree(const FpPoly &f, int d, std::mt19937_64 &rng, std::vector<FpPoly> &out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const std::uint32_t p = f.zero().prime();
  std::uniform_int_distribution<std::uint32_t> coin(0, p - 1);
  // (p^d - 1) / 2 as an exponent, applied by repeated powering.
  for (;;) {
    std::vector<Fp> c;
    for (int i = 0; i < f.degree(); ++i)
      c.push_back(Fp::raw(p, coin(rng)));
    FpPoly a(std::move(c), f.zero());
    if (a.degree() < 1)
      continue;
    FpPoly g = gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(exact_div(f, g), d, rng, out);
      return;
    }
    // b = a^((p^d - 1)/2) mod f, computed as a^(1 + p + ... + p^(d-1)) to
    // the power (p-1)/2.
    FpPoly t = a, acc = a;
    for (int i = 1; i < d; ++i) {
      t = powmod(t, p, f);
      acc = (acc * t) % f;
    }
    FpPoly b = powmod(acc, (p - 1) / 2, f);
    g = gcd(b - FpPoly::constant(b.one()), f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(exact_div(f, g), d, rng, out);
      return;
    }
  }
}

} // namespace

FpPoly powmod(const FpPoly &a, std::uint64_t e, const FpPoly &m) {
  FpPoly r = FpPoly::constant(m.one()) % m, b = a % m;
  while (e) {
    if (e & 1)
      r = (r * b) % m;
    e >>= 1;
    if (e)
      b = (b * b) % m;
  }
  return r;
}

std::vector<std::pair<FpPoly, int>> squarefree_decomposition(const FpPoly &f) {
  std::vector<std::pair<FpPoly, int>> out;
  if (f.degree() < 1)
    return out;
  const std::uint32_t p = f.zero().prime();
  FpPoly a = f.monic();
  FpPoly d = a.derivative();
  if (d.is_zero()) {
    for (auto &[g, m] : squarefree_decomposition(pth_root(a)))
      out.emplace_back(g, m * static_cast<int>(p));
    return out;
  }
  FpPoly c = gcd(a, d);
  FpPoly w = exact_div(a, c);
  int i = 1;
  while (w.degree() > 0) {
    FpPoly y = gcd(w, c);
    FpPoly z = exact_div(w, y);
    if (z.degree() > 0)
      out.emplace_back(z, i);
    ++i;
    w = y;
    c = exact_div(c, y);
  }
  if (c.degree() > 0)
    for (auto &[g, m] : squarefree_decomposition(pth_root(c)))
      out.emplace_back(g, m * static_cast<int>(p));
  std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) {
    return x.second != y.second ? x.second < y.second : coeff_less(x.first, y.first);
  });
  return out;
}

std::vector<FpFactor> factor_fp(const FpPoly &f, std::uint64_t seed) {
  check_prime(f);
  if (f.is_zero())
    throw InvalidArgument("cannot factor the zero polynomial");
  std::mt19937_64 rng(seed);
  std::vector<FpFactor> out;
  for (const auto &[g, m] : squarefree_decomposition(f))
    for (const auto &[h, d] : distinct_degree(g)) {
      std::vector<FpPoly> parts;
      equal_degree(h, d, rng, parts);
      for (auto &q : parts)
        out.push_back({std::move(q), m});
    }
  std::sort(out.begin(), out.end(), [](const FpFactor &a, const FpFactor &b) {
    if (a.factor != b.factor)
      return coeff_less(a.factor, b.factor);
    return a.multiplicity < b.multiplicity;
  });
  // Merge equal factors that arrived from different squarefree layers.
  std::vector<FpFactor> merged;
  for (auto &fac : out) {
    if (!merged.empty() && merged.back().factor == fac.factor)
      merged.back().multiplicity += fac.multiplicity;
    else
      merged.push_back(std::move(fac));
  }
  return merged;
}

std::vector<std::size_t> factor_degrees(const FpPoly &f, std::uint64_t seed) {
  std::vector<std::size_t> out;
  for (const auto &fac : factor_fp(f, seed))
    for (int k = 0; k < fac.multiplicity; ++k)
      out.push_back(static_cast<std::size_t>(fac.factor.degree()));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_irreducible(const FpPoly &f) {
  check_prime(f);
  if (f.degree() < 1)
    return false;
  FpPoly g = f.monic();
  if (gcd(g, g.derivative()).degree() > 0)
    return false;
  auto dd = distinct_degree(g);
  return dd.size() == 1 && dd.front().second == g.degree();
}

std::vector<Fp> roots_fp(const FpPoly &f, std::uint64_t seed) {
  std::vector<Fp> out;
  for (const auto &fac : factor_fp(f, seed))
    if (fac.factor.degree() == 1)
      out.push_back(-fac.factor[0]);
  std::sort(out.begin(), out.end(), [](Fp a, Fp b) { return a.value() < b.value(); });
  return out;
}

FpPoly reduce_mod(const QPoly &f, std::uint32_t p) {
  std::vector<Fp> c;
  for (const auto &a : f.coeffs())
    c.push_back(reduce_mod(a, p));
  return FpPoly(std::move(c), Fp::raw(p, 0));
}

QPoly primitive_part(const QPoly &f) {
  if (f.is_zero())
    return f;
  mpz_class l = 1, g = 0;
  for (const auto &a : f.coeffs())
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den().get_mpz_t());
  std::vector<Rational> c;
  for (const auto &a : f.coeffs()) {
    Rational v = a * l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num().get_mpz_t());
    c.push_back(v);
  }
  if (sgn(f.lead()) < 0)
    g = -g;
  for (auto &a : c)
    a /= g;
  return QPoly(std::move(c), Rational(0));
}

} // namespace hurwitz
