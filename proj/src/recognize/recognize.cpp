#include "hurwitz/recognize/recognize.hpp"

#include <algorithm>
#include <cmath>

#include "hurwitz/recognize/lll.hpp"

namespace hurwitz {
namespace {

double log2_of(const mpz_class &v) {
  if (v == 0)
    return -INFINITY;
  long e;
  double d = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log2(std::abs(d)) + double(e);
}

double log2_height(const mpz_class &h) { return std::max(1.0, log2_of(h)); }

mpz_class scaled_integer(const Real &x, long k) {
  Real t(x.precision());
  mpfr_mul_2si(t.raw(), x.raw(), k, MPFR_RNDN);
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), t.raw(), MPFR_RNDN);
  return out;
}

Rational pow2_rational(long e) {
  mpz_class one = 1;
  if (e >= 0)
    return Rational(one << e);
  return Rational(one, one << -e);
}

std::optional<std::vector<mpz_class>> normalise(std::vector<mpz_class> a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
  if (a.size() < 2)
    return std::nullopt;
  mpz_class g = 0;
  for (const auto &c : a)
    g = gcd(g, c);
  if (a.back() < 0)
    g = -g;
  for (auto &c : a)
    c /= g;
  return a;
}

Complex eval(const std::vector<mpz_class> &a, const Complex &z) {
  const mpfr_prec_t bits = z.precision();
  Complex r(bits);
  for (std::size_t i = a.size(); i-- > 0;)
    r = r * z + from_rational(Rational(a[i]), bits);
  return r;
}

} // namespace

QPoly RecognizedValue::polynomial() const {
  std::vector<Rational> c;
  for (const auto &x : coefficients)
    c.emplace_back(x);
  return QPoly(std::move(c), Rational(0));
}

std::string RecognizedValue::to_string() const { return hurwitz::to_string(polynomial()); }

std::optional<Rational> recognize_rational(const Real &x, const mpz_class &max_height,
                                           std::optional<long> accuracy_bits) {
  const long acc = accuracy_bits.value_or(x.precision());
  const long required = static_cast<long>(std::ceil(2 * log2_height(max_height))) + 8;
  if (acc < required)
    throw InsufficientPrecision(required, acc);
  if (!x.is_finite())
    return std::nullopt;
  const Rational r = to_rational(x);
  const Rational tol = pow2_rational(-(acc - 8)) * std::max(Rational(1), Rational(abs(r)));
  // Convergents h/k of the continued fraction of r.
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  Rational rest = r;
  for (;;) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    mpz_class h = a * h0 + h1, k = a * k0 + k1;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    if (abs(h) > max_height || k > max_height)
      return std::nullopt;
    Rational c(h, k);
    c.canonicalize();
    if (abs(r - c) <= tol)
      return c;
    Rational frac = rest - Rational(a);
    if (frac == 0)
      return std::nullopt;
    rest = 1 / frac;
  }
}

long required_recognition_bits(std::size_t max_degree, const mpz_class &height_bound) {
  return static_cast<long>(std::ceil(double(max_degree + 1) * (log2_height(height_bound) + 16))) + 16;
}

Recognition recognize_algebraic(const Complex &z, std::size_t max_degree, const mpz_class &height_bound,
                                std::optional<long> accuracy_bits, const RecognizeOptions &options) {
  if (max_degree == 0)
    throw InvalidArgument("max_degree must be at least 1");
  const long acc = accuracy_bits.value_or(z.precision());
  Recognition out;
  out.required_bits = required_recognition_bits(max_degree, height_bound);
  if (acc < out.required_bits)
    throw InsufficientPrecision(out.required_bits, acc);
  const long K = acc - 8;
  const bool real = z.im.is_zero();
  const Real threshold = pow2(-acc / 4, z.precision());

  std::vector<Complex> powers{Complex(1.0, 0.0, z.precision())};
  for (std::size_t d = 1; d <= max_degree; ++d) {
    powers.push_back(powers.back() * z);
    IntegerLattice lat;
    for (std::size_t i = 0; i <= d; ++i) {
      IntVector row(d + 1, mpz_class(0));
      row[i] = 1;
      row.push_back(scaled_integer(powers[i].re, K));
      if (!real)
        row.push_back(scaled_integer(powers[i].im, K));
      lat.basis.push_back(std::move(row));
    }
    lat = lll_reduce(lat, options.delta);
    std::vector<std::pair<double, std::size_t>> norms;
    for (std::size_t i = 0; i < lat.basis.size(); ++i)
      norms.push_back({0.5 * log2_of(dot(lat.basis[i], lat.basis[i])), i});
    std::sort(norms.begin(), norms.end());
    const auto &best = lat.basis[norms[0].second];
    auto coeffs = normalise(std::vector<mpz_class>(best.begin(), best.begin() + d + 1));
    if (!coeffs)
      continue;
    mpz_class height = 0;
    for (const auto &c : *coeffs)
      height = std::max(height, mpz_class(abs(c)));
    RecognizedValue v;
    v.coefficients = *coeffs;
    v.residual = abs(eval(*coeffs, z));
    v.margin_log2 = norms.size() > 1 ? norms[1].first - norms[0].first : INFINITY;
    if (height > height_bound || !(v.residual < threshold * Real(Rational(height), z.precision())))
      continue;
    out.status = v.margin_log2 >= options.margin_log2 ? RecognitionStatus::Found : RecognitionStatus::Inconclusive;
    out.value = std::move(v);
    return out;
  }
  return out;
}

} // namespace hurwitz
