#include "hurwitz/numcover/cpoly.hpp"

#include <cmath>

#include "hurwitz/error.hpp"

namespace hurwitz {

CPoly::CPoly(std::vector<Complex> coeffs, mpfr_prec_t bits) : c_(std::move(coeffs)), bits_(bits) {
  for (auto &c : c_)
    c = c.with_precision(bits);
  trim();
}

CPoly CPoly::from_exact(const QPoly &f, mpfr_prec_t bits) {
  std::vector<Complex> c;
  for (const auto &a : f.coeffs())
    c.push_back(from_rational(a, bits));
  return CPoly(std::move(c), bits);
}

void CPoly::trim() {
  while (!c_.empty() && c_.back().is_zero())
    c_.pop_back();
}

Complex CPoly::eval(const Complex &x) const {
  Complex r(bits_);
  for (std::size_t i = c_.size(); i-- > 0;)
    r = r * x + c_[i];
  return r;
}

std::pair<Complex, Complex> CPoly::eval_with_derivative(const Complex &x) const {
  Complex f(bits_), d(bits_);
  for (std::size_t i = c_.size(); i-- > 0;) {
    d = d * x + f;
    f = f * x + c_[i];
  }
  return {f, d};
}

Real CPoly::magnitude_at(const Complex &x) const {
  Real ax = abs(x), r(bits_);
  for (std::size_t i = c_.size(); i-- > 0;)
    r = r * ax + abs(c_[i]);
  return r;
}

CPoly CPoly::derivative() const {
  std::vector<Complex> d;
  for (std::size_t i = 1; i < c_.size(); ++i)
    d.push_back(c_[i] * Real(static_cast<long>(i), bits_));
  return CPoly(std::move(d), bits_);
}

CPoly operator+(const CPoly &a, const CPoly &b) {
  std::vector<Complex> r(std::max(a.c_.size(), b.c_.size()), Complex(a.bits_));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i)
    r[i] += b.c_[i];
  return CPoly(std::move(r), std::max(a.bits_, b.bits_));
}

CPoly operator-(const CPoly &a, const CPoly &b) { return a + b * Complex(-1, 0, b.bits_); }

CPoly operator*(const CPoly &a, const CPoly &b) {
  if (a.c_.empty() || b.c_.empty())
    return CPoly({}, std::max(a.bits_, b.bits_));
  std::vector<Complex> r(a.c_.size() + b.c_.size() - 1, Complex(a.bits_));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      r[i + j] += a.c_[i] * b.c_[j];
  return CPoly(std::move(r), std::max(a.bits_, b.bits_));
}

CPoly operator*(const CPoly &a, const Complex &s) {
  std::vector<Complex> r;
  for (const auto &c : a.c_)
    r.push_back(c * s);
  return CPoly(std::move(r), a.bits_);
}

CPoly CPoly::pow(unsigned e) const {
  CPoly r({Complex(1, 0, bits_)}, bits_), b = *this;
  while (e) {
    if (e & 1)
      r = r * b;
    e >>= 1;
    if (e)
      b = b * b;
  }
  return r;
}

CPoly CPoly::with_precision(mpfr_prec_t bits) const { return CPoly(c_, bits); }

RootResult complex_roots(const CPoly &f, const RootOptions &options) {
  const int n = f.degree();
  if (n < 1)
    throw InvalidArgument("root finding needs degree at least 1");
  const mpfr_prec_t bits = f.precision();
  const double tol_exp = options.tolerance > 0 ? std::log2(options.tolerance) : -0.9 * double(bits);
  const Real tol = pow2(static_cast<long>(std::floor(tol_exp)), bits);
  // Fujiwara-style bound for the starting radius.
  Real lead = abs(f[static_cast<std::size_t>(n)]), radius(bits);
  for (int i = 0; i < n; ++i) {
    Real a = abs(f[static_cast<std::size_t>(i)]) / lead;
    if (a.is_zero())
      continue;
    double r = std::pow(a.to_double(), 1.0 / (n - i));
    Real rr(r, bits);
    radius = max(radius, rr);
  }
  radius = radius * 1.0 + Real(1e-3, bits);
  RootResult res;
  const Real twopi = pi(bits) * 2.0;
  for (int k = 0; k < n; ++k) {
    Real theta = twopi * (double(k) / n) + Real(0.4, bits);
    res.roots.push_back(polar(radius * (0.5 + 0.5 * double(k + 1) / n), theta));
  }
  const CPoly df = f.derivative();
  auto residual_of = [&](const Complex &z) { return abs(f.eval(z)) / f.magnitude_at(z); };
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (res.iterations = 1; res.iterations <= options.max_iterations; ++res.iterations) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      auto ui = static_cast<std::size_t>(i);
      if (done[ui])
        continue;
      auto [v, d] = f.eval_with_derivative(res.roots[ui]);
      if (abs(v) <= tol * f.magnitude_at(res.roots[ui])) {
        done[ui] = true;
        continue;
      }
      all = false;
      Complex ratio = v / d;
      Complex s(bits);
      for (int j = 0; j < n; ++j)
        if (j != i) {
          Complex diff = res.roots[ui] - res.roots[static_cast<std::size_t>(j)];
          if (!diff.is_zero())
            s += Complex(1, 0, bits) / diff;
        }
      Complex denom = Complex(1, 0, bits) - ratio * s;
      Complex step = denom.is_zero() ? ratio : ratio / denom;
      if (!step.is_finite())
        step = Complex(1e-3, 1e-3, bits);
      res.roots[ui] -= step;
    }
    if (all) {
      res.converged = true;
      break;
    }
  }
  res.residual = Real(bits);
  for (const auto &z : res.roots)
    res.residual = max(res.residual, residual_of(z));
  if (!res.converged && res.residual <= tol)
    res.converged = true;
  if (!res.converged && !options.best_effort)
    throw NumericalFailure("root finding did not converge in " +
                           std::to_string(options.max_iterations) + " iterations (residual " +
                           res.residual.to_string(4) + ")");
  return res;
}

} // namespace hurwitz
