#pragma once

// Small extension fields F_p[y]/(m), used as evaluation points when F_p
// itself has too few elements.

#include <memory>
#include <random>

#include "hurwitz/exactpoly/fp_factor.hpp"

namespace hurwitz {

struct GfqContext {
  std::uint32_t p;
  FpPoly modulus; // monic irreducible
  std::uint64_t size;
};

class Gfq {
public:
  Gfq() = default;
  Gfq(std::shared_ptr<const GfqContext> ctx, FpPoly v) : ctx_(std::move(ctx)), v_(std::move(v)) {}

  const std::shared_ptr<const GfqContext> &context() const { return ctx_; }
  const FpPoly &value() const { return v_; }

  Gfq operator-() const { return {ctx_, -v_}; }
  friend Gfq operator+(const Gfq &a, const Gfq &b) { return {pick(a, b), a.v_ + b.v_}; }
  friend Gfq operator-(const Gfq &a, const Gfq &b) { return {pick(a, b), a.v_ - b.v_}; }
  friend Gfq operator*(const Gfq &a, const Gfq &b) {
    auto c = pick(a, b);
    if (a.v_.is_zero() || b.v_.is_zero())
      return {c, FpPoly(Fp::raw(c->p, 0))};
    return {c, (a.v_ * b.v_) % c->modulus};
  }
  Gfq inverse() const {
    if (v_.is_zero())
      throw InvalidArgument("division by zero in extension field");
    return {ctx_, powmod(v_, ctx_->size - 2, ctx_->modulus)};
  }
  friend Gfq operator/(const Gfq &a, const Gfq &b) { return a * b.inverse(); }
  friend bool operator==(const Gfq &a, const Gfq &b) { return a.v_ == b.v_; }

private:
  static std::shared_ptr<const GfqContext> pick(const Gfq &a, const Gfq &b) {
    return a.ctx_ ? a.ctx_ : b.ctx_;
  }
  std::shared_ptr<const GfqContext> ctx_;
  FpPoly v_;
};

inline Gfq zero_of(const Gfq &a) { return {a.context(), FpPoly(Fp::raw(a.context()->p, 0))}; }
inline Gfq one_of(const Gfq &a) {
  return {a.context(), FpPoly::constant(Fp::raw(a.context()->p, 1))};
}
inline bool is_zero(const Gfq &a) { return a.value().is_zero(); }
inline Gfq from_int(const Gfq &a, long long v) {
  return {a.context(), FpPoly::constant(Fp(a.context()->p, v))};
}
inline std::ostream &operator<<(std::ostream &os, const Gfq &a) {
  return os << to_string(a.value(), "y");
}

/// Field with p^k >= min_size elements; k = 1 when p suffices.
inline std::shared_ptr<const GfqContext> make_gfq(std::uint32_t p, std::uint64_t min_size) {
  int k = 1;
  std::uint64_t size = p;
  while (size < min_size) {
    size *= p;
    ++k;
  }
  std::mt19937_64 rng(p * 7919ULL + static_cast<std::uint64_t>(k));
  std::uniform_int_distribution<std::uint32_t> coin(0, p - 1);
  for (;;) {
    std::vector<Fp> c;
    for (int i = 0; i < k; ++i)
      c.push_back(Fp::raw(p, coin(rng)));
    c.push_back(Fp::raw(p, 1));
    FpPoly m(std::move(c), Fp::raw(p, 0));
    if (is_irreducible(m))
      return std::make_shared<const GfqContext>(GfqContext{p, m, size});
  }
}

/// The element with base-p digits of `index` as coefficients.
inline Gfq gfq_element(const std::shared_ptr<const GfqContext> &ctx, std::uint64_t index) {
  std::vector<Fp> c;
  while (index) {
    c.push_back(Fp::raw(ctx->p, static_cast<std::uint32_t>(index % ctx->p)));
    index /= ctx->p;
  }
  return {ctx, FpPoly(std::move(c), Fp::raw(ctx->p, 0))};
}

} // namespace hurwitz
