#include "hurwitz/numcover/cover_model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <sstream>

#include "hurwitz/error.hpp"
#include "hurwitz/exactpoly/cover.hpp"
#include "hurwitz/permgroup/group_io.hpp"
#include "hurwitz/permgroup/perm_group.hpp"

namespace hurwitz {
namespace {

struct Shape {
  std::vector<FactorShape> shape;
  std::vector<CPoly> factors;
};

CPoly monic_from_roots(const std::vector<Complex> &roots, mpfr_prec_t bits) {
  CPoly f({Complex(1.0, 0.0, bits)}, bits);
  for (const auto &r : roots)
    f = f * CPoly({-r, Complex(1.0, 0.0, bits)}, bits);
  return f;
}

Shape exact_shape(const QPoly &g, mpfr_prec_t bits) {
  Shape out;
  auto parts = squarefree_decomposition_char0(g);
  std::sort(parts.begin(), parts.end(), [](auto &a, auto &b) { return a.second > b.second; });
  for (const auto &[f, e] : parts) {
    if (f.degree() <= 0)
      continue;
    out.shape.push_back({static_cast<std::size_t>(f.degree()), static_cast<unsigned>(e)});
    out.factors.push_back(CPoly::from_exact(f.monic(), bits));
  }
  return out;
}

// Single-linkage clusters of nearly equal roots; a cluster of size e is a
// root of multiplicity e.
Shape shape_from_roots(const std::vector<Complex> &roots, mpfr_prec_t bits) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i)
      i = parent[i] = parent[parent[i]];
    return i;
  };
  const Real thr = pow2(-static_cast<long>(bits / 8), bits);
  const Real one(1.0, bits);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (abs(roots[i] - roots[j]) < thr * (one + max(abs(roots[i]), abs(roots[j]))))
        parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < n; ++i)
    clusters[find(i)].push_back(i);
  std::map<std::size_t, std::vector<Complex>, std::greater<>> by_size;
  for (const auto &[root, members] : clusters) {
    Complex c(bits);
    for (auto i : members)
      c += roots[i].with_precision(bits);
    by_size[members.size()].push_back(c / Real(static_cast<long>(members.size()), bits));
  }
  Shape out;
  for (const auto &[e, centers] : by_size) {
    out.shape.push_back({centers.size(), static_cast<unsigned>(e)});
    out.factors.push_back(monic_from_roots(centers, bits));
  }
  return out;
}

Shape numeric_shape(const CPoly &g, mpfr_prec_t bits) {
  if (g.degree() < 1)
    return {};
  RootOptions opts;
  opts.best_effort = true;
  opts.max_iterations = 5000;
  auto roots = complex_roots(g, opts).roots;
  return shape_from_roots(roots, bits);
}

std::size_t shape_degree(const std::vector<FactorShape> &shape) {
  std::size_t d = 0;
  for (const auto &f : shape)
    d += f.degree * f.multiplicity;
  return d;
}

Complex coeff_at(const CPoly &f, std::size_t i, mpfr_prec_t bits) {
  return i < f.coeffs().size() ? f[i] : Complex(bits);
}

Real magnitude(const Complex &z) { return abs(z.re) + abs(z.im); }

// a -= f * b without temporaries.
void sub_mul(Complex &a, const Complex &f, const Complex &b, Real &t) {
  mpfr_mul(t.raw(), f.re.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_sub(a.re.raw(), a.re.raw(), t.raw(), MPFR_RNDN);
  mpfr_mul(t.raw(), f.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_add(a.re.raw(), a.re.raw(), t.raw(), MPFR_RNDN);
  mpfr_mul(t.raw(), f.re.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_sub(a.im.raw(), a.im.raw(), t.raw(), MPFR_RNDN);
  mpfr_mul(t.raw(), f.im.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_sub(a.im.raw(), a.im.raw(), t.raw(), MPFR_RNDN);
}

using Matrix = std::vector<std::vector<Complex>>;

// Gaussian elimination with column equilibration and partial pivoting.
std::vector<Complex> solve(Matrix a, std::vector<Complex> b, mpfr_prec_t bits) {
  const std::size_t n = b.size();
  std::vector<Real> colscale(n, Real(bits));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i)
      colscale[j] = max(colscale[j], magnitude(a[i][j]));
    if (colscale[j].is_zero())
      throw NumericalFailure("singular Jacobian: unknown " + std::to_string(j) +
                             " does not enter any equation");
    for (std::size_t i = 0; i < n; ++i)
      if (!a[i][j].is_zero())
        a[i][j] = a[i][j] / colscale[j];
  }
  const Real thr = pow2(-static_cast<long>(bits / 2), bits);
  Real t(bits);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    Real best = magnitude(a[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      Real m = magnitude(a[i][k]);
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (best < thr)
      throw NumericalFailure("singular Jacobian: pivot " + best.to_string(3) + " in column " +
                             std::to_string(k) + " (the normalisation pins do not fix the cover)");
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero())
        continue;
      Complex f = a[i][k] / a[k][k];
      for (std::size_t j = k + 1; j < n; ++j)
        if (!a[k][j].is_zero())
          sub_mul(a[i][j], f, a[k][j], t);
      sub_mul(b[i], f, b[k], t);
      a[i][k] = Complex(bits);
    }
  }
  std::vector<Complex> x(n, Complex(bits));
  for (std::size_t k = n; k-- > 0;) {
    Complex s = b[k];
    for (std::size_t j = k + 1; j < n; ++j)
      if (!a[k][j].is_zero())
        sub_mul(s, a[k][j], x[j], t);
    x[k] = s / a[k][k];
  }
  for (std::size_t j = 0; j < n; ++j)
    x[j] = x[j] / colscale[j];
  return x;
}

class System {
public:
  System(const CoverApproximation &c, std::optional<std::size_t> free_branch, std::vector<Pin> pins)
      : free_(free_branch), pins_(std::move(pins)) {
    n_num_ = c.num.coeffs().size();
    n_den_ = c.den.coeffs().size();
    N_ = c.degree;
    std::size_t k = 0;
    k += n_num_;
    off_den_ = k;
    k += n_den_;
    equations_ = 0;
    for (const auto &b : c.branches) {
      off_scale_.push_back(k++);
      std::vector<std::size_t> offs;
      for (const auto &f : b.shape) {
        offs.push_back(k);
        k += f.degree;
      }
      off_factor_.push_back(offs);
      equations_ += b.point.infinite ? n_den_ : N_ + 1;
    }
    if (free_) {
      if (*free_ >= c.branches.size() || c.branches[*free_].point.infinite)
        throw InvalidArgument("the freed branch point must be a finite branch point");
      off_t_ = k++;
    }
    unknowns_ = k;
    equations_ += pins_.size();
    // Resolve pin columns now so bad references fail early.
    for (const auto &p : pins_)
      for (const auto &r : p.terms)
        column(r, c);
  }

  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return equations_; }
  std::vector<Pin> &pins() { return pins_; }

  std::size_t column(const UnknownRef &r, const CoverApproximation &c) const {
    using K = UnknownRef::Kind;
    switch (r.kind) {
    case K::Num:
      if (r.index >= n_num_)
        throw InvalidArgument("numerator has no coefficient " + std::to_string(r.index));
      return r.index;
    case K::Den:
      if (r.index >= n_den_)
        throw InvalidArgument("denominator has no coefficient " + std::to_string(r.index));
      return off_den_ + r.index;
    case K::Scale:
      if (r.branch >= c.branches.size())
        throw InvalidArgument("no branch point " + std::to_string(r.branch + 1));
      return off_scale_[r.branch];
    case K::Factor:
      if (r.branch >= c.branches.size() || r.factor >= c.branches[r.branch].shape.size())
        throw InvalidArgument("no such factor");
      if (r.index >= c.branches[r.branch].shape[r.factor].degree)
        throw InvalidArgument("coefficient " + std::to_string(r.index) +
                              " of a monic factor is not an unknown");
      return off_factor_[r.branch][r.factor] + r.index;
    case K::BranchValue:
      if (!free_ || *free_ != r.branch)
        throw InvalidArgument("branch point " + std::to_string(r.branch + 1) + " is not free");
      return off_t_;
    }
    throw InvalidArgument("bad unknown reference");
  }

  std::vector<Complex> pack(const CoverApproximation &c) const {
    const auto bits = c.bits;
    std::vector<Complex> x(unknowns_, Complex(bits));
    for (std::size_t i = 0; i < n_num_; ++i)
      x[i] = coeff_at(c.num, i, bits);
    for (std::size_t i = 0; i < n_den_; ++i)
      x[off_den_ + i] = coeff_at(c.den, i, bits);
    for (std::size_t k = 0; k < c.branches.size(); ++k) {
      const auto &b = c.branches[k];
      x[off_scale_[k]] = b.scale;
      for (std::size_t j = 0; j < b.shape.size(); ++j)
        for (std::size_t l = 0; l < b.shape[j].degree; ++l)
          x[off_factor_[k][j] + l] = coeff_at(b.factors[j], l, bits);
    }
    if (free_)
      x[off_t_] = c.branches[*free_].point.value;
    return x;
  }

  void unpack(const std::vector<Complex> &x, CoverApproximation &c) const {
    const auto bits = c.bits;
    c.num = CPoly(std::vector<Complex>(x.begin(), x.begin() + n_num_), bits);
    c.den = CPoly(std::vector<Complex>(x.begin() + off_den_, x.begin() + off_den_ + n_den_), bits);
    for (std::size_t k = 0; k < c.branches.size(); ++k) {
      auto &b = c.branches[k];
      b.scale = x[off_scale_[k]];
      for (std::size_t j = 0; j < b.shape.size(); ++j) {
        const auto o = x.begin() + off_factor_[k][j];
        std::vector<Complex> f(o, o + b.shape[j].degree);
        f.emplace_back(1.0, 0.0, bits);
        b.factors[j] = CPoly(std::move(f), bits);
      }
    }
    if (free_)
      c.branches[*free_].point.value = x[off_t_];
  }

  /// Equation values; the Jacobian too when `jac` is given.
  std::vector<Complex> evaluate(const CoverApproximation &c, Matrix *jac) const {
    const auto bits = c.bits;
    std::vector<Complex> e(equations_, Complex(bits));
    if (jac)
      jac->assign(equations_, std::vector<Complex>(unknowns_, Complex(bits)));
    std::size_t row = 0;
    for (std::size_t k = 0; k < c.branches.size(); ++k) {
      const auto &b = c.branches[k];
      const std::size_t m = b.shape.size();
      std::vector<CPoly> powers;
      for (std::size_t j = 0; j < m; ++j)
        powers.push_back(b.factors[j].pow(b.shape[j].multiplicity));
      CPoly one({Complex(1.0, 0.0, bits)}, bits);
      std::vector<CPoly> prefix(m + 1, one), suffix(m + 1, one);
      for (std::size_t j = 0; j < m; ++j)
        prefix[j + 1] = prefix[j] * powers[j];
      for (std::size_t j = m; j-- > 0;)
        suffix[j] = suffix[j + 1] * powers[j];
      const CPoly &T = prefix[m];
      const bool inf = b.point.infinite;
      const std::size_t rows = inf ? n_den_ : N_ + 1;
      for (std::size_t i = 0; i < rows; ++i) {
        Complex v = inf ? coeff_at(c.den, i, bits)
                        : coeff_at(c.num, i, bits) - b.point.value * coeff_at(c.den, i, bits);
        e[row + i] = v - b.scale * coeff_at(T, i, bits);
      }
      if (jac) {
        auto &J = *jac;
        for (std::size_t i = 0; i < rows; ++i) {
          if (inf) {
            J[row + i][off_den_ + i] = Complex(1.0, 0.0, bits);
          } else {
            if (i < n_num_)
              J[row + i][i] = Complex(1.0, 0.0, bits);
            if (i < n_den_)
              J[row + i][off_den_ + i] = -b.point.value;
            if (free_ && *free_ == k)
              J[row + i][off_t_] = -coeff_at(c.den, i, bits);
          }
          J[row + i][off_scale_[k]] = -coeff_at(T, i, bits);
        }
        for (std::size_t j = 0; j < m; ++j) {
          const unsigned e_j = b.shape[j].multiplicity;
          CPoly r = prefix[j] * suffix[j + 1];
          if (e_j > 1)
            r = r * b.factors[j].pow(e_j - 1);
          Complex f = b.scale * Real(-static_cast<long>(e_j), bits);
          for (std::size_t l = 0; l < b.shape[j].degree; ++l)
            for (std::size_t s = 0; s < r.coeffs().size() && s + l < rows; ++s)
              J[row + s + l][off_factor_[k][j] + l] = f * r[s];
        }
      }
      row += rows;
    }
    for (const auto &p : pins_) {
      Complex v = -p.value.with_precision(bits);
      for (const auto &r : p.terms) {
        v += unknown_value(c, r);
        if (jac)
          (*jac)[row][column(r, c)] += Complex(1.0, 0.0, bits);
      }
      e[row++] = v;
    }
    return e;
  }

  void require_square() const {
    if (unknowns_ > equations_)
      throw NumericalFailure("singular Jacobian: " + std::to_string(unknowns_) + " unknowns but " +
                             std::to_string(equations_) + " equations; " +
                             std::to_string(unknowns_ - equations_) +
                             " more normalisation pins are needed");
    if (unknowns_ < equations_)
      throw InvalidArgument("over-determined system: " + std::to_string(unknowns_) +
                            " unknowns, " + std::to_string(equations_) + " equations");
  }

private:
  std::optional<std::size_t> free_;
  std::vector<Pin> pins_;
  std::size_t n_num_ = 0, n_den_ = 0, N_ = 0, off_den_ = 0, off_t_ = 0;
  std::vector<std::size_t> off_scale_;
  std::vector<std::vector<std::size_t>> off_factor_;
  std::size_t unknowns_ = 0, equations_ = 0;
};

Real relative_residual(const CoverApproximation &c, const std::vector<Complex> &e) {
  Real scale(1.0, c.bits);
  for (const auto &z : c.num.coeffs())
    scale = max(scale, abs(z));
  for (const auto &z : c.den.coeffs())
    scale = max(scale, abs(z));
  Real r(c.bits);
  for (const auto &z : e)
    r = max(r, abs(z));
  return r / scale;
}

struct NewtonStatus {
  bool converged = false;
  bool diverged = false;
  /// Each correction at most half the previous one while above target.
  bool contracting = true;
  Real residual;
  std::size_t iterations = 0;
};

Real correction_size(const std::vector<Complex> &delta, const std::vector<Complex> &x) {
  Real r(x.empty() ? 53 : x.front().precision());
  const Real one(1.0, r.precision());
  for (std::size_t i = 0; i < x.size(); ++i)
    r = max(r, abs(delta[i]) / (one + abs(x[i])));
  return r;
}

// Newton on the system from the cover's current values. With `polish` it
// keeps going past the target until the residual stops halving.
NewtonStatus newton_iterate(CoverApproximation &c, const System &sys, std::size_t max_iter,
                            const Real &target, bool polish) {
  sys.require_square();
  NewtonStatus st;
  Matrix J;
  auto e = sys.evaluate(c, &J);
  st.residual = relative_residual(c, e);
  const Real start = max(st.residual, Real(1e-300, c.bits));
  std::optional<Real> last_step;
  for (; st.iterations < max_iter; ++st.iterations) {
    if (st.residual < target && !polish)
      break;
    for (auto &z : e)
      z = -z;
    auto delta = solve(std::move(J), std::move(e), c.bits);
    auto x = sys.pack(c);
    Real size = correction_size(delta, x);
    if (!(st.residual < target)) {
      if (last_step && size > *last_step * 0.5)
        st.contracting = false;
      last_step = size;
    }
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] += delta[i];
    CoverApproximation next = c;
    sys.unpack(x, next);
    Matrix J2;
    auto e2 = sys.evaluate(next, &J2);
    Real r2 = relative_residual(next, e2);
    if (!r2.is_finite() || r2 > start * 1e12) {
      st.diverged = true;
      break;
    }
    if (polish && st.residual < target && !(r2 * 2.0 < st.residual)) {
      if (r2 < st.residual) {
        c = std::move(next);
        st.residual = r2;
      }
      break;
    }
    c = std::move(next);
    J = std::move(J2);
    e = std::move(e2);
    st.residual = r2;
  }
  st.converged = !st.diverged && st.residual < target;
  return st;
}

Real target_residual(mpfr_prec_t bits, double fraction) {
  return pow2(-static_cast<long>(fraction * double(bits)), bits);
}

Real parse_real(const std::string &tok, mpfr_prec_t bits) {
  if (tok.find('/') != std::string::npos)
    return Real(parse_rational(tok), bits);
  return Real(tok, bits);
}

std::vector<std::string> split_words(const std::string &text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;)
    out.push_back(w);
  return out;
}

std::size_t resolve_branch(const std::string &tok, const CoverApproximation &c) {
  if (tok == "inf") {
    for (std::size_t k = 0; k < c.branches.size(); ++k)
      if (c.branches[k].point.infinite)
        return k;
    throw InvalidArgument("infinity is not a branch point of this cover");
  }
  if (!tok.empty() && tok[0] == '@') {
    std::size_t k = std::stoul(tok.substr(1));
    if (k == 0 || k > c.branches.size())
      throw InvalidArgument("branch index " + tok + " out of range");
    return k - 1;
  }
  Complex v(parse_real(tok, c.bits), Real(c.bits));
  for (std::size_t k = 0; k < c.branches.size(); ++k) {
    const auto &b = c.branches[k];
    if (!b.point.infinite &&
        abs(b.point.value - v).to_double() < 1e-6 * (1 + abs(v).to_double()))
      return k;
  }
  throw InvalidArgument("no branch point at " + tok);
}

std::size_t factor_with_multiplicity(const CoverBranch &b, unsigned e) {
  for (std::size_t j = 0; j < b.shape.size(); ++j)
    if (b.shape[j].multiplicity == e)
      return j;
  throw InvalidArgument("no factor of multiplicity " + std::to_string(e) + " at this branch point");
}

void fill_branch(CoverBranch &b, Shape shape, const CoverApproximation &c) {
  b.shape = std::move(shape.shape);
  b.factors = std::move(shape.factors);
  const std::size_t d = shape_degree(b.shape);
  CPoly g = b.point.infinite ? c.den : c.num - c.den * b.point.value;
  b.scale = coeff_at(g, d, c.bits);
}

Real cover_residual(const CoverApproximation &c) {
  System sys(c, std::nullopt, {});
  return relative_residual(c, sys.evaluate(c, nullptr));
}

std::vector<Permutation> in_input_order(const MonodromyCertificate &m) {
  std::vector<Permutation> out(m.permutations.size());
  for (std::size_t i = 0; i < m.permutations.size(); ++i)
    out[m.input_index[i]] = m.permutations[i];
  return out;
}

bool same_monodromy(const MonodromyCertificate &a, const MonodromyCertificate &b) {
  if (a.input_index == b.input_index)
    return simultaneously_conjugate(a.permutations, b.permutations);
  // Loop order changed: compare per-point cycle types and the group.
  auto pa = in_input_order(a), pb = in_input_order(b);
  for (std::size_t i = 0; i < pa.size(); ++i)
    if (CycleType::of(pa[i]) != CycleType::of(pb[i]))
      return false;
  const std::size_t n = pa.front().degree();
  return PermGroup(n, pa).order() == PermGroup(n, pb).order();
}

struct RationalBranch {
  BranchPoint point;
  std::optional<Rational> exact;
};

std::vector<RationalBranch> branch_points_with_exact(const QPoly &p, const QPoly &q,
                                                     mpfr_prec_t bits) {
  QPoly d = discriminant_in_t(p, q);
  if (d.is_zero())
    throw InvalidArgument("p - t q is inseparable");
  QPoly rest = exact_div(d, gcd(d, d.derivative()));
  std::vector<Rational> exact{Rational(0)};
  if (p.degree() == q.degree())
    exact.push_back(p.lead() / q.lead());
  std::vector<RationalBranch> out;
  for (const auto &t : exact) {
    if (rest.degree() > 0 && is_zero(rest.eval(t)))
      rest = exact_div(rest, QPoly(std::vector<Rational>{-t, 1}, Rational(0)));
    if (ramification_profile(p, q, t).index() > 0)
      out.push_back({{false, from_rational(t, bits)}, t});
  }
  if (rest.degree() > 0)
    for (auto &r : complex_roots(CPoly::from_exact(rest, bits)).roots)
      out.push_back({{false, r}, std::nullopt});
  std::sort(out.begin(), out.end(), [](const RationalBranch &a, const RationalBranch &b) {
    if (a.point.value.re != b.point.value.re)
      return a.point.value.re < b.point.value.re;
    return a.point.value.im < b.point.value.im;
  });
  if (ramification_profile(p, q, std::nullopt).index() > 0)
    out.push_back({BranchPoint::at_infinity(), std::nullopt});
  return out;
}

} // namespace

std::vector<BranchPoint> CoverApproximation::branch_points() const {
  std::vector<BranchPoint> out;
  for (const auto &b : branches)
    out.push_back(b.point);
  return out;
}

CycleType CoverApproximation::profile(std::size_t k) const {
  const auto &b = branches.at(k);
  std::vector<std::size_t> lengths;
  for (const auto &f : b.shape)
    lengths.insert(lengths.end(), f.degree, f.multiplicity);
  const std::size_t d = shape_degree(b.shape);
  if (d < degree)
    lengths.push_back(degree - d);
  return CycleType(lengths);
}

CoverApproximation CoverApproximation::with_precision(mpfr_prec_t new_bits) const {
  CoverApproximation c = *this;
  c.bits = new_bits;
  c.num = num.with_precision(new_bits);
  c.den = den.with_precision(new_bits);
  for (auto &b : c.branches) {
    b.point.value = b.point.value.with_precision(new_bits);
    b.scale = b.scale.with_precision(new_bits);
    for (auto &f : b.factors)
      f = f.with_precision(new_bits);
  }
  for (auto &p : c.pins)
    p.value = p.value.with_precision(new_bits);
  c.residual = residual.with_precision(new_bits);
  return c;
}

Complex unknown_value(const CoverApproximation &c, const UnknownRef &r) {
  using K = UnknownRef::Kind;
  switch (r.kind) {
  case K::Num:
    return coeff_at(c.num, r.index, c.bits);
  case K::Den:
    return coeff_at(c.den, r.index, c.bits);
  case K::Scale:
    return c.branches.at(r.branch).scale;
  case K::Factor:
    return coeff_at(c.branches.at(r.branch).factors.at(r.factor), r.index, c.bits);
  case K::BranchValue:
    return c.branches.at(r.branch).point.value;
  }
  throw InvalidArgument("bad unknown reference");
}

std::vector<BranchPoint> numeric_branch_points(const QPoly &p, const QPoly &q, mpfr_prec_t bits) {
  std::vector<BranchPoint> out;
  for (auto &b : branch_points_with_exact(p, q, bits))
    out.push_back(b.point);
  return out;
}

Pin parse_pin(const std::string &text, const CoverApproximation &c) {
  auto w = split_words(text);
  if (w.empty())
    throw InvalidArgument("empty pin");
  auto value_from = [&](std::size_t i) {
    if (w.size() != i + 1 && w.size() != i + 2)
      throw InvalidArgument("pin '" + text + "' has the wrong number of fields");
    return Complex(parse_real(w[i], c.bits),
                   w.size() == i + 2 ? parse_real(w[i + 1], c.bits) : Real(c.bits));
  };
  auto number = [&](std::size_t i) -> std::size_t {
    if (i >= w.size() || w[i].find_first_not_of("0123456789") != std::string::npos)
      throw InvalidArgument("pin '" + text + "': expected a non-negative integer");
    return std::stoul(w[i]);
  };
  Pin pin;
  pin.text = text;
  using K = UnknownRef::Kind;
  const std::string &kind = w[0];
  if (kind == "num" || kind == "den") {
    pin.terms.push_back({kind == "num" ? K::Num : K::Den, 0, 0, number(1)});
    pin.value = value_from(2);
  } else if (kind == "scale") {
    if (w.size() < 2)
      throw InvalidArgument("pin '" + text + "' names no branch point");
    pin.terms.push_back({K::Scale, resolve_branch(w[1], c), 0, 0});
    pin.value = value_from(2);
  } else if (kind == "factor" || kind == "factor_sum") {
    if (w.size() < 2)
      throw InvalidArgument("pin '" + text + "' names no branch point");
    std::size_t b = resolve_branch(w[1], c);
    std::size_t f = factor_with_multiplicity(c.branches[b], static_cast<unsigned>(number(2)));
    pin.terms.push_back({K::Factor, b, f, number(3)});
    if (kind == "factor_sum")
      pin.terms.push_back({K::Factor, b, f, number(4)});
    pin.value = value_from(kind == "factor" ? 4 : 5);
  } else {
    throw InvalidArgument("unknown pin kind '" + kind + "'");
  }
  for (const auto &r : pin.terms)
    if (r.kind == K::Factor && r.index >= c.branches[r.branch].shape[r.factor].degree)
      throw InvalidArgument("pin '" + text + "' refers to the fixed leading coefficient");
  return pin;
}

CoverApproximation cover_from_exact(const QPoly &p, const QPoly &q, mpfr_prec_t bits,
                                    const std::vector<std::string> &pins) {
  CoverApproximation c;
  c.degree = cover_degree(p, q);
  c.bits = bits;
  c.num = CPoly::from_exact(p, bits);
  c.den = CPoly::from_exact(q, bits);
  // Fibres over irrational points are clustered at twice the precision.
  const mpfr_prec_t wide = 2 * bits;
  const CPoly pw = CPoly::from_exact(p, wide), qw = CPoly::from_exact(q, wide);
  for (auto &rb : branch_points_with_exact(p, q, wide)) {
    CoverBranch b;
    b.point = rb.point;
    Shape s;
    if (b.point.infinite)
      s = exact_shape(q, bits);
    else if (rb.exact)
      s = exact_shape(p - q * *rb.exact, bits);
    else
      s = numeric_shape(pw - qw * CPoly({b.point.value}, wide), bits);
    b.point.value = b.point.value.with_precision(bits);
    fill_branch(b, std::move(s), c);
    c.branches.push_back(std::move(b));
  }
  for (const auto &t : pins)
    c.pins.push_back(parse_pin(t, c));
  c.residual = cover_residual(c);
  if (!c.pins.empty())
    c = newton_refine(c);
  return c;
}

CoverApproximation newton_refine(const CoverApproximation &cover, const NewtonOptions &options) {
  CoverApproximation c = cover;
  System sys(c, std::nullopt, c.pins);
  const Real target = target_residual(c.bits, options.target_fraction);
  auto st = newton_iterate(c, sys, options.max_iterations, target, true);
  if (st.diverged)
    throw NumericalFailure("Newton iteration diverged (residual " + st.residual.to_string(3) + ")");
  if (!st.converged)
    throw NumericalFailure("Newton iteration reached residual " + st.residual.to_string(3) +
                           ", above the target " + target.to_string(3));
  c.residual = cover_residual(c);
  return c;
}

bool simultaneously_conjugate(const std::vector<Permutation> &a, const std::vector<Permutation> &b) {
  if (a.size() != b.size() || a.empty())
    return false;
  const std::size_t n = a.front().degree();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].degree() != n || b[i].degree() != n || CycleType::of(a[i]) != CycleType::of(b[i]))
      return false;
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> g(n, none), ginv(n, none);
    std::vector<std::size_t> queue{0};
    g[0] = x;
    ginv[x] = 0;
    bool ok = true;
    for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
      const std::size_t i = queue[qi];
      for (std::size_t k = 0; k < a.size() && ok; ++k) {
        const std::size_t src = a[k][i], dst = b[k][g[i]];
        if (g[src] == none && ginv[dst] == none) {
          g[src] = dst;
          ginv[dst] = src;
          queue.push_back(src);
        } else if (g[src] != dst) {
          ok = false;
        }
      }
    }
    if (ok && queue.size() == n)
      return true;
  }
  return false;
}

DeformResult deform(const CoverApproximation &cover, const std::vector<Complex> &targets,
                    const DeformOptions &options) {
  std::vector<std::size_t> finite;
  for (std::size_t k = 0; k < cover.branches.size(); ++k)
    if (!cover.branches[k].point.infinite)
      finite.push_back(k);
  if (targets.size() != finite.size())
    throw InvalidArgument("deform needs " + std::to_string(finite.size()) + " target branch points, got " +
                          std::to_string(targets.size()));
  const mpfr_prec_t wb = std::min(options.working_bits, cover.bits);
  std::vector<Complex> start, end;
  for (std::size_t i = 0; i < finite.size(); ++i) {
    start.push_back(cover.branches[finite[i]].point.value.with_precision(cover.bits));
    end.push_back(targets[i].with_precision(cover.bits));
  }

  // Clearance along the straight-line path, checked before any work.
  auto to_c = [](const Complex &z) { return std::complex<double>(z.re.to_double(), z.im.to_double()); };
  double spread = 0;
  for (std::size_t i = 0; i < finite.size(); ++i)
    for (std::size_t j = i + 1; j < finite.size(); ++j)
      spread = std::max({spread, std::abs(to_c(start[i]) - to_c(start[j])),
                         std::abs(to_c(end[i]) - to_c(end[j]))});
  for (std::size_t i = 0; i < finite.size(); ++i)
    for (std::size_t j = i + 1; j < finite.size(); ++j) {
      auto d0 = to_c(start[i]) - to_c(start[j]), d1 = to_c(end[i]) - to_c(end[j]);
      auto v = d1 - d0;
      double s = std::norm(v) > 0 ? std::clamp(-std::real(d0 * std::conj(v)) / std::norm(v), 0.0, 1.0) : 0.0;
      double closest = std::abs(d0 + s * v);
      if (closest < options.clearance_factor * spread)
        throw InvalidArgument("branch points " + std::to_string(finite[i] + 1) + " and " +
                              std::to_string(finite[j] + 1) + " come within " +
                              std::to_string(closest) + " of each other along the path (clearance " +
                              std::to_string(options.clearance_factor * spread) + ")");
    }

  DeformResult out;
  std::optional<MonodromyCertificate> before;
  if (options.certify_monodromy)
    before = monodromy(cover.num.with_precision(wb), cover.den.with_precision(wb),
                       cover.with_precision(wb).branch_points(), options.monodromy);

  CoverApproximation w = cover.with_precision(wb);
  System sys(w, std::nullopt, w.pins);
  const Real step_target = target_residual(wb, 0.75);
  auto place = [&](CoverApproximation &c, const Real &s) {
    for (std::size_t i = 0; i < finite.size(); ++i) {
      const auto bits = c.bits;
      Complex a = start[i].with_precision(bits), b = end[i].with_precision(bits);
      c.branches[finite[i]].point.value = a + (b - a) * s.with_precision(bits);
    }
  };
  Real s(wb), one(1.0, wb);
  double h = options.initial_step, h_prev = 0;
  std::optional<std::vector<Complex>> prev;
  while (s < one) {
    Real step = min(Real(h, wb), one - s);
    Real s_new = s + step;
    CoverApproximation trial = w;
    place(trial, s_new);
    auto x = sys.pack(w);
    if (prev) {
      // Secant predictor for the cover; branch values are set exactly.
      Real ratio = step / Real(h_prev, wb);
      auto xp = x;
      for (std::size_t i = 0; i < x.size(); ++i)
        xp[i] = x[i] + (x[i] - (*prev)[i]) * ratio;
      sys.unpack(xp, trial);
      place(trial, s_new);
    }
    auto st = newton_iterate(trial, sys, 8, step_target, false);
    if (st.converged && st.contracting) {
      prev = sys.pack(w);
      h_prev = step.to_double();
      w = std::move(trial);
      s = s_new;
      ++out.steps;
      h = std::min(2 * h, 0.25);
    } else {
      ++out.rejected;
      h /= 2;
      if (h < options.min_step)
        throw NumericalFailure("deformation step underflow at s = " + s.to_string(6) +
                               " (residual " + st.residual.to_string(3) + ")");
    }
  }

  CoverApproximation fin = w.with_precision(cover.bits);
  place(fin, Real(1.0, cover.bits));
  fin.pins = cover.pins;
  System full(fin, std::nullopt, fin.pins);
  auto st = newton_iterate(fin, full, 40, target_residual(cover.bits, 0.5), true);
  if (!st.converged)
    throw NumericalFailure("final refinement of the deformed cover reached residual " +
                           st.residual.to_string(3));
  fin.residual = cover_residual(fin);
  if (before) {
    auto after = monodromy(fin.num.with_precision(wb), fin.den.with_precision(wb),
                           fin.with_precision(wb).branch_points(), options.monodromy);
    out.monodromy_preserved = before->product_one && after.product_one && same_monodromy(*before, after);
  }
  out.cover = std::move(fin);
  return out;
}

CoverApproximation drive_coefficient(const CoverApproximation &cover, const UnknownRef &selected,
                                     const Complex &target, std::size_t free_branch,
                                     const DriveOptions &options) {
  const mpfr_prec_t wb = std::min(options.working_bits, cover.bits);
  CoverApproximation w = cover.with_precision(wb);
  const Complex v0 = unknown_value(cover, selected);
  const Complex v1 = target.with_precision(cover.bits);
  auto pins = w.pins;
  pins.push_back({{selected}, v0.with_precision(wb), "drive"});
  System sys(w, free_branch, pins);
  auto set_value = [&](System &s, const Complex &v) { s.pins().back().value = v; };
  const Real step_target = target_residual(wb, 0.75);

  if (!options.continuation) {
    set_value(sys, v1.with_precision(wb));
    auto st = newton_iterate(w, sys, 30, step_target, false);
    if (!st.converged)
      throw NumericalFailure("Newton diverged while driving the coefficient (residual " +
                             st.residual.to_string(3) + ")");
  } else {
    Real s(wb), one(1.0, wb);
    double h = 0.125;
    while (s < one) {
      Real step = min(Real(h, wb), one - s);
      Real s_new = s + step;
      set_value(sys, v0.with_precision(wb) + (v1.with_precision(wb) - v0.with_precision(wb)) * s_new);
      CoverApproximation trial = w;
      auto st = newton_iterate(trial, sys, 8, step_target, false);
      if (st.converged && st.contracting) {
        w = std::move(trial);
        s = s_new;
        h = std::min(2 * h, 0.25);
      } else {
        h /= 2;
        if (h < options.min_step)
          throw NumericalFailure("coefficient continuation step underflow at s = " + s.to_string(6));
      }
    }
  }

  // Fixed branch points and pins come back at full precision.
  CoverApproximation fin = w.with_precision(cover.bits);
  for (std::size_t k = 0; k < fin.branches.size(); ++k)
    if (k != free_branch)
      fin.branches[k].point.value = cover.branches[k].point.value;
  fin.pins = cover.pins;
  pins = cover.pins;
  pins.push_back({{selected}, v1, "drive"});
  System full(fin, free_branch, pins);
  auto st = newton_iterate(fin, full, 40, target_residual(cover.bits, 0.5), true);
  if (!st.converged)
    throw NumericalFailure("final refinement after driving reached residual " +
                           st.residual.to_string(3));
  fin.residual = cover_residual(fin);
  return fin;
}

CoverApproximation parse_cover(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> degree;
  std::optional<mpfr_prec_t> bits;
  struct Pending {
    std::vector<std::string> words;
    std::size_t line;
  };
  std::vector<Pending> branch_lines, num_lines, den_lines, profile_lines;
  std::vector<std::pair<std::string, std::size_t>> pin_lines;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = strip_comment(raw);
    if (line.empty())
      continue;
    auto w = split_words(line);
    const std::string &key = w[0];
    auto need = [&](std::size_t n) {
      if (w.size() != n)
        throw ParseError("'" + key + "' expects " + std::to_string(n - 1) + " fields", line_no);
    };
    try {
      if (key == "degree") {
        need(2);
        degree = std::stoul(w[1]);
      } else if (key == "precision_bits") {
        need(2);
        bits = std::stol(w[1]);
        if (*bits < 53)
          throw ParseError("precision_bits must be at least 53", line_no);
      } else if (key == "branch_point") {
        if (w.size() != 2 && w.size() != 3)
          throw ParseError("branch_point expects 'inf' or '<re> <im>'", line_no);
        if (w.size() == 2 && w[1] != "inf")
          throw ParseError("branch_point expects 'inf' or '<re> <im>'", line_no);
        branch_lines.push_back({w, line_no});
      } else if (key == "num_coeff" || key == "den_coeff") {
        need(4);
        (key == "num_coeff" ? num_lines : den_lines).push_back({w, line_no});
      } else if (key == "profile") {
        need(3);
        profile_lines.push_back({w, line_no});
      } else if (key == "pin") {
        pin_lines.push_back({line.substr(line.find("pin") + 3), line_no});
      } else {
        throw ParseError("unknown keyword '" + key + "'", line_no);
      }
    } catch (const ParseError &) {
      throw;
    } catch (const std::exception &e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!degree)
    throw ParseError("cover file has no degree line", line_no);
  if (!bits)
    throw ParseError("cover file has no precision_bits line", line_no);
  CoverApproximation c;
  c.degree = *degree;
  c.bits = *bits;
  auto coeffs = [&](const std::vector<Pending> &lines) {
    std::vector<Complex> out;
    for (const auto &l : lines) {
      try {
        std::size_t k = std::stoul(l.words[1]);
        if (k > c.degree)
          throw ParseError("coefficient index " + l.words[1] + " exceeds the degree", l.line);
        if (out.size() <= k)
          out.resize(k + 1, Complex(c.bits));
        out[k] = Complex(parse_real(l.words[2], c.bits), parse_real(l.words[3], c.bits));
      } catch (const ParseError &) {
        throw;
      } catch (const std::exception &e) {
        throw ParseError(e.what(), l.line);
      }
    }
    return CPoly(std::move(out), c.bits);
  };
  c.num = coeffs(num_lines);
  c.den = coeffs(den_lines);
  if (static_cast<std::size_t>(std::max(c.num.degree(), c.den.degree())) != c.degree)
    throw ParseError("coefficients do not have the stated degree " + std::to_string(c.degree), line_no);
  for (const auto &l : branch_lines) {
    CoverBranch b;
    if (l.words[1] == "inf") {
      b.point = BranchPoint::at_infinity();
    } else {
      try {
        b.point = {false, Complex(parse_real(l.words[1], c.bits), parse_real(l.words[2], c.bits))};
      } catch (const std::exception &e) {
        throw ParseError(e.what(), l.line);
      }
    }
    const mpfr_prec_t wide = 2 * c.bits;
    CPoly g = b.point.infinite ? c.den.with_precision(wide)
                               : c.num.with_precision(wide) - c.den.with_precision(wide) *
                                                                  b.point.value.with_precision(wide);
    fill_branch(b, numeric_shape(g, c.bits), c);
    c.branches.push_back(std::move(b));
  }
  for (const auto &l : profile_lines) {
    std::size_t k;
    CycleType stated;
    try {
      k = std::stoul(l.words[1]);
      stated = CycleType::parse(l.words[2]);
    } catch (const std::exception &e) {
      throw ParseError(e.what(), l.line);
    }
    if (k == 0 || k > c.branches.size())
      throw ParseError("profile index " + l.words[1] + " out of range", l.line);
    if (c.profile(k - 1) != stated)
      throw ParseError("stated profile " + stated.to_string() + " differs from the fibre clustering " +
                           c.profile(k - 1).to_string(),
                       l.line);
  }
  for (const auto &[t, l] : pin_lines) {
    try {
      c.pins.push_back(parse_pin(strip_comment(t), c));
    } catch (const std::exception &e) {
      throw ParseError(e.what(), l);
    }
  }
  c.residual = cover_residual(c);
  return c;
}

CoverApproximation read_cover_file(const std::filesystem::path &path) {
  try {
    return parse_cover(read_text_file(path));
  } catch (const ParseError &e) {
    throw e.in_file(path.string());
  }
}

std::string format_cover(const CoverApproximation &c) {
  std::ostringstream out;
  out << "degree " << c.degree << "\n";
  out << "precision_bits " << c.bits << "\n";
  for (const auto &b : c.branches) {
    if (b.point.infinite)
      out << "branch_point inf\n";
    else
      out << "branch_point " << b.point.value.re.to_string() << " " << b.point.value.im.to_string() << "\n";
  }
  for (std::size_t k = 0; k < c.num.coeffs().size(); ++k)
    out << "num_coeff " << k << " " << c.num[k].re.to_string() << " " << c.num[k].im.to_string() << "\n";
  for (std::size_t k = 0; k < c.den.coeffs().size(); ++k)
    out << "den_coeff " << k << " " << c.den[k].re.to_string() << " " << c.den[k].im.to_string() << "\n";
  for (std::size_t k = 0; k < c.branches.size(); ++k)
    out << "profile " << k + 1 << " " << c.profile(k).to_string() << "\n";
  for (const auto &p : c.pins)
    out << "pin " << p.text << "\n";
  return out.str();
}

} // namespace hurwitz
