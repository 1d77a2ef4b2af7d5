#include "hurwitz/numcover/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hurwitz/error.hpp"

namespace hurwitz {

Real TrackingConfig::residual_tolerance(mpfr_prec_t bits) const {
  if (bits <= 53)
    return Real(residual_53, bits);
  return pow2(-static_cast<long>(0.6 * double(bits)), bits);
}

Path &Path::segment(const Complex &from, const Complex &to) {
  Piece p;
  p.a = from;
  p.b = to;
  pieces_.push_back(std::move(p));
  return *this;
}

Path &Path::arc(const Complex &center, const Real &radius, const Real &theta0, const Real &theta1) {
  Piece p;
  p.arc = true;
  p.center = center;
  p.radius = radius;
  p.theta0 = theta0;
  p.theta1 = theta1;
  pieces_.push_back(std::move(p));
  return *this;
}

Path Path::reversed() const {
  Path r;
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
    Piece p = *it;
    if (p.arc)
      std::swap(p.theta0, p.theta1);
    else
      std::swap(p.a, p.b);
    r.pieces_.push_back(std::move(p));
  }
  return r;
}

Complex Path::point(const Piece &piece, const Real &s) {
  if (piece.arc)
    return piece.center + polar(piece.radius, piece.theta0 + (piece.theta1 - piece.theta0) * s);
  return piece.a + (piece.b - piece.a) * s;
}

namespace {

Real nearest_distance(const Fiber &f, std::size_t i) {
  Real best;
  bool first = true;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (j == i)
      continue;
    Real d = abs(f[i] - f[j]);
    if (first || d < best) {
      best = d;
      first = false;
    }
  }
  return best;
}

struct NewtonResult {
  Complex x;
  bool converged = false;
  Real first_step, residual;
};

NewtonResult correct(const CPoly &p, const CPoly &q, const Complex &t, Complex x,
                     const Real &tol, std::size_t max_it) {
  NewtonResult r;
  const mpfr_prec_t bits = p.precision();
  for (std::size_t it = 0; it < max_it; ++it) {
    auto [pv, pd] = p.eval_with_derivative(x);
    auto [qv, qd] = q.eval_with_derivative(x);
    Complex f = pv - t * qv, fd = pd - t * qd;
    if (fd.is_zero())
      return r;
    Complex dx = f / fd;
    Real adx = abs(dx);
    if (it == 0)
      r.first_step = adx;
    x -= dx;
    Real scale = Real(1.0, bits) + abs(x);
    if (adx <= tol * scale) {
      Real mag = p.magnitude_at(x) + abs(t) * q.magnitude_at(x);
      r.residual = abs(p.eval(x) - t * q.eval(x)) / mag;
      r.x = std::move(x);
      r.converged = true;
      return r;
    }
  }
  return r;
}

} // namespace

Fiber lift_roots(const CPoly &p, const CPoly &q, const Path &path, Fiber fiber,
                 const TrackingConfig &config, TrackStats *stats) {
  const mpfr_prec_t bits = std::max(p.precision(), q.precision());
  const Real tol = config.residual_tolerance(bits);
  TrackStats local;
  local.max_residual = Real(bits);
  for (const auto &piece : path.pieces()) {
    Real s(bits), h(1.0 / 32, bits);
    const Real one(1.0, bits), min_step(config.min_step, bits);
    while (s < one) {
      Real s1 = min(one, s + h);
      Complex t0 = Path::point(piece, s), t1 = Path::point(piece, s1);
      Complex dt = t1 - t0;
      Fiber next;
      next.reserve(fiber.size());
      bool ok = true;
      Real worst(bits);
      for (std::size_t i = 0; i < fiber.size() && ok; ++i) {
        const Complex &x = fiber[i];
        auto [pv, pd] = p.eval_with_derivative(x);
        auto [qv, qd] = q.eval_with_derivative(x);
        Complex fd = pd - t0 * qd;
        if (fd.is_zero()) {
          ok = false;
          break;
        }
        Complex pred = x + (qv / fd) * dt;
        Real d = nearest_distance(fiber, i);
        auto nr = correct(p, q, t1, pred, tol, config.newton_iterations);
        // The first Newton correction must be small against the root
        // separation (contraction radius estimate), and the root must not
        // jump towards a neighbour.
        ok = nr.converged && nr.first_step * 3.0 < d / 3.0 && abs(nr.x - x) < d / 3.0;
        if (ok) {
          worst = max(worst, nr.residual);
          next.push_back(std::move(nr.x));
        }
      }
      bool collided = false;
      if (ok) {
        for (std::size_t i = 0; i < next.size() && !collided; ++i)
          for (std::size_t j = i + 1; j < next.size() && !collided; ++j)
            collided = !(abs(next[i] - next[j]) > tol * (Real(1.0, bits) + abs(next[i])) * 1e6);
        ok = !collided;
      }
      if (!ok) {
        h = h / 2.0;
        ++local.rejected;
        if (h < min_step)
          throw NumericalFailure(collided ? "tracked roots collided near t = " + t1.to_string(12)
                                          : "step underflow near t = " + t0.to_string(12) +
                                                " (path too close to a branch point)");
        continue;
      }
      fiber = std::move(next);
      s = s1;
      local.max_residual = max(local.max_residual, worst);
      ++local.steps;
      h = min(h * 2.0, Real(0.25, bits));
    }
  }
  if (stats) {
    stats->max_residual = max(stats->steps ? stats->max_residual : Real(bits), local.max_residual);
    stats->steps += local.steps;
    stats->rejected += local.rejected;
  }
  return fiber;
}

std::vector<std::size_t> match_fibers(const Fiber &start, const Fiber &end) {
  if (start.size() != end.size())
    throw InvalidArgument("fibres of different sizes");
  std::vector<std::size_t> map(end.size());
  std::vector<bool> used(start.size(), false);
  for (std::size_t i = 0; i < end.size(); ++i) {
    std::size_t best = 0;
    Real bd, second;
    bool have = false, have2 = false;
    for (std::size_t j = 0; j < start.size(); ++j) {
      Real d = abs(end[i] - start[j]);
      if (!have || d < bd) {
        if (have) {
          second = bd;
          have2 = true;
        }
        bd = d;
        best = j;
        have = true;
      } else if (!have2 || d < second) {
        second = d;
        have2 = true;
      }
    }
    if (used[best] || (have2 && !(bd * 1000.0 < second)))
      throw NumericalFailure("ambiguous fibre matching at root " + std::to_string(i + 1));
    used[best] = true;
    map[i] = best;
  }
  return map;
}

namespace {

/// Distance from point c to the segment [a, b].
Real segment_distance(const Complex &a, const Complex &b, const Complex &c) {
  Complex ab = b - a, ac = c - a;
  Real len2 = ab.norm();
  if (len2.is_zero())
    return abs(ac);
  Real s = (ac.re * ab.re + ac.im * ab.im) / len2;
  const mpfr_prec_t bits = s.precision();
  if (s < Real(bits))
    s = Real(bits);
  if (s > Real(1.0, bits))
    s = Real(1.0, bits);
  return abs(c - (a + ab * s));
}

Permutation loop_permutation(const Fiber &base, const Fiber &end) {
  auto lift = match_fibers(base, end);
  // lift[i]: root starting at base[i] ends at base[lift[i]]; the certificate
  // stores the inverse.
  std::vector<Permutation::Point> img(base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    img[lift[i]] = static_cast<Permutation::Point>(i);
  return Permutation(img);
}

} // namespace

MonodromyCertificate monodromy(const CPoly &p, const CPoly &q,
                               const std::vector<BranchPoint> &branch_points,
                               const MonodromyOptions &options) {
  const mpfr_prec_t bits = std::max(p.precision(), q.precision());
  std::vector<std::size_t> finite;
  bool has_inf = false;
  for (std::size_t i = 0; i < branch_points.size(); ++i) {
    if (branch_points[i].infinite)
      has_inf = true;
    else
      finite.push_back(i);
  }
  if (finite.empty())
    throw InvalidArgument("monodromy needs at least one finite branch point");
  auto bp = [&](std::size_t i) -> const Complex & { return branch_points[i].value; };

  Complex center(bits);
  for (auto i : finite)
    center += bp(i).with_precision(bits);
  center = center / Real(static_cast<long>(finite.size()), bits);
  Real spread(bits);
  for (auto i : finite)
    spread = max(spread, abs(bp(i) - center));
  const Real big = spread * 2.0 + Real(1.0, bits);
  const Real clearance = max(spread, Real(1.0, bits)) * options.tracking.clearance_factor;

  auto radii_for = [&](const Complex &base) {
    std::vector<Real> r;
    for (auto i : finite) {
      Real d = abs(bp(i) - base);
      for (auto j : finite)
        if (j != i)
          d = min(d, abs(bp(i) - bp(j)));
      r.push_back(d * options.radius_fraction);
    }
    return r;
  };
  // Entry point of the loop around b: on its circle, facing the basepoint.
  auto entry = [&](const Complex &base, const Complex &b, const Real &r) {
    Complex u = base - b;
    return b + u * (r / abs(u));
  };
  auto segments_clear = [&](const Complex &base, const std::vector<Real> &r) {
    for (std::size_t a = 0; a < finite.size(); ++a) {
      Complex e = entry(base, bp(finite[a]), r[a]);
      for (std::size_t c = 0; c < finite.size(); ++c)
        if (c != a && !(segment_distance(base, e, bp(finite[c])) > r[c] * 1.5))
          return false;
    }
    return true;
  };

  MonodromyCertificate cert;
  if (options.basepoint) {
    cert.basepoint = options.basepoint->with_precision(bits);
    for (const auto &b : branch_points)
      if (!b.infinite && !(abs(b.value - cert.basepoint) > clearance))
        throw InvalidArgument("basepoint is a branch point");
  } else {
    bool found = false;
    Real best_score(bits);
    const int candidates = 64;
    for (int k = 0; k < candidates; ++k) {
      Complex base = center + polar(big, pi(bits) * (2.0 * k / candidates) + Real(0.1, bits));
      auto r = radii_for(base);
      if (!segments_clear(base, r))
        continue;
      Real score = abs(bp(finite[0]) - base);
      for (auto i : finite)
        score = min(score, abs(bp(i) - base));
      if (!found || score > best_score) {
        best_score = score;
        cert.basepoint = base;
        found = true;
      }
    }
    if (!found)
      throw NumericalFailure("no basepoint on the bounding circle gives clear loop segments");
  }
  const Complex &base = cert.basepoint;
  auto radii = radii_for(base);
  for (const auto &r : radii)
    if (!(r > clearance))
      throw NumericalFailure("branch points closer than the configured clearance");

  // Loop order: argument of (b - base) relative to the direction of the
  // centre, increasing.
  std::vector<std::size_t> order(finite.size());
  std::iota(order.begin(), order.end(), 0);
  Complex towards = center - base;
  std::vector<Real> angle;
  for (auto i : finite)
    angle.push_back(arg((bp(i) - base) / towards));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });

  CPoly f0 = p - q * base;
  RootOptions ro;
  cert.base_fiber = complex_roots(f0, ro).roots;
  TrackStats stats;
  const Real twopi = pi(bits) * 2.0;
  for (auto k : order) {
    const Complex &b = bp(finite[k]);
    Complex e = entry(base, b, radii[k]);
    Real th = arg(e - b);
    Path loop;
    loop.segment(base, e).arc(b, radii[k], th, th + twopi).segment(e, base);
    Fiber end = lift_roots(p, q, loop, cert.base_fiber, options.tracking, &stats);
    cert.permutations.push_back(loop_permutation(cert.base_fiber, end));
    cert.branch_points.push_back(branch_points[finite[k]]);
    cert.input_index.push_back(finite[k]);
    cert.radii.push_back(radii[k]);
  }
  // Counterclockwise bounding circle through the basepoint.
  Real th0 = arg(base - center);
  Path around;
  around.arc(center, abs(base - center), th0, th0 + twopi);
  Fiber end = lift_roots(p, q, around, cert.base_fiber, options.tracking, &stats);
  Permutation total = loop_permutation(cert.base_fiber, end);
  Permutation at_inf = total.inverse();
  if (has_inf) {
    cert.permutations.push_back(at_inf);
    cert.branch_points.push_back(BranchPoint::at_infinity());
    for (std::size_t i = 0; i < branch_points.size(); ++i)
      if (branch_points[i].infinite)
        cert.input_index.push_back(i);
  }
  Permutation prod = Permutation::identity(cert.base_fiber.size());
  for (const auto &s : cert.permutations)
    prod = compose(prod, s);
  if (!has_inf)
    prod = compose(prod, at_inf);
  cert.product_one = prod.is_identity();
  cert.all_nontrivial = std::none_of(cert.permutations.begin(), cert.permutations.end(),
                                     [](const Permutation &s) { return s.is_identity(); });
  cert.max_residual = stats.max_residual;
  cert.steps = stats.steps;
  return cert;
}

} // namespace hurwitz
