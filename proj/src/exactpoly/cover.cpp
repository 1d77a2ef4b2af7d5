#include "hurwitz/exactpoly/cover.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <map>
#include <random>

#include "gfq.hpp"

namespace hurwitz {

namespace {

template <class K> std::size_t degree_of(const Poly<K> &p, const Poly<K> &q) {
  return static_cast<std::size_t>(std::max({p.degree(), q.degree(), 0}));
}

template <class K> void check_cover(const Poly<K> &p, const Poly<K> &q) {
  if (q.is_zero())
    throw InvalidArgument("cover needs a nonzero q");
  if (degree_of(p, q) < 1)
    throw InvalidArgument("cover has degree zero");
  if (gcd(p, q).degree() > 0)
    throw InvalidArgument("p and q have a common factor");
}

template <class K>
CycleType profile_from(const std::vector<std::pair<Poly<K>, int>> &parts, int deg, std::size_t n) {
  std::vector<std::size_t> lengths;
  for (const auto &[f, m] : parts)
    for (int i = 0; i < f.degree(); ++i)
      lengths.push_back(static_cast<std::size_t>(m));
  if (n > static_cast<std::size_t>(deg))
    lengths.push_back(n - static_cast<std::size_t>(deg));
  return CycleType(std::move(lengths));
}

QPoly squarefree_part(const QPoly &f) { return exact_div(f, gcd(f, f.derivative())).monic(); }

/// Positive rescaling to an integer polynomial with unit content.
QPoly positive_normalize(const QPoly &f) {
  if (f.is_zero())
    return f;
  mpz_class l = 1, g = 0;
  for (const auto &c : f.coeffs())
    l = lcm(l, c.get_den());
  for (const auto &c : f.coeffs())
    g = gcd(g, mpz_class(c.get_num() * (l / c.get_den())));
  Rational s(l, g);
  s.canonicalize();
  return f * s;
}

int sign_at(const QPoly &f, const std::optional<Rational> &x, bool minus_inf) {
  if (!x) {
    int s = sgn(f.lead());
    return (minus_inf && f.degree() % 2) ? -s : s;
  }
  return sgn(f.eval(*x));
}

std::size_t variations(const std::vector<QPoly> &seq, const std::optional<Rational> &x,
                       bool minus_inf) {
  std::size_t v = 0;
  int last = 0;
  for (const auto &f : seq) {
    int s = sign_at(f, x, minus_inf);
    if (s == 0)
      continue;
    if (last != 0 && s != last)
      ++v;
    last = s;
  }
  return v;
}

/// Bits of sums of sub-multisets of `parts`.
std::vector<bool> subset_sums(const std::vector<std::size_t> &parts, std::size_t n) {
  std::vector<bool> reach(n + 1, false);
  reach[0] = true;
  for (auto d : parts)
    for (std::size_t s = n + 1; s-- > d;)
      if (reach[s - d])
        reach[s] = true;
  return reach;
}

/// Whether the parts of `fine` (descending) can be grouped into bins of
/// sizes `coarse`.
bool refines(const std::vector<std::size_t> &fine, std::size_t i, std::vector<std::size_t> &room) {
  if (i == fine.size())
    return true;
  for (std::size_t b = 0; b < room.size(); ++b) {
    if (room[b] < fine[i])
      continue;
    bool tried = false;
    for (std::size_t c = 0; c < b && !tried; ++c)
      tried = room[c] == room[b];
    if (tried)
      continue;
    room[b] -= fine[i];
    bool ok = refines(fine, i + 1, room);
    room[b] += fine[i];
    if (ok)
      return true;
  }
  return false;
}

/// The multiset with the most parts, all of whose sub-sums lie in
/// `candidates` and which every sample refines; nullopt when there is no
/// unique one or the search exceeds its budget.
std::optional<std::vector<std::size_t>>
finest_common_coarsening(const std::vector<bool> &candidates,
                         const std::set<std::vector<std::size_t>> &samples, std::size_t n) {
  std::optional<std::vector<std::size_t>> best;
  bool tie = false;
  std::size_t nodes = 0;
  const std::size_t budget = 200000;
  std::vector<std::size_t> parts;
  std::function<bool(std::size_t, std::size_t, std::vector<bool> &)> rec =
      [&](std::size_t min_part, std::size_t remaining, std::vector<bool> &reach) -> bool {
    if (++nodes > budget)
      return false;
    if (remaining == 0) {
      for (const auto &s : samples) {
        std::vector<std::size_t> room = parts;
        if (!refines(s, 0, room))
          return true;
      }
      if (!best || parts.size() > best->size()) {
        best = parts;
        tie = false;
      } else if (parts.size() == best->size()) {
        tie = true;
      }
      return true;
    }
    for (std::size_t d = min_part; d <= remaining; ++d) {
      if (!candidates[d] || (remaining - d != 0 && remaining - d < d))
        continue;
      std::vector<bool> next = reach;
      bool ok = true;
      for (std::size_t s = n + 1; s-- > d && ok;)
        if (reach[s - d]) {
          next[s] = true;
          ok = candidates[s];
        }
      if (!ok)
        continue;
      parts.push_back(d);
      bool go = rec(d, remaining - d, next);
      parts.pop_back();
      if (!go)
        return false;
    }
    return true;
  };
  std::vector<bool> reach(n + 1, false);
  reach[0] = true;
  if (!rec(1, n, reach) || tie)
    return std::nullopt;
  return best;
}

} // namespace

std::size_t cover_degree(const QPoly &p, const QPoly &q) { return degree_of(p, q); }

QPoly discriminant_in_t(const QPoly &p, const QPoly &q) {
  check_cover(p, q);
  const std::size_t n = degree_of(p, q);
  const std::size_t need = 2 * n - 1;
  std::vector<Rational> xs, ys;
  for (long k = 0; xs.size() < need; ++k) {
    Rational t0 = (k % 2) ? Rational(-(k + 1) / 2) : Rational(k / 2);
    QPoly f = p - q * t0;
    if (static_cast<std::size_t>(std::max(f.degree(), 0)) != n)
      continue;
    xs.push_back(t0);
    ys.push_back(discriminant(f));
  }
  return interpolate(xs, ys);
}

FpPoly discriminant_in_t(const FpPoly &p, const FpPoly &q) {
  check_cover(p, q);
  const std::uint32_t prime = p.zero().prime();
  const std::size_t n = degree_of(p, q);
  const std::size_t need = 2 * n - 1;
  auto ctx = make_gfq(prime, need + 2);
  const Gfq zero = gfq_element(ctx, 0);
  auto lift = [&](const Fp &c) { return Gfq(ctx, FpPoly::constant(c)); };
  std::vector<Gfq> xs, ys;
  for (std::uint64_t k = 0; xs.size() < need; ++k) {
    if (k >= ctx->size)
      throw Error("extension field too small for interpolation");
    Gfq t0 = gfq_element(ctx, k);
    std::vector<Gfq> c;
    for (std::size_t i = 0; i <= n; ++i)
      c.push_back(lift(p[i]) - t0 * lift(q[i]));
    Poly<Gfq> f(std::move(c), zero);
    if (static_cast<std::size_t>(std::max(f.degree(), 0)) != n)
      continue;
    xs.push_back(t0);
    ys.push_back(discriminant(f));
  }
  Poly<Gfq> d = interpolate(xs, ys);
  std::vector<Fp> out;
  for (const auto &c : d.coeffs()) {
    if (c.value().degree() > 0)
      throw Error("discriminant coefficient outside the prime field");
    out.push_back(c.value().is_zero() ? Fp::raw(prime, 0) : c.value()[0]);
  }
  return FpPoly(std::move(out), Fp::raw(prime, 0));
}

CycleType ramification_profile(const QPoly &p, const QPoly &q, const std::optional<Rational> &t0) {
  check_cover(p, q);
  const std::size_t n = degree_of(p, q);
  QPoly g = t0 ? p - q * *t0 : q;
  if (g.is_zero())
    throw InvalidArgument("fibre is the whole line");
  return profile_from(squarefree_decomposition_char0(g), g.degree(), n);
}

CycleType ramification_profile(const FpPoly &p, const FpPoly &q, const std::optional<Fp> &t0) {
  check_cover(p, q);
  const std::size_t n = degree_of(p, q);
  FpPoly g = t0 ? p - q * *t0 : q;
  if (g.is_zero())
    throw InvalidArgument("fibre is the whole line");
  return profile_from(squarefree_decomposition(g), g.degree(), n);
}

BranchAnalysis analyze_branching(const QPoly &p, const QPoly &q, std::uint32_t start_prime,
                                 std::uint64_t seed) {
  check_cover(p, q);
  BranchAnalysis out;
  const std::size_t n = degree_of(p, q);
  out.degree = n;
  out.discriminant = discriminant_in_t(p, q);
  if (out.discriminant.is_zero())
    throw InvalidArgument("p - t q is inseparable");

  auto is_trivial = [](const CycleType &c) { return c.index() == 0; };
  QPoly rest = squarefree_part(out.discriminant);
  std::vector<Rational> exact;
  exact.push_back(0);
  if (p.degree() == q.degree())
    exact.push_back(p.lead() / q.lead());
  for (const auto &t : exact) {
    if (rest.degree() > 0 && is_zero(rest.eval(t)))
      rest = exact_div(rest, QPoly(std::vector<Rational>{-t, 1}, Rational(0)));
    CycleType c = ramification_profile(p, q, t);
    if (!is_trivial(c))
      out.profiles.push_back({to_string(t), c});
  }

  if (rest.degree() > 0) {
    // Finite branch points that are not handled exactly.
    std::map<std::uint32_t, std::vector<RamificationProfile>> by_prime;
    std::uint64_t P = std::max<std::uint64_t>(start_prime, n + 1);
    std::vector<CycleType> previous;
    std::uint32_t previous_prime = 0;
    for (int good = 0;; ++P) {
      P = next_prime(P);
      if (P >= (1u << 31))
        throw Error("no prime of good reduction found");
      const auto prime = static_cast<std::uint32_t>(P);
      FpPoly pp, qq, rr;
      try {
        pp = reduce_mod(p, prime);
        qq = reduce_mod(q, prime);
        rr = reduce_mod(rest, prime);
      } catch (const InvalidArgument &) {
        continue;
      }
      if (pp.degree() != p.degree() || qq.degree() != q.degree() || rr.degree() != rest.degree())
        continue;
      if (gcd(rr, rr.derivative()).degree() > 0)
        continue;
      auto roots = roots_fp(rr, seed);
      if (roots.size() != static_cast<std::size_t>(rr.degree()))
        continue;
      bool clash = false;
      for (const auto &t : exact) {
        Fp tm = reduce_mod(t, prime);
        clash = clash || std::find(roots.begin(), roots.end(), tm) != roots.end();
      }
      if (clash)
        continue;
      std::vector<RamificationProfile> profiles;
      std::vector<CycleType> types;
      for (const auto &v : roots) {
        CycleType c = ramification_profile(pp, qq, v);
        profiles.push_back({std::to_string(v.value()) + " mod " + std::to_string(prime), c});
        types.push_back(c);
      }
      std::sort(types.begin(), types.end());
      if (previous_prime && types == previous) {
        out.prime = previous_prime;
        out.check_prime = prime;
        for (auto &r : by_prime[previous_prime])
          out.profiles.push_back(std::move(r));
        break;
      }
      if (++good > 20)
        throw Error("profiles modulo successive good primes never agreed");
      previous = std::move(types);
      previous_prime = prime;
      by_prime[prime] = std::move(profiles);
    }
  }

  CycleType at_inf = ramification_profile(p, q, std::nullopt);
  if (!is_trivial(at_inf))
    out.profiles.push_back({"inf", at_inf});
  out.branch_count = out.profiles.size();
  long long sum = 0;
  for (const auto &r : out.profiles)
    sum += static_cast<long long>(r.type.index());
  long long twice = sum - 2 * static_cast<long long>(n) + 2;
  if (twice < 0 || twice % 2)
    throw Error("branch profiles violate the Riemann-Hurwitz formula");
  out.genus = static_cast<int>(twice / 2);
  return out;
}

SturmResult sturm_count(const QPoly &f, const std::optional<Rational> &a,
                        const std::optional<Rational> &b) {
  if (f.is_zero())
    throw InvalidArgument("Sturm count of the zero polynomial");
  if (a && b && *a >= *b)
    return {0, false};
  SturmResult res;
  QPoly s = squarefree_part(f);
  res.reduced = s.degree() != f.degree();
  std::vector<QPoly> seq{positive_normalize(s), positive_normalize(s.derivative())};
  while (seq.back().degree() > 0) {
    QPoly r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero())
      break;
    seq.push_back(positive_normalize(r));
  }
  std::size_t va = variations(seq, a, true), vb = variations(seq, b, false);
  res.count = va - vb;
  return res;
}

DedekindSamples dedekind_cycle_samples(const FpPoly &p, const FpPoly &q,
                                       const std::vector<Fp> &t_values, std::uint64_t seed) {
  check_cover(p, q);
  const std::size_t n = degree_of(p, q);
  DedekindSamples out;
  for (const auto &t : t_values) {
    FpPoly g = p - q * t;
    if (static_cast<std::size_t>(std::max(g.degree(), 0)) != n ||
        gcd(g, g.derivative()).degree() > 0) {
      out.skipped.push_back(t);
      continue;
    }
    out.samples.emplace_back(t, CycleType(factor_degrees(g, seed)));
  }
  return out;
}

bool is_square(const Rational &x) {
  if (sgn(x) < 0)
    return false;
  return mpz_perfect_square_p(x.get_num_mpz_t()) && mpz_perfect_square_p(x.get_den_mpz_t());
}

bool is_square_in_function_field(const FpPoly &d) {
  if (d.is_zero())
    return true;
  if (!d.lead().is_square())
    return false;
  for (const auto &[g, m] : squarefree_decomposition(d))
    if (m % 2)
      return false;
  return true;
}

bool is_square_in_function_field(const QPoly &d) {
  if (d.is_zero())
    return true;
  if (!is_square(d.lead()))
    return false;
  for (const auto &[g, m] : squarefree_decomposition_char0(d))
    if (m % 2)
      return false;
  return true;
}

bool discriminant_is_square(const QPoly &f) { return is_square(discriminant(f)); }
bool discriminant_is_square(const FpPoly &f) { return discriminant(f).is_square(); }

bool cover_discriminant_is_square(const QPoly &p, const QPoly &q) {
  QPoly d = discriminant_in_t(p, q);
  if (d.is_zero())
    throw InvalidArgument("p - t q is inseparable");
  return is_square_in_function_field(d);
}

bool cover_discriminant_is_square(const FpPoly &p, const FpPoly &q) {
  FpPoly d = discriminant_in_t(p, q);
  if (d.is_zero())
    throw InvalidArgument("p - t q is inseparable");
  return is_square_in_function_field(d);
}

SubcoverDegrees subcover_factor_degrees(const QPoly &f1, const QPoly &f2, std::uint32_t prime,
                                        std::uint64_t seed, std::size_t min_samples,
                                        std::size_t stable_runs, std::size_t max_samples) {
  check_cover(f1, f2);
  const std::size_t n = degree_of(f1, f2);
  std::mt19937_64 rng(seed);
  std::vector<bool> candidates(n + 1, true);
  std::set<std::vector<std::size_t>> seen;
  std::optional<std::vector<std::size_t>> last;
  std::size_t stable = 0, samples = 0, attempts = 0;
  std::uint64_t P = std::max<std::uint64_t>(prime, n + 1);
  while (samples < max_samples) {
    P = next_prime(P + (attempts++ ? 1 : 0));
    const auto pr = static_cast<std::uint32_t>(P);
    FpPoly a, b;
    try {
      a = reduce_mod(f1, pr);
      b = reduce_mod(f2, pr);
    } catch (const InvalidArgument &) {
      continue;
    }
    if (a.degree() != f1.degree() || b.degree() != f2.degree())
      continue;
    std::uniform_int_distribution<std::uint32_t> coin(0, pr - 1);
    for (int tries = 0; tries < 4 && samples < max_samples; ++tries) {
      Fp y0 = Fp::raw(pr, coin(rng));
      FpPoly d = a * b.eval(y0) - b * a.eval(y0);
      if (static_cast<std::size_t>(std::max(d.degree(), 0)) != n ||
          gcd(d, d.derivative()).degree() > 0)
        continue;
      ++samples;
      auto degs = factor_degrees(d, seed + samples);
      auto sums = subset_sums(degs, n);
      for (std::size_t s = 0; s <= n; ++s)
        candidates[s] = candidates[s] && sums[s];
      std::sort(degs.begin(), degs.end(), std::greater<>());
      seen.insert(degs);
      auto found = finest_common_coarsening(candidates, seen, n);
      if (found && last && *found == *last)
        ++stable;
      else
        stable = 0;
      last = found;
      if (found && stable >= stable_runs && samples >= min_samples)
        return {*found, samples};
    }
  }
  throw Error("factor degrees did not stabilise after " + std::to_string(samples) + " samples");
}

QPoly poly_sqrt(const QPoly &f) {
  if (f.is_zero())
    return f;
  if (f.degree() % 2 || !is_square(f.lead()))
    throw InvalidArgument("polynomial is not a square");
  const auto m = static_cast<std::size_t>(f.degree() / 2);
  std::vector<Rational> g(m + 1, Rational(0));
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), f.lead().get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), f.lead().get_den_mpz_t());
  g[m] = Rational(num, den);
  g[m].canonicalize();
  // Coefficient of X^(m+k) in g^2 determines g_k, top down.
  for (std::size_t k = m; k-- > 0;) {
    Rational s = f[m + k];
    for (std::size_t i = k + 1; i < m; ++i) {
      std::size_t j = m + k - i;
      if (j > k && j < m + 1 && j != m)
        s -= g[i] * g[j];
    }
    g[k] = s / (2 * g[m]);
  }
  QPoly r(std::move(g), Rational(0));
  if (r * r != f)
    throw InvalidArgument("polynomial is not a square");
  return r;
}

} // namespace hurwitz
