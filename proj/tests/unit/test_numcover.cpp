#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "hurwitz/error.hpp"
#include "hurwitz/exactpoly/cover.hpp"
#include "hurwitz/exactpoly/family.hpp"
#include "hurwitz/exactpoly/poly_io.hpp"
#include "hurwitz/numcover/cover_model.hpp"
#include "hurwitz/nielsen/tuple.hpp"
#include "hurwitz/permgroup/perm_group.hpp"
#include "test_util.hpp"

using namespace hurwitz;
using hurwitz::testing::data_path;

namespace {

CPoly C(const std::string &s, mpfr_prec_t bits) { return CPoly::from_exact(parse_expression(s), bits); }

Complex cx(double re, double im, mpfr_prec_t bits) { return Complex(re, im, bits); }

double dist(const Complex &a, const Complex &b) { return abs(a - b).to_double(); }

std::map<std::string, QPoly> member(const std::string &file, std::optional<Rational> alpha = {}) {
  auto fam = read_family_file(data_path("families/" + file));
  std::map<std::string, Rational> over;
  if (alpha)
    over["alpha"] = *alpha;
  return fam.instantiate(over);
}

const std::vector<std::string> kDegree27Pins{"scale inf 729", "factor 0 4 5 0", "factor_sum 0 4 4 3 0"};

// Max over coefficients of |a - b| / max(1, |b|).
double coefficient_distance(const CPoly &a, const CPoly &b) {
  const mpfr_prec_t bits = std::max(a.precision(), b.precision());
  double d = 0;
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  for (std::size_t i = 0; i < n; ++i) {
    Complex x = i < a.coeffs().size() ? a[i] : Complex(bits);
    Complex y = i < b.coeffs().size() ? b[i] : Complex(bits);
    d = std::max(d, (abs(x - y) / max(Real(1.0, bits), abs(y))).to_double());
  }
  return d;
}

double cover_distance(const CoverApproximation &a, const CoverApproximation &b) {
  return std::max(coefficient_distance(a.num, b.num), coefficient_distance(a.den, b.den));
}

std::vector<BranchPoint> branch_points_of(const std::map<std::string, QPoly> &m, mpfr_prec_t bits) {
  return numeric_branch_points(m.at("p"), m.at("q"), bits);
}

// Shared, expensive fixture values.
const CoverApproximation &degree27_cover() {
  static const CoverApproximation c = [] {
    auto m = member("psp43_2_27.family");
    return cover_from_exact(m.at("p"), m.at("q"), 256, kDegree27Pins);
  }();
  return c;
}

} // namespace

// ---- roots ----

TEST(ComplexRoots, XSquaredPlusOne) {
  auto r = complex_roots(C("X^2+1", 128));
  ASSERT_EQ(r.roots.size(), 2u);
  std::vector<double> ims;
  for (const auto &z : r.roots) {
    EXPECT_LT(std::abs(z.re.to_double()), 1e-30);
    ims.push_back(z.im.to_double());
  }
  std::sort(ims.begin(), ims.end());
  EXPECT_NEAR(ims[0], -1, 1e-30);
  EXPECT_NEAR(ims[1], 1, 1e-30);
}

TEST(ComplexRoots, RootsOfUnity) {
  for (int n : {1, 3, 7, 12}) {
    auto r = complex_roots(C("X^" + std::to_string(n) + "-1", 128));
    ASSERT_EQ(r.roots.size(), static_cast<std::size_t>(n));
    std::vector<bool> hit(n, false);
    for (const auto &z : r.roots) {
      double a = std::atan2(z.im.to_double(), z.re.to_double());
      int k = static_cast<int>(std::lround(a * n / (2 * M_PI)));
      k = ((k % n) + n) % n;
      Real th = pi(128) * Real(2L * k, 128) / Real(long(n), 128);
      EXPECT_LT(dist(z, Complex(cos(th), sin(th))), 1e-30);
      EXPECT_FALSE(hit[k]);
      hit[k] = true;
    }
  }
}

TEST(ComplexRoots, WilkinsonTen) {
  QPoly w = QPoly::constant(1);
  for (int k = 1; k <= 10; ++k)
    w = w * QPoly(std::vector<Rational>{-k, 1}, Rational(0));
  auto r = complex_roots(CPoly::from_exact(w, 113));
  std::set<long> found;
  for (const auto &z : r.roots) {
    long k = std::lround(z.re.to_double());
    EXPECT_LT(dist(z, cx(double(k), 0, 113)), 1e-8);
    found.insert(k);
  }
  EXPECT_EQ(found, (std::set<long>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
}

TEST(ComplexRoots, ResidualReportedOnFailure) {
  RootOptions o;
  o.max_iterations = 1;
  try {
    complex_roots(C("X^9-3*X+1", 128), o);
    FAIL() << "expected non-convergence";
  } catch (const NumericalFailure &e) {
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
  }
}

// ---- lifting ----

TEST(LiftRoots, ConstantPathKeepsFiber) {
  const mpfr_prec_t b = 128;
  auto p = C("X^3-3*X", b), q = C("1", b);
  Complex t0 = cx(0.5, 0.25, b);
  Fiber f = complex_roots(p - q * t0).roots;
  Path path;
  path.segment(t0, t0);
  Fiber g = lift_roots(p, q, path, f);
  for (std::size_t i = 0; i < f.size(); ++i)
    EXPECT_LT(dist(f[i], g[i]), 1e-30);
}

TEST(LiftRoots, SquareRootTransposes) {
  const mpfr_prec_t b = 128;
  auto p = C("X^2", b), q = C("1", b);
  Complex t0 = cx(1, 0, b);
  Fiber f{cx(1, 0, b), cx(-1, 0, b)};
  Path path;
  path.arc(Complex(b), Real(1.0, b), Real(b), pi(b) * 2.0);
  Fiber g = lift_roots(p, q, path, f);
  EXPECT_LT(dist(g[0], f[1]), 1e-30);
  EXPECT_LT(dist(g[1], f[0]), 1e-30);
}

TEST(LiftRoots, PowerGivesFullCycle) {
  const mpfr_prec_t b = 128;
  for (int n : {3, 5, 8}) {
    auto c = monodromy(C("X^" + std::to_string(n), b), C("1", b),
                       {{false, Complex(b)}, BranchPoint::at_infinity()});
    EXPECT_EQ(CycleType::of(c.permutations[0]).to_string(), std::to_string(n));
    EXPECT_TRUE(c.product_one);
  }
}

TEST(LiftRoots, ReversedPathIsIdentity) {
  const mpfr_prec_t b = 128;
  auto p = C("X^4-2*X^2+X", b), q = C("X^2+1", b);
  Complex t0 = cx(3, 1, b);
  Fiber f = complex_roots(p - q * t0).roots;
  Path path;
  path.segment(t0, cx(-2, 2, b)).arc(cx(-2, 1, b), Real(1.0, b), pi(b) * 0.5, pi(b) * 2.5);
  Fiber g = lift_roots(p, q, path, f);
  Fiber h = lift_roots(p, q, path.reversed(), g);
  auto idx = match_fibers(f, h);
  for (std::size_t i = 0; i < idx.size(); ++i)
    EXPECT_EQ(idx[i], i);
}

TEST(LiftRoots, StepUnderflowNearBranchPoint) {
  const mpfr_prec_t b = 128;
  auto p = C("X^2", b), q = C("1", b);
  Fiber f{cx(-1, 0, b), cx(1, 0, b)};
  Path path;
  path.segment(cx(1, 0, b), cx(-1, 0, b)); // passes through t = 0
  EXPECT_THROW(lift_roots(p, q, path, f), NumericalFailure);
}

// ---- monodromy ----

TEST(Monodromy, ChebyshevCubic) {
  const mpfr_prec_t b = 128;
  auto c = monodromy(C("X^3-3*X", b), C("1", b),
                     {{false, cx(2, 0, b)}, {false, cx(-2, 0, b)}, BranchPoint::at_infinity()});
  std::vector<std::string> types;
  std::size_t ind = 0;
  for (const auto &s : c.permutations) {
    types.push_back(CycleType::of(s).to_string());
    ind += CycleType::of(s).index();
  }
  EXPECT_EQ(types, (std::vector<std::string>{"2.1", "2.1", "3"}));
  EXPECT_TRUE(c.product_one);
  EXPECT_TRUE(c.all_nontrivial);
  EXPECT_EQ(ind, 4u);
  EXPECT_TRUE(tuple_product(c.permutations).is_identity());
}

TEST(Monodromy, InvariantUnderRadiusAndBasepoint) {
  const mpfr_prec_t b = 128;
  auto m = member("psp43_2_27.family");
  auto p = CPoly::from_exact(m.at("p"), b), q = CPoly::from_exact(m.at("q"), b);
  auto bp = branch_points_of(m, b);
  auto base = monodromy(p, q, bp);
  MonodromyOptions o;
  o.radius_fraction = 0.2;
  auto small = monodromy(p, q, bp, o);
  ASSERT_EQ(small.input_index, base.input_index);
  EXPECT_TRUE(simultaneously_conjugate(base.permutations, small.permutations));
  // Nudge the basepoint along its circle; the loop order stays put.
  MonodromyOptions o2;
  o2.basepoint = base.basepoint + cx(0, 0.05, b) * abs(base.basepoint);
  auto moved = monodromy(p, q, bp, o2);
  ASSERT_EQ(moved.input_index, base.input_index);
  EXPECT_TRUE(simultaneously_conjugate(base.permutations, moved.permutations));
}

TEST(Monodromy, Degree27Family) {
  const mpfr_prec_t b = 128;
  auto m = member("psp43_2_27.family");
  auto bp = branch_points_of(m, b);
  auto c = monodromy(CPoly::from_exact(m.at("p"), b), CPoly::from_exact(m.at("q"), b), bp);
  std::multiset<std::string> types;
  std::vector<CycleType> cts;
  for (const auto &s : c.permutations) {
    types.insert(CycleType::of(s).to_string());
    cts.push_back(CycleType::of(s));
  }
  EXPECT_EQ(types, (std::multiset<std::string>{"2^6.1^15", "2^6.1^15", "4^6.1^3", "6^4.3"}));
  EXPECT_TRUE(c.product_one);
  EXPECT_LT(c.max_residual.to_double(), 1e-10);
  EXPECT_EQ(PermGroup(27, c.permutations).order(), 51840u);
  EXPECT_EQ(genus_from_cycle_types(27, cts), 0);
}

TEST(Monodromy, Degree36Family) {
  const mpfr_prec_t b = 128;
  auto m = member("psp62_36.family");
  auto bp = branch_points_of(m, b);
  auto c = monodromy(CPoly::from_exact(m.at("p"), b), CPoly::from_exact(m.at("q"), b), bp);
  std::multiset<CycleType> types;
  std::vector<CycleType> cts;
  for (const auto &s : c.permutations) {
    types.insert(CycleType::of(s));
    cts.push_back(CycleType::of(s));
  }
  std::multiset<CycleType> want;
  for (const char *t : {"3^12", "1^12.2^12", "1^12.2^12", "1^6.2.4^7"})
    want.insert(CycleType::parse(t));
  EXPECT_EQ(types, want);
  EXPECT_TRUE(c.product_one);
  EXPECT_LT(c.max_residual.to_double(), 1e-10);
  EXPECT_EQ(PermGroup(36, c.permutations).order(), 1451520u);
  EXPECT_EQ(genus_from_cycle_types(36, cts), 0);
}

// Critical values of p/q, found numerically from p'q - pq', against the
// exact discriminant.
TEST(Monodromy, BranchPointsMatchCriticalValues) {
  const mpfr_prec_t b = 256;
  for (const char *file : {"psp43_2_27.family", "psp62_36.family"}) {
    auto m = member(file);
    auto p = CPoly::from_exact(m.at("p"), b), q = CPoly::from_exact(m.at("q"), b);
    CPoly w = p.derivative() * q - p * q.derivative();
    RootOptions o;
    o.best_effort = true;
    o.max_iterations = 5000;
    std::vector<Complex> values;
    for (const auto &x : complex_roots(w, o).roots) {
      Complex qx = q.eval(x);
      if (abs(qx).to_double() < 1e-30)
        continue; // a pole, i.e. the fibre over infinity
      Complex t = p.eval(x) / qx;
      bool seen = false;
      for (const auto &v : values)
        seen = seen || dist(v, t) < 1e-6 * (1 + abs(v).to_double());
      if (!seen)
        values.push_back(t);
    }
    auto bp = branch_points_of(m, b);
    std::size_t finite = 0;
    for (const auto &x : bp) {
      if (x.infinite)
        continue;
      ++finite;
      double best = 1e300;
      for (const auto &v : values)
        best = std::min(best, dist(v, x.value) / (1 + abs(x.value).to_double()));
      EXPECT_LT(best, 1e-6) << file << " branch point " << x.value.to_string(10);
    }
    EXPECT_EQ(values.size(), finite) << file;
  }
}

TEST(Monodromy, SturmMatchesNumericRealRoots) {
  auto m = member("psp62_28_real.family");
  const mpfr_prec_t b = 512;
  for (const char *t0 : {"-1", "-24500000000000"}) {
    QPoly f = m.at("p") - m.at("q") * parse_rational(t0);
    auto r = complex_roots(CPoly::from_exact(f, b));
    std::size_t real = 0;
    for (const auto &z : r.roots)
      if (abs(z.im).to_double() < 1e-40 * (1 + abs(z.re).to_double()))
        ++real;
    EXPECT_EQ(real, sturm_count(f).count) << t0;
    EXPECT_EQ(real, 28u) << t0;
  }
}

TEST(Monodromy, SimultaneousConjugacy) {
  std::mt19937_64 rng(5);
  auto a = Permutation::parse("(1,2,3)(4,5)", 6), b = Permutation::parse("(2,6)(1,4,5,3)", 6);
  for (int i = 0; i < 10; ++i) {
    auto g = hurwitz::testing::random_permutation(6, rng);
    EXPECT_TRUE(simultaneously_conjugate({a, b}, {conjugate(a, g), conjugate(b, g)}));
  }
  EXPECT_FALSE(simultaneously_conjugate({a, b}, {a, Permutation::parse("(2,6)(1,3,5,4)", 6)}));
}

// ---- Newton model ----

TEST(CoverModel, ExactMemberIsFixedPoint) {
  const auto &c = degree27_cover();
  EXPECT_LT(c.residual.to_double(), 1e-70);
  auto m = member("psp43_2_27.family");
  EXPECT_LT(coefficient_distance(c.num, CPoly::from_exact(m.at("p"), 256)), 1e-70);
  EXPECT_LT(coefficient_distance(c.den, CPoly::from_exact(m.at("q"), 256)), 1e-70);
  std::multiset<std::string> types;
  for (std::size_t k = 0; k < c.branches.size(); ++k)
    types.insert(c.profile(k).to_string());
  EXPECT_EQ(types, (std::multiset<std::string>{"2^6.1^15", "2^6.1^15", "4^6.1^3", "6^4.3"}));
  auto again = newton_refine(c);
  EXPECT_LT(cover_distance(again, c), 1e-70);
}

TEST(CoverModel, PerturbedSeedReturns) {
  const auto &c = degree27_cover();
  CoverApproximation seed = c;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e-6, 1e-6);
  auto jiggle = [&](const CPoly &f) {
    std::vector<Complex> v;
    for (const auto &z : f.coeffs())
      v.push_back(z + z * Real(u(rng), 256));
    return CPoly(v, 256);
  };
  seed.num = jiggle(seed.num);
  seed.den = jiggle(seed.den);
  for (auto &b : seed.branches)
    for (auto &f : b.factors) {
      std::vector<Complex> v = f.coeffs();
      for (std::size_t i = 0; i + 1 < v.size(); ++i)
        v[i] += cx(u(rng), u(rng), 256);
      f = CPoly(v, 256);
    }
  auto back = newton_refine(seed);
  EXPECT_LT(cover_distance(back, c), 1e-20);
}

TEST(CoverModel, MissingPinsAreSingular) {
  CoverApproximation c = degree27_cover();
  c.pins.clear();
  EXPECT_THROW(newton_refine(c), NumericalFailure);
  c.pins.push_back(parse_pin("scale inf 729", c));
  try {
    newton_refine(c);
    FAIL();
  } catch (const NumericalFailure &e) {
    EXPECT_NE(std::string(e.what()).find("singular"), std::string::npos);
  }
}

TEST(CoverModel, PinParsing) {
  const auto &c = degree27_cover();
  auto p = parse_pin("factor_sum 0 4 4 3 0", c);
  ASSERT_EQ(p.terms.size(), 2u);
  EXPECT_EQ(p.terms[0].kind, UnknownRef::Kind::Factor);
  EXPECT_THROW(parse_pin("factor 0 5 1 0", c), InvalidArgument);  // no multiplicity 5 there
  EXPECT_THROW(parse_pin("factor 0 4 6 1", c), InvalidArgument);  // monic top coefficient
  EXPECT_THROW(parse_pin("scale 17 1", c), InvalidArgument);      // not a branch point
  EXPECT_THROW(parse_pin("twist 0 1", c), InvalidArgument);
  EXPECT_NO_THROW(parse_pin("scale @2 3/2 -1", c));
}

TEST(CoverModel, CoverFileRoundTrip) {
  const auto &c = degree27_cover();
  auto text = format_cover(c);
  auto back = parse_cover(text);
  EXPECT_EQ(back.degree, 27u);
  EXPECT_EQ(back.bits, 256);
  EXPECT_LT(cover_distance(back, c), 1e-70);
  ASSERT_EQ(back.branches.size(), c.branches.size());
  for (std::size_t k = 0; k < c.branches.size(); ++k)
    EXPECT_EQ(back.profile(k), c.profile(k));
  EXPECT_EQ(back.pins.size(), 3u);
  EXPECT_LT(back.residual.to_double(), 1e-60);
  auto refined = newton_refine(back);
  EXPECT_LT(cover_distance(refined, c), 1e-70);
}

TEST(CoverModel, CoverFileErrorsCarryLines) {
  try {
    parse_cover("degree 2\nprecision_bits 128\nbranch_point 0\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_cover("degree 2\nprecision_bits 128\nnum_coeff 2 1 0\nden_coeff 0 1 0\nbranch_point 0 0\n"
                "branch_point inf\nprofile 1 3\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 7u);
  }
  EXPECT_THROW(parse_cover("degree 2\nprecision_bits 128\nnum_coeff 5 1 0\n"), ParseError);
  EXPECT_THROW(parse_cover("precision_bits 128\n"), ParseError);
  auto c = parse_cover("degree 2\nprecision_bits 128\nnum_coeff 2 1 0\nden_coeff 0 1 0\n"
                       "branch_point 0 0\nbranch_point inf\nprofile 1 2\nprofile 2 2\n");
  EXPECT_EQ(c.profile(0).to_string(), "2");
  EXPECT_EQ(c.profile(1).to_string(), "2");
}

TEST(CoverModel, IdentityDeformation) {
  const auto &c = degree27_cover();
  std::vector<Complex> same;
  for (const auto &b : c.branches)
    if (!b.point.infinite)
      same.push_back(b.point.value);
  DeformOptions o;
  o.certify_monodromy = false;
  auto r = deform(c, same, o);
  EXPECT_LT(cover_distance(r.cover, c), 1e-70);
}

TEST(CoverModel, DeformToAlphaTwo) {
  const auto &c = degree27_cover();
  auto m2 = member("psp43_2_27.family", Rational(2));
  std::vector<Complex> targets;
  for (const auto &b : branch_points_of(m2, 256))
    if (!b.infinite)
      targets.push_back(b.value);
  auto r = deform(c, targets);
  EXPECT_LT(coefficient_distance(r.cover.num, CPoly::from_exact(m2.at("p"), 256)), 1e-20);
  EXPECT_LT(coefficient_distance(r.cover.den, CPoly::from_exact(m2.at("q"), 256)), 1e-20);
  ASSERT_TRUE(r.monodromy_preserved.has_value());
  EXPECT_TRUE(*r.monodromy_preserved);

  // And back again.
  std::vector<Complex> home;
  for (const auto &b : c.branches)
    if (!b.point.infinite)
      home.push_back(b.point.value);
  DeformOptions o;
  o.certify_monodromy = false;
  auto back = deform(r.cover, home, o);
  EXPECT_LT(cover_distance(back.cover, c), 10 * std::pow(2.0, -128));
}

TEST(CoverModel, CollisionOnPathIsRejected) {
  const auto &c = degree27_cover();
  // Swap the two nonzero finite branch points along straight lines through
  // each other: they meet in the middle.
  std::vector<Complex> targets;
  for (const auto &b : c.branches)
    if (!b.point.infinite)
      targets.push_back(b.point.value);
  std::swap(targets.front(), targets.back());
  // Keep the middle one (t = 0) off the collision line.
  EXPECT_THROW(deform(c, targets), InvalidArgument);
  EXPECT_THROW(deform(c, {targets[0]}), InvalidArgument);
}

TEST(CoverModel, DriveToCurrentValueIsNoOp) {
  const auto &c = degree27_cover();
  UnknownRef sel{UnknownRef::Kind::Factor, 1, 0, 2};
  ASSERT_FALSE(c.branches[1].point.infinite);
  ASSERT_EQ(c.branches[1].shape[0].multiplicity, 4u);
  auto d = drive_coefficient(c, sel, unknown_value(c, sel), 2);
  EXPECT_LT(cover_distance(d, c), 1e-70);
}

TEST(CoverModel, DriveRecoversFamilyMember) {
  // [X^2] of the monic sextic over t = 0 is -5 alpha^2; driving it to
  // -5 (11/10)^2 lands on the alpha = 11/10 member up to a t-scaling.
  const auto &c = degree27_cover();
  UnknownRef sel{UnknownRef::Kind::Factor, 1, 0, 2};
  auto d = drive_coefficient(c, sel, Complex(Real(Rational(-121, 20), 256), Real(256)), 2);
  EXPECT_LT(dist(unknown_value(d, sel), Complex(Real(Rational(-121, 20), 256), Real(256))), 1e-60);
  // alpha^2 and alpha^3 - alpha^2/2 sit at X^1 and X^0.
  EXPECT_LT(dist(unknown_value(d, {UnknownRef::Kind::Factor, 1, 0, 1}),
                 from_rational(Rational(121, 100), 256)),
            1e-60);
  EXPECT_LT(dist(unknown_value(d, {UnknownRef::Kind::Factor, 1, 0, 0}),
                 from_rational(Rational(363, 500), 256)),
            1e-60);
  // The branch point that was not freed stays put.
  EXPECT_LT(dist(d.branches[0].point.value, c.branches[0].point.value), 1e-70);
  EXPECT_LT(d.residual.to_double(), 1e-60);
}

TEST(CoverModel, DriveOutsideBasinDiverges) {
  const auto &c = degree27_cover();
  UnknownRef sel{UnknownRef::Kind::Factor, 1, 0, 2};
  DriveOptions o;
  o.continuation = false;
  EXPECT_THROW(drive_coefficient(c, sel, cx(1e6, 0, 256), 2, o), NumericalFailure);
  EXPECT_THROW(drive_coefficient(c, sel, cx(1, 0, 256), 3), InvalidArgument); // infinity
}
