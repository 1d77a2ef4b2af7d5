#include <gtest/gtest.h>

#include <random>

#include "hurwitz/exactpoly/family.hpp"
#include "hurwitz/exactpoly/poly_io.hpp"
#include "hurwitz/numcover/cover_model.hpp"
#include "hurwitz/recognize/dependency.hpp"
#include "hurwitz/recognize/lll.hpp"
#include "hurwitz/recognize/recognize.hpp"
#include "test_util.hpp"

using namespace hurwitz;
using hurwitz::testing::data_path;

namespace {

IntegerLattice lattice(std::vector<std::vector<long>> rows) {
  IntegerLattice l;
  for (const auto &r : rows) {
    IntVector v;
    for (long x : r)
      v.emplace_back(x);
    l.basis.push_back(v);
  }
  return l;
}

// Bareiss fraction-free determinant; independent of the LLL code.
mpz_class determinant(std::vector<IntVector> m) {
  const std::size_t n = m.size();
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0)
        ++p;
      if (p == n)
        return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

double norm(const IntVector &v) { return std::sqrt(dot(v, v).get_d()); }

std::vector<long> coeffs_of(const RecognizedValue &v) {
  std::vector<long> out;
  for (const auto &c : v.coefficients)
    out.push_back(c.get_si());
  return out;
}

Complex root_of(const std::string &poly, mpfr_prec_t bits, std::size_t which = 0) {
  auto r = complex_roots(CPoly::from_exact(parse_expression(poly), bits)).roots;
  std::sort(r.begin(), r.end(), [](const Complex &a, const Complex &b) { return a.re < b.re; });
  return r.at(which);
}

} // namespace

// ---- LLL ----

TEST(Lll, OrthogonalBasisUnchanged) {
  auto l = lattice({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  auto r = lll_reduce(l);
  ASSERT_EQ(r.rank(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_EQ(abs(r.basis[i][j]), abs(l.basis[i][j]));
}

TEST(Lll, SkewBasisShrinks) {
  auto l = lattice({{1, 0}, {1000000, 1}});
  auto r = lll_reduce(l);
  double before = std::max(norm(l.basis[0]), norm(l.basis[1]));
  double after = std::max(norm(r.basis[0]), norm(r.basis[1]));
  EXPECT_LE(after, before);
  EXPECT_DOUBLE_EQ(after, 1.0);
  EXPECT_TRUE(is_lll_reduced(r));
  EXPECT_FALSE(is_lll_reduced(l));
}

TEST(Lll, KnapsackForSqrtTwo) {
  const mpfr_prec_t bits = 256;
  Real s = sqrt(Real(2L, bits));
  auto scaled = [&](const Real &x) {
    Real t(bits);
    mpfr_mul_2si(t.raw(), x.raw(), 200, MPFR_RNDN);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t.raw(), MPFR_RNDN);
    return z;
  };
  IntegerLattice l;
  l.basis = {{1, 0, 0, scaled(Real(1L, bits))}, {0, 1, 0, scaled(s)}, {0, 0, 1, scaled(Real(2L, bits))}};
  auto r = lll_reduce(l);
  IntVector v = r.basis[0];
  if (v[2] < 0)
    for (auto &x : v)
      x = -x;
  EXPECT_EQ(v[0], -2);
  EXPECT_EQ(v[1], 0);
  EXPECT_EQ(v[2], 1);
  // The relation annihilates sqrt 2 to working precision.
  Real val = Real(Rational(v[0]), bits) + Real(Rational(v[1]), bits) * s + Real(Rational(v[2]), bits) * s * s;
  EXPECT_LT(abs(val).to_double(), 1e-70);
}

TEST(Lll, PreservesLatticeDeterminant) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> u(-50, 50);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 5;
    IntegerLattice l;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector v;
      for (std::size_t j = 0; j < n; ++j)
        v.emplace_back(u(rng) * (j == i ? 1000 : 1));
      l.basis.push_back(v);
    }
    mpz_class d = determinant(l.basis);
    if (d == 0)
      continue;
    auto r = lll_reduce(l);
    EXPECT_EQ(abs(determinant(r.basis)), abs(d));
    EXPECT_TRUE(is_lll_reduced(r));
  }
}

TEST(Lll, RejectsBadInput) {
  EXPECT_THROW(lll_reduce(lattice({{1, 2}, {2, 4}})), InvalidArgument);
  EXPECT_THROW(lll_reduce(lattice({{1, 2}, {2}})), InvalidArgument);
  EXPECT_THROW(lll_reduce(lattice({{1, 0}, {0, 1}}), Rational(1, 5)), InvalidArgument);
  EXPECT_THROW(lll_reduce(lattice({{1, 0}, {0, 1}}), Rational(1)), InvalidArgument);
}

// ---- rationals ----

TEST(RecognizeRational, OneThird) {
  Real x(std::string("0.") + std::string(200, '3'), 700);
  auto r = recognize_rational(x, mpz_class(1000000), 660);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, Rational(1, 3));
}

TEST(RecognizeRational, TwentyTwoSevenths) {
  std::string digits = "3.";
  for (int i = 0; i < 10; ++i)
    digits += "142857";
  Real x(digits, 256);
  auto r = recognize_rational(x, mpz_class(1000000), 195);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, Rational(22, 7));
}

TEST(RecognizeRational, PiHasNoSmallForm) {
  Real x(std::string("3.1415926535897932384626433832795028841971693993751"), 256);
  EXPECT_FALSE(recognize_rational(x, mpz_class(1000), 166).has_value());
}

TEST(RecognizeRational, RoundTripProperty) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  for (int i = 0; i < 200; ++i) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    auto r = recognize_rational(Real(q, 256), mpz_class(1000000));
    ASSERT_TRUE(r.has_value()) << q;
    EXPECT_EQ(*r, q);
  }
}

TEST(RecognizeRational, InsufficientPrecision) {
  EXPECT_THROW(recognize_rational(Real(0.5, 53), mpz_class("1000000000000000000000")), InsufficientPrecision);
}

// ---- algebraic numbers ----

TEST(RecognizeAlgebraic, SqrtTwo) {
  auto r = recognize_algebraic(Complex(sqrt(Real(2L, 256)), Real(256)), 2, mpz_class(1000));
  ASSERT_EQ(r.status, RecognitionStatus::Found);
  EXPECT_EQ(coeffs_of(*r.value), (std::vector<long>{-2, 0, 1}));
  EXPECT_EQ(r.value->to_string(), "X^2 - 2");
  EXPECT_GE(r.value->margin_log2, 16);
}

TEST(RecognizeAlgebraic, GoldenRatio) {
  Real phi = (Real(1L, 256) + sqrt(Real(5L, 256))) / 2.0;
  auto r = recognize_algebraic(Complex(phi, Real(256)), 4, mpz_class(1000));
  ASSERT_EQ(r.status, RecognitionStatus::Found);
  EXPECT_EQ(coeffs_of(*r.value), (std::vector<long>{-1, -1, 1}));
}

TEST(RecognizeAlgebraic, CubicRootsThroughComplexRoots) {
  auto roots = complex_roots(CPoly::from_exact(parse_expression("X^3-X-1"), 256)).roots;
  ASSERT_EQ(roots.size(), 3u);
  for (const auto &z : roots) {
    auto r = recognize_algebraic(z, 3, mpz_class(1000));
    ASSERT_EQ(r.status, RecognitionStatus::Found) << z.to_string(10);
    EXPECT_EQ(coeffs_of(*r.value), (std::vector<long>{-1, -1, 0, 1}));
  }
}

TEST(RecognizeAlgebraic, PerturbedValuesUpToDegreeSix) {
  const mpfr_prec_t bits = 512;
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const std::string poly : {"X^3-2", "X^4-10*X^2+1", "X^5-3", "X^6-X-1", "2*X^4-3*X+5", "3*X^2+X+7"}) {
    QPoly want = parse_expression(poly);
    for (std::size_t which : {std::size_t(0), std::size_t(want.degree() - 1)}) {
      Complex z = root_of(poly, bits, which);
      // Perturbation below 2^-(bits/2).
      Complex eps(Real(u(rng), bits) * pow2(-257, bits), Real(u(rng), bits) * pow2(-257, bits));
      auto r = recognize_algebraic(z + eps, 6, mpz_class(100), bits / 2);
      ASSERT_EQ(r.status, RecognitionStatus::Found) << poly;
      EXPECT_EQ(r.value->polynomial(), want) << poly << " got " << r.value->to_string();
    }
  }
}

TEST(RecognizeAlgebraic, LowMarginIsInconclusive) {
  RecognizeOptions o;
  o.margin_log2 = 200;
  auto r = recognize_algebraic(Complex(sqrt(Real(2L, 256)), Real(256)), 2, mpz_class(1000), std::nullopt, o);
  EXPECT_EQ(r.status, RecognitionStatus::Inconclusive);
  ASSERT_TRUE(r.value.has_value());
  EXPECT_EQ(coeffs_of(*r.value), (std::vector<long>{-2, 0, 1}));
}

TEST(RecognizeAlgebraic, TranscendentalFindsNothing) {
  auto r = recognize_algebraic(Complex(pi(512), Real(512)), 4, mpz_class(1000));
  EXPECT_EQ(r.status, RecognitionStatus::NotFound);
}

TEST(RecognizeAlgebraic, InsufficientPrecisionReportsBits) {
  try {
    recognize_algebraic(Complex(sqrt(Real(2L, 64)), Real(64)), 6, mpz_class(1000000));
    FAIL();
  } catch (const InsufficientPrecision &e) {
    EXPECT_EQ(e.required(), required_recognition_bits(6, mpz_class(1000000)));
    EXPECT_EQ(e.available(), 64);
    EXPECT_NE(std::string(e.what()).find("insufficient precision"), std::string::npos);
  }
}

// ---- dependencies ----

TEST(Dependency, Parabola) {
  std::vector<Sample> s;
  for (int b : {-2, -1, 1, 3, 5})
    s.push_back({Rational(b), Rational(b * b)});
  auto p = interpolate_dependency(s, 2, 1);
  EXPECT_EQ(p.to_string(), "beta^2 - gamma");
  EXPECT_EQ(p.eval(Rational(7, 3), Rational(49, 9)), 0);
}

TEST(Dependency, UnitCircle) {
  std::vector<Sample> s;
  // Rational points (m^2-1)/(m^2+1), 2m/(m^2+1).
  for (int m : {2, 3, 4, 5, 7, -2, -3, 6, 9, 11}) {
    Rational b(m * m - 1, m * m + 1), g(2 * m, m * m + 1);
    b.canonicalize();
    g.canonicalize();
    s.push_back({b, g});
  }
  auto p = interpolate_dependency(s, 2, 2);
  EXPECT_EQ(p.to_string(), "beta^2 + gamma^2 - 1");
  EXPECT_EQ(p.eval(Rational(3, 5), Rational(-4, 5)), 0); // held out
}

TEST(Dependency, RationalFunctionGraph) {
  std::vector<Sample> s;
  for (int b : {0, 1, 3, 4, 5, 6, 7, 8, 9}) {
    Rational g(b * b * b - 1, b + 2);
    g.canonicalize();
    s.push_back({Rational(b), g});
  }
  auto p = interpolate_dependency(s, 3, 1);
  // Up to sign: gamma (beta + 2) - (beta^3 - 1).
  BivariatePolynomial want;
  want.coeffs.assign(4, std::vector<mpz_class>(2, mpz_class(0)));
  want.coeffs[1][1] = -1;
  want.coeffs[0][1] = -2;
  want.coeffs[3][0] = 1;
  want.coeffs[0][0] = -1;
  EXPECT_EQ(p.coeffs, want.coeffs) << p.to_string();
  Rational held(10 * 10 * 10 - 1, 12);
  EXPECT_EQ(p.eval(Rational(10), held), 0);
}

TEST(Dependency, Errors) {
  std::vector<Sample> s;
  for (int b = 1; b <= 8; ++b)
    s.push_back({Rational(b), Rational(b * b)});
  try {
    interpolate_dependency(s, 1, 1);
    FAIL();
  } catch (const InvalidArgument &e) {
    EXPECT_NE(std::string(e.what()).find("try (2, 1)"), std::string::npos);
  }
  std::vector<Sample> few(s.begin(), s.begin() + 3);
  EXPECT_THROW(interpolate_dependency(few, 3, 3), InvalidArgument);
}

TEST(Dependency, SampleFiles) {
  auto s = parse_samples("# header\nsample 1/2 -3\n\nsample 4 5/7 # note\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].first, Rational(1, 2));
  EXPECT_EQ(s[1].second, Rational(5, 7));
  try {
    parse_samples("sample 1 2\nsample 1\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    parse_samples("sample 1 2\nsample x 2\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_samples("point 1 2\n"), ParseError);
}

// ---- closed loop with the numerical module ----

// Drive [X^2] of the monic sextic over t = 0 of the degree-27 cover to the
// rational -121/20; the other sextic coefficients then come out rational
// and match the family file at alpha = 11/10.
TEST(ClosedLoop, DrivenCoefficientsAreRecognized) {
  auto fam = read_family_file(data_path("families/psp43_2_27.family"));
  auto m = fam.instantiate();
  auto c = cover_from_exact(m.at("p"), m.at("q"), 256,
                            {"scale inf 729", "factor 0 4 5 0", "factor_sum 0 4 4 3 0"});
  UnknownRef sel{UnknownRef::Kind::Factor, 1, 0, 2};
  auto d = drive_coefficient(c, sel, from_rational(Rational(-121, 20), 256), 2);

  QPoly A = fam.instantiate({{"alpha", Rational(11, 10)}}).at("A").monic();
  for (std::size_t l = 0; l < 6; ++l) {
    Complex v = unknown_value(d, {UnknownRef::Kind::Factor, 1, 0, l});
    EXPECT_LT(abs(v.im).to_double(), 1e-60);
    auto r = recognize_rational(v.re, mpz_class(1000000), 200);
    ASSERT_TRUE(r.has_value()) << l;
    EXPECT_EQ(*r, A[l]) << l;
  }
  // The freed branch point is irrational.
  auto r = recognize_algebraic(d.branches[2].point.value, 1, mpz_class(1000000), 200);
  EXPECT_NE(r.status, RecognitionStatus::Found);
}
