#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>

#include "hurwitz/error.hpp"
#include "hurwitz/permgroup/blocks.hpp"
#include "hurwitz/permgroup/conjugacy.hpp"
#include "hurwitz/permgroup/cycle_type.hpp"
#include "hurwitz/permgroup/group_io.hpp"
#include "test_util.hpp"

using namespace hurwitz;
using hurwitz::testing::cyc;

namespace {

const PermGroup &wreath56() {
  static const PermGroup g = hurwitz::testing::load_group("psp62_wreath56.grp");
  return g;
}
const PermGroup &psp62_28() {
  static const PermGroup g = hurwitz::testing::load_group("psp62_28.grp");
  return g;
}

} // namespace

TEST(Permutation, ComposeIdentity) {
  std::mt19937_64 rng(1);
  auto q = hurwitz::testing::random_permutation(9, rng);
  EXPECT_EQ(compose(Permutation(9), q), q);
  EXPECT_EQ(compose(q, Permutation(9)), q);
}

TEST(Permutation, ComposeTranspositionsGivesThreeCycle) {
  auto r = compose(cyc(3, "(1,2)"), cyc(3, "(2,3)"));
  EXPECT_EQ(CycleType::of(r).to_string(), "3");
  // q applied first: 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1.
  EXPECT_EQ(r, cyc(3, "(1,2,3)"));
}

TEST(Permutation, InverseLaw) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    auto p = hurwitz::testing::random_permutation(28, rng);
    EXPECT_TRUE(compose(p, p.inverse()).is_identity());
    EXPECT_TRUE(compose(p.inverse(), p).is_identity());
  }
}

TEST(Permutation, DegreeMismatchThrows) {
  EXPECT_THROW(compose(Permutation(3), Permutation(4)), InvalidArgument);
}

TEST(Permutation, ParseAndPrintRoundTrip) {
  auto p = cyc(8, "(1,5,3)(2 8)");
  EXPECT_EQ(p.to_string(), "(1,5,3)(2,8)");
  EXPECT_EQ(Permutation::parse(p.to_string(), 8), p);
  EXPECT_EQ(Permutation::parse("()", 4), Permutation(4));
  EXPECT_THROW(Permutation::parse("(1,9)", 8), InvalidArgument);
  EXPECT_THROW(Permutation::parse("(1,2,1)", 8), InvalidArgument);
}

TEST(Permutation, NonDisjointCyclesLeftmostFirst) {
  // 1 -> 2 under (1,2), then 2 -> 3 under (2,3).
  auto p = cyc(3, "(1,2)(2,3)");
  EXPECT_EQ(p[0], 2);
}

TEST(Permutation, ConjugateRelabels) {
  auto s = cyc(4, "(1,2)");
  auto g = cyc(4, "(2,3,4)");
  EXPECT_EQ(conjugate(s, g), cyc(4, "(1,3)"));
  EXPECT_EQ(conjugate(s, g), compose(g, compose(s, g.inverse())));
}

TEST(Permutation, PowerAndOrder) {
  auto p = cyc(7, "(1,2,3)(4,5)");
  EXPECT_EQ(p.order(), 6u);
  EXPECT_TRUE(power(p, 6).is_identity());
  EXPECT_EQ(power(p, -1), p.inverse());
}

TEST(CycleType, IdentityType) {
  EXPECT_EQ(CycleType::of(Permutation(28)).to_string(), "1^28");
}

TEST(CycleType, Wreath56Generators) {
  const auto &g = wreath56().generators();
  EXPECT_EQ(CycleType::of(g[0]).to_string(), "14^4");
  EXPECT_EQ(CycleType::of(g[1]).to_string(), "2^24.1^8");
  EXPECT_EQ(CycleType::of(compose(g[0], g[1]).inverse()).to_string(), "4^6.2^16");
}

TEST(CycleType, ParseForms) {
  EXPECT_EQ(CycleType::parse("(2^24,1^8)"), CycleType::parse("2^24.1^8"));
  EXPECT_EQ(CycleType::parse("1^12.2^12").to_string(), "2^12.1^12");
  EXPECT_EQ(CycleType::parse("15.12^2.9.8.7^2").degree(), 70u);
  EXPECT_EQ(CycleType::parse("3^1").to_string(), "3");
  EXPECT_THROW(CycleType::parse("2^"), InvalidArgument);
  EXPECT_THROW(CycleType::parse(""), InvalidArgument);
  EXPECT_THROW(CycleType::parse("2..1"), InvalidArgument);
}

TEST(CycleType, RenderParseRoundTrip) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    auto t = CycleType::of(hurwitz::testing::random_permutation(30, rng));
    EXPECT_EQ(CycleType::parse(t.to_string()), t);
    EXPECT_EQ(t.degree(), 30u);
  }
}

TEST(CycleType, ConjugationInvariance) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    auto p = hurwitz::testing::random_permutation(20, rng);
    auto q = hurwitz::testing::random_permutation(20, rng);
    EXPECT_EQ(CycleType::of(compose(q, compose(p, q.inverse()))), CycleType::of(p));
  }
}

TEST(GroupOrder, S3) {
  PermGroup s3(3, {cyc(3, "(1,2)"), cyc(3, "(1,2,3)")});
  EXPECT_EQ(s3.order(), 6);
}

TEST(GroupOrder, Psp62Degree28MatchesClosureOracle) {
  EXPECT_EQ(psp62_28().order(), 1451520);
  EXPECT_EQ(hurwitz::testing::closure_size(28, psp62_28().generators()), 1451520u);
}

TEST(GroupOrder, OtherCorpusGroups) {
  EXPECT_EQ(hurwitz::testing::load_group("psp62_36.grp").order(), 1451520);
  auto e6 = hurwitz::testing::load_group("psp43_2_27.grp");
  EXPECT_EQ(e6.order(), 51840);
  EXPECT_EQ(hurwitz::testing::closure_size(27, e6.generators()), 51840u);
}

TEST(GroupOrder, WreathBound) {
  mpz_class bound = mpz_class(1451520) * 1451520 * 2;
  mpz_class ord = wreath56().order();
  EXPECT_EQ(bound % ord, 0) << ord.get_str();
}

TEST(GroupOrder, MatchesClosureOracleOnSmallGroups) {
  for (const auto &g : hurwitz::testing::small_groups()) {
    EXPECT_EQ(g.order(), hurwitz::testing::closure_size(g.degree(), g.generators()));
    EXPECT_EQ(g.elements().size(), g.order().get_ui());
  }
}

TEST(GroupOrder, MembershipOfProducts) {
  std::mt19937_64 rng(5);
  const auto &g = wreath56();
  Permutation w(56);
  for (int k = 0; k < 200; ++k) {
    w = compose(w, g.generators()[rng() % 2]);
    EXPECT_TRUE(g.contains(w));
  }
  EXPECT_FALSE(psp62_28().contains(cyc(28, "(1,2)")));
}

TEST(GroupOrder, ElementCapIsEnforced) {
  PermGroup big(12, {cyc(12, "(1,2)"), cyc(12, "(1,2,3,4,5,6,7,8,9,10,11,12)")},
                GroupLimits{1000, 1000});
  EXPECT_THROW(big.for_each_element([](const Permutation &) { return true; }), BudgetExceeded);
}

TEST(Transitivity, Examples) {
  PermGroup c3(3, {cyc(3, "(1,2,3)")});
  EXPECT_TRUE(c3.is_transitive());
  // Three elements cannot reach the six ordered pairs.
  EXPECT_FALSE(c3.is_2_transitive());
  PermGroup s3(3, {cyc(3, "(1,2)"), cyc(3, "(1,2,3)")});
  EXPECT_TRUE(s3.is_2_transitive());
  PermGroup t(3, {cyc(3, "(1,2)")});
  EXPECT_FALSE(t.is_transitive());
  PermGroup c5(5, {cyc(5, "(1,2,3,4,5)")});
  EXPECT_FALSE(c5.is_2_transitive());
  EXPECT_TRUE(psp62_28().is_2_transitive());
  EXPECT_TRUE(hurwitz::testing::load_group("psp62_36.grp").is_2_transitive());
  EXPECT_FALSE(hurwitz::testing::load_group("psp43_2_27.grp").is_2_transitive());
  EXPECT_TRUE(wreath56().is_transitive());
  EXPECT_FALSE(wreath56().is_2_transitive());
}

TEST(Transitivity, TwoTransitiveMatchesPairOrbitOracle) {
  for (const auto &g : hurwitz::testing::small_groups()) {
    std::size_t n = g.degree();
    std::vector<bool> seen(n * n, false);
    std::vector<std::size_t> queue{1};
    seen[1] = true;
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (const auto &s : g.generators()) {
        std::size_t a = queue[k] / n, b = queue[k] % n;
        std::size_t c = s[a] * n + s[b];
        if (!seen[c]) {
          seen[c] = true;
          queue.push_back(c);
        }
      }
    EXPECT_EQ(g.is_2_transitive(), queue.size() == n * (n - 1));
  }
}

TEST(Center, TrivialAndNontrivial) {
  EXPECT_TRUE(psp62_28().has_trivial_center());
  PermGroup d8(4, {cyc(4, "(1,2,3,4)"), cyc(4, "(1,3)")});
  EXPECT_EQ(d8.center().size(), 2u);
  PermGroup c5(5, {cyc(5, "(1,2,3,4,5)")});
  EXPECT_EQ(c5.center().size(), 5u);
  PermGroup v4(5, {cyc(5, "(1,2)"), cyc(5, "(3,4)")});
  EXPECT_EQ(v4.center().size(), 4u);
}

TEST(ConjugacyClass, S3Transpositions) {
  PermGroup s3(3, {cyc(3, "(1,2)"), cyc(3, "(1,2,3)")});
  auto cls = conjugacy_class(s3, cyc(3, "(1,2)"));
  EXPECT_EQ(cls.size(), 3u);
  EXPECT_TRUE(std::is_sorted(cls.begin(), cls.end()));
}

TEST(ConjugacyClass, Psp62InvolutionClasses) {
  auto classes = classes_with_cycle_type(psp62_28(), CycleType::parse("2^12.1^4"));
  std::vector<std::size_t> sizes;
  for (const auto &c : classes)
    sizes.push_back(c.size());
  EXPECT_NE(std::find(sizes.begin(), sizes.end(), 3780u), sizes.end());
  auto unique = classes_with_cycle_type(psp62_28(), CycleType::parse("2^6.1^16"));
  ASSERT_EQ(unique.size(), 1u);
  EXPECT_EQ(unique[0].size(), 63u);
}

TEST(ConjugacyClass, ConjugatorsAndCentralizer) {
  auto rep = resolve_class(psp62_28(), {CycleType::parse("2^6.1^16"), {}, {}});
  ConjugacyClass cls(psp62_28(), rep);
  for (std::size_t i = 0; i < cls.size(); i += 7)
    EXPECT_EQ(conjugate(rep, cls.conjugator(i)), cls.elements()[i]);
  auto c = cls.centralizer();
  EXPECT_EQ(c.order(), 1451520 / 63);
  for (const auto &g : c.generators())
    EXPECT_EQ(compose(g, rep), compose(rep, g));
}

TEST(ConjugacyClass, RepresentativeMustBeInGroup) {
  PermGroup c3(3, {cyc(3, "(1,2,3)")});
  EXPECT_THROW(ConjugacyClass(c3, cyc(3, "(1,2)")), InvalidArgument);
}

TEST(ConjugacyClass, ClassCapIsEnforced) {
  PermGroup s6(6, {cyc(6, "(1,2)"), cyc(6, "(1,2,3,4,5,6)")}, GroupLimits{2000000, 10});
  EXPECT_THROW(ConjugacyClass(s6, cyc(6, "(1,2)")), BudgetExceeded);
}

TEST(ConjugacyClass, ClassEquation) {
  for (const auto &g : hurwitz::testing::small_groups()) {
    auto classes = conjugacy_classes(g);
    std::uint64_t total = 0;
    for (const auto &c : classes) {
      total += c.size();
      EXPECT_EQ(g.order() % static_cast<unsigned long>(c.size()), 0);
    }
    EXPECT_EQ(total, g.order().get_ui());
  }
}

TEST(ResolveClass, Examples) {
  PermGroup s3(3, {cyc(3, "(1,2)"), cyc(3, "(1,2,3)")});
  auto r = resolve_class(s3, {CycleType::parse("3^1"), {}, {}});
  EXPECT_EQ(CycleType::of(r).to_string(), "3");

  auto r7 = resolve_class(psp62_28(), {CycleType::parse("7^4"), {}, {}});
  EXPECT_EQ(r7.order(), 7u);
  auto r2 = resolve_class(psp62_28(), {CycleType::parse("2^12.1^4"), mpz_class(3780), {}});
  EXPECT_EQ(ConjugacyClass(psp62_28(), r2).size(), 3780u);
}

TEST(ResolveClass, AmbiguousAndMissing) {
  // Two classes of 5-cycles in A5.
  PermGroup a5(5, {cyc(5, "(1,2,3)"), cyc(5, "(1,2,3,4,5)")});
  EXPECT_THROW(resolve_class(a5, {CycleType::parse("5"), {}, {}}), InvalidArgument);
  EXPECT_THROW(resolve_class(a5, {CycleType::parse("2.1^3"), {}, {}}), InvalidArgument);
  auto classes = classes_with_cycle_type(a5, CycleType::parse("5"));
  EXPECT_EQ(classes.size(), 2u);
  EXPECT_FALSE(classes[0].is_rational());
}

TEST(ResolveClass, RationalityOfCorpusClasses) {
  auto r7 = resolve_class(psp62_28(), {CycleType::parse("7^4"), {}, {}});
  EXPECT_TRUE(ConjugacyClass(psp62_28(), r7).is_rational());
}

TEST(BlockSystems, CyclicFour) {
  PermGroup c4(4, {cyc(4, "(1,2,3,4)")});
  auto systems = block_systems(c4);
  ASSERT_EQ(systems.size(), 1u);
  EXPECT_EQ(systems[0].size(), 2u);
  EXPECT_EQ(systems[0][0].size(), 2u);
}

TEST(BlockSystems, PrimitiveHasNone) {
  PermGroup s3(3, {cyc(3, "(1,2)"), cyc(3, "(1,2,3)")});
  EXPECT_TRUE(block_systems(s3).empty());
  EXPECT_TRUE(block_systems(psp62_28()).empty());
}

TEST(BlockSystems, IntransitiveRejected) {
  PermGroup t(3, {cyc(3, "(1,2)")});
  EXPECT_THROW(block_systems(t), InvalidArgument);
}

TEST(BlockSystems, WreathHasTwoBlocksOf28) {
  auto systems = block_systems(wreath56());
  bool found = false;
  for (const auto &s : systems)
    found |= s.size() == 2 && s[0].size() == 28;
  EXPECT_TRUE(found);
}

TEST(BlockSystems, ReturnedSystemsAreInvariant) {
  std::vector<PermGroup> groups = hurwitz::testing::small_groups();
  groups.push_back(wreath56());
  groups.push_back(PermGroup(6, {cyc(6, "(1,2,3,4,5,6)")}));
  for (const auto &g : groups) {
    if (!g.is_transitive())
      continue;
    for (const auto &s : block_systems(g)) {
      EXPECT_TRUE(is_block_system(g, s));
      EXPECT_EQ(g.degree() % s[0].size(), 0u);
    }
  }
}

TEST(Normalizer, Examples) {
  PermGroup s3(3, {cyc(3, "(1,2)"), cyc(3, "(1,2,3)")});
  EXPECT_TRUE(cyclic_normalizer_fixes_cycle(s3, cyc(3, "(1,2,3)")));
  auto r7 = resolve_class(psp62_28(), {CycleType::parse("7^4"), {}, {}});
  EXPECT_TRUE(cyclic_normalizer_fixes_cycle(psp62_28(), r7));
  PermGroup s4(4, {cyc(4, "(1,2)"), cyc(4, "(1,2,3,4)")});
  EXPECT_FALSE(cyclic_normalizer_fixes_cycle(s4, cyc(4, "(1,2)(3,4)")));
}

TEST(Normalizer, MatchesBruteForce) {
  for (const auto &g : hurwitz::testing::small_groups()) {
    auto elems = g.elements();
    for (std::size_t k = 1; k < elems.size(); k += 5) {
      const auto &s = elems[k];
      if (s.is_identity())
        continue;
      std::vector<Permutation> powers;
      for (std::uint64_t e = 1; e < s.order(); ++e)
        if (std::gcd(e, s.order()) == 1)
          powers.push_back(power(s, static_cast<long long>(e)));
      std::size_t count = 0;
      for (const auto &h : elems)
        if (std::find(powers.begin(), powers.end(), conjugate(s, h)) != powers.end())
          ++count;
      EXPECT_EQ(PermGroup(g.degree(), cyclic_normalizer_generators(g, s)).order(), count);
    }
  }
}

TEST(GroupIo, ParseErrorsCarryLineNumbers) {
  try {
    parse_group("# header\ndegree 4\n(1,2)\n(1,5)\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse_group("(1,2)\n"), ParseError);
  EXPECT_THROW(parse_group("degree 3\n"), ParseError);
}

TEST(GroupIo, FormatParseRoundTrip) {
  auto text = format_group(wreath56(), "degree-56 generators");
  auto g = parse_group(text);
  EXPECT_EQ(g.generators(), wreath56().generators());
}
