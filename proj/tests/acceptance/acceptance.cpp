// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "hurwitz/app/commands.hpp"
#include "hurwitz/error.hpp"
#include "hurwitz/exactpoly/cover.hpp"
#include "hurwitz/exactpoly/family.hpp"
#include "hurwitz/exactpoly/poly_io.hpp"
#include "hurwitz/nielsen/enumerate.hpp"
#include "hurwitz/nielsen/wreath.hpp"
#include "hurwitz/numcover/cpoly.hpp"
#include "hurwitz/permgroup/blocks.hpp"
#include "hurwitz/recognize/dependency.hpp"
#include "hurwitz/recognize/recognize.hpp"
#include "test_util.hpp"

using namespace hurwitz;
using hurwitz::testing::data_path;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records a failed expectation.
  void expect(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

app::JobConfig job(const std::string &command, const std::string &input) {
  app::JobConfig c;
  c.command = command;
  c.inputs = {input};
  return c;
}

std::string key(const app::Report &r, const std::string &k) {
  for (const auto &[name, v] : r.trailer)
    if (name == k)
      return v;
  return "<missing>";
}

std::multiset<CycleType> types(std::initializer_list<const char *> ts) {
  std::multiset<CycleType> out;
  for (const char *t : ts)
    out.insert(CycleType::parse(t));
  return out;
}

std::multiset<CycleType> types_of(const std::string &space_separated) {
  std::multiset<CycleType> out;
  std::istringstream in(space_separated);
  for (std::string t; in >> t;)
    out.insert(CycleType::parse(t));
  return out;
}

std::string show(const std::multiset<CycleType> &s) {
  std::string out;
  for (const auto &t : s)
    out += (out.empty() ? "" : " ") + t.to_string();
  return out;
}

const FamilyCheck *find_check(const FamilyReport &r, const std::string &name) {
  for (const auto &c : r.checks)
    if (c.name == name)
      return &c;
  return nullptr;
}

Outcome nielsen_count() {
  Outcome o;
  auto r = app::nielsen_enum(job("nielsen enum", data_path("types/psp62_28.type")));
  o.expect(key(r, "INNER_CLASSES") == "70", "inner classes " + key(r, "INNER_CLASSES"));
  o.detail = key(r, "INNER_CLASSES") + " inner classes" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome braid_orbit() {
  Outcome o;
  auto r = app::braid_orbit(job("braid orbit", data_path("types/psp62_28.type")));
  o.expect(key(r, "ORBITS") == "1", "orbits " + key(r, "ORBITS"));
  o.expect(key(r, "ORBIT_SIZES") == "70", "orbit sizes " + key(r, "ORBIT_SIZES"));
  o.expect(key(r, "WORD_1") == "15.12^2.9.8.7^2", "word 1 " + key(r, "WORD_1"));
  o.expect(key(r, "WORD_2") == "3^13.2^14.1^3", "word 2 " + key(r, "WORD_2"));
  o.expect(key(r, "WORD_3") == "2^35", "word 3 " + key(r, "WORD_3"));
  o.expect(key(r, "HURWITZ_GENUS") == "0", "genus " + key(r, "HURWITZ_GENUS"));
  o.expect(genus_from_cycle_types(70, {CycleType::parse("15.12^2.9.8.7^2"),
                                       CycleType::parse("3^13.2^14.1^3"), CycleType::parse("2^35")}) == 0,
           "genus of the expected types");
  if (o.pass)
    o.detail = "one orbit of 70; " + key(r, "WORD_1") + ", " + key(r, "WORD_2") + ", " +
               key(r, "WORD_3") + "; genus 0";
  return o;
}

Outcome wreath_triple() {
  Outcome o;
  auto type = read_ramification_type_file(data_path("types/psp62_28.type"));
  auto classes = enumerate_straight_nielsen(type).classes;
  o.expect(!classes.empty(), "no Nielsen class representative");
  if (!o.pass)
    return o;
  auto triple = wreath_belyi_triple(classes.front());
  o.expect(CycleType::of(triple.sinf).to_string() == "14^4", "x " + CycleType::of(triple.sinf).to_string());
  o.expect(CycleType::of(triple.s1).to_string() == "2^24.1^8", "y " + CycleType::of(triple.s1).to_string());
  o.expect(CycleType::of(triple.s0).to_string() == "4^6.2^16",
           "(xy)^-1 " + CycleType::of(triple.s0).to_string());
  o.expect(is_product_one(triple.entries()), "triple product");

  // Converse direction on the shipped generators x, y.
  auto W = read_group_file(data_path("psp62_wreath56.grp"));
  const auto &x = W.generators()[0], &y = W.generators()[1];
  BelyiTriple shipped{compose(y, x).inverse(), y, x};
  std::optional<BlockSystem> halves;
  for (const auto &b : block_systems(W))
    if (b.size() == 2)
      halves = b;
  o.expect(halves.has_value(), "no block system with two blocks");
  if (!halves)
    return o;
  auto fiber = extract_fiber_tuple(shipped, *halves);
  std::vector<std::string> got;
  for (const auto &t : fiber.tuple.cycle_types())
    got.push_back(t.to_string());
  o.expect(got == std::vector<std::string>{"2^6.1^16", "2^12.1^4", "2^12.1^4", "7^4"}, "fibre types");
  o.expect(fiber.tuple.group().order() == 1451520, "BSGS order " + fiber.tuple.group().order().get_str());
  auto closure = hurwitz::testing::closure_size(28, fiber.tuple.entries());
  o.expect(closure == 1451520u, "closure order " + std::to_string(closure));
  if (o.pass)
    o.detail = "triple 14^4, 2^24.1^8, 4^6.2^16; fibre tuple order 1451520 (BSGS and closure)";
  return o;
}

Outcome rigidity() {
  Outcome o;
  auto rep = rigidity_check(read_ramification_type_file(data_path("types/psp43_2_27_rigid.type")));
  o.expect(rep.rigid, std::to_string(rep.inner_classes) + " inner classes");
  o.expect(rep.all_rational, "a class is not rational");
  if (o.pass)
    o.detail = "1 inner class, all classes rational";
  return o;
}

Outcome family_51() {
  Outcome o;
  auto r = verify_family(read_family_file(data_path("families/psp43_2_27.family")),
                         {{{"alpha", Rational(1)}}, 31, 1});
  auto *bp = find_check(r, "branch_points");
  auto *pr = find_check(r, "profiles");
  auto *sd = find_check(r, "subcover_degrees");
  o.expect(bp && bp->actual == "4", "branch points " + (bp ? bp->actual : "?"));
  o.expect(pr && types_of(pr->actual) == types({"2^6.1^15", "2^6.1^15", "4^6.1^3", "6^4.3"}),
           "profiles " + (pr ? pr->actual : "?"));
  o.expect(sd && sd->actual == "1 10 16", "subcover degrees " + (sd ? sd->actual : "?"));
  if (o.pass)
    o.detail = "4 branch points; " + pr->actual + "; subcover degrees 1 10 16";
  return o;
}

Outcome family_52() {
  Outcome o;
  auto r = verify_family(read_family_file(data_path("families/psp62_36.family")),
                         {{{"alpha", Rational(1)}}, 31, 1});
  auto *pr = find_check(r, "profiles");
  auto want = types({"3^12", "1^12.2^12", "1^12.2^12", "1^6.2.4^7"});
  o.expect(pr && types_of(pr->actual) == want, "profiles " + (pr ? pr->actual : "?"));
  if (o.pass)
    o.detail = show(want);
  return o;
}

Outcome totally_real() {
  Outcome o;
  auto m = read_family_file(data_path("families/psp62_28_real.family")).instantiate();
  std::string counts;
  for (const char *t : {"-1", "-24500000000000", "-49000000000000"}) {
    Rational t0 = parse_rational(t);
    QPoly f = m.at("p") - m.at("q") * t0;
    auto s = sturm_count(f);
    o.expect(s.count == 28 && !s.reduced, std::string("t0 = ") + t + ": " + std::to_string(s.count));
    counts += (counts.empty() ? "" : ", ") + std::to_string(s.count) + " at " + t;
  }
  if (o.pass)
    o.detail = "real roots " + counts;
  return o;
}

Outcome monodromy_check(const std::string &family, const std::multiset<CycleType> &want,
                        const std::string &order) {
  Outcome o;
  auto c = job("monodromy", data_path("families/" + family));
  c.alpha = "1";
  c.precision_bits = 128;
  auto r = app::monodromy(c);
  std::multiset<CycleType> got;
  for (std::size_t i = 1; key(r, "TYPE_" + std::to_string(i)) != "<missing>"; ++i)
    got.insert(CycleType::parse(key(r, "TYPE_" + std::to_string(i))));
  o.expect(got == want, "types " + show(got));
  o.expect(std::find(r.failures.begin(), r.failures.end(), "product_one") == r.failures.end(),
           "product not one");
  o.expect(std::stod(key(r, "MAX_RESIDUAL")) < 1e-10, "residual " + key(r, "MAX_RESIDUAL"));
  o.expect(key(r, "GROUP_ORDER") == order, "order " + key(r, "GROUP_ORDER"));
  if (o.pass)
    o.detail = family + ": order " + order + ", residual " + key(r, "MAX_RESIDUAL");
  return o;
}

Outcome monodromy_both() {
  auto a = monodromy_check("psp43_2_27.family",
                           types({"2^6.1^15", "2^6.1^15", "4^6.1^3", "6^4.3"}), "51840");
  auto b = monodromy_check("psp62_36.family",
                           types({"3^12", "1^12.2^12", "1^12.2^12", "1^6.2.4^7"}), "1451520");
  return {a.pass && b.pass, a.detail + "; " + b.detail};
}

Outcome discriminants() {
  Outcome o;
  for (const char *name : {"psp62_28_real.family", "psp62_36.family"}) {
    auto m = read_family_file(data_path(std::string("families/") + name)).instantiate();
    auto [p, q] = reduce_cover(m.at("p"), m.at("q"), 31);
    o.expect(cover_discriminant_is_square(p, q), std::string(name) + " not a square mod 31");
  }
  if (o.pass)
    o.detail = "degree-28 and degree-36 discriminants are squares in F_31(t)";
  return o;
}

Outcome deformation() {
  Outcome o;
  auto c = job("deform", data_path("families/psp43_2_27.family"));
  c.alpha = "1";
  c.target_alpha = "2";
  c.precision_bits = 256;
  c.pins = {"scale inf 729", "factor 0 4 5 0", "factor_sum 0 4 4 3 0"};
  auto r = app::deform(c);
  o.expect(key(r, "DISTANCE") != "<missing>" && std::stod(key(r, "DISTANCE")) < 1e-20,
           "distance " + key(r, "DISTANCE"));
  o.expect(r.passed(), "failed: " + (r.failures.empty() ? std::string() : r.failures.front()));
  if (o.pass)
    o.detail = "alpha 1 -> 2 in " + key(r, "STEPS") + " steps, distance " + key(r, "DISTANCE") +
               " at 256 bits, monodromy preserved";
  return o;
}

Outcome recognition() {
  Outcome o;
  const mpfr_prec_t bits = 256;
  auto minpoly = [&](const Complex &z, unsigned d) {
    auto r = recognize_algebraic(z, d, mpz_class(1000), bits);
    return r.status == RecognitionStatus::Found ? r.value->to_string() : std::string("none");
  };
  Real s2 = sqrt(Real(2L, bits));
  Real phi = (Real(1L, bits) + sqrt(Real(5L, bits))) / 2.0;
  Complex cubic_root(bits);
  for (const auto &z : complex_roots(CPoly::from_exact(parse_expression("X^3 - X - 1"), bits)).roots)
    if (abs(z.im).to_double() < 1e-60)
      cubic_root = z;
  std::string a = minpoly(Complex(s2, Real(bits)), 4), b = minpoly(Complex(phi, Real(bits)), 4),
              c = minpoly(cubic_root, 4);
  o.expect(a == "X^2 - 2", "sqrt 2: " + a);
  o.expect(b == "X^2 - X - 1", "golden ratio: " + b);
  o.expect(c == "X^3 - X - 1", "cubic root: " + c);

  std::vector<Sample> parabola, circle;
  for (int k : {-2, -1, 1, 3, 5})
    parabola.push_back({Rational(k), Rational(k * k)});
  for (int m : {2, 3, 4, 5, 7, -2, -3, 6, 9, 11}) {
    Rational u(m * m - 1, m * m + 1), v(2 * m, m * m + 1);
    u.canonicalize();
    v.canonicalize();
    circle.push_back({u, v});
  }
  auto p = interpolate_dependency(parabola, 2, 1).to_string();
  auto q = interpolate_dependency(circle, 2, 2).to_string();
  o.expect(p == "beta^2 - gamma", "parabola: " + p);
  o.expect(q == "beta^2 + gamma^2 - 1", "circle: " + q);
  if (o.pass)
    o.detail = a + "; " + b + "; " + c + "; " + p + "; " + q;
  return o;
}

} // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria{
      {"Nielsen class count", nielsen_count, 900},
      {"braid orbit", braid_orbit, 120},
      {"wreath triple", wreath_triple, 120},
      {"rigidity", rigidity, 600},
      {"degree-27 family", family_51, 300},
      {"degree-36 family", family_52, 300},
      {"totally real specialisations", totally_real, 120},
      {"numerical monodromy", monodromy_both, 600},
      {"discriminant squareness", discriminants, 60},
      {"deformation round trip", deformation, 600},
      {"recognition closed loop", recognition, 60},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char t[32];
    std::snprintf(t, sizeof t, "%.1f s", secs);
    if (secs > criteria[i].limit_seconds)
      o.expect(false, "over the " + std::to_string(static_cast<int>(criteria[i].limit_seconds)) +
                          " s limit");
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].name << ": "
              << o.detail << " [" << t << "]" << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
