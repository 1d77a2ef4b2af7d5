#include "hurwitz/app/commands.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hurwitz/error.hpp"
#include "hurwitz/exactpoly/family.hpp"
#include "hurwitz/exactpoly/poly_io.hpp"
#include "hurwitz/nielsen/braid.hpp"
#include "hurwitz/nielsen/canonical.hpp"
#include "hurwitz/nielsen/enumerate.hpp"
#include "hurwitz/nielsen/tuple.hpp"
#include "hurwitz/numcover/cover_model.hpp"
#include "hurwitz/permgroup/group_io.hpp"
#include "hurwitz/recognize/dependency.hpp"
#include "hurwitz/recognize/recognize.hpp"

namespace hurwitz::app {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

std::string join(const std::vector<std::string> &v, const std::string &sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? sep : "") + v[i];
  return out;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string sci(const Real &x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x.to_double());
  return buf;
}

const std::string &input(const JobConfig &c, std::size_t i, const char *what) {
  if (c.inputs.size() <= i)
    throw InvalidArgument(std::string("missing ") + what);
  if (!std::filesystem::is_regular_file(c.inputs[i]))
    throw InvalidArgument("cannot open " + c.inputs[i]);
  return c.inputs[i];
}

bool is_family_file(const std::filesystem::path &p) { return p.extension() == ".family"; }

ParamMap overrides(const std::optional<std::string> &alpha) {
  ParamMap m;
  if (alpha)
    m["alpha"] = parse_rational(*alpha);
  return m;
}

Complex parse_complex(const std::string &text, mpfr_prec_t bits) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    return Complex(Real(text, bits), Real(bits));
  return Complex(Real(text.substr(0, comma), bits), Real(text.substr(comma + 1), bits));
}

std::string point_text(const BranchPoint &b) {
  return b.infinite ? std::string("inf") : b.value.to_string(20);
}

void write_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream f(path);
  if (!f)
    throw InvalidArgument("cannot write " + path.string());
  f << text;
}

// Exact polynomials of a family member.
struct Member {
  Family family;
  PolyMap polys;
};

Member load_member(const std::filesystem::path &path, const std::optional<std::string> &alpha) {
  Member m{read_family_file(path), {}};
  m.polys = m.family.instantiate(overrides(alpha));
  return m;
}

CoverApproximation load_cover(const JobConfig &c, const std::filesystem::path &path, Report &rep) {
  if (is_family_file(path)) {
    auto m = load_member(path, c.alpha);
    return cover_from_exact(m.polys.at("p"), m.polys.at("q"), c.precision_bits, c.pins);
  }
  auto cover = read_cover_file(path);
  for (const auto &pin : c.pins)
    cover.pins.push_back(parse_pin(pin, cover));
  NewtonOptions o;
  o.max_iterations = c.budget_iterations;
  cover = newton_refine(cover, o);
  rep.line("refined input cover to residual " + sci(cover.residual));
  return cover;
}

void describe_cover(const CoverApproximation &cover, Report &rep, bool keys = true) {
  rep.line("degree " + std::to_string(cover.degree) + ", " + std::to_string(cover.bits) + " bits");
  for (std::size_t k = 0; k < cover.branches.size(); ++k)
    rep.line("branch " + std::to_string(k + 1) + " at " + point_text(cover.branches[k].point) +
             ": " + cover.profile(k).to_string());
  rep.line("residual " + sci(cover.residual));
  if (keys)
    rep.key("RESIDUAL", sci(cover.residual));
}

// Canonical representatives of the type's inner classes.
NielsenResult enumerate(const JobConfig &c, const RamificationType &type) {
  NielsenOptions o;
  o.candidate_budget = c.budget_elements;
  o.threads = c.threads;
  return enumerate_straight_nielsen(type, o);
}

} // namespace

void JobConfig::validate() const {
  if (prime < 3 || prime >= (1u << 31) || !is_prime(prime))
    throw InvalidArgument("--prime must be an odd prime below 2^31, got " + std::to_string(prime));
  if (precision_bits < 53 || precision_bits > 8192)
    throw InvalidArgument("--precision-bits must be in [53, 8192], got " +
                          std::to_string(precision_bits));
  if (threads < 1 || threads > 256)
    throw InvalidArgument("--threads must be in [1, 256], got " + std::to_string(threads));
  if (budget_elements < 1)
    throw InvalidArgument("--budget-elements must be positive");
  if (budget_iterations < 1 || budget_iterations > 10000)
    throw InvalidArgument("--budget-iterations must be in [1, 10000], got " +
                          std::to_string(budget_iterations));
  if (max_degree < 1 || max_degree > 32)
    throw InvalidArgument("--max-degree must be in [1, 32], got " + std::to_string(max_degree));
  if (height.empty() || height.find_first_not_of("0123456789") != std::string::npos ||
      mpz_class(height) < 1)
    throw InvalidArgument("--height must be a positive integer, got '" + height + "'");
  if (alpha)
    parse_rational(*alpha);
  if (target_alpha)
    parse_rational(*target_alpha);
  if (degrees && (degrees->first > 64 || degrees->second > 64))
    throw InvalidArgument("--degrees entries must be at most 64");
}

std::vector<std::string> JobConfig::echo() const {
  std::vector<std::string> out{
      "command=" + command,
      "inputs=" + join(inputs, ","),
      "prime=" + std::to_string(prime),
      "alpha=" + alpha.value_or("file"),
      "precision_bits=" + std::to_string(precision_bits),
      "seed=" + std::to_string(seed),
      "budget_elements=" + std::to_string(budget_elements),
      "budget_iterations=" + std::to_string(budget_iterations),
      "out=" + (this->out ? this->out->string() : std::string("-")),
  };
  if (!words.empty())
    out.push_back("words=" + join(words, ";"));
  if (!pins.empty())
    out.push_back("pins=" + join(pins, ";"));
  if (!targets.empty())
    out.push_back("targets=" + join(targets, ";"));
  if (target_alpha)
    out.push_back("target_alpha=" + *target_alpha);
  if (cover_out)
    out.push_back("cover_out=" + cover_out->string());
  if (degrees)
    out.push_back("degrees=" + std::to_string(degrees->first) + "," + std::to_string(degrees->second));
  if (value) {
    out.push_back("value=" + *value);
    out.push_back("max_degree=" + std::to_string(max_degree));
    out.push_back("height=" + height);
  }
  return out;
}

void Report::check(const std::string &name, bool pass, const std::string &detail) {
  line("check " + name + ": " + (pass ? "PASS" : "FAIL") + (detail.empty() ? "" : " (" + detail + ")"));
  if (!pass)
    failures.push_back(name);
}

std::string Report::render(const JobConfig &config) const {
  std::ostringstream o;
  o << "hurwitz " << config.command << "\n";
  for (const auto &e : config.echo())
    o << "config " << e << "\n";
  o << "run threads=" << config.threads << "\n\n";
  for (const auto &l : lines)
    o << l << "\n";
  o << "\n--- trailer\n";
  for (const auto &[k, v] : trailer)
    o << k << "=" << v << "\n";
  o << "CHECKS_FAILED=" << failures.size() << "\n";
  o << "RESULT=" << (passed() ? "PASS" : "FAIL") << "\n";
  return o.str();
}

Report nielsen_enum(const JobConfig &c) {
  Report rep;
  auto type = read_ramification_type_file(input(c, 0, "type file"));
  auto result = enumerate(c, type);
  const auto &G = type.group();
  rep.line("group of degree " + std::to_string(G.degree()) + " and order " + G.order().get_str());
  bool all_rational = true;
  for (std::size_t i = 0; i < type.classes().size(); ++i) {
    const auto &k = type.classes()[i];
    all_rational = all_rational && k.is_rational();
    rep.line("class " + std::to_string(i + 1) + ": " + type.descriptors()[i].to_string() +
             (k.is_rational() ? ", rational" : ", not rational"));
  }
  rep.line(std::to_string(result.classes.size()) + " inner classes");
  rep.line("straight Nielsen class size " + result.straight_count.get_str());
  rep.line("candidates scanned " + std::to_string(result.candidates));
  for (std::size_t i = 0; i < result.classes.size(); ++i)
    rep.line("rep " + std::to_string(i + 1) + ": " + result.classes[i].to_string());
  rep.key("INNER_CLASSES", std::to_string(result.classes.size()));
  rep.key("STRAIGHT_COUNT", result.straight_count.get_str());
  rep.key("RIGID", yes_no(result.classes.size() == 1));
  rep.key("ALL_RATIONAL", yes_no(all_rational));
  if (!result.classes.empty()) {
    rep.key("GENUS", std::to_string(tuple_genus(result.classes.front())));
    if (result.classes.front().size() == 4) {
      auto w = exists_symmetric_tuple(result.classes);
      rep.line(std::string("symmetric tuple: ") + (w ? w->to_string() : "none"));
      rep.key("SYMMETRIC_TUPLE", yes_no(w.has_value()));
    }
  }
  return rep;
}

Report braid_orbit(const JobConfig &c) {
  Report rep;
  auto type = read_ramification_type_file(input(c, 0, "type file"));
  auto result = enumerate(c, type);
  if (result.classes.empty()) {
    rep.line("the Nielsen class is empty");
    rep.key("ORBITS", "0");
    return rep;
  }
  const auto &G = type.group();
  TupleCanonicalizer canon(G);
  std::set<std::vector<Permutation>> remaining;
  for (const auto &t : result.classes)
    remaining.insert(t.entries());
  std::vector<std::string> sizes;
  std::optional<BraidOrbit> first;
  while (!remaining.empty()) {
    auto seed = *remaining.begin();
    auto orbit = hurwitz::braid_orbit(GeneratingTuple::unchecked(G, seed), canon, c.budget_elements);
    remaining.erase(seed);
    for (const auto &m : orbit.members)
      remaining.erase(m);
    sizes.push_back(std::to_string(orbit.members.size()));
    if (!first)
      first = std::move(orbit);
  }
  rep.line(std::to_string(result.classes.size()) + " inner classes in " +
           std::to_string(sizes.size()) + (sizes.size() == 1 ? " orbit" : " orbits") +
           " of sizes " + join(sizes, " "));
  rep.key("INNER_CLASSES", std::to_string(result.classes.size()));
  rep.key("ORBITS", std::to_string(sizes.size()));
  rep.key("ORBIT_SIZES", join(sizes, ","));

  std::vector<std::string> words = type.braid_words();
  words.insert(words.end(), c.words.begin(), c.words.end());
  std::vector<CycleType> configured;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto w = BraidWord::parse(words[i]);
    auto ct = CycleType::of(word_action(*first, w, canon));
    if (i < type.braid_words().size())
      configured.push_back(ct);
    rep.line("word " + std::to_string(i + 1) + " [" + w.to_string() + "]: " + ct.to_string());
    rep.key("WORD_" + std::to_string(i + 1), ct.to_string());
  }
  if (!configured.empty()) {
    try {
      int g = genus_from_cycle_types(first->members.size(), configured);
      rep.line("genus of the configured word types: " + std::to_string(g));
      rep.key("HURWITZ_GENUS", std::to_string(g));
    } catch (const InvalidArgument &e) {
      rep.line(std::string("genus of the configured word types: n/a (") + e.what() + ")");
    }
  }
  return rep;
}

Report verify_family(const JobConfig &c) {
  Report rep;
  auto fam = read_family_file(input(c, 0, "family file"));
  FamilyOptions o;
  o.overrides = overrides(c.alpha);
  o.prime = c.prime;
  o.seed = c.seed;
  auto r = hurwitz::verify_family(fam, o);
  for (const auto &[k, v] : r.params)
    rep.line("param " + k + " = " + v.get_str());
  if (r.branching)
    for (const auto &p : r.branching->profiles)
      rep.line("branch point " + p.point + ": " + p.type.to_string());
  for (const auto &ch : r.checks)
    rep.check(ch.name, ch.pass,
              ch.pass ? ch.actual : "expected " + ch.expected + ", got " + ch.actual);
  rep.key("CHECKS", std::to_string(r.checks.size()));
  return rep;
}

Report cover_from_family(const JobConfig &c) {
  Report rep;
  auto m = load_member(input(c, 0, "family file"), c.alpha);
  auto cover = cover_from_exact(m.polys.at("p"), m.polys.at("q"), c.precision_bits, c.pins);
  describe_cover(cover, rep);
  if (c.cover_out) {
    write_file(*c.cover_out, format_cover(cover));
    rep.line("cover written to " + c.cover_out->string());
  } else {
    rep.line("");
    std::istringstream in(format_cover(cover));
    for (std::string l; std::getline(in, l);)
      rep.line(l);
  }
  return rep;
}

Report monodromy(const JobConfig &c) {
  Report rep;
  std::filesystem::path path = input(c, 0, "cover or family file");
  const mpfr_prec_t bits = c.precision_bits;
  CPoly P, Q;
  std::vector<BranchPoint> bps;
  std::optional<Member> member;
  std::optional<CoverApproximation> cover;
  if (is_family_file(path)) {
    member = load_member(path, c.alpha);
    P = CPoly::from_exact(member->polys.at("p"), bits);
    Q = CPoly::from_exact(member->polys.at("q"), bits);
    bps = numeric_branch_points(member->polys.at("p"), member->polys.at("q"), bits);
  } else {
    cover = read_cover_file(path).with_precision(bits);
    P = cover->num;
    Q = cover->den;
    bps = cover->branch_points();
  }
  auto cert = hurwitz::monodromy(P, Q, bps);
  const std::size_t n = cert.base_fiber.size();
  rep.line("basepoint " + cert.basepoint.to_string(20));
  std::vector<CycleType> types;
  for (std::size_t i = 0; i < cert.permutations.size(); ++i) {
    auto ct = CycleType::of(cert.permutations[i]);
    types.push_back(ct);
    rep.line("loop " + std::to_string(i + 1) + " around " + point_text(cert.branch_points[i]) + ": " +
             ct.to_string());
    rep.line("  " + cert.permutations[i].to_string());
    rep.key("TYPE_" + std::to_string(i + 1), ct.to_string());
  }
  PermGroup G(n, cert.permutations);
  rep.line("lifting steps " + std::to_string(cert.steps) + ", max residual " + sci(cert.max_residual));
  rep.line("generated group order " + G.order().get_str());
  rep.key("GROUP_ORDER", G.order().get_str());
  rep.key("MAX_RESIDUAL", sci(cert.max_residual));
  rep.check("product_one", cert.product_one);
  rep.check("nontrivial", cert.all_nontrivial);
  rep.check("residual", cert.max_residual.to_double() < 1e-10, sci(cert.max_residual) + " < 1e-10");
  if (G.is_transitive())
    rep.key("GENUS", std::to_string(genus_from_cycle_types(n, types)));

  std::multiset<CycleType> got(types.begin(), types.end());
  if (member) {
    for (const auto &e : member->family.expectations) {
      if (e.key == "profiles") {
        std::multiset<CycleType> want;
        for (const auto &a : e.args)
          want.insert(CycleType::parse(a));
        rep.check("profiles", want == got, join(e.args, " "));
      } else if (e.key == "dedekind" && !e.args.empty()) {
        auto grp = read_group_file(member->family.base_dir / e.args[0]);
        rep.check("group_order", grp.order() == G.order(), "expected " + grp.order().get_str());
      }
    }
  } else {
    bool ok = true;
    for (std::size_t i = 0; i < types.size(); ++i)
      ok = ok && types[i] == cover->profile(cert.input_index[i]);
    rep.check("profiles", ok, "against the cover's fibre clustering");
  }
  return rep;
}

Report deform(const JobConfig &c) {
  Report rep;
  std::filesystem::path path = input(c, 0, "cover or family file");
  auto cover = load_cover(c, path, rep);
  const mpfr_prec_t bits = cover.bits;
  std::vector<Complex> targets;
  std::optional<PolyMap> reference;
  if (c.target_alpha) {
    if (!is_family_file(path))
      throw InvalidArgument("--target-alpha needs a family file input");
    if (!c.targets.empty())
      throw InvalidArgument("give either --targets or --target-alpha");
    reference = load_member(path, c.target_alpha).polys;
    for (const auto &b : numeric_branch_points(reference->at("p"), reference->at("q"), bits))
      if (!b.infinite)
        targets.push_back(b.value);
  } else {
    for (const auto &t : c.targets)
      targets.push_back(parse_complex(t, bits));
  }
  if (targets.empty())
    throw InvalidArgument("no deformation targets");
  rep.line("start");
  describe_cover(cover, rep, false);
  auto r = hurwitz::deform(cover, targets);
  rep.line("end after " + std::to_string(r.steps) + " steps (" + std::to_string(r.rejected) +
           " rejected)");
  describe_cover(r.cover, rep);
  rep.key("STEPS", std::to_string(r.steps));
  rep.check("residual", r.cover.residual.to_double() < std::pow(2.0, -0.5 * bits));
  if (r.monodromy_preserved)
    rep.check("monodromy_preserved", *r.monodromy_preserved);
  else
    rep.line("monodromy not compared");
  if (reference) {
    // Relative coefficient distance to the exact member.
    double d = 0;
    auto dist = [&](const CPoly &a, const QPoly &b) {
      auto e = CPoly::from_exact(b, bits);
      for (std::size_t i = 0; i < std::max(a.coeffs().size(), e.coeffs().size()); ++i) {
        Complex x = i < a.coeffs().size() ? a[i] : Complex(bits);
        Complex y = i < e.coeffs().size() ? e[i] : Complex(bits);
        d = std::max(d, (abs(x - y) / max(Real(1.0, bits), abs(y))).to_double());
      }
    };
    dist(r.cover.num, reference->at("p"));
    dist(r.cover.den, reference->at("q"));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", d);
    rep.key("DISTANCE", buf);
    rep.check("matches_exact_member", d < 1e-20, std::string(buf) + " < 1e-20");
  }
  if (c.cover_out) {
    write_file(*c.cover_out, format_cover(r.cover));
    rep.line("cover written to " + c.cover_out->string());
  }
  return rep;
}

Report recognize(const JobConfig &c) {
  Report rep;
  if (c.value) {
    if (!c.inputs.empty())
      throw InvalidArgument("give either a samples file or --value");
    Complex z = parse_complex(*c.value, c.precision_bits);
    mpz_class H(c.height);
    try {
      auto r = recognize_algebraic(z, c.max_degree, H, c.precision_bits);
      const char *status[] = {"found", "inconclusive", "not found"};
      rep.line(std::string("status ") + status[static_cast<int>(r.status)]);
      if (r.value) {
        rep.line("minimal polynomial " + r.value->to_string());
        rep.line("residual " + sci(r.value->residual) + ", margin 2^" +
                 std::to_string(static_cast<long>(r.value->margin_log2)));
        rep.key("POLYNOMIAL", r.value->to_string());
      }
      rep.key("REQUIRED_BITS", std::to_string(r.required_bits));
      rep.check("recognized", r.status == RecognitionStatus::Found);
    } catch (const InsufficientPrecision &e) {
      rep.line(e.what());
      rep.key("REQUIRED_BITS", std::to_string(e.required()));
      rep.check("precision", false, e.what());
    }
    return rep;
  }
  if (!c.degrees)
    throw InvalidArgument("recognize needs --degrees dbeta,dgamma for a samples file");
  auto samples = read_samples_file(input(c, 0, "samples file"));
  auto rel = interpolate_dependency(samples, c.degrees->first, c.degrees->second);
  rep.line(std::to_string(samples.size()) + " samples");
  rep.line("relation " + rel.to_string() + " = 0");
  rep.key("RELATION", rel.to_string());
  return rep;
}

Report run(const JobConfig &c) {
  c.validate();
  static const std::map<std::string, Report (*)(const JobConfig &)> table{
      {"nielsen enum", nielsen_enum}, {"braid orbit", braid_orbit},
      {"verify family", verify_family}, {"cover from-family", cover_from_family},
      {"monodromy", monodromy},         {"deform", deform},
      {"recognize", recognize},
  };
  auto it = table.find(c.command);
  if (it == table.end())
    throw InvalidArgument("unknown command '" + c.command + "'");
  return it->second(c);
}

} // namespace hurwitz::app
