#include "hurwitz/exactpoly/family.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "hurwitz/permgroup/group_io.hpp"

namespace hurwitz {

namespace {

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

bool is_name(const std::string &s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool parse_bool(const std::string &s) {
  if (s == "true")
    return true;
  if (s == "false")
    return false;
  throw InvalidArgument("expected true or false, got '" + s + "'");
}

std::size_t parse_count(const std::string &s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidArgument("expected a nonnegative integer, got '" + s + "'");
  return std::stoul(s);
}

std::string join(const std::vector<std::string> &v) {
  std::string out;
  for (const auto &s : v)
    out += (out.empty() ? "" : " ") + s;
  return out;
}

std::string join_types(std::vector<CycleType> v) {
  std::sort(v.begin(), v.end());
  std::vector<std::string> s;
  for (const auto &t : v)
    s.push_back(t.to_string());
  return join(s);
}

} // namespace

PolyMap Family::instantiate(const ParamMap &overrides) const {
  ParamMap values = params;
  for (const auto &[k, v] : overrides) {
    if (!values.count(k))
      throw InvalidArgument("family has no parameter '" + k + "'");
    values[k] = v;
  }
  PolyMap names;
  for (const auto &[k, v] : values)
    names.emplace(k, QPoly::constant(v));
  PolyMap out;
  for (const auto &[name, expr] : definitions) {
    QPoly f = parse_expression(expr, names);
    names[name] = f;
    out[name] = f;
  }
  return out;
}

Family parse_family(std::string_view text, const std::filesystem::path &base_dir) {
  Family fam;
  fam.base_dir = base_dir;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::set<std::string> defined;
  auto check_expr = [&](const std::string &expr) {
    // Validate syntax with the parameters and earlier definitions bound.
    PolyMap names;
    for (const auto &[k, v] : fam.params)
      names.emplace(k, QPoly::constant(v));
    for (const auto &d : defined)
      names.emplace(d, QPoly::constant(Rational(1)));
    parse_expression(expr, names);
  };
  std::size_t def_line = 0;
  auto flush = [&] {
    if (def_line == 0)
      return;
    try {
      check_expr(fam.definitions.back().second);
    } catch (const Error &e) {
      throw ParseError(e.what(), def_line);
    }
    defined.insert(fam.definitions.back().first);
    def_line = 0;
  };
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = strip_comment(raw);
    if (line.empty())
      continue;
    if (std::isspace(static_cast<unsigned char>(raw[0]))) {
      if (def_line == 0)
        throw ParseError("continuation line outside a definition", line_no);
      fam.definitions.back().second += " " + line;
      continue;
    }
    flush();
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    try {
      if (key == "param") {
        std::string name, eq, value, extra;
        if (!(ls >> name >> eq >> value) || eq != "=" || (ls >> extra) || !is_name(name))
          throw ParseError("expected 'param <name> = <rational>'", line_no);
        if (name == "X" || fam.params.count(name))
          throw ParseError("bad or duplicate parameter '" + name + "'", line_no);
        fam.params[name] = parse_rational(value);
      } else if (key == "expect") {
        Family::Expectation e;
        e.line = line_no;
        if (!(ls >> e.key))
          throw ParseError("expect line needs a key", line_no);
        std::string tok;
        while (ls >> tok)
          e.args.push_back(tok);
        fam.expectations.push_back(std::move(e));
      } else {
        auto eq = line.find('=');
        std::string name = trim(line.substr(0, eq));
        if (eq == std::string::npos || !is_name(name))
          throw ParseError("expected 'param', 'expect' or '<name> = <expression>'", line_no);
        if (name == "X" || defined.count(name) || fam.params.count(name))
          throw ParseError("bad or duplicate name '" + name + "'", line_no);
        fam.definitions.emplace_back(name, trim(line.substr(eq + 1)));
        def_line = line_no;
      }
    } catch (const ParseError &) {
      throw;
    } catch (const Error &e) {
      throw ParseError(e.what(), line_no);
    }
  }
  flush();
  if (!defined.count("p") || !defined.count("q"))
    throw ParseError("family must define p and q", line_no);
  return fam;
}

Family read_family_file(const std::filesystem::path &path) {
  try {
    return parse_family(read_text_file(path), path.parent_path());
  } catch (const ParseError &e) {
    throw e.in_file(path.string());
  }
}

std::pair<FpPoly, FpPoly> reduce_cover(const QPoly &p, const QPoly &q, std::uint32_t prime) {
  if (prime < 3 || !is_prime(prime))
    throw InvalidArgument(std::to_string(prime) + " is not an odd prime");
  FpPoly a, b;
  try {
    a = reduce_mod(p, prime);
    b = reduce_mod(q, prime);
  } catch (const InvalidArgument &) {
    throw InvalidArgument("prime " + std::to_string(prime) + " divides a coefficient denominator");
  }
  if (a.degree() != p.degree() || b.degree() != q.degree())
    throw InvalidArgument("prime " + std::to_string(prime) + " divides a leading coefficient");
  return {a, b};
}

bool FamilyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const FamilyCheck &c) { return c.pass; });
}

FamilyReport verify_family(const Family &family, const FamilyOptions &options) {
  FamilyReport rep;
  rep.params = family.params;
  for (const auto &[k, v] : options.overrides)
    rep.params[k] = v;
  auto polys = family.instantiate(options.overrides);
  rep.p = polys.at("p");
  rep.q = polys.at("q");
  const QPoly &p = rep.p, &q = rep.q;
  auto branching = [&]() -> const BranchAnalysis & {
    if (!rep.branching)
      rep.branching = analyze_branching(p, q, options.prime, options.seed);
    return *rep.branching;
  };
  auto add = [&](const std::string &name, const std::string &expected, const std::string &actual) {
    rep.checks.push_back({name, expected, actual, expected == actual});
  };
  auto need = [](const Family::Expectation &e, std::size_t n) {
    if (e.args.size() != n)
      throw ParseError("expect " + e.key + " takes " + std::to_string(n) + " argument(s)", e.line);
  };

  for (const auto &e : family.expectations) {
    try {
      if (e.key == "degree") {
        need(e, 1);
        add("degree", std::to_string(parse_count(e.args[0])), std::to_string(cover_degree(p, q)));
      } else if (e.key == "branch_points") {
        need(e, 1);
        add("branch_points", std::to_string(parse_count(e.args[0])),
            std::to_string(branching().branch_count));
      } else if (e.key == "genus") {
        need(e, 1);
        add("genus", std::to_string(parse_count(e.args[0])), std::to_string(branching().genus));
      } else if (e.key == "profiles") {
        std::vector<CycleType> want;
        for (const auto &a : e.args)
          want.push_back(CycleType::parse(a));
        std::vector<CycleType> got;
        for (const auto &r : branching().profiles)
          got.push_back(r.type);
        add("profiles", join_types(want), join_types(got));
      } else if (e.key == "subcover_degrees") {
        std::vector<std::size_t> want;
        for (const auto &a : e.args)
          want.push_back(parse_count(a));
        std::sort(want.begin(), want.end());
        auto got = subcover_factor_degrees(p, q, options.prime, options.seed).degrees;
        auto fmt = [](const std::vector<std::size_t> &v) {
          std::vector<std::string> s;
          for (auto d : v)
            s.push_back(std::to_string(d));
          return join(s);
        };
        add("subcover_degrees", fmt(want), fmt(got));
      } else if (e.key == "discriminant_square") {
        need(e, 1);
        bool want = parse_bool(e.args[0]);
        add("discriminant_square", want ? "true" : "false",
            cover_discriminant_is_square(p, q) ? "true" : "false");
      } else if (e.key == "discriminant_square_mod") {
        need(e, 1);
        bool want = parse_bool(e.args[0]);
        auto [a, b] = reduce_cover(p, q, options.prime);
        add("discriminant_square_mod_" + std::to_string(options.prime), want ? "true" : "false",
            cover_discriminant_is_square(a, b) ? "true" : "false");
      } else if (e.key == "real_roots") {
        need(e, 2);
        Rational t0 = parse_rational(e.args[0]);
        add("real_roots_at_" + e.args[0], std::to_string(parse_count(e.args[1])),
            std::to_string(sturm_count(p - q * t0).count));
      } else if (e.key == "dedekind") {
        need(e, 2);
        std::filesystem::path gp(e.args[0]);
        PermGroup g = read_group_file(gp.is_absolute() ? gp : family.base_dir / gp);
        std::set<CycleType> types;
        g.for_each_element([&](const Permutation &x) {
          types.insert(CycleType::of(x));
          return true;
        });
        auto [a, b] = reduce_cover(p, q, options.prime);
        std::size_t want = parse_count(e.args[1]);
        std::vector<Fp> ts;
        std::mt19937_64 rng(options.seed);
        std::uniform_int_distribution<std::uint32_t> coin(0, options.prime - 1);
        for (std::size_t i = 0; i < want; ++i)
          ts.push_back(Fp::raw(options.prime, coin(rng)));
        auto samples = dedekind_cycle_samples(a, b, ts, options.seed);
        std::size_t outside = 0;
        for (const auto &[t, c] : samples.samples)
          outside += types.count(c) ? 0 : 1;
        add("dedekind_mod_" + std::to_string(options.prime),
            "0 types outside the group",
            std::to_string(outside) + " types outside the group (" +
                std::to_string(samples.samples.size()) + " samples, " +
                std::to_string(samples.skipped.size()) + " skipped)");
        rep.checks.back().pass = outside == 0 && !samples.samples.empty();
      } else {
        throw ParseError("unknown expectation '" + e.key + "'", e.line);
      }
    } catch (const ParseError &) {
      throw;
    } catch (const InvalidArgument &ex) {
      throw ParseError(ex.what(), e.line);
    }
  }
  return rep;
}

} // namespace hurwitz
