#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/exactpoly/cover.hpp"
#include "hurwitz/exactpoly/poly_io.hpp"

namespace hurwitz {

/// A family file: parameters, named polynomial expressions (p and q are
/// required; f = p - t q) and expectation lines.
///
///   param alpha = 1
///   p = (X^2 - alpha)^2          continuation lines start with whitespace
///   q = X
///   expect degree 4
///
/// Expectation keys: degree N, branch_points N, profiles T..., genus G,
/// subcover_degrees D..., discriminant_square true|false (over Q(t)),
/// discriminant_square_mod true|false (over F_P(t) for the chosen prime),
/// real_roots t0 N (distinct real roots of p - t0 q),
/// dedekind <group-file> N (N samples mod the prime, every factor-degree
/// type must be a cycle type of the group).
struct Family {
  struct Expectation {
    std::string key;
    std::vector<std::string> args;
    std::size_t line = 0;
  };
  ParamMap params;
  std::vector<std::pair<std::string, std::string>> definitions;
  std::vector<Expectation> expectations;
  std::filesystem::path base_dir;

  /// Polynomials with `overrides` replacing the file's parameter values.
  PolyMap instantiate(const ParamMap &overrides = {}) const;
};

Family parse_family(std::string_view text, const std::filesystem::path &base_dir = {});
Family read_family_file(const std::filesystem::path &path);

/// Reduction of a cover mod prime; throws InvalidArgument naming the
/// problem when the prime divides a denominator or a leading coefficient.
std::pair<FpPoly, FpPoly> reduce_cover(const QPoly &p, const QPoly &q, std::uint32_t prime);

struct FamilyOptions {
  ParamMap overrides;
  std::uint32_t prime = 31;
  std::uint64_t seed = 1;
};

struct FamilyCheck {
  std::string name, expected, actual;
  bool pass = false;
};

struct FamilyReport {
  ParamMap params;
  QPoly p, q;
  std::optional<BranchAnalysis> branching;
  std::vector<FamilyCheck> checks;
  bool passed() const;
};

FamilyReport verify_family(const Family &family, const FamilyOptions &options = {});

} // namespace hurwitz
