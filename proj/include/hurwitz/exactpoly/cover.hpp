#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/exactpoly/fp_factor.hpp"
#include "hurwitz/exactpoly/poly.hpp"
#include "hurwitz/permgroup/cycle_type.hpp"

namespace hurwitz {

// Covers are given as f = p(X) - t q(X) of degree n = max(deg p, deg q).

std::size_t cover_degree(const QPoly &p, const QPoly &q);

/// disc_X(p - t q) as a polynomial in t, by evaluation at deg+1 points and
/// interpolation. Throws InvalidArgument when gcd(p, q) != 1.
QPoly discriminant_in_t(const QPoly &p, const QPoly &q);
/// Over F_p; evaluation points come from an extension field when F_p is
/// too small.
FpPoly discriminant_in_t(const FpPoly &p, const FpPoly &q);

/// Inertia cycle type over t0 (nullopt for t = infinity): root
/// multiplicities of p - t0 q (of q at infinity), plus one cycle of length
/// n - deg for the roots that went to X = infinity.
CycleType ramification_profile(const QPoly &p, const QPoly &q, const std::optional<Rational> &t0);
CycleType ramification_profile(const FpPoly &p, const FpPoly &q, const std::optional<Fp> &t0);

struct RamificationProfile {
  std::string point; ///< "0", "inf", a rational, or "r mod P" for a root mod P
  CycleType type;
};

struct BranchAnalysis {
  std::size_t degree = 0;
  QPoly discriminant;
  /// Distinct branch points over the algebraic closure.
  std::size_t branch_count = 0;
  std::vector<RamificationProfile> profiles;
  /// Primes used for the finite branch points (profile and cross-check).
  std::uint32_t prime = 0, check_prime = 0;
  int genus = 0;
};

/// All branch points and their profiles. Infinity and rational special
/// points are handled over Q; the remaining roots of the discriminant are
/// handled modulo the first prime P >= start_prime (and P > n) of good
/// reduction over which they all split, and cross-checked at the next one.
BranchAnalysis analyze_branching(const QPoly &p, const QPoly &q, std::uint32_t start_prime = 31,
                                 std::uint64_t seed = 1);

struct SturmResult {
  std::size_t count = 0;
  /// Whether f had repeated factors (the squarefree part was used).
  bool reduced = false;
};

/// Distinct real roots in (a, b]; nullopt endpoints are -inf / +inf.
SturmResult sturm_count(const QPoly &f, const std::optional<Rational> &a = std::nullopt,
                        const std::optional<Rational> &b = std::nullopt);

struct DedekindSamples {
  std::vector<std::pair<Fp, CycleType>> samples;
  /// t-values where p - t q drops degree or is inseparable mod p.
  std::vector<Fp> skipped;
};

DedekindSamples dedekind_cycle_samples(const FpPoly &p, const FpPoly &q,
                                       const std::vector<Fp> &t_values, std::uint64_t seed = 1);

bool is_square(const Rational &x);

/// Square in F_p(t): even multiplicities and square leading coefficient.
bool is_square_in_function_field(const FpPoly &d);
/// Square in Q(t): even multiplicities and positive square leading coefficient.
bool is_square_in_function_field(const QPoly &d);
/// Whether disc(f) is a square in the coefficient field.
bool discriminant_is_square(const QPoly &f);
bool discriminant_is_square(const FpPoly &f);
/// Whether disc_X(p - t q) is a square in K(t). Throws when it is zero.
bool cover_discriminant_is_square(const QPoly &p, const QPoly &q);
bool cover_discriminant_is_square(const FpPoly &p, const FpPoly &q);

struct SubcoverDegrees {
  std::vector<std::size_t> degrees; ///< ascending
  std::size_t samples = 0;
};

/// X-degrees of the irreducible factors of f1(X) f2(Y) - f2(X) f1(Y) over
/// Q(Y). Each sample specialises Y to a random value mod a prime and
/// factors over F_P; factor degrees over Q(Y) are sums of sub-multisets of
/// every sample, so the candidate set is intersected over samples and the
/// answer is read off once it has been stable for `stable_runs` samples.
SubcoverDegrees subcover_factor_degrees(const QPoly &f1, const QPoly &f2, std::uint32_t prime = 31,
                                        std::uint64_t seed = 1, std::size_t min_samples = 24,
                                        std::size_t stable_runs = 12, std::size_t max_samples = 400);

/// g with g^2 = f and positive leading coefficient; throws when f is not a
/// square in Q[X].
QPoly poly_sqrt(const QPoly &f);

} // namespace hurwitz
