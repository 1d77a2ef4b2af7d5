#pragma once

#include <cstdint>
#include <vector>

#include "hurwitz/exactpoly/poly.hpp"

namespace hurwitz {

struct FpFactor {
  FpPoly factor; ///< monic irreducible
  int multiplicity;
};

/// Squarefree decomposition over F_p, including p-th power parts.
std::vector<std::pair<FpPoly, int>> squarefree_decomposition(const FpPoly &f);

/// Complete factorisation of a nonzero polynomial over F_p: squarefree
/// decomposition, distinct-degree splitting, then Cantor-Zassenhaus
/// equal-degree splitting driven by a generator seeded with `seed`.
/// Factors are monic and sorted by (degree, coefficients); the leading
/// coefficient is dropped. p must be an odd prime.
std::vector<FpFactor> factor_fp(const FpPoly &f, std::uint64_t seed = 1);

/// Degrees of the irreducible factors, with multiplicity, in ascending order.
std::vector<std::size_t> factor_degrees(const FpPoly &f, std::uint64_t seed = 1);

bool is_irreducible(const FpPoly &f);

/// Roots in F_p of f, ascending, without multiplicity.
std::vector<Fp> roots_fp(const FpPoly &f, std::uint64_t seed = 1);

/// a^e mod m.
FpPoly powmod(const FpPoly &a, std::uint64_t e, const FpPoly &m);

} // namespace hurwitz
