#pragma once

#include <vector>

#include "hurwitz/exactpoly/field.hpp"

namespace hurwitz {

using IntVector = std::vector<mpz_class>;

/// Row basis of an integer lattice.
struct IntegerLattice {
  std::vector<IntVector> basis;

  std::size_t rank() const { return basis.size(); }
  /// Length of each vector (0 for an empty lattice).
  std::size_t dimension() const { return basis.empty() ? 0 : basis.front().size(); }
};

mpz_class dot(const IntVector &a, const IntVector &b);

/// LLL reduction with exact rational Gram–Schmidt data. delta must lie in
/// (1/4, 1). Throws InvalidArgument for dependent or ragged input.
IntegerLattice lll_reduce(const IntegerLattice &lattice, const Rational &delta = Rational(99, 100));

/// Whether the basis is size-reduced and satisfies the Lovász condition.
bool is_lll_reduced(const IntegerLattice &lattice, const Rational &delta = Rational(99, 100));

} // namespace hurwitz
