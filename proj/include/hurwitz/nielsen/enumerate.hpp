#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "hurwitz/nielsen/canonical.hpp"
#include "hurwitz/nielsen/tuple.hpp"

namespace hurwitz {

struct NielsenOptions {
  /// Cap on the number of (sigma_2, ..., sigma_{r-1}) candidates scanned.
  std::uint64_t candidate_budget = 200'000'000;
  unsigned threads = 1;
};

struct NielsenResult {
  /// Canonical representatives of the inner classes, sorted.
  std::vector<GeneratingTuple> classes;
  /// Size of the straight Nielsen class before dividing by |G|.
  mpz_class straight_count;
  std::uint64_t candidates = 0;
  std::uint64_t product_hits = 0;
  std::uint64_t generation_tests = 0;
};

/// Inner classes of generating tuples (s_1, ..., s_r), s_i in C_i, product
/// one. s_1 is fixed to a class representative, positions 2..r-1 run over
/// their classes and s_r is solved from the product. Each hit is expanded to
/// its orbit under the centraliser of s_1 so that every orbit is tested for
/// generation once; generating orbits are exactly the inner classes.
/// Requires r >= 3 and a group with trivial centre.
NielsenResult enumerate_straight_nielsen(const RamificationType &type,
                                         const NielsenOptions &options = {});

struct RigidityReport {
  std::size_t inner_classes = 0;
  bool rigid = false;
  /// Per position: is C_i closed under coprime powers.
  std::vector<bool> rational;
  bool all_rational = false;
};

RigidityReport rigidity_check(const RamificationType &type, const NielsenOptions &options = {});

/// First 4-tuple (s_1, s_21, s_22, s_3) in the list whose s_3 is inverted by
/// conjugation with s_22. Throws InvalidArgument for tuples of other length.
std::optional<GeneratingTuple> exists_symmetric_tuple(const std::vector<GeneratingTuple> &tuples);

/// Random search for one tuple of the type: s_1 fixed, s_2..s_{r-1} random
/// conjugates of their class representatives. Reproducible from the seed.
/// Throws BudgetExceeded after `attempts` failures.
GeneratingTuple find_tuple(const RamificationType &type, std::uint64_t seed,
                           std::uint64_t attempts = 1'000'000);

} // namespace hurwitz
