#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "hurwitz/permgroup/cycle_type.hpp"
#include "hurwitz/permgroup/permutation.hpp"

namespace hurwitz {

struct GroupLimits {
  /// Largest group whose elements may be listed or streamed.
  std::uint64_t element_cap = 2'000'000;
  /// Largest conjugacy class that may be enumerated.
  std::uint64_t class_cap = 5'000'000;
};

/// Base and strong generating set. Level i holds the strong generators
/// fixing base[0..i-1], the orbit of base[i] under them and a transversal:
/// transversal[b] maps base[i] to b.
struct Bsgs {
  struct Level {
    Permutation::Point base_point;
    std::vector<Permutation> generators;
    std::vector<Permutation::Point> orbit;
    std::vector<std::optional<Permutation>> transversal;
    std::vector<std::optional<Permutation>> transversal_inverse;
  };
  std::size_t degree = 0;
  std::vector<Level> levels;

  mpz_class order() const;
  /// Sifts g through the chain; returns the residue and the first level
  /// where sifting failed (levels.size() if it ran through).
  std::pair<Permutation, std::size_t> strip(const Permutation &g) const;
  bool contains(const Permutation &g) const;
};

/// Deterministic Schreier–Sims.
Bsgs schreier_sims(std::size_t degree, const std::vector<Permutation> &generators);

/// A permutation group given by generators. Values are immutable; the
/// stabiliser chain is computed on first use and shared between copies.
class PermGroup {
public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators, GroupLimits limits = {});

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation> &generators() const { return generators_; }
  const GroupLimits &limits() const { return limits_; }

  const Bsgs &bsgs() const;
  mpz_class order() const;
  bool contains(const Permutation &g) const;

  /// Calls visit on every element (in a fixed order); stops early when
  /// visit returns false. Throws BudgetExceeded if the order exceeds the
  /// element cap.
  void for_each_element(const std::function<bool(const Permutation &)> &visit) const;
  std::vector<Permutation> elements() const;
  /// Uniformly distributed element (product of random transversal entries).
  Permutation random_element(std::mt19937_64 &rng) const;

  std::vector<std::vector<Permutation::Point>> orbits() const;
  bool is_transitive() const;
  bool is_2_transitive() const;

  /// Elements of the centre. Requires a transitive group or one small
  /// enough to list.
  std::vector<Permutation> center() const;
  bool has_trivial_center() const { return center().size() == 1; }

private:
  struct Cache;
  std::size_t degree_;
  std::vector<Permutation> generators_;
  GroupLimits limits_;
  std::shared_ptr<Cache> cache_;
};

/// Orbit of a point under a set of generators, in BFS order.
std::vector<Permutation::Point> orbit_of(Permutation::Point start,
                                         const std::vector<Permutation> &generators,
                                         std::size_t degree);

/// Cheap test that the given elements generate the ambient group: checks
/// transitivity first when the ambient group is transitive, then compares
/// orders.
bool generates(const std::vector<Permutation> &elements, const PermGroup &ambient);

} // namespace hurwitz
