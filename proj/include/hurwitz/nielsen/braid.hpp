#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hurwitz/nielsen/canonical.hpp"
#include "hurwitz/nielsen/tuple.hpp"

namespace hurwitz {

/// Q_i for 1 <= i <= r-1: (.., s_i, s_{i+1}, ..) -> (.., s_i s_{i+1} s_i^-1, s_i, ..).
std::vector<Permutation> braid_generator(std::size_t i, const std::vector<Permutation> &t);
GeneratingTuple braid_generator(std::size_t i, const GeneratingTuple &t);
/// Inverse of Q_i: (.., c, d, ..) -> (.., d, d^-1 c d, ..).
std::vector<Permutation> braid_generator_inverse(std::size_t i, const std::vector<Permutation> &t);

/// A word in Q_1, ..., Q_{r-1}, applied left to right. Letters are stored as
/// signed 1-based generator indices.
struct BraidWord {
  std::vector<int> letters;

  /// "Q1 Q2^-1 Q1^2"; "id" or an empty string is the identity.
  static BraidWord parse(std::string_view text);
  std::string to_string() const;
  BraidWord inverse() const;
  /// Largest generator index used.
  std::size_t max_index() const;
};

std::vector<Permutation> apply_braid_word(const BraidWord &w, std::vector<Permutation> t);

/// Braid orbit of an inner class. The BFS runs over all Q_i^(+-1), so it may
/// leave the straight Nielsen class; `members` keeps only the tuples whose
/// class vector equals the seed's (sorted canonical representatives).
struct BraidOrbit {
  std::vector<std::vector<Permutation>> members;
  /// Size of the orbit before restricting to the seed's class vector.
  std::size_t full_size = 0;
  std::unordered_map<std::vector<Permutation>, std::size_t, TupleHash> index;
  /// Action of Q_1..Q_{r-1} on the full orbit, as permutations of
  /// [0, full_size) in `full_members` order.
  std::vector<std::vector<Permutation>> full_members;
  std::vector<Permutation> generator_actions;
};

BraidOrbit braid_orbit(const GeneratingTuple &seed, TupleCanonicalizer &canon,
                       std::size_t budget = 1'000'000);

/// Permutation of `orbit.members` induced by w. Throws InvalidArgument when
/// w references a generator beyond r-1 or leaves the members.
Permutation word_action(const BraidOrbit &orbit, const BraidWord &w, TupleCanonicalizer &canon);

std::vector<CycleType> hurwitz_curve_braid_types(const BraidOrbit &orbit,
                                                 const std::vector<BraidWord> &words,
                                                 TupleCanonicalizer &canon);

} // namespace hurwitz
