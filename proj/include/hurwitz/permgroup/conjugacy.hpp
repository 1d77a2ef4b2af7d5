#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "hurwitz/permgroup/cycle_type.hpp"
#include "hurwitz/permgroup/perm_group.hpp"

namespace hurwitz {

/// A conjugacy class enumerated by BFS under conjugation by the group
/// generators. elements[0] is the representative; every element records the
/// BFS parent and generator so that a conjugator can be rebuilt.
class ConjugacyClass {
public:
  ConjugacyClass(const PermGroup &group, const Permutation &representative);

  const Permutation &representative() const { return elements_.front(); }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Permutation> &elements() const { return elements_; }
  CycleType cycle_type() const { return CycleType::of(representative()); }

  bool contains(const Permutation &g) const { return index_.count(g) != 0; }
  std::optional<std::size_t> index_of(const Permutation &g) const;
  /// g with conjugate(representative, g) == elements()[i].
  Permutation conjugator(std::size_t i) const;
  /// Lexicographically smallest element (by image array).
  const Permutation &min_element() const { return elements_[min_index_]; }
  std::size_t min_index() const { return min_index_; }
  /// Elements sorted by image array.
  std::vector<Permutation> sorted_elements() const;

  /// Closed under g -> g^k for every k coprime to the element order.
  bool is_rational() const;

  /// Generators of the centraliser of the representative, found from
  /// Schreier generators of the conjugation action until the order reaches
  /// |G| / |class|.
  const std::vector<Permutation> &centralizer_generators() const;
  PermGroup centralizer() const;

private:
  PermGroup group_;
  std::vector<Permutation> elements_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint16_t> via_;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index_;
  std::size_t min_index_ = 0;
  struct CentralizerCache;
  std::shared_ptr<CentralizerCache> centralizer_;
};

struct ClassDescriptor {
  CycleType cycle_type;
  std::optional<mpz_class> class_size;
  std::optional<std::uint64_t> element_order;

  bool matches(const ConjugacyClass &c) const;
  std::string to_string() const;
};

/// All conjugacy classes, ordered by (cycle type, size, smallest element).
/// Requires |G| within the element cap.
std::vector<ConjugacyClass> conjugacy_classes(const PermGroup &group);

/// Classes whose elements have the given cycle type. Requires |G| within
/// the element cap.
std::vector<ConjugacyClass> classes_with_cycle_type(const PermGroup &group, const CycleType &type);

/// Classes whose cycle type is any of the given ones, found in one pass
/// over the group.
std::vector<ConjugacyClass> classes_with_cycle_types(const PermGroup &group,
                                                     const std::vector<CycleType> &types);

/// The unique class among `classes` matching d; throws InvalidArgument when
/// none or several match.
const ConjugacyClass &select_class(const std::vector<ConjugacyClass> &classes,
                                   const ClassDescriptor &d);

/// Representative (the smallest element) of the unique class matching d.
/// Throws InvalidArgument when no class or several classes match.
Permutation resolve_class(const PermGroup &group, const ClassDescriptor &d);

/// Sorted list of the elements of the class of rep.
std::vector<Permutation> conjugacy_class(const PermGroup &group, const Permutation &rep);

/// Generators of N_G(<s>), the stabiliser of the set of generators of <s>
/// under conjugation.
std::vector<Permutation> cyclic_normalizer_generators(const PermGroup &group, const Permutation &s);

/// True iff N_G(<s>) maps some cycle of s (fixed points included) to itself
/// while every element of N_G(<s>) preserves it as a set.
bool cyclic_normalizer_fixes_cycle(const PermGroup &group, const Permutation &s);

} // namespace hurwitz
