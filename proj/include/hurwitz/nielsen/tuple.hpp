#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hurwitz/permgroup/conjugacy.hpp"
#include "hurwitz/permgroup/cycle_type.hpp"
#include "hurwitz/permgroup/perm_group.hpp"

namespace hurwitz {

/// compose(t[0], compose(t[1], ...)): the product under the project
/// convention. A tuple is valid when this is the identity.
Permutation tuple_product(const std::vector<Permutation> &entries);
bool is_product_one(const std::vector<Permutation> &entries);

/// An r-tuple (r >= 2) of nonidentity elements with product one that
/// generates its group. Both conditions are checked on construction.
class GeneratingTuple {
public:
  GeneratingTuple(PermGroup group, std::vector<Permutation> entries);
  /// Skips the checks; for tuples produced by operations that preserve them.
  static GeneratingTuple unchecked(PermGroup group, std::vector<Permutation> entries);

  const PermGroup &group() const { return group_; }
  const std::vector<Permutation> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t degree() const { return group_.degree(); }
  const Permutation &operator[](std::size_t i) const { return entries_[i]; }

  std::vector<CycleType> cycle_types() const;
  /// Entries in cycle notation separated by spaces.
  std::string to_string() const;

private:
  GeneratingTuple(PermGroup group, std::vector<Permutation> entries, bool);
  PermGroup group_;
  std::vector<Permutation> entries_;
};

/// Genus g from 2 - 2g = 2n - sum(n - #cycles). Throws InvalidArgument when
/// the sum is odd or g would be negative.
int genus_from_cycle_types(std::size_t degree, const std::vector<CycleType> &types);
/// As above for a tuple; requires a transitive group.
int tuple_genus(const GeneratingTuple &t);

/// A group with an ordered list of class descriptors.
class RamificationType {
public:
  RamificationType(PermGroup group, std::vector<ClassDescriptor> classes);

  const PermGroup &group() const { return group_; }
  const std::vector<ClassDescriptor> &descriptors() const { return descriptors_; }
  std::size_t length() const { return descriptors_.size(); }
  /// Classes resolved from the descriptors (computed once, one pass over
  /// the group); throws when a descriptor is ambiguous or matches nothing.
  const std::vector<ConjugacyClass> &classes() const;
  std::vector<CycleType> cycle_types() const;

  /// Braid words for the Hurwitz curve inertia, kept as text from the
  /// optional "braid_word" lines of a type file.
  const std::vector<std::string> &braid_words() const { return braid_words_; }
  void set_braid_words(std::vector<std::string> words) { braid_words_ = std::move(words); }

private:
  PermGroup group_;
  std::vector<ClassDescriptor> descriptors_;
  std::vector<std::string> braid_words_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

/// Type files: "group <path>" (relative to the file's directory) followed by
/// one line per class: "class <cycle type> [size=<n>] [order=<k>]", then
/// optional "braid_word <word>" lines.
RamificationType parse_ramification_type(std::string_view text,
                                         const std::filesystem::path &base_dir,
                                         GroupLimits limits = {});
RamificationType read_ramification_type_file(const std::filesystem::path &path,
                                              GroupLimits limits = {});

/// Parses "class ..." arguments, e.g. "2^12.1^4 size=3780".
ClassDescriptor parse_class_descriptor(std::string_view text);

} // namespace hurwitz
