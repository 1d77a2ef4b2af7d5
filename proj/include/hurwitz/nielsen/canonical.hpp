#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "hurwitz/permgroup/conjugacy.hpp"
#include "hurwitz/permgroup/perm_group.hpp"

namespace hurwitz {

struct TupleHash {
  std::size_t operator()(const std::vector<Permutation> &t) const;
};

/// Canonical representatives of tuples under simultaneous conjugation by a
/// group: the conjugate whose concatenated image arrays are lexicographically
/// smallest. The first entry is moved to the smallest element m of its class;
/// the remaining entries are minimised over the centraliser of m, which must
/// be small enough to list. Classes are discovered and cached on demand.
class TupleCanonicalizer {
public:
  explicit TupleCanonicalizer(PermGroup group);
  ~TupleCanonicalizer();

  const PermGroup &group() const { return group_; }
  std::vector<Permutation> canonical(const std::vector<Permutation> &tuple);
  /// Stable index of the conjugacy class of g (in order of discovery).
  std::size_t class_id(const Permutation &g);
  std::vector<std::size_t> class_vector(const std::vector<Permutation> &tuple);
  const ConjugacyClass &class_at(std::size_t id);

private:
  struct Entry;
  Entry &entry(std::size_t id);
  PermGroup group_;
  std::vector<std::unique_ptr<Entry>> entries_;
  std::recursive_mutex mutex_;
};

} // namespace hurwitz
