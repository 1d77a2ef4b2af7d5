#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hurwitz/permgroup/permutation.hpp"

namespace hurwitz {

/// Multiset of cycle lengths. Text form lists lengths in descending order,
/// "a^i.b^j", with "^1" omitted: "2^6.1^16", "15.12^2.9.8.7^2".
class CycleType {
public:
  CycleType() = default;
  /// Lengths in any order; zero lengths are rejected.
  explicit CycleType(std::vector<std::size_t> lengths);

  static CycleType of(const Permutation &p);
  /// Accepts "2^6.1^16", "(2^24,1^8)", "1^12.2^12", "15.12^2.9". Surrounding
  /// parentheses and either '.' or ',' as separator are allowed.
  static CycleType parse(std::string_view text);

  std::size_t degree() const;
  std::size_t num_cycles() const { return lengths_.size(); }
  /// degree - #cycles, the contribution to the Riemann–Hurwitz sum.
  std::size_t index() const { return degree() - num_cycles(); }
  /// lcm of the lengths.
  std::uint64_t element_order() const;
  /// Descending lengths.
  const std::vector<std::size_t> &lengths() const { return lengths_; }
  /// (length, multiplicity) pairs, descending by length.
  std::vector<std::pair<std::size_t, std::size_t>> grouped() const;

  std::string to_string() const;

  friend bool operator==(const CycleType &, const CycleType &) = default;
  friend auto operator<=>(const CycleType &a, const CycleType &b) {
    return a.lengths_ <=> b.lengths_;
  }

private:
  std::vector<std::size_t> lengths_;
};

std::ostream &operator<<(std::ostream &os, const CycleType &c);

} // namespace hurwitz
