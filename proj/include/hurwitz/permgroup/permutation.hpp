#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hurwitz {

/// A bijection of {0, ..., degree-1}. Text forms (cycle notation, image
/// lists in files) are 1-based; everything in memory is 0-based.
///
/// Composition convention, used throughout the project:
///   compose(p, q)(i) = p(q(i))      (q is applied first)
/// A tuple (s_1, ..., s_r) has "product one" when
///   compose(s_1, compose(s_2, ... s_r)) is the identity.
class Permutation {
public:
  using Point = std::uint16_t;
  static constexpr std::size_t kMaxDegree = 65535;

  Permutation() = default;
  explicit Permutation(std::size_t degree);
  explicit Permutation(std::vector<Point> images);
  /// Skips the bijection check; for images produced by composing valid
  /// permutations.
  static Permutation from_images_unchecked(std::vector<Point> images) {
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }
  /// Cycles on 1-based points. Non-disjoint cycles are read as in GAP and
  /// Magma: the leftmost cycle acts first.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<unsigned>> &cycles);
  /// Parses cycle notation such as "(1,55,27)(3,34,6)" or "(1 2)(3 4)".
  /// "()" is the identity.
  static Permutation parse(std::string_view text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator[](std::size_t i) const { return images_[i]; }
  const std::vector<Point> &images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  /// Order of the cyclic group generated; throws if it overflows 64 bits.
  std::uint64_t order() const;
  /// All cycles including fixed points, each starting at its smallest point,
  /// sorted by that point.
  std::vector<std::vector<Point>> cycles() const;
  std::size_t num_cycles() const;
  std::size_t num_fixed_points() const;
  /// 1-based disjoint cycle notation without fixed points; "()" for identity.
  std::string to_string() const;

  std::size_t hash() const;

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &a, const Permutation &b) {
    return a.images_ <=> b.images_;
  }

private:
  std::vector<Point> images_;
};

Permutation compose(const Permutation &p, const Permutation &q);
/// g∘s∘g⁻¹: relabels every point i of s as g(i).
Permutation conjugate(const Permutation &s, const Permutation &g);
Permutation power(const Permutation &p, long long exponent);
/// Composes left to right: compose(ps[0], compose(ps[1], ...)).
Permutation product(const std::vector<Permutation> &ps, std::size_t degree);

std::ostream &operator<<(std::ostream &os, const Permutation &p);

struct PermutationHash {
  std::size_t operator()(const Permutation &p) const { return p.hash(); }
};

} // namespace hurwitz
