#pragma once

#include <optional>
#include <vector>

#include "hurwitz/numcover/cpoly.hpp"
#include "hurwitz/permgroup/permutation.hpp"

namespace hurwitz {

/// Tolerances for root tracking, kept out of the algorithms.
struct TrackingConfig {
  /// Relative Newton residual at 53 bits; other precisions use 2^(-0.6 bits).
  double residual_53 = 1e-10;
  /// Minimum loop clearance as a fraction of the branch-point spread.
  double clearance_factor = 1e-3;
  /// Smallest step, as a fraction of one path piece, before giving up.
  double min_step = 1e-14;
  std::size_t newton_iterations = 8;

  Real residual_tolerance(mpfr_prec_t bits) const;
};

/// A path in the t-plane made of straight segments and circular arcs.
class Path {
public:
  struct Piece {
    bool arc = false;
    Complex a, b;             // segment end points
    Complex center;           // arc
    Real radius, theta0, theta1;
  };

  Path &segment(const Complex &from, const Complex &to);
  /// Arc around `center` from angle theta0 to theta1 (counterclockwise when
  /// theta1 > theta0).
  Path &arc(const Complex &center, const Real &radius, const Real &theta0, const Real &theta1);
  Path reversed() const;

  const std::vector<Piece> &pieces() const { return pieces_; }
  static Complex point(const Piece &piece, const Real &s);

private:
  std::vector<Piece> pieces_;
};

using Fiber = std::vector<Complex>;

struct TrackStats {
  Real max_residual;
  std::size_t steps = 0;
  std::size_t rejected = 0;
};

/// Continues the roots of p(X) - t q(X) along the path by Euler prediction
/// and Newton correction. A step is accepted only when every root's Newton
/// correction converges and each root stays well inside a third of the
/// distance to its nearest neighbour; otherwise the step halves. Throws
/// NumericalFailure on step underflow or when two roots collide.
Fiber lift_roots(const CPoly &p, const CPoly &q, const Path &path, Fiber fiber,
                 const TrackingConfig &config = {}, TrackStats *stats = nullptr);

/// Index map from `end` onto `start` (each end root matched to the unique
/// start root within tolerance). Throws NumericalFailure when ambiguous.
std::vector<std::size_t> match_fibers(const Fiber &start, const Fiber &end);

struct BranchPoint {
  bool infinite = false;
  Complex value;
  static BranchPoint at_infinity() { return {true, {}}; }
};

struct MonodromyCertificate {
  Complex basepoint;
  Fiber base_fiber;
  /// Branch points in loop order: finite ones by argument as seen from the
  /// basepoint, infinity last.
  std::vector<BranchPoint> branch_points;
  /// Position of each ordered branch point in the caller's list.
  std::vector<std::size_t> input_index;
  /// Loop radius per finite branch point (the loop is segment, full
  /// counterclockwise circle, segment back).
  std::vector<Real> radii;
  /// sigma_i maps the end index of a lifted root to its start index, so
  /// that loop concatenation corresponds to composition in the project
  /// convention: compose(sigma_1, ..., sigma_r) = id.
  std::vector<Permutation> permutations;
  bool product_one = false;
  bool all_nontrivial = false;
  Real max_residual;
  std::size_t steps = 0;
};

struct MonodromyOptions {
  /// Defaults to the point of a bounding circle farthest from the branch
  /// points among those whose loop segments keep clear of other loops.
  std::optional<Complex> basepoint;
  /// Loop radius as a fraction of the distance to the nearest other branch
  /// point (and to the basepoint).
  double radius_fraction = 1.0 / 3.0;
  TrackingConfig tracking;
};

/// Monodromy of p(X) - t q(X) around the given branch points. The
/// permutation at infinity comes from an independent lift along the
/// bounding circle, so product_one is a genuine check.
MonodromyCertificate monodromy(const CPoly &p, const CPoly &q,
                               const std::vector<BranchPoint> &branch_points,
                               const MonodromyOptions &options = {});

} // namespace hurwitz
