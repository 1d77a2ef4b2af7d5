#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/exactpoly/poly.hpp"
#include "hurwitz/numcover/tracking.hpp"
#include "hurwitz/permgroup/cycle_type.hpp"

namespace hurwitz {

/// One monic factor S of degree `degree` appearing to the power
/// `multiplicity` in the fibre polynomial of a branch point.
struct FactorShape {
  std::size_t degree;
  unsigned multiplicity;
};

/// Over a finite branch point t_k: num - t_k den = scale * prod S_j^e_j.
/// Over infinity: den = scale * prod S_j^e_j (the missing degree is the
/// cycle at X = infinity).
struct CoverBranch {
  BranchPoint point;
  std::vector<FactorShape> shape; ///< distinct multiplicities, descending
  Complex scale;
  std::vector<CPoly> factors; ///< monic, one per shape entry
};

/// Reference to one unknown of the Newton system.
struct UnknownRef {
  enum class Kind { Num, Den, Scale, Factor, BranchValue };
  Kind kind = Kind::Num;
  std::size_t branch = 0, factor = 0, index = 0;
};

/// Normalisation constraint: sum of the referenced unknowns = value.
struct Pin {
  std::vector<UnknownRef> terms;
  Complex value;
  std::string text; ///< the pin as written in files
};

struct CoverApproximation {
  std::size_t degree = 0;
  mpfr_prec_t bits = 53;
  CPoly num, den;
  std::vector<CoverBranch> branches;
  std::vector<Pin> pins;
  /// Max coefficient mismatch of the defining identities, relative to the
  /// largest coefficient of num and den.
  Real residual;

  std::vector<BranchPoint> branch_points() const;
  CycleType profile(std::size_t branch) const;
  CoverApproximation with_precision(mpfr_prec_t bits) const;
};

/// Branch points of p - t q: the rational points 0 and p_n/q_n exactly
/// when ramified, the other roots of the squarefree discriminant
/// numerically, sorted by real then imaginary part, then infinity if
/// ramified.
std::vector<BranchPoint> numeric_branch_points(const QPoly &p, const QPoly &q, mpfr_prec_t bits);

/// Pin from text: "scale <b> <v>", "factor <b> <mult> <power> <v>",
/// "factor_sum <b> <mult> <power1> <power2> <v>", "num <k> <v>", "den <k> <v>".
/// <b> is "inf", "@k" (1-based branch index) or a number matched against
/// the finite branch points; <v> is "<re> [<im>]" with re/im decimal or
/// rational.
Pin parse_pin(const std::string &text, const CoverApproximation &cover);

/// Cover of p - t q at the given precision: branch points from the exact
/// discriminant, ramification shapes exact over rational points and by
/// clustering numerical roots elsewhere, then Newton-polished.
CoverApproximation cover_from_exact(const QPoly &p, const QPoly &q, mpfr_prec_t bits,
                                    const std::vector<std::string> &pins);

struct NewtonOptions {
  std::size_t max_iterations = 40;
  /// Required residual exponent: residual < 2^(-bits * target_fraction).
  double target_fraction = 0.5;
};

/// Newton iteration on the factored-shape identities plus pins. Throws
/// NumericalFailure for a singular Jacobian (including missing pins) or
/// divergence.
CoverApproximation newton_refine(const CoverApproximation &cover, const NewtonOptions &options = {});

struct DeformOptions {
  /// Precision used along the path; the end point is refined at the
  /// cover's own precision.
  mpfr_prec_t working_bits = 128;
  double initial_step = 0.125;
  double min_step = 1.0 / 4096;
  /// Branch points must stay this fraction of their spread apart.
  double clearance_factor = 1e-3;
  bool certify_monodromy = true;
  MonodromyOptions monodromy;
};

struct DeformResult {
  CoverApproximation cover;
  std::size_t steps = 0, rejected = 0;
  /// Start and end monodromy agree up to simultaneous conjugation.
  std::optional<bool> monodromy_preserved;
};

/// Moves the finite branch points (in cover order) along straight lines to
/// `targets`, re-solving at each step with adaptive step size.
DeformResult deform(const CoverApproximation &cover, const std::vector<Complex> &targets,
                    const DeformOptions &options = {});

struct DriveOptions {
  /// Move the coefficient in adaptive steps; false jumps straight there.
  bool continuation = true;
  mpfr_prec_t working_bits = 128;
  double min_step = 1.0 / 4096;
};

/// Adds the constraint `selected = target` and frees the finite branch
/// point `free_branch`, then continues to the target.
CoverApproximation drive_coefficient(const CoverApproximation &cover, const UnknownRef &selected,
                                     const Complex &target, std::size_t free_branch,
                                     const DriveOptions &options = {});

/// Current value of an unknown.
Complex unknown_value(const CoverApproximation &cover, const UnknownRef &ref);

/// Whether two permutation tuples are simultaneously conjugate in S_n.
bool simultaneously_conjugate(const std::vector<Permutation> &a, const std::vector<Permutation> &b);

/// Cover file: `degree`, `precision_bits`, `branch_point <re> <im>` or
/// `branch_point inf`, `num_coeff k <re> <im>`, `den_coeff k <re> <im>`,
/// plus optional `profile <k> <cycle type>` (1-based branch index) and
/// `pin ...` lines.
CoverApproximation parse_cover(std::string_view text);
CoverApproximation read_cover_file(const std::filesystem::path &path);
std::string format_cover(const CoverApproximation &cover);

} // namespace hurwitz
