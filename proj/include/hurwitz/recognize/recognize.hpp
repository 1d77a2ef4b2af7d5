#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hurwitz/error.hpp"
#include "hurwitz/exactpoly/poly.hpp"
#include "hurwitz/numcover/mp.hpp"

namespace hurwitz {

/// Recognition was asked for more than the input precision supports.
class InsufficientPrecision : public InvalidArgument {
public:
  InsufficientPrecision(long required, long available)
      : InvalidArgument("insufficient precision: " + std::to_string(required) + " bits required, " +
                        std::to_string(available) + " available"),
        required_(required), available_(available) {}
  long required() const { return required_; }
  long available() const { return available_; }

private:
  long required_, available_;
};

/// Continued-fraction recognition: the first convergent p/q with
/// max(|p|, q) <= max_height that agrees with x to the input accuracy
/// (2^-(accuracy_bits - 8) relative). accuracy_bits defaults to the
/// precision of x and must be at least 2 log2(max_height) + 8.
std::optional<Rational> recognize_rational(const Real &x, const mpz_class &max_height,
                                           std::optional<long> accuracy_bits = std::nullopt);

struct RecognizedValue {
  /// Integer coefficients, constant first; content 1, leading coefficient > 0.
  std::vector<mpz_class> coefficients;
  /// |P(z)| at the input precision.
  Real residual;
  /// log2 of (second-shortest / shortest) reduced vector norm.
  double margin_log2 = 0;

  QPoly polynomial() const;
  std::string to_string() const;
};

enum class RecognitionStatus { Found, Inconclusive, NotFound };

struct Recognition {
  RecognitionStatus status = RecognitionStatus::NotFound;
  /// The accepted candidate, or the best one when inconclusive.
  std::optional<RecognizedValue> value;
  long required_bits = 0;
};

struct RecognizeOptions {
  /// Minimum log2 margin between the accepted vector and the runner-up.
  double margin_log2 = 16;
  Rational delta = Rational(99, 100);
};

/// Integer relation search on (1, z, ..., z^d) for d = 1 .. max_degree with
/// the lattice scaled by 2^(accuracy - 8) (real and imaginary columns).
/// A candidate is accepted when |P(z)| < 2^(-accuracy/4) * height(P) and the
/// margin clears the threshold; below the margin the result is
/// Inconclusive. Throws InsufficientPrecision unless accuracy_bits >=
/// (max_degree + 1) * (log2(height_bound) + 16) + 16, which leaves room
/// for the default margin.
Recognition recognize_algebraic(const Complex &z, std::size_t max_degree, const mpz_class &height_bound,
                                std::optional<long> accuracy_bits = std::nullopt,
                                const RecognizeOptions &options = {});

long required_recognition_bits(std::size_t max_degree, const mpz_class &height_bound);

} // namespace hurwitz
