#pragma once
/// @file rng.hpp
/// @brief Deterministic sampling of rational scalars, matrices, and indices.
///
/// Randomized verification must reproduce byte-identically across platforms,
/// so sampling uses the mt19937_64 output sequence (pinned by the standard)
/// with explicit modulo mapping — never std::uniform_int_distribution, whose
/// mapping is implementation-defined.

#include <cstdint>

#include <random>

#include "immgeo/errors.hpp"
#include "immgeo/linalg.hpp"
#include "immgeo/matrix.hpp"
#include "immgeo/rational.hpp"

namespace immgeo {

class RatSampler {
 public:
  explicit RatSampler(std::uint64_t seed) : eng_(seed) {}

  /// Uniform-enough index in [0, bound); bound must be positive.
  [[nodiscard]] std::size_t index(std::size_t bound) {
    if (bound == 0) throw InputError("index bound must be positive");
    return static_cast<std::size_t>(eng_() % bound);
  }

  /// Integer in [lo, hi], inclusive.
  [[nodiscard]] int integer_in(int lo, int hi) {
    if (lo > hi) throw InputError("empty integer range");
    return lo + static_cast<int>(index(static_cast<std::size_t>(hi - lo) + 1));
  }

  /// Fraction with numerator in [−num_bound, num_bound], denominator in [1, den_bound].
  [[nodiscard]] Rational rational(int num_bound = 9, int den_bound = 5) {
    const int num = integer_in(-num_bound, num_bound);
    const int den = integer_in(1, den_bound);
    return Rational(num, den);
  }

  [[nodiscard]] Rational nonzero_rational(int num_bound = 9, int den_bound = 5) {
    for (;;) {
      Rational r = rational(num_bound, den_bound);
      if (!r.is_zero()) return r;
    }
  }

  [[nodiscard]] Matrix<Rational> rational_matrix(std::size_t rows, std::size_t cols,
                                                 int num_bound = 9, int den_bound = 5) {
    Matrix<Rational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rational(num_bound, den_bound);
    }
    return m;
  }

  /// Random matrix certified invertible by an exact rank check.  Dense random
  /// matrices are almost surely invertible; the retry bound only guards
  /// against a degenerate sampler configuration.
  [[nodiscard]] Matrix<Rational> invertible_matrix(std::size_t n, int num_bound = 9,
                                                   int den_bound = 5) {
    for (int attempt = 0; attempt < 256; ++attempt) {
      Matrix<Rational> m = rational_matrix(n, n, num_bound, den_bound);
      if (exact_rank(m) == n) return m;
    }
    throw InternalCheckFailure("failed to sample an invertible matrix");
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace immgeo
