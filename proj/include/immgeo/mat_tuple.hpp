#pragma once
/// @file mat_tuple.hpp
/// @brief Tuples (X₁, …, Xₙ) of q×q matrices with cyclic 1-based block access.
///
/// Block indices are cyclic everywhere in the library: block(α) for any integer
/// α refers to X_{cyc(α)} with cyc mapping onto 1..n.  This makes formulas with
/// α ± 1 arithmetic read exactly like their mathematical statements.

#include <cstddef>
#include <vector>

#include "immgeo/errors.hpp"
#include "immgeo/matrix.hpp"
#include "immgeo/rational.hpp"
#include "immgeo/rng.hpp"

namespace immgeo {

/// Cyclic representative of a in {1, …, n}; works for any integer a.
[[nodiscard]] constexpr int cyc(int a, int n) {
  const int r = (a - 1) % n;
  return (r < 0 ? r + n : r) + 1;
}

/// One matrix variable position: the entry (x_α)ʳᵒʷ_col of block α.
/// All three fields are 1-based; α is interpreted cyclically.
struct VarIndex {
  int alpha;
  int row;  ///< superscript (output index of the block)
  int col;  ///< subscript (input index of the block)

  [[nodiscard]] friend auto operator<=>(const VarIndex&, const VarIndex&) = default;
};

template <class R>
class MatTuple {
 public:
  MatTuple(int n, int q) : n_(n), q_(q), blocks_(check_sizes(n, q), Matrix<R>(q, q)) {}

  [[nodiscard]] static MatTuple zeros(int n, int q) { return MatTuple(n, q); }

  [[nodiscard]] static MatTuple identities(int n, int q) {
    MatTuple t(n, q);
    for (auto& b : t.blocks_) b = Matrix<R>::identity(static_cast<std::size_t>(q));
    return t;
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int q() const { return q_; }

  /// Cyclic accessor: block(0) is Xₙ, block(n+1) is X₁, and so on.
  [[nodiscard]] Matrix<R>& block(int alpha) {
    return blocks_[static_cast<std::size_t>(cyc(alpha, n_) - 1)];
  }
  [[nodiscard]] const Matrix<R>& block(int alpha) const {
    return blocks_[static_cast<std::size_t>(cyc(alpha, n_) - 1)];
  }

  [[nodiscard]] R& entry(const VarIndex& v) {
    check_entry(v);
    return block(v.alpha)(static_cast<std::size_t>(v.row - 1), static_cast<std::size_t>(v.col - 1));
  }
  [[nodiscard]] const R& entry(const VarIndex& v) const {
    check_entry(v);
    return block(v.alpha)(static_cast<std::size_t>(v.row - 1), static_cast<std::size_t>(v.col - 1));
  }

  [[nodiscard]] friend bool operator==(const MatTuple& a, const MatTuple& b) {
    return a.n_ == b.n_ && a.q_ == b.q_ && a.blocks_ == b.blocks_;
  }

 private:
  [[nodiscard]] static std::size_t check_sizes(int n, int q) {
    if (n < 1 || q < 1) throw InputError("matrix tuple needs n >= 1 and q >= 1");
    return static_cast<std::size_t>(n);
  }

  void check_entry(const VarIndex& v) const {
    if (v.row < 1 || v.row > q_ || v.col < 1 || v.col > q_) {
      throw InputError("variable index outside the q x q block");
    }
  }

  int n_;
  int q_;
  std::vector<Matrix<R>> blocks_;
};

using RationalTuple = MatTuple<Rational>;

/// Tuple with independently sampled rational entries (deterministic in the sampler).
[[nodiscard]] inline RationalTuple random_tuple(int n, int q, RatSampler& sampler,
                                                int num_bound = 9, int den_bound = 5) {
  RationalTuple t(n, q);
  for (int alpha = 1; alpha <= n; ++alpha) {
    t.block(alpha) = sampler.rational_matrix(static_cast<std::size_t>(q),
                                             static_cast<std::size_t>(q), num_bound, den_bound);
  }
  return t;
}

}  // namespace immgeo
