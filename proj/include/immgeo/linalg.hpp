#pragma once
/// @file linalg.hpp
/// @brief Exact linear algebra: fraction-free rank, incremental row echelon,
///        Gauss–Jordan inverse, and a division-free determinant.
///
/// Rank and inverse work over ℚ.  The determinant is computed by the Berkowitz
/// bordering recursion, which uses only ring operations (+, −, ×) and is
/// therefore valid over rings with zero divisors such as ℚ[t]/(tⁿ + c).

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "immgeo/errors.hpp"
#include "immgeo/matrix.hpp"
#include "immgeo/rational.hpp"

namespace immgeo {

/// Exact rank over ℚ.  Rows are scaled to integers, then reduced by one-step
/// Bareiss elimination (fraction-free; every division is exact).
[[nodiscard]] inline std::size_t exact_rank(const Matrix<Rational>& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  // Row scaling by the denominators' lcm preserves the row space.
  std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Int scale = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      scale = boost::multiprecision::lcm(scale, denominator(m(i, j)));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      a[i][j] = numerator(m(i, j)) * (scale / denominator(m(i, j)));
    }
  }
  Int prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;  // column already zero below the processed rows
    std::swap(a[rank], a[pivot]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        // One-step Bareiss update: the division by the previous pivot is exact.
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

/// dim ker = #columns − rank.
[[nodiscard]] inline std::size_t nullity(const Matrix<Rational>& m) {
  return m.cols() - exact_rank(m);
}

/// Incremental exact row echelon over ℚ: rows are absorbed one at a time and
/// only independent directions are retained.  Suited to large stacked systems
/// whose rows arrive operator by operator — memory stays O(rank · cols).
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t cols) : cols_(cols) {}

  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t rank() const { return rows_.size(); }

  /// Reduces `row` against the stored pivot rows; keeps it iff independent.
  /// Returns true when the rank grew.
  bool absorb(std::vector<Rational> row) {
    if (row.size() != cols_) throw ShapeError("row length differs from echelon width");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Rational factor = row[pivot_col_[k]];
      if (factor.is_zero()) continue;
      const auto& pivot_row = rows_[k];
      for (std::size_t j = pivot_col_[k]; j < cols_; ++j) {
        if (pivot_row[j].is_zero()) continue;
        row[j] -= factor * pivot_row[j];
      }
    }
    std::size_t lead = 0;
    while (lead < cols_ && row[lead].is_zero()) ++lead;
    if (lead == cols_) return false;
    const Rational inv = Rational(1) / row[lead];
    for (std::size_t j = lead; j < cols_; ++j) {
      if (!row[j].is_zero()) row[j] *= inv;
    }
    // Keep pivot rows ordered by pivot column so absorb reduces left to right.
    const auto pos = std::lower_bound(pivot_col_.begin(), pivot_col_.end(), lead);
    const auto idx = static_cast<std::size_t>(pos - pivot_col_.begin());
    pivot_col_.insert(pos, lead);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(row));
    return true;
  }

 private:
  std::size_t cols_;
  std::vector<std::size_t> pivot_col_;              // ascending
  std::vector<std::vector<Rational>> rows_;         // rows_[k] leads with 1 at pivot_col_[k]
};

/// Exact inverse over ℚ via Gauss–Jordan; throws NotInvertible when singular.
[[nodiscard]] inline Matrix<Rational> inverse(const Matrix<Rational>& m) {
  if (m.rows() != m.cols()) throw ShapeError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<Rational> a = m;
  Matrix<Rational> inv = Matrix<Rational>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw NotInvertible("singular matrix has no inverse");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(pivot, j));
        std::swap(inv(col, j), inv(pivot, j));
      }
    }
    const Rational scale = Rational(1) / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Determinant by the Berkowitz bordering recursion: O(n⁴) ring operations,
/// no divisions, hence valid over any commutative ring (zero divisors allowed).
template <class R>
[[nodiscard]] R det_division_free(const Matrix<R>& a) {
  if (a.rows() != a.cols()) throw ShapeError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return RingTraits<R>::one();
  // p holds the characteristic-polynomial coefficients of the leading r×r
  // principal submatrix, leading coefficient first.
  std::vector<R> p{RingTraits<R>::one(), -a(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    // Toeplitz column for the bordering step: t[k] = −(row · A^{k−2} · col).
    std::vector<R> t(r + 2, RingTraits<R>::zero());
    t[0] = RingTraits<R>::one();
    t[1] = -a(r, r);
    std::vector<R> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
    for (std::size_t k = 2; k <= r + 1; ++k) {
      R dot = RingTraits<R>::zero();
      for (std::size_t i = 0; i < r; ++i) {
        if (RingTraits<R>::is_zero(a(r, i)) || RingTraits<R>::is_zero(v[i])) continue;
        dot += a(r, i) * v[i];
      }
      t[k] = -dot;
      if (k == r + 1) break;
      std::vector<R> w(r, RingTraits<R>::zero());
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
          if (RingTraits<R>::is_zero(a(i, j)) || RingTraits<R>::is_zero(v[j])) continue;
          w[i] += a(i, j) * v[j];
        }
      }
      v = std::move(w);
    }
    std::vector<R> np(r + 2, RingTraits<R>::zero());
    for (std::size_t i = 0; i <= r + 1; ++i) {
      const std::size_t j_lo = (i > r + 1) ? i - (r + 1) : 0;
      const std::size_t j_hi = std::min(i, p.size() - 1);
      for (std::size_t j = j_lo; j <= j_hi; ++j) {
        if (RingTraits<R>::is_zero(p[j]) || RingTraits<R>::is_zero(t[i - j])) continue;
        np[i] += t[i - j] * p[j];
      }
    }
    p = std::move(np);
  }
  // char poly evaluated at 0: det = (−1)ⁿ · p[n].
  return (n % 2 == 0) ? p[n] : -p[n];
}

}  // namespace immgeo
