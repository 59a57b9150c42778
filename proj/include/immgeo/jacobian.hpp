#pragma once
/// @file jacobian.hpp
/// @brief Components of the locus where all order-(n−2) partials of IMM vanish.
///
/// Differentiating IMM = tr(Xₙ⋯X₁) by n−2 of its n linear slots leaves a
/// quadratic in the two surviving blocks, so the locus 𝒲 where every
/// order-(n−2) partial vanishes is cut out by the residual list of
/// jac_n2_residuals: all entries of X_{α+1}X_α, plus all entry products over
/// non-adjacent block pairs.  The product equations force every block outside
/// a single adjacent pair {α−1, α} to vanish, and 𝒲 decomposes into the
/// irreducible pieces
///
///   𝒲_{α,r} = { X_β = 0 for β ∉ {α−1, α},  rk X_{α−1} ≤ r,
///               rk X_α ≤ q − r,  X_α X_{α−1} = 0 },
///
/// one per block position α and rank split 0 ≤ r ≤ q, of dimension
/// q² + rq − r².  Neighbouring labels overlap at the boundary splits —
/// 𝒲_{α−1,0} = 𝒲_{α,q} is the linear space where only X_{α−1} survives — so
/// the canonical catalog keeps 1 ≤ r ≤ q and has exactly nq entries.
///
/// The dimension formula is certified by an independent oracle: near a point
/// with both rank bounds tight, 𝒲_{α,r} is the image of the chart
///   (A, X′, Y₂) ↦ (X, Y) = ([X′; A·X′], [−Y₂·A | Y₂]),
/// whose q² + rq − r² parameters give Y·X = (−Y₂A + Y₂A)·X′ = 0 identically;
/// the exact rank of its first-derivative matrix at a random rational chart
/// point equals the component dimension.

#include <cstddef>
#include <cstdint>

#include <algorithm>
#include <string>
#include <vector>

#include "immgeo/errors.hpp"
#include "immgeo/imm.hpp"
#include "immgeo/linalg.hpp"
#include "immgeo/mat_tuple.hpp"
#include "immgeo/matrix.hpp"
#include "immgeo/rational.hpp"
#include "immgeo/rng.hpp"

namespace immgeo {

/// dim 𝒲_{α,r} = q² + rq − r² (independent of α and of n).
[[nodiscard]] inline std::size_t jac_dimension(int q, int r) {
  if (q < 1) throw InputError("rank-split dimension needs q >= 1");
  if (r < 0 || r > q) throw InputError("rank split must satisfy 0 <= r <= q");
  const long long d = static_cast<long long>(q) * q + static_cast<long long>(r) * (q - r);
  return static_cast<std::size_t>(d);
}

/// Smooth point of 𝒲_{α,r} with both rank bounds tight: X_{α−1} = diag(I_r, 0)
/// and X_α carrying I_{q−r} in its top rows and last q − r columns, so the
/// first r columns of X_α vanish and X_α·X_{α−1} = 0.  All other blocks zero.
[[nodiscard]] inline RationalTuple jac_representative(int alpha, int r, int n, int q) {
  if (n < 3) throw InputError("order-(n-2) locus components need n >= 3");
  if (q < 1) throw InputError("representative needs q >= 1");
  if (r < 0 || r > q) throw InputError("rank split must satisfy 0 <= r <= q");
  RationalTuple x(n, q);
  for (int i = 1; i <= r; ++i) x.entry(VarIndex{alpha - 1, i, i}) = Rational(1);
  for (int i = 1; i <= q - r; ++i) x.entry(VarIndex{alpha, i, r + i}) = Rational(1);
  return x;
}

/// One irreducible component of the order-(n−2) vanishing locus.
struct JacComponent {
  int alpha = 1;    ///< block position: the surviving pair is {α−1, α}
  int r = 1;        ///< rank split, canonical range 1..q
  std::size_t dim = 0;
  RationalTuple representative;
  std::string label;  ///< "W(α,r)"
};

/// All nq components under canonical labels (α, r) with 1 ≤ r ≤ q, ordered by
/// α then r.  Re-verifies the construction before returning: each
/// representative has every residual equal to zero and both rank bounds
/// tight, and the boundary identification 𝒲_{α−1,0} = 𝒲_{α,q} holds as an
/// equality of representatives.
[[nodiscard]] inline std::vector<JacComponent> jac_components(int n, int q) {
  if (n < 3) throw InputError("order-(n-2) locus components need n >= 3");
  if (q < 1) throw InputError("component catalog needs q >= 1");
  std::vector<JacComponent> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(q));
  for (int alpha = 1; alpha <= n; ++alpha) {
    if (!(jac_representative(alpha - 1, 0, n, q) == jac_representative(alpha, q, n, q))) {
      throw InternalCheckFailure("boundary rank splits do not label the same component");
    }
    for (int r = 1; r <= q; ++r) {
      RationalTuple rep = jac_representative(alpha, r, n, q);
      for (const Rational& v : jac_n2_residuals(rep)) {
        if (!v.is_zero()) throw InternalCheckFailure("component representative has a nonzero residual");
      }
      if (exact_rank(rep.block(alpha - 1)) != static_cast<std::size_t>(r) ||
          exact_rank(rep.block(alpha)) != static_cast<std::size_t>(q - r)) {
        throw InternalCheckFailure("component representative rank bounds are not tight");
      }
      std::string label = "W(" + std::to_string(alpha) + "," + std::to_string(r) + ")";
      out.push_back(JacComponent{alpha, r, jac_dimension(q, r), std::move(rep), std::move(label)});
    }
  }
  return out;
}

/// Free coordinates of the chart (A, X′, Y₂) ↦ ([X′; A·X′], [−Y₂·A | Y₂]):
/// A picks the chart of the Grassmannian of r-planes spanned by [I_r; A],
/// x_top is the first r rows of X, and y_right the last q − r columns of Y.
struct ChartPoint {
  Matrix<Rational> a;        ///< (q−r) × r
  Matrix<Rational> x_top;    ///< r × q
  Matrix<Rational> y_right;  ///< q × (q−r)
};

[[nodiscard]] inline ChartPoint random_chart_point(int q, int r, RatSampler& sampler) {
  if (q < 1) throw InputError("chart point needs q >= 1");
  if (r < 0 || r > q) throw InputError("rank split must satisfy 0 <= r <= q");
  const auto qs = static_cast<std::size_t>(q);
  const auto rs = static_cast<std::size_t>(r);
  return ChartPoint{sampler.rational_matrix(qs - rs, rs), sampler.rational_matrix(rs, qs),
                    sampler.rational_matrix(qs, qs - rs)};
}

/// First-derivative matrix of the chart at the given point: one row per entry
/// of (X, Y) in row-major order (X first), one column per free coordinate
/// (A, then X′, then Y₂, each row-major).  Rows of X: row i ≤ r is X′ᵢ
/// directly; row r + i is A_{i,·}·X′, contributing X′(k,j) against A(i,k) and
/// A(i,k) against X′(k,j).  Columns of Y: column r + k is (Y₂)_{·,k} directly;
/// column j ≤ r is −Y₂·A_{·,j}, contributing −A(k,j) against Y₂(i,k) and
/// −Y₂(i,k) against A(k,j).
[[nodiscard]] inline Matrix<Rational> chart_jacobian(const ChartPoint& pt) {
  const std::size_t rs = pt.x_top.rows();
  const std::size_t qs = pt.x_top.cols();
  if (pt.a.rows() != qs - rs || pt.a.cols() != rs || pt.y_right.rows() != qs ||
      pt.y_right.cols() != qs - rs) {
    throw ShapeError("chart point blocks have inconsistent shapes");
  }
  const std::size_t n_a = (qs - rs) * rs;
  const std::size_t n_x = rs * qs;
  const std::size_t n_y = qs * (qs - rs);
  const auto col_a = [&](std::size_t i, std::size_t k) { return i * rs + k; };
  const auto col_x = [&](std::size_t k, std::size_t j) { return n_a + k * qs + j; };
  const auto col_y = [&](std::size_t i, std::size_t k) { return n_a + n_x + i * (qs - rs) + k; };
  Matrix<Rational> jac(2 * qs * qs, n_a + n_x + n_y);
  for (std::size_t i = 0; i < qs; ++i) {
    for (std::size_t j = 0; j < qs; ++j) {
      const std::size_t row_x = i * qs + j;
      if (i < rs) {
        jac(row_x, col_x(i, j)) = Rational(1);
      } else {
        for (std::size_t k = 0; k < rs; ++k) {
          jac(row_x, col_a(i - rs, k)) = pt.x_top(k, j);
          jac(row_x, col_x(k, j)) = pt.a(i - rs, k);
        }
      }
      const std::size_t row_y = qs * qs + i * qs + j;
      if (j < rs) {
        for (std::size_t k = 0; k < qs - rs; ++k) {
          jac(row_y, col_y(i, k)) = -pt.a(k, j);
          jac(row_y, col_a(k, j)) = -pt.y_right(i, k);
        }
      } else {
        jac(row_y, col_y(i, j - rs)) = Rational(1);
      }
    }
  }
  return jac;
}

/// Independent certificate for jac_dimension: exact rank of the chart's
/// first-derivative matrix at a random rational point.  The rank never
/// exceeds the parameter count q² + rq − r², and semicontinuity only lets it
/// drop below the generic value on special points, so sampling is retried
/// when that happens and the best rank found is returned.
[[nodiscard]] inline std::size_t jac_dim_oracle(int q, int r, std::uint64_t seed) {
  const std::size_t target = jac_dimension(q, r);
  RatSampler sampler(seed);
  std::size_t best = 0;
  for (int attempt = 0; attempt < 3; ++attempt) {
    const std::size_t rank = exact_rank(chart_jacobian(random_chart_point(q, r, sampler)));
    if (rank > best) best = rank;
    if (best == target) break;
  }
  return best;
}

/// dim 𝒲 = max_r dim 𝒲_{α,r} = (5/4)q² for even q and (5/4)q² − 1/4 for odd
/// q, attained at r = ⌊q/2⌋.
[[nodiscard]] inline std::size_t jacobian_locus_dim(int n, int q) {
  if (n < 3) throw InputError("order-(n-2) locus components need n >= 3");
  if (q < 1) throw InputError("locus dimension needs q >= 1");
  std::size_t best = 0;
  for (int r = 0; r <= q; ++r) best = std::max(best, jac_dimension(q, r));
  return best;
}

/// A point lies in the order-(n−2) vanishing locus iff every residual is zero.
[[nodiscard]] inline bool in_jac_locus(const RationalTuple& x) {
  for (const Rational& v : jac_n2_residuals(x)) {
    if (!v.is_zero()) return false;
  }
  return true;
}

}  // namespace immgeo
