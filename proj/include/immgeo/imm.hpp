#pragma once
/// @file imm.hpp
/// @brief The iterated matrix multiplication polynomial and its exact calculus.
///
/// IMM(X₁, …, Xₙ) = tr(Xₙ ⋯ X₁) on n blocks of q×q variables.  Expanded in
/// coordinates it is Σ over cyclic index chains (ℓ₁, …, ℓₙ) of
/// Π_α (x_α)^{ℓ_{α+1}}_{ℓ_α}, homogeneous of degree n and linear in each block.
/// Per-entry linearity makes derivatives exact finite differences, which the
/// tests exploit as an independent oracle.

#include <cstddef>
#include <vector>

#include "immgeo/errors.hpp"
#include "immgeo/mat_tuple.hpp"
#include "immgeo/matrix.hpp"
#include "immgeo/rational.hpp"

namespace immgeo {

/// tr(Xₙ ⋯ X₁) by a single left-multiplying fold.
template <class R>
[[nodiscard]] R evaluate(const MatTuple<R>& x) {
  Matrix<R> p = x.block(1);
  for (int alpha = 2; alpha <= x.n(); ++alpha) p = x.block(alpha) * p;
  return p.trace();
}

/// Cache of all cyclic partial products of a tuple.
///
/// run(top, len) = X_top · X_{top−1} ⋯ X_{top−len+1} (indices cyclic, len ≤ n),
/// so run(n, n) is the full product and run(α−1, n−1) is the product of all
/// blocks except X_α in the order the gradient formula wants.
template <class R>
class ChainRuns {
 public:
  explicit ChainRuns(const MatTuple<R>& x) : n_(x.n()), q_(x.q()) {
    runs_.resize(static_cast<std::size_t>(n_));
    for (int a = 1; a <= n_; ++a) {
      auto& row = runs_[static_cast<std::size_t>(a - 1)];
      row.reserve(static_cast<std::size_t>(n_) + 1);
      row.push_back(Matrix<R>::identity(static_cast<std::size_t>(q_)));
      for (int len = 0; len < n_; ++len) {
        row.push_back(row.back() * x.block(a - len));
      }
    }
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int q() const { return q_; }

  /// Product of len consecutive blocks descending from X_{cyc(top)}; len ∈ [0, n].
  [[nodiscard]] const Matrix<R>& run(int top, int len) const {
    if (len < 0 || len > n_) throw InputError("chain run length outside [0, n]");
    return runs_[static_cast<std::size_t>(cyc(top, n_) - 1)][static_cast<std::size_t>(len)];
  }

  /// Product of all blocks except X_α: X_{α−1} ⋯ X₁ · Xₙ ⋯ X_{α+1}.
  [[nodiscard]] const Matrix<R>& omit(int alpha) const { return run(alpha - 1, n_ - 1); }

  [[nodiscard]] R evaluate() const { return run(n_, n_).trace(); }

 private:
  int n_;
  int q_;
  std::vector<std::vector<Matrix<R>>> runs_;
};

/// Gradient as a tuple of the same shape: block α holds, at position (i, j),
/// the partial with respect to (x_α)ⁱ_j.  Since IMM = tr(X_α · omit(α)), that
/// block is omit(α) transposed.
template <class R>
[[nodiscard]] MatTuple<R> gradient(const MatTuple<R>& x) {
  const ChainRuns<R> runs(x);
  MatTuple<R> g(x.n(), x.q());
  for (int alpha = 1; alpha <= x.n(); ++alpha) {
    g.block(alpha) = runs.omit(alpha).transpose();
  }
  return g;
}

/// A point is singular for the hypersurface {IMM = 0} iff the whole gradient
/// vanishes, i.e. every omitted product omit(α) is the zero matrix.
template <class R>
[[nodiscard]] bool is_singular_point(const MatTuple<R>& x) {
  const ChainRuns<R> runs(x);
  for (int alpha = 1; alpha <= x.n(); ++alpha) {
    if (!runs.omit(alpha).is_zero()) return false;
  }
  return true;
}

/// ∂²IMM / ∂u ∂v from precomputed chain runs.  Zero within a block (each block
/// enters linearly); for adjacent blocks one interior chain remains, for
/// distant blocks the trace splits into a product of the two chains between
/// them.
template <class R>
[[nodiscard]] R second_partial(const ChainRuns<R>& runs, const VarIndex& u, const VarIndex& v) {
  const int n = runs.n();
  const int q = runs.q();
  if (u.row < 1 || u.row > q || u.col < 1 || u.col > q || v.row < 1 || v.row > q || v.col < 1 ||
      v.col > q) {
    throw InputError("variable index outside the q x q block");
  }
  const int a = cyc(u.alpha, n);
  const int b = cyc(v.alpha, n);
  if (a == b) return RingTraits<R>::zero();
  if (cyc(b - a, n) == 1) {
    // v sits in the block directly above u: tr(E_u · M · E_v) with M the chain
    // X_{a−1} ⋯ X_{b+1} strictly between them (n − 2 factors).
    if (v.col != u.row) return RingTraits<R>::zero();
    return runs.run(a - 1, n - 2)(static_cast<std::size_t>(u.col - 1),
                                  static_cast<std::size_t>(v.row - 1));
  }
  if (cyc(a - b, n) == 1) {
    if (u.col != v.row) return RingTraits<R>::zero();
    return runs.run(b - 1, n - 2)(static_cast<std::size_t>(v.col - 1),
                                  static_cast<std::size_t>(u.row - 1));
  }
  // Distant blocks: the cycle breaks into the chain from b+1 up to a−1 and the
  // chain from a+1 up to b−1; the trace factors as a product of one entry of each.
  const int len_ab = cyc(a - b - 1, n);  // #factors strictly between b and a
  const int len_ba = cyc(b - a - 1, n);  // #factors strictly between a and b
  const R first = runs.run(a - 1, len_ab)(static_cast<std::size_t>(u.col - 1),
                                          static_cast<std::size_t>(v.row - 1));
  const R second = runs.run(b - 1, len_ba)(static_cast<std::size_t>(v.col - 1),
                                           static_cast<std::size_t>(u.row - 1));
  return first * second;
}

template <class R>
[[nodiscard]] R second_partial(const MatTuple<R>& x, const VarIndex& u, const VarIndex& v) {
  return second_partial(ChainRuns<R>(x), u, v);
}

/// Residuals cutting out the vanishing locus of all order-(n−2) partials of
/// IMM.  Differentiating away n−2 of the n linear slots leaves a quadratic in
/// the two surviving blocks: an entry of X_{α+1}·X_α when they are adjacent,
/// and a plain product of one entry from each when they are not (every other
/// order-(n−2) partial vanishes identically).  The point lies in the locus
/// iff every residual is zero.  Emitted adjacent-products first (α, then row,
/// then column), then entry products over non-adjacent pairs α < β.
template <class R>
[[nodiscard]] std::vector<R> jac_n2_residuals(const MatTuple<R>& x) {
  const int n = x.n();
  const int q = x.q();
  std::vector<R> out;
  for (int alpha = 1; alpha <= n; ++alpha) {
    const Matrix<R> prod = x.block(alpha + 1) * x.block(alpha);
    for (int t = 1; t <= q; ++t)
      for (int s = 1; s <= q; ++s)
        out.push_back(prod(static_cast<std::size_t>(t - 1), static_cast<std::size_t>(s - 1)));
  }
  for (int alpha = 1; alpha <= n; ++alpha) {
    for (int beta = alpha + 1; beta <= n; ++beta) {
      if (cyc(beta - alpha, n) == 1 || cyc(alpha - beta, n) == 1) continue;
      for (int t = 1; t <= q; ++t)
        for (int s = 1; s <= q; ++s)
          for (int r = 1; r <= q; ++r)
            for (int p = 1; p <= q; ++p)
              out.push_back(x.entry(VarIndex{beta, t, s}) * x.entry(VarIndex{alpha, r, p}));
    }
  }
  return out;
}

/// One monomial of the coordinate expansion: exactly one variable per block,
/// listed in block order; the coefficient is always 1.
struct Monomial {
  std::vector<VarIndex> factors;

  [[nodiscard]] friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// All qⁿ monomials of IMM, ordered by the underlying index chain (ℓ₁, …, ℓₙ)
/// in lexicographic order.  Factor α of chain ℓ is (x_α)^{ℓ_{α+1}}_{ℓ_α}.
/// Guarded: refuses instances with more than 10⁶ monomials.
[[nodiscard]] inline std::vector<Monomial> coordinate_expansion(int n, int q) {
  if (n < 1 || q < 1) throw InputError("coordinate expansion needs n >= 1 and q >= 1");
  Int count = 1;
  for (int i = 0; i < n; ++i) {
    count *= q;
    if (count > 1'000'000) {
      throw GuardExceeded("coordinate expansion would exceed 10^6 monomials");
    }
  }
  std::vector<Monomial> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> chain(static_cast<std::size_t>(n), 1);
  for (;;) {
    Monomial m;
    m.factors.reserve(static_cast<std::size_t>(n));
    for (int alpha = 1; alpha <= n; ++alpha) {
      const int upper = chain[static_cast<std::size_t>(cyc(alpha + 1, n) - 1)];
      const int lower = chain[static_cast<std::size_t>(alpha - 1)];
      m.factors.push_back(VarIndex{alpha, upper, lower});
    }
    out.push_back(std::move(m));
    // Odometer increment, last position fastest.
    int pos = n - 1;
    while (pos >= 0 && chain[static_cast<std::size_t>(pos)] == q) {
      chain[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++chain[static_cast<std::size_t>(pos)];
  }
  return out;
}

}  // namespace immgeo
