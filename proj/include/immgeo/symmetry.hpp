#pragma once
/// @file symmetry.hpp
/// @brief The symmetry group of IMM: block-wise conjugations, cyclic shifts,
///        the transpose reversal, and the induced Lie-algebra action.
///
/// Generators and their action on tuples:
///   φ(g₁, …, gₙ):  X_α ↦ g_{α+1} · X_α · g_α⁻¹   (product telescopes),
///   ρᵏ:            X_α ↦ X_{α+k}                  (trace is cyclic),
///   τ:             X_α ↦ X_{n+1−α}ᵀ               (reversal matches transposition).
/// Arbitrary words in these generators are supported; invariance of IMM under
/// every such word is checked exactly at rational points.

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "immgeo/errors.hpp"
#include "immgeo/imm.hpp"
#include "immgeo/linalg.hpp"
#include "immgeo/mat_tuple.hpp"
#include "immgeo/matrix.hpp"
#include "immgeo/rational.hpp"
#include "immgeo/rng.hpp"

namespace immgeo {

class GroupElement {
 public:
  /// Block-wise conjugation by invertible g₁, …, gₙ (inverses are computed
  /// eagerly, so non-invertible input fails fast with NotInvertible).
  [[nodiscard]] static GroupElement phi(std::vector<Matrix<Rational>> gs) {
    if (gs.empty()) throw InputError("conjugation needs at least one matrix");
    PhiData d;
    d.ginv.reserve(gs.size());
    for (const auto& g : gs) {
      if (g.rows() != g.cols() || g.rows() != gs[0].rows()) {
        throw InputError("conjugation matrices must be square and equally sized");
      }
      d.ginv.push_back(inverse(g));
    }
    d.g = std::move(gs);
    return GroupElement(std::move(d));
  }

  /// Cyclic relabeling X_α ↦ X_{α+k}; any integer k is reduced cyclically.
  [[nodiscard]] static GroupElement cyclic_shift(int k) { return GroupElement(ShiftData{k}); }

  /// X_α ↦ X_{n+1−α}ᵀ: reverses the block order while transposing each block.
  [[nodiscard]] static GroupElement transpose_reversal() { return GroupElement(TauData{}); }

  /// Composite of parts applied left to right: word({a, b}) acts as x ↦ b(a(x)).
  [[nodiscard]] static GroupElement word(std::vector<GroupElement> parts) {
    return GroupElement(WordData{std::move(parts)});
  }

  [[nodiscard]] RationalTuple apply(const RationalTuple& x) const {
    return std::visit([&x](const auto& d) { return apply_impl(d, x); }, data_);
  }

 private:
  struct PhiData {
    std::vector<Matrix<Rational>> g;
    std::vector<Matrix<Rational>> ginv;
  };
  struct ShiftData {
    int k;
  };
  struct TauData {};
  struct WordData {
    std::vector<GroupElement> parts;
  };

  template <class D>
  explicit GroupElement(D d) : data_(std::move(d)) {}

  [[nodiscard]] static RationalTuple apply_impl(const PhiData& d, const RationalTuple& x) {
    const int n = x.n();
    if (static_cast<std::size_t>(n) != d.g.size() ||
        d.g[0].rows() != static_cast<std::size_t>(x.q())) {
      throw InputError("conjugation tuple shape differs from the point's shape");
    }
    RationalTuple y(n, x.q());
    for (int alpha = 1; alpha <= n; ++alpha) {
      const auto& up = d.g[static_cast<std::size_t>(cyc(alpha + 1, n) - 1)];
      const auto& down = d.ginv[static_cast<std::size_t>(alpha - 1)];
      y.block(alpha) = up * x.block(alpha) * down;
    }
    return y;
  }

  [[nodiscard]] static RationalTuple apply_impl(const ShiftData& d, const RationalTuple& x) {
    RationalTuple y(x.n(), x.q());
    for (int alpha = 1; alpha <= x.n(); ++alpha) y.block(alpha) = x.block(alpha + d.k);
    return y;
  }

  [[nodiscard]] static RationalTuple apply_impl(const TauData&, const RationalTuple& x) {
    RationalTuple y(x.n(), x.q());
    for (int alpha = 1; alpha <= x.n(); ++alpha) {
      y.block(alpha) = x.block(x.n() + 1 - alpha).transpose();
    }
    return y;
  }

  [[nodiscard]] static RationalTuple apply_impl(const WordData& d, const RationalTuple& x) {
    RationalTuple y = x;
    for (const auto& part : d.parts) y = part.apply(y);
    return y;
  }

  std::variant<PhiData, ShiftData, TauData, WordData> data_;
};

/// Exact invariance of IMM under one group element at one point.
[[nodiscard]] inline bool check_invariance(const GroupElement& e, const RationalTuple& x) {
  return evaluate(e.apply(x)) == evaluate(x);
}

/// Transposes a single block in place of a genuine symmetry: a deliberate
/// non-symmetry used as a negative control (for n ≥ 3 it changes the value of
/// IMM at generic points).
[[nodiscard]] inline RationalTuple slot_transpose(const RationalTuple& x, int alpha) {
  RationalTuple y = x;
  y.block(alpha) = y.block(alpha).transpose();
  return y;
}

/// Random word of the given length in the generators φ, ρ, τ, with fresh
/// random invertible conjugation tuples for each φ factor.
[[nodiscard]] inline GroupElement random_group_word(int n, int q, RatSampler& sampler,
                                                    int length) {
  if (n < 1 || q < 1 || length < 1) throw InputError("random word needs n, q, length >= 1");
  std::vector<GroupElement> parts;
  parts.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    switch (sampler.index(3)) {
      case 0: {
        std::vector<Matrix<Rational>> gs;
        gs.reserve(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
          gs.push_back(sampler.invertible_matrix(static_cast<std::size_t>(q), 3, 2));
        }
        parts.push_back(GroupElement::phi(std::move(gs)));
        break;
      }
      case 1:
        parts.push_back(GroupElement::cyclic_shift(sampler.integer_in(1, n)));
        break;
      default:
        parts.push_back(GroupElement::transpose_reversal());
        break;
    }
  }
  return GroupElement::word(std::move(parts));
}

/// Directional derivative of IMM along the infinitesimal conjugation that acts
/// on slot α by L: both substituted terms are equal as polynomials, so the
/// difference vanishes identically — verified here exactly at a point.
[[nodiscard]] inline Rational lie_derivative(const RationalTuple& x, int alpha,
                                             const Matrix<Rational>& L) {
  if (L.rows() != static_cast<std::size_t>(x.q()) || L.cols() != L.rows()) {
    throw InputError("direction matrix must be q x q");
  }
  RationalTuple upper = x;
  upper.block(alpha) = x.block(alpha) * L;
  RationalTuple lower = x;
  lower.block(alpha - 1) = L * x.block(alpha - 1);
  return evaluate(upper) - evaluate(lower);
}

/// One of the two terms of lie_derivative alone — generically nonzero, used as
/// the negative control that the cancellation above is not vacuous.
[[nodiscard]] inline Rational lie_derivative_unbalanced(const RationalTuple& x, int alpha,
                                                        const Matrix<Rational>& L) {
  if (L.rows() != static_cast<std::size_t>(x.q()) || L.cols() != L.rows()) {
    throw InputError("direction matrix must be q x q");
  }
  RationalTuple upper = x;
  upper.block(alpha) = x.block(alpha) * L;
  return evaluate(upper);
}

namespace detail {

[[nodiscard]] inline Int binomial(int a, int b) {
  if (b < 0 || b > a) return 0;
  Int num = 1, den = 1;
  for (int i = 0; i < b; ++i) {
    num *= a - i;
    den *= i + 1;
  }
  return num / den;
}

/// Non-decreasing index sequences of the given size over symbols [0, m):
/// the monomial basis of Symᵏ of an m-dimensional space, in lexicographic order.
[[nodiscard]] inline std::vector<std::vector<int>> all_multisets(int size, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(size), 0);
  for (;;) {
    out.push_back(cur);
    int pos = size - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == m - 1) --pos;
    if (pos < 0) break;
    const int next = cur[static_cast<std::size_t>(pos)] + 1;
    for (int i = pos; i < size; ++i) cur[static_cast<std::size_t>(i)] = next;
  }
  return out;
}

}  // namespace detail

/// Dimension of the space of polynomials of the given multidegree annihilated
/// by the whole infinitesimal conjugation action.
///
/// The n·q² operators dφ_α(E_uv) are materialized on the monomial basis of
/// ⊗_α Sym^{a_α}(block α) and their rows are absorbed into one incremental
/// row echelon; the answer is the nullity of the stacked system.  Expected to
/// be 1 exactly at multidegree (1, …, 1) — the line spanned by IMM — and 0
/// elsewhere.  Guarded: the basis may not exceed 10⁴ monomials.
[[nodiscard]] inline std::size_t invariant_space_dim(int n, int q,
                                                     const std::vector<int>& multidegree) {
  if (n < 1 || q < 1) throw InputError("invariant space needs n >= 1 and q >= 1");
  if (multidegree.size() != static_cast<std::size_t>(n)) {
    throw InputError("multidegree must list one entry per block");
  }
  int total = 0;
  for (int a : multidegree) {
    if (a < 0) throw InputError("multidegree entries must be nonnegative");
    total += a;
  }
  if (total != n) throw InputError("multidegree entries must sum to n");

  Int dim_bound = 1;
  for (int alpha = 0; alpha < n; ++alpha) {
    dim_bound *= detail::binomial(q * q + multidegree[static_cast<std::size_t>(alpha)] - 1,
                                  multidegree[static_cast<std::size_t>(alpha)]);
    if (dim_bound > 10'000) throw GuardExceeded("monomial basis would exceed 10^4 elements");
  }

  // Per-block monomial bases and index lookups.
  std::vector<std::vector<std::vector<int>>> basis(static_cast<std::size_t>(n));
  std::vector<std::map<std::vector<int>, int>> lookup(static_cast<std::size_t>(n));
  std::vector<std::size_t> block_dim(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) {
    basis[static_cast<std::size_t>(b)] =
        detail::all_multisets(multidegree[static_cast<std::size_t>(b)], q * q);
    block_dim[static_cast<std::size_t>(b)] = basis[static_cast<std::size_t>(b)].size();
    for (std::size_t i = 0; i < basis[static_cast<std::size_t>(b)].size(); ++i) {
      lookup[static_cast<std::size_t>(b)][basis[static_cast<std::size_t>(b)][i]] =
          static_cast<int>(i);
    }
  }
  std::size_t d = 1;
  for (int b = 0; b < n; ++b) d *= block_dim[static_cast<std::size_t>(b)];

  // Global index = mixed radix over per-block indices, block 1 most significant.
  std::vector<int> local(static_cast<std::size_t>(n), 0);
  const auto global_index = [&](const std::vector<int>& loc) {
    std::size_t g = 0;
    for (int b = 0; b < n; ++b) {
      g = g * block_dim[static_cast<std::size_t>(b)] +
          static_cast<std::size_t>(loc[static_cast<std::size_t>(b)]);
    }
    return g;
  };

  // Variables of one block are indexed (i−1)·q + (j−1) for (x)ⁱ_j.
  RowEchelon echelon(d);
  for (int alpha = 1; alpha <= n; ++alpha) {
    for (int u = 1; u <= q; ++u) {
      for (int v = 1; v <= q; ++v) {
        // Sparse rows of the operator dφ_α(E_uv) on the global basis:
        // T acts on block α by (x_α)ⁱ_j ↦ [j=v]·(x_α)ⁱ_u and on block α−1 by
        // (x_{α−1})ⁱ_j ↦ −[i=u]·(x_{α−1})ᵛ_j, extended as a derivation.
        std::vector<std::map<std::size_t, Rational>> rows(d);
        const int block_a = cyc(alpha, n) - 1;      // 0-based block the first rule touches
        const int block_b = cyc(alpha - 1, n) - 1;  // 0-based block the second rule touches

        const auto add_terms = [&](int block, bool first_rule) {
          const auto& bbasis = basis[static_cast<std::size_t>(block)];
          auto& blookup = lookup[static_cast<std::size_t>(block)];
          // Enumerate all global monomials by their per-block local indices.
          std::fill(local.begin(), local.end(), 0);
          for (;;) {
            const std::size_t col = global_index(local);
            const auto& mset = bbasis[static_cast<std::size_t>(
                local[static_cast<std::size_t>(block)])];
            for (std::size_t pos = 0; pos < mset.size(); ++pos) {
              if (pos > 0 && mset[pos] == mset[pos - 1]) continue;  // distinct vars once
              int multiplicity = 0;
              for (int w : mset) multiplicity += w == mset[pos];
              const int i = mset[pos] / q + 1;  // superscript of the variable
              const int j = mset[pos] % q + 1;  // subscript of the variable
              int image_var = -1;
              int sign = 1;
              if (first_rule) {
                if (j == v) image_var = (i - 1) * q + (u - 1);
              } else {
                if (i == u) {
                  image_var = (v - 1) * q + (j - 1);
                  sign = -1;
                }
              }
              if (image_var < 0) continue;
              std::vector<int> image = mset;
              image[pos] = image_var;
              std::sort(image.begin(), image.end());
              std::vector<int> image_local = local;
              image_local[static_cast<std::size_t>(block)] = blookup.at(image);
              rows[global_index(image_local)][col] += Rational(sign * multiplicity);
            }
            // Odometer over all blocks, last block fastest.
            int b = n - 1;
            while (b >= 0 && local[static_cast<std::size_t>(b)] ==
                                 static_cast<int>(block_dim[static_cast<std::size_t>(b)]) - 1) {
              local[static_cast<std::size_t>(b)] = 0;
              --b;
            }
            if (b < 0) break;
            ++local[static_cast<std::size_t>(b)];
          }
        };

        add_terms(block_a, /*first_rule=*/true);
        add_terms(block_b, /*first_rule=*/false);  // n = 1 folds both onto block 1

        for (const auto& sparse_row : rows) {
          if (sparse_row.empty()) continue;
          std::vector<Rational> dense(d, Rational(0));
          for (const auto& [c, val] : sparse_row) dense[c] = val;
          (void)echelon.absorb(std::move(dense));
        }
      }
    }
  }
  return d - echelon.rank();
}

}  // namespace immgeo
