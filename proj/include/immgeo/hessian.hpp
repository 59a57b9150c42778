#pragma once
/// @file hessian.hpp
/// @brief Hessian of IMM: exact assembly, the closed-form inverse at the
///        distinguished diagonal point, and the dual-variety dimension.
///
/// The distinguished point p has every block equal to D = diag(1, …, 1, ω)
/// with ωⁿ = −(q−1), so IMM(p) = (q−1) + ωⁿ = 0 exactly.  At p the Hessian is
/// cyclic block-Toeplitz with positionally diagonal blocks, and for n ≥ 3 with
/// aₙ = ((q−1)^{n−1} + (−1)ⁿ)/q ≠ 0 it has a closed-form inverse, which this
/// module builds and verifies against the honestly assembled Hessian, block
/// product by block product, over ℚ[t]/(tⁿ + (q−1)).
///
/// Index conventions (0-based storage, 1-based math):
///   row   ((α−1)q + (k−1))·q + (j−1)  differentiates by (x_α)ʲ_k,
///   column((β−1)q + (j′−1))·q + (k′−1) differentiates by (x_β)^{j′}_{k′};
/// under these orderings the assembled matrix is symmetric and the blocks at p
/// are diagonal in the positional sense (slot (k,ℓ) row meets slot (k,ℓ) column).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "immgeo/errors.hpp"
#include "immgeo/imm.hpp"
#include "immgeo/linalg.hpp"
#include "immgeo/mat_tuple.hpp"
#include "immgeo/matrix.hpp"
#include "immgeo/quotient.hpp"
#include "immgeo/rational.hpp"
#include "immgeo/rng.hpp"

namespace immgeo {

/// Row of the Hessian for ∂/∂(x_α)ʲ_k (all arguments 1-based).
[[nodiscard]] inline std::size_t hessian_row_index(int q, int alpha, int k, int j) {
  return (static_cast<std::size_t>(alpha - 1) * static_cast<std::size_t>(q) +
          static_cast<std::size_t>(k - 1)) *
             static_cast<std::size_t>(q) +
         static_cast<std::size_t>(j - 1);
}

/// Column of the Hessian for ∂/∂(x_β)^{j′}_{k′} (all arguments 1-based).
[[nodiscard]] inline std::size_t hessian_col_index(int q, int beta, int jp, int kp) {
  return (static_cast<std::size_t>(beta - 1) * static_cast<std::size_t>(q) +
          static_cast<std::size_t>(jp - 1)) *
             static_cast<std::size_t>(q) +
         static_cast<std::size_t>(kp - 1);
}

/// Exact Hessian of IMM at the given point, laid out by the module conventions.
template <class R>
[[nodiscard]] Matrix<R> hessian_at(const MatTuple<R>& x) {
  const int n = x.n();
  const int q = x.q();
  const ChainRuns<R> runs(x);
  const std::size_t dim = static_cast<std::size_t>(n) * static_cast<std::size_t>(q) *
                          static_cast<std::size_t>(q);
  Matrix<R> h(dim, dim);
  for (int alpha = 1; alpha <= n; ++alpha) {
    for (int k = 1; k <= q; ++k) {
      for (int j = 1; j <= q; ++j) {
        const std::size_t row = hessian_row_index(q, alpha, k, j);
        for (int beta = 1; beta <= n; ++beta) {
          for (int jp = 1; jp <= q; ++jp) {
            for (int kp = 1; kp <= q; ++kp) {
              h(row, hessian_col_index(q, beta, jp, kp)) =
                  second_partial(runs, VarIndex{alpha, j, k}, VarIndex{beta, jp, kp});
            }
          }
        }
      }
    }
  }
  return h;
}

/// The distinguished diagonal point: every block is diag(1, …, 1, ω).
[[nodiscard]] inline MatTuple<QuotientScalar> segre_point(int n, int q) {
  if (n < 1 || q < 1) throw InputError("distinguished point needs n >= 1 and q >= 1");
  const QuotientScalar w = QuotientScalar::omega(n, q);
  MatTuple<QuotientScalar> p(n, q);
  for (int alpha = 1; alpha <= n; ++alpha) {
    for (int i = 0; i < q; ++i) {
      p.block(alpha)(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) =
          (i + 1 == q) ? w : QuotientScalar(1);
    }
  }
  return p;
}

/// aₙ = ((q−1)^{n−1} + (−1)ⁿ)/q — always an integer; the divisibility is
/// asserted, not assumed.
[[nodiscard]] inline Int a_coeff(int n, int q) {
  if (n < 1 || q < 2) throw InputError("coefficient sequence needs n >= 1 and q >= 2");
  Int numerator = 1;
  for (int i = 0; i < n - 1; ++i) numerator *= q - 1;
  numerator += (n % 2 == 0) ? 1 : -1;
  if (numerator % q != 0) {
    throw InternalCheckFailure("coefficient numerator not divisible by q");
  }
  return numerator / q;
}

namespace detail {

/// Entry of the positionally diagonal closed-form inverse block C¹_β at slot
/// (k, ℓ); β, k, ℓ are 1-based and β ∈ [1, n].
[[nodiscard]] inline QuotientScalar inverse_block_entry(int n, int q, int beta, int k, int l) {
  const QuotientScalar w = QuotientScalar::omega(n, q);
  const Rational an(a_coeff(n, q));
  const Rational an1(a_coeff(n - 1, q));
  const bool k_top = (k == q);
  const bool l_top = (l == q);
  if (beta == 1) {
    if (!k_top && !l_top) return QuotientScalar(Rational(-(n - 2), n - 1));
    if (k_top && l_top) {
      return QuotientScalar(Rational(n - 2, (q - 1) * (n - 1))) * w.pow(2);
    }
    return QuotientScalar(an1 / an) * w;  // mixed slots, both orders
  }
  if (!k_top && !l_top) return QuotientScalar(Rational(1, n - 1));
  if (k_top && l_top) {
    return QuotientScalar(Rational(-1, (q - 1) * (n - 1))) * w.pow(2);
  }
  const Rational sign_over_an = Rational((n % 2 == 0) ? 1 : -1) / an;
  const int exponent = (n - 1) * (!k_top ? (n - beta) : (beta - 2));
  return QuotientScalar(sign_over_an) * w.pow(static_cast<unsigned>(exponent));
}

}  // namespace detail

/// Closed-form inverse of the Hessian at the distinguished point, assembled as
/// a full nq² × nq² matrix over ℚ[t]/(tⁿ + (q−1)).  Valid only for n ≥ 3 with
/// aₙ ≠ 0; outside that range the formula provably degenerates.
[[nodiscard]] inline Matrix<QuotientScalar> closed_form_inverse(int n, int q) {
  if (q < 2) throw InputError("closed-form inverse needs q >= 2");
  if (n < 3) throw DegenerateFormula("closed-form inverse requires n >= 3");
  if (a_coeff(n, q).is_zero()) {
    throw DegenerateFormula("closed-form inverse requires a_n != 0");
  }
  const std::size_t qq = static_cast<std::size_t>(q) * static_cast<std::size_t>(q);
  const std::size_t dim = static_cast<std::size_t>(n) * qq;
  Matrix<QuotientScalar> c(dim, dim);
  for (int alpha = 1; alpha <= n; ++alpha) {
    for (int beta = 1; beta <= n; ++beta) {
      const int delta = cyc(beta - alpha + 1, n);
      for (int k = 1; k <= q; ++k) {
        for (int l = 1; l <= q; ++l) {
          const std::size_t slot =
              static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(q) +
              static_cast<std::size_t>(l - 1);
          c(static_cast<std::size_t>(alpha - 1) * qq + slot,
            static_cast<std::size_t>(beta - 1) * qq + slot) =
              detail::inverse_block_entry(n, q, delta, k, l);
        }
      }
    }
  }
  return c;
}

namespace detail {

/// q² × q² block (block_row, block_col) of an n·q²-dimensional matrix.
template <class R>
[[nodiscard]] Matrix<R> extract_block(const Matrix<R>& m, int q, int block_row, int block_col) {
  const std::size_t qq = static_cast<std::size_t>(q) * static_cast<std::size_t>(q);
  Matrix<R> b(qq, qq);
  const std::size_t r0 = static_cast<std::size_t>(block_row - 1) * qq;
  const std::size_t c0 = static_cast<std::size_t>(block_col - 1) * qq;
  for (std::size_t i = 0; i < qq; ++i) {
    for (std::size_t j = 0; j < qq; ++j) b(i, j) = m(r0 + i, c0 + j);
  }
  return b;
}

}  // namespace detail

/// Builds the Hessian honestly at the distinguished point, hard-checks its
/// cyclic block-Toeplitz structure, and verifies H(p) · C = Id block row by
/// block row against the closed form.  Returns true iff the product is exactly
/// the identity.
[[nodiscard]] inline bool verify_hessian_inverse(int n, int q) {
  const Matrix<QuotientScalar> h = hessian_at(segre_point(n, q));
  const std::size_t qq = static_cast<std::size_t>(q) * static_cast<std::size_t>(q);

  // Structure first: block (α, β) must equal block (1, β−α+1) cyclically.
  for (int alpha = 1; alpha <= n; ++alpha) {
    for (int beta = 1; beta <= n; ++beta) {
      if (detail::extract_block(h, q, alpha, beta) !=
          detail::extract_block(h, q, 1, cyc(beta - alpha + 1, n))) {
        throw InternalCheckFailure("Hessian at the distinguished point is not block-Toeplitz");
      }
    }
  }

  const Matrix<QuotientScalar> c = closed_form_inverse(n, q);
  // By the Toeplitz structure it suffices to check the first block row of H·C.
  for (int beta = 1; beta <= n; ++beta) {
    Matrix<QuotientScalar> sum(qq, qq);
    for (int gamma = 1; gamma <= n; ++gamma) {
      sum = sum + detail::extract_block(h, q, 1, gamma) *
                      detail::extract_block(c, q, gamma, beta);
    }
    if (beta == 1 ? !sum.is_identity() : !sum.is_zero()) return false;
  }
  return true;
}

/// Determinant of the Hessian at the distinguished point (division-free, valid
/// in the quotient ring) together with its exact unit certification.  Cost is
/// O((nq²)⁴) ring operations — fine for the desk-scale instances this targets.
struct HessianUnitCheck {
  QuotientScalar det;
  bool is_unit = false;
};

[[nodiscard]] inline HessianUnitCheck hessian_unit_check(int n, int q) {
  HessianUnitCheck out;
  out.det = det_division_free(hessian_at(segre_point(n, q)));
  out.is_unit = out.det.unit_check().is_unit;
  return out;
}

/// Random rational point on {IMM = 0} with nonvanishing gradient.  One block-1
/// entry with nonzero gradient coefficient is solved for exactly; both the
/// membership and the smoothness are re-verified before returning.
[[nodiscard]] inline RationalTuple sample_hypersurface_point(int n, int q, RatSampler& sampler) {
  if (n < 1 || q < 1) throw InputError("hypersurface sampling needs n >= 1 and q >= 1");
  for (int attempt = 0; attempt < 64; ++attempt) {
    RationalTuple x = random_tuple(n, q, sampler);
    const ChainRuns<Rational> runs(x);
    // f is linear in each entry: f = c·e + (f with e = 0), c from the gradient.
    const Matrix<Rational>& m = runs.omit(1);
    int pick_i = 0, pick_j = 0;
    for (int i = 1; i <= q && pick_i == 0; ++i) {
      for (int j = 1; j <= q; ++j) {
        if (!m(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)).is_zero()) {
          pick_i = i;
          pick_j = j;
          break;
        }
      }
    }
    if (pick_i == 0) continue;  // block-1 gradient vanished; resample
    const Rational coeff =
        m(static_cast<std::size_t>(pick_j - 1), static_cast<std::size_t>(pick_i - 1));
    RationalTuple zeroed = x;
    zeroed.entry({1, pick_i, pick_j}) = Rational(0);
    x.entry({1, pick_i, pick_j}) = -evaluate(zeroed) / coeff;
    if (evaluate(x) != Rational(0)) {
      throw InternalCheckFailure("solved hypersurface point does not evaluate to zero");
    }
    if (is_singular_point(x)) continue;  // astronomically unlikely; resample
    return x;
  }
  throw InternalCheckFailure("failed to sample a smooth hypersurface point");
}

/// Dimension of the dual variety of {IMM = 0}: max over sampled smooth points
/// of rank H − 2.  The rank at any smooth point never exceeds the generic
/// value, so the maximum over trials is a certified lower bound that is exact
/// with overwhelming probability.  Guarded: nq² ≤ 200; needs n ≥ 2 (for n = 1
/// the polynomial is linear and its Hessian vanishes identically).
[[nodiscard]] inline std::size_t dual_dimension(int n, int q, int trials, std::uint64_t seed) {
  if (n < 2) throw InputError("dual dimension needs n >= 2; the n = 1 form is linear");
  if (q < 2) throw InputError("dual dimension needs q >= 2");
  if (trials < 1) throw InputError("dual dimension needs at least one trial");
  if (static_cast<long long>(n) * q * q > 200) {
    throw GuardExceeded("Hessian rank computation guarded at nq^2 <= 200");
  }
  RatSampler sampler(seed);
  std::size_t best = 0;
  for (int t = 0; t < trials; ++t) {
    const RationalTuple x = sample_hypersurface_point(n, q, sampler);
    best = std::max(best, exact_rank(hessian_at(x)));
  }
  if (best < 2) {
    throw InternalCheckFailure("Hessian rank below 2 at a smooth hypersurface point");
  }
  return best - 2;
}

}  // namespace immgeo
