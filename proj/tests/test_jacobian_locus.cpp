#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "immgeo/matrix.hpp"

#include "immgeo/errors.hpp"
#include "immgeo/imm.hpp"
#include "immgeo/jacobian.hpp"
#include "immgeo/linalg.hpp"
#include "immgeo/mat_tuple.hpp"
#include "immgeo/quiver.hpp"
#include "immgeo/rational.hpp"
#include "immgeo/rng.hpp"

using namespace immgeo;

namespace {

/// Membership in the single component cut out at block position β with rank
/// split s: all other blocks zero, both rank bounds, and the broken product.
bool lies_in(const RationalTuple& x, int beta, int s) {
  const int n = x.n();
  const int q = x.q();
  for (int gamma = 1; gamma <= n; ++gamma) {
    if (gamma == cyc(beta - 1, n) || gamma == cyc(beta, n)) continue;
    if (!x.block(gamma).is_zero()) return false;
  }
  if (exact_rank(x.block(beta - 1)) > static_cast<std::size_t>(s)) return false;
  if (exact_rank(x.block(beta)) > static_cast<std::size_t>(q - s)) return false;
  return (x.block(beta) * x.block(beta - 1)).is_zero();
}

}  // namespace

TEST_CASE("component dimension formula and its symmetry") {
  CHECK(jac_dimension(2, 1) == 5);
  CHECK(jac_dimension(3, 1) == 11);
  CHECK(jac_dimension(3, 2) == 11);
  CHECK(jac_dimension(4, 2) == 20);
  // r = 0 and r = q leave a single free block: a linear space of dimension q².
  for (int q = 1; q <= 6; ++q) {
    CHECK(jac_dimension(q, 0) == static_cast<std::size_t>(q) * static_cast<std::size_t>(q));
    CHECK(jac_dimension(q, q) == static_cast<std::size_t>(q) * static_cast<std::size_t>(q));
  }
  // Swapping the split between the two blocks preserves the dimension.
  for (int q = 1; q <= 6; ++q) {
    for (int r = 0; r <= q; ++r) CHECK(jac_dimension(q, r) == jac_dimension(q, q - r));
  }
  CHECK_THROWS_AS((void)jac_dimension(2, -1), InputError);
  CHECK_THROWS_AS((void)jac_dimension(2, 3), InputError);
  CHECK_THROWS_AS((void)jac_dimension(0, 0), InputError);
}

TEST_CASE("representatives have the pinned matrix form") {
  // q = 2, r = 1 at block position α = 2: X₁ = E₁₁ and X₂ = E₁₂.
  const RationalTuple x = jac_representative(2, 1, 4, 2);
  CHECK(x.block(1)(0, 0) == Rational(1));
  CHECK(x.block(1)(0, 1) == Rational(0));
  CHECK(x.block(1)(1, 0) == Rational(0));
  CHECK(x.block(1)(1, 1) == Rational(0));
  CHECK(x.block(2)(0, 0) == Rational(0));
  CHECK(x.block(2)(0, 1) == Rational(1));
  CHECK(x.block(2)(1, 0) == Rational(0));
  CHECK(x.block(2)(1, 1) == Rational(0));
  CHECK(x.block(3).is_zero());
  CHECK(x.block(4).is_zero());
  CHECK(exact_rank(x.block(1)) == 1);
  CHECK(exact_rank(x.block(2)) == 1);
  CHECK((x.block(2) * x.block(1)).is_zero());
  CHECK(in_jac_locus(x));
  CHECK(is_singular_point(x));

  // The boundary splits degenerate to a single identity block.
  const RationalTuple lo = jac_representative(3, 0, 4, 2);
  CHECK(lo.block(2).is_zero());
  CHECK(lo.block(3).is_identity());
  const RationalTuple hi = jac_representative(1, 3, 3, 3);
  CHECK(hi.block(3).is_identity());
  CHECK(hi.block(1).is_zero());

  // Neighbouring boundary labels describe the same locus: same representative.
  for (int alpha = 1; alpha <= 5; ++alpha) {
    CHECK(jac_representative(alpha - 1, 0, 5, 3) == jac_representative(alpha, 3, 5, 3));
  }
  // The block position is cyclic.
  CHECK(jac_representative(0, 1, 4, 2) == jac_representative(4, 1, 4, 2));
  CHECK(jac_representative(7, 1, 4, 2) == jac_representative(3, 1, 4, 2));

  CHECK_THROWS_AS((void)jac_representative(1, 1, 2, 2), InputError);
  CHECK_THROWS_AS((void)jac_representative(1, 3, 4, 2), InputError);
  CHECK_THROWS_AS((void)jac_representative(1, -1, 4, 2), InputError);
}

TEST_CASE("component catalog has nq canonically labeled entries") {
  const auto comps = jac_components(4, 2);
  REQUIRE(comps.size() == 8);
  CHECK(comps[0].label == "W(1,1)");
  CHECK(comps[0].alpha == 1);
  CHECK(comps[0].r == 1);
  CHECK(comps[0].dim == 5);
  CHECK(comps[1].label == "W(1,2)");
  CHECK(comps[1].dim == 4);

  std::set<std::string> labels;
  for (const auto& c : comps) {
    labels.insert(c.label);
    CHECK(c.r >= 1);
    CHECK(c.r <= 2);
    CHECK(c.dim == jac_dimension(2, c.r));
    CHECK(c.representative == jac_representative(c.alpha, c.r, 4, 2));
    CHECK(in_jac_locus(c.representative));
    CHECK(lies_in(c.representative, c.alpha, c.r));
  }
  CHECK(labels.size() == comps.size());

  CHECK(jac_components(3, 3).size() == 9);
  for (const auto& [n, q] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{5, 2}, std::pair{3, 3},
                             std::pair{4, 3}, std::pair{5, 3}}) {
    CHECK(jac_components(n, q).size() == static_cast<std::size_t>(n) * static_cast<std::size_t>(q));
  }

  CHECK_THROWS_WITH_AS((void)jac_components(2, 2), "order-(n-2) locus components need n >= 3",
                       InputError);
  CHECK_THROWS_AS((void)jac_components(1, 2), InputError);
  CHECK_THROWS_AS((void)jac_components(3, 0), InputError);
}

TEST_CASE("no component contains another component's representative") {
  for (const auto& [n, q] : {std::pair{4, 2}, std::pair{3, 3}}) {
    const auto comps = jac_components(n, q);
    for (const auto& a : comps) {
      for (const auto& b : comps) {
        const bool same = a.alpha == b.alpha && a.r == b.r;
        CHECK(lies_in(a.representative, b.alpha, b.r) == same);
      }
    }
  }
}

TEST_CASE("chart parametrization produces the expected derivative matrix") {
  RatSampler sampler(2024);
  const ChartPoint pt = random_chart_point(3, 1, sampler);
  CHECK(pt.a.rows() == 2);
  CHECK(pt.a.cols() == 1);
  CHECK(pt.x_top.rows() == 1);
  CHECK(pt.x_top.cols() == 3);
  CHECK(pt.y_right.rows() == 3);
  CHECK(pt.y_right.cols() == 2);
  const auto jac = chart_jacobian(pt);
  CHECK(jac.rows() == 18);
  CHECK(jac.cols() == 11);  // 2·1 + 1·3 + 3·2 free coordinates

  // Hand-checkable rows: X(1,j) depends only on X′(1,j) with coefficient 1,
  // and X(2,j) = A(1,1)·X′(1,j) mixes the two groups.
  CHECK(jac(0, 2) == Rational(1));          // ∂X(1,1)/∂X′(1,1)
  CHECK(jac(3, 2) == pt.a(0, 0));           // ∂X(2,1)/∂X′(1,1)
  CHECK(jac(3, 0) == pt.x_top(0, 0));       // ∂X(2,1)/∂A(1,1)
  CHECK(jac(9, 0) == -pt.y_right(0, 0));    // ∂Y(1,1)/∂A(1,1)
  CHECK(jac(9, 5) == -pt.a(0, 0));          // ∂Y(1,1)/∂Y₂(1,1)
  CHECK(jac(10, 5) == Rational(1));         // ∂Y(1,2)/∂Y₂(1,1)

  ChartPoint bad{Matrix<Rational>(1, 1), Matrix<Rational>(1, 3), Matrix<Rational>(3, 1)};
  CHECK_THROWS_AS((void)chart_jacobian(bad), ShapeError);
}

TEST_CASE("chart rank oracle certifies every dimension up to q = 5") {
  for (int q = 1; q <= 5; ++q) {
    for (int r = 0; r <= q; ++r) {
      CHECK(jac_dim_oracle(q, r, 1000 + static_cast<std::uint64_t>(10 * q + r)) ==
            jac_dimension(q, r));
    }
  }
  // Degenerate splits collapse the chart onto the single free block.
  CHECK(jac_dim_oracle(4, 0, 7) == 16);
  CHECK(jac_dim_oracle(4, 4, 7) == 16);
  // Deterministic in the seed.
  CHECK(jac_dim_oracle(3, 1, 99) == jac_dim_oracle(3, 1, 99));
}

TEST_CASE("locus dimension: maximum over rank splits, attained at the middle") {
  CHECK(jacobian_locus_dim(3, 2) == 5);
  CHECK(jacobian_locus_dim(4, 3) == 11);
  CHECK(jacobian_locus_dim(3, 4) == 20);
  CHECK(jacobian_locus_dim(5, 5) == 31);
  for (int q = 1; q <= 6; ++q) {
    const std::size_t top = jacobian_locus_dim(3, q);
    CHECK(top == jac_dimension(q, q / 2));
    // (5/4)q² for even q, (5/4)q² − 1/4 for odd q.
    CHECK(4 * top == static_cast<std::size_t>(5 * q * q - q % 2));
  }
  CHECK_THROWS_AS((void)jacobian_locus_dim(2, 2), InputError);
}

TEST_CASE("singular strata meet the locus exactly when one adjacent pair survives") {
  // Only X₁ nonzero: lies in the locus (rank split 2 at block position 2).
  const RationalTuple one_block =
      realize(QuiverRep{4, 2, {{Interval{1, 2}, 2}, {Interval{3, 3}, 2}, {Interval{4, 4}, 2}}});
  CHECK(exact_rank(one_block.block(1)) == 2);
  CHECK(in_jac_locus(one_block));
  CHECK(lies_in(one_block, 2, 2));

  // X₁ and X₂ nonzero (adjacent pair) but with a nonzero composite X₂X₁:
  // singular, yet the product equations fail — the rank profile does not fit.
  const RationalTuple chain =
      realize(QuiverRep{4, 2, {{Interval{1, 3}, 2}, {Interval{4, 4}, 2}}});
  CHECK(is_singular_point(chain));
  CHECK_FALSE((chain.block(2) * chain.block(1)).is_zero());
  CHECK_FALSE(in_jac_locus(chain));

  // X₁ and X₃ nonzero (non-adjacent): every adjacent product vanishes, and
  // the entry-product family is what certifies non-membership.
  const RationalTuple halves =
      realize(QuiverRep{4, 2, {{Interval{1, 2}, 2}, {Interval{3, 4}, 2}}});
  CHECK(is_singular_point(halves));
  const auto res = jac_n2_residuals(halves);
  bool adjacent_all_zero = true;
  for (std::size_t k = 0; k < 16; ++k) {  // 4 block positions × q² entries
    if (!res[k].is_zero()) adjacent_all_zero = false;
  }
  CHECK(adjacent_all_zero);
  CHECK_FALSE(in_jac_locus(halves));

  // A maximal singular stratum with three nonzero blocks stays outside.
  const RationalTuple wide = realize(QuiverRep{
      4, 2,
      {{Interval{1, 3}, 1}, {Interval{2, 2}, 1}, {Interval{3, 1}, 1}, {Interval{4, 4}, 1}}});
  CHECK(is_singular_point(wide));
  CHECK_FALSE(in_jac_locus(wide));

  // On a 3-cycle the two loci coincide: every maximal singular stratum's
  // representative already satisfies all the product equations.
  for (const auto& comp : maximal_components(3, 2)) {
    CHECK(in_jac_locus(comp.representative));
  }
}
