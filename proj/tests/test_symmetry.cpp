#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "immgeo/imm.hpp"
#include "immgeo/mat_tuple.hpp"
#include "immgeo/rng.hpp"
#include "immgeo/symmetry.hpp"

using namespace immgeo;

namespace {

std::vector<Matrix<Rational>> random_conjugators(int n, int q, RatSampler& sampler) {
  std::vector<Matrix<Rational>> gs;
  gs.reserve(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    gs.push_back(sampler.invertible_matrix(static_cast<std::size_t>(q), 3, 2));
  }
  return gs;
}

}  // namespace

TEST_CASE("block-wise conjugation leaves IMM invariant") {
  RatSampler sampler(101);
  for (const auto& [n, q] : {std::pair{1, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{4, 3}}) {
    const GroupElement e = GroupElement::phi(random_conjugators(n, q, sampler));
    for (int trial = 0; trial < 3; ++trial) {
      const RationalTuple x = random_tuple(n, q, sampler);
      CHECK(check_invariance(e, x));
    }
  }
}

TEST_CASE("cyclic shifts and the transpose reversal leave IMM invariant") {
  RatSampler sampler(102);
  for (const auto& [n, q] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{5, 2}}) {
    for (int k = 0; k <= n; ++k) {
      const GroupElement rho = GroupElement::cyclic_shift(k);
      const RationalTuple x = random_tuple(n, q, sampler);
      CHECK(check_invariance(rho, x));
    }
    const GroupElement tau = GroupElement::transpose_reversal();
    const RationalTuple y = random_tuple(n, q, sampler);
    CHECK(check_invariance(tau, y));
  }
}

TEST_CASE("shift relabels blocks the documented way") {
  RatSampler sampler(103);
  const RationalTuple x = random_tuple(4, 2, sampler);
  const RationalTuple y = GroupElement::cyclic_shift(1).apply(x);
  for (int alpha = 1; alpha <= 4; ++alpha) CHECK(y.block(alpha) == x.block(alpha + 1));
  // Shifting by n is the identity.
  CHECK(GroupElement::cyclic_shift(4).apply(x) == x);
}

TEST_CASE("words compose left to right and stay invariances") {
  RatSampler sampler(104);
  const int n = 3, q = 2;
  const GroupElement a = GroupElement::cyclic_shift(1);
  const GroupElement b = GroupElement::transpose_reversal();
  const GroupElement w = GroupElement::word({a, b});
  const RationalTuple x = random_tuple(n, q, sampler);
  CHECK(w.apply(x) == b.apply(a.apply(x)));
  CHECK(check_invariance(w, x));

  for (int trial = 0; trial < 5; ++trial) {
    const GroupElement rw = random_group_word(n, q, sampler, 4);
    const RationalTuple y = random_tuple(n, q, sampler);
    CHECK(check_invariance(rw, y));
  }
}

TEST_CASE("conjugation input is validated") {
  RatSampler sampler(105);
  // Singular conjugator is rejected eagerly.
  std::vector<Matrix<Rational>> gs = random_conjugators(2, 2, sampler);
  gs[1] = Matrix<Rational>(2, 2);  // zero matrix
  CHECK_THROWS_AS((void)GroupElement::phi(std::move(gs)), NotInvertible);
  // Shape mismatch between element and point.
  const GroupElement e = GroupElement::phi(random_conjugators(2, 2, sampler));
  CHECK_THROWS_AS((void)e.apply(RationalTuple(3, 2)), InputError);
  CHECK_THROWS_AS((void)e.apply(RationalTuple(2, 3)), InputError);
  CHECK_THROWS_AS((void)GroupElement::phi({}), InputError);
}

TEST_CASE("a single-slot transpose is not a symmetry") {
  RatSampler sampler(106);
  const RationalTuple x = random_tuple(3, 2, sampler);
  CHECK(evaluate(slot_transpose(x, 2)) != evaluate(x));
  // Sanity of the control itself: transposing a slot twice is the identity.
  CHECK(slot_transpose(slot_transpose(x, 2), 2) == x);
}

TEST_CASE("infinitesimal conjugations annihilate IMM exactly") {
  RatSampler sampler(107);
  for (const auto& [n, q] : {std::pair{1, 3}, std::pair{2, 2}, std::pair{4, 3}, std::pair{5, 2}}) {
    const RationalTuple x = random_tuple(n, q, sampler);
    for (int alpha = 1; alpha <= n; ++alpha) {
      const Matrix<Rational> L =
          sampler.rational_matrix(static_cast<std::size_t>(q), static_cast<std::size_t>(q));
      CHECK(lie_derivative(x, alpha, L) == Rational(0));
    }
  }
}

TEST_CASE("the balanced cancellation in the Lie derivative is not vacuous") {
  RatSampler sampler(108);
  const RationalTuple x = random_tuple(3, 2, sampler);
  const Matrix<Rational> L = sampler.rational_matrix(2, 2);
  CHECK(lie_derivative(x, 2, L) == Rational(0));
  CHECK(lie_derivative_unbalanced(x, 2, L) != Rational(0));
  CHECK_THROWS_AS((void)lie_derivative(x, 1, Matrix<Rational>(3, 3)), InputError);
}

TEST_CASE("invariant space is the IMM line at multidegree (1,...,1)") {
  CHECK(invariant_space_dim(1, 2, {1}) == 1);
  CHECK(invariant_space_dim(2, 2, {1, 1}) == 1);
  CHECK(invariant_space_dim(3, 2, {1, 1, 1}) == 1);
  CHECK(invariant_space_dim(2, 3, {1, 1}) == 1);
}

TEST_CASE("invariant space vanishes away from multidegree (1,...,1)") {
  CHECK(invariant_space_dim(2, 2, {2, 0}) == 0);
  CHECK(invariant_space_dim(2, 2, {0, 2}) == 0);
  CHECK(invariant_space_dim(3, 2, {3, 0, 0}) == 0);
  CHECK(invariant_space_dim(3, 2, {2, 1, 0}) == 0);
  CHECK(invariant_space_dim(3, 2, {0, 1, 2}) == 0);
  CHECK(invariant_space_dim(2, 3, {2, 0}) == 0);
}

TEST_CASE("invariant space input is validated and guarded") {
  CHECK_THROWS_AS((void)invariant_space_dim(3, 2, {1, 1}), InputError);        // wrong length
  CHECK_THROWS_AS((void)invariant_space_dim(3, 2, {1, 1, 2}), InputError);     // wrong sum
  CHECK_THROWS_AS((void)invariant_space_dim(3, 2, {-1, 2, 2}), InputError);    // negative
  CHECK_THROWS_AS((void)invariant_space_dim(0, 2, {}), InputError);
  CHECK_THROWS_AS((void)invariant_space_dim(3, 5, {1, 1, 1}), GuardExceeded);  // 25³ monomials
}
