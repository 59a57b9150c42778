#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "immgeo/dynkin.hpp"

using namespace immgeo;

TEST_CASE("wreath elements compose and invert correctly") {
  // σ = (0 1 2) as a position map, flips at position 0.
  WreathElement a;
  a.perm = {1, 2, 0};
  a.flips = 0b001;
  WreathElement b;
  b.perm = {2, 0, 1};
  b.flips = 0b110;
  const WreathElement e = WreathElement::identity(3);
  CHECK(compose(a, inverse(a)) == e);
  CHECK(compose(inverse(a), a) == e);
  CHECK(compose(b, inverse(b)) == e);
  CHECK(compose(a, e) == a);
  CHECK(compose(e, b) == b);
  // Associativity spot check.
  CHECK(compose(compose(a, b), a) == compose(a, compose(b, a)));
  // The rotation has order 3; with a flip attached the order doubles.
  CHECK(detail::element_order(WreathElement{{1, 2, 0}, 0}) == 3);
  CHECK(detail::element_order(WreathElement{{1, 2, 0}, 0b001}) == 6);
}

TEST_CASE("stabilizer is dihedral of order 2n for q >= 3") {
  for (int n = 1; n <= 5; ++n) {
    const DynkinStabilizer s = dynkin_stabilizer(n, 3);
    CHECK(s.order == 2 * static_cast<std::size_t>(n));
    CHECK(s.dihedral);
    CHECK_FALSE(s.position_flips_trivial);
  }
  const DynkinStabilizer s44 = dynkin_stabilizer(4, 4);
  CHECK(s44.order == 8);
  CHECK(s44.dihedral);
}

TEST_CASE("n = 2 stabilizer is the Klein four-group, which is dihedral") {
  const DynkinStabilizer s = dynkin_stabilizer(2, 3);
  CHECK(s.order == 4);
  CHECK(s.dihedral);  // every order-2 rotation plus commuting reflection qualifies
  CHECK(s.perm_image_order == 2);
}

TEST_CASE("q = 2 degenerates: flips act trivially and the stabilizer grows") {
  // Marks all carry power 1 = q−1, so the 2ⁿ flips are invisible; for n ≥ 3
  // the diagrams are the adjacent vertex pairs of an n-cycle, whose symmetry
  // group is dihedral — the full stabilizer is (Z₂)ⁿ × D_n.
  const DynkinStabilizer s3 = dynkin_stabilizer(3, 2);
  CHECK(s3.order == 48);  // 2³ · 6
  CHECK_FALSE(s3.dihedral);
  CHECK(s3.position_flips_trivial);
  CHECK(s3.perm_image_order == 6);
  CHECK(s3.perm_image_dihedral);

  const DynkinStabilizer s4 = dynkin_stabilizer(4, 2);
  CHECK(s4.order == 128);  // 2⁴ · 8
  CHECK(s4.perm_image_order == 8);
  CHECK(s4.perm_image_dihedral);

  // n = 2, q = 2: both blocks yield the same diagram {(0,1),(1,1)}, so the
  // whole wreath product of order 8 stabilizes the family.
  const DynkinStabilizer s2 = dynkin_stabilizer(2, 2);
  CHECK(s2.order == 8);
  CHECK_FALSE(s2.dihedral);
  CHECK(s2.perm_image_order == 2);
  CHECK_FALSE(s2.perm_image_dihedral);
}

TEST_CASE("reported generators actually generate the stabilizer") {
  for (const auto& [n, q] : {std::pair{3, 3}, std::pair{4, 3}, std::pair{3, 2}}) {
    const DynkinStabilizer s = dynkin_stabilizer(n, q);
    REQUIRE(!s.generators.empty());
    std::set<WreathElement> closure{WreathElement::identity(n)};
    for (;;) {
      std::set<WreathElement> next = closure;
      for (const auto& a : closure) {
        for (const auto& g : s.generators) next.insert(compose(a, g));
      }
      if (next.size() == closure.size()) break;
      closure = std::move(next);
    }
    CHECK(closure.size() == s.order);
    // Loose sanity bound: dihedral cases need ≤ 3 generators, the degenerate
    // q = 2 case at most one flip per position plus two permutations.
    CHECK(s.generators.size() <= static_cast<std::size_t>(n) + 2);
  }
}

TEST_CASE("stabilizer enumeration is guarded and validates input") {
  CHECK_THROWS_AS((void)dynkin_stabilizer(8, 3), GuardExceeded);  // 2⁸·8! > 10⁷
  CHECK_THROWS_AS((void)dynkin_stabilizer(0, 3), InputError);
  CHECK_THROWS_AS((void)dynkin_stabilizer(3, 1), InputError);
}
