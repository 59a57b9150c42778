#pragma once
/// @file dynkin.hpp
/// @brief Combinatorial stabilizer of the marked-diagram family attached to IMM.
///
/// Block α of IMM carries the marked diagram Δ_α = {(α, 1), (α+1, q−1)} on the
/// cyclic vertex set {1, …, n} (vertices stored 0-based internally).  The
/// ambient group is the wreath product Z₂ ≀ Sₙ: a permutation of vertex
/// positions together with per-position power flips p ↦ q−p.  This module
/// enumerates the full stabilizer of the diagram family, certifies whether it
/// is the dihedral group of order 2n, and reports the q = 2 degeneration
/// (where flips act trivially on marks) explicitly.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "immgeo/errors.hpp"

namespace immgeo {

/// Element (σ, ε) of Z₂ ≀ Sₙ: σ permutes vertex positions (0-based), bit r of
/// ε flips the power of marks sitting at source position r.
struct WreathElement {
  std::vector<int> perm;
  std::uint32_t flips = 0;

  [[nodiscard]] friend auto operator<=>(const WreathElement&, const WreathElement&) = default;

  [[nodiscard]] static WreathElement identity(int n) {
    WreathElement e;
    e.perm.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e.perm[static_cast<std::size_t>(i)] = i;
    return e;
  }

  [[nodiscard]] bool flip(int r) const { return (flips >> r) & 1u; }

  [[nodiscard]] bool is_identity() const {
    if (flips != 0) return false;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (perm[i] != static_cast<int>(i)) return false;
    }
    return true;
  }
};

/// a ∘ b: apply b first, then a.
[[nodiscard]] inline WreathElement compose(const WreathElement& a, const WreathElement& b) {
  const int n = static_cast<int>(a.perm.size());
  WreathElement c;
  c.perm.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int bi = b.perm[static_cast<std::size_t>(i)];
    c.perm[static_cast<std::size_t>(i)] = a.perm[static_cast<std::size_t>(bi)];
    const bool bit = b.flip(i) != a.flip(bi);
    if (bit) c.flips |= 1u << i;
  }
  return c;
}

[[nodiscard]] inline WreathElement inverse(const WreathElement& a) {
  const int n = static_cast<int>(a.perm.size());
  WreathElement inv;
  inv.perm.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) inv.perm[static_cast<std::size_t>(a.perm[static_cast<std::size_t>(i)])] = i;
  for (int i = 0; i < n; ++i) {
    if (a.flip(inv.perm[static_cast<std::size_t>(i)])) inv.flips |= 1u << i;
  }
  return inv;
}

namespace detail {

/// A marked diagram: set of (vertex, power) marks, kept sorted and deduplicated.
using Diagram = std::vector<std::pair<int, int>>;

[[nodiscard]] inline Diagram normalize_diagram(Diagram d) {
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

[[nodiscard]] inline Diagram apply_to_diagram(const WreathElement& w, const Diagram& d, int q) {
  Diagram out;
  out.reserve(d.size());
  for (const auto& [r, p] : d) {
    out.emplace_back(w.perm[static_cast<std::size_t>(r)], w.flip(r) ? q - p : p);
  }
  return normalize_diagram(std::move(out));
}

/// The diagram family of IMM: Δ_α = {(α−1, 1), (α mod n, q−1)} with 0-based
/// vertices, one diagram per block, as a set.
[[nodiscard]] inline std::vector<Diagram> diagram_family(int n, int q) {
  std::set<Diagram> fam;
  for (int a = 0; a < n; ++a) {
    fam.insert(normalize_diagram({{a, 1}, {(a + 1) % n, q - 1}}));
  }
  return {fam.begin(), fam.end()};
}

[[nodiscard]] inline std::size_t element_order(const WreathElement& w) {
  WreathElement p = w;
  std::size_t order = 1;
  while (!p.is_identity()) {
    p = compose(p, w);
    ++order;
  }
  return order;
}

/// Uniform dihedral test, valid for every n ≥ 1: |G| = 2n with a rotation r of
/// order n and a reflection s ∉ ⟨r⟩ satisfying s² = e and s·r·s = r⁻¹.
[[nodiscard]] inline bool is_dihedral_of_order(const std::vector<WreathElement>& group,
                                               std::size_t n) {
  if (group.size() != 2 * n) return false;
  for (const auto& r : group) {
    if (element_order(r) != n) continue;
    std::set<WreathElement> cyclic;
    WreathElement p = WreathElement::identity(static_cast<int>(r.perm.size()));
    for (std::size_t i = 0; i < n; ++i) {
      cyclic.insert(p);
      p = compose(p, r);
    }
    const WreathElement rinv = inverse(r);
    for (const auto& s : group) {
      if (cyclic.count(s) > 0) continue;
      if (!compose(s, s).is_identity()) continue;
      if (compose(compose(s, r), s) == rinv) return true;
    }
  }
  return false;
}

/// Same dihedral test for a set of plain permutations (flip-free elements).
[[nodiscard]] inline bool perms_dihedral_of_order(const std::set<std::vector<int>>& perms,
                                                  std::size_t n) {
  std::vector<WreathElement> group;
  group.reserve(perms.size());
  for (const auto& p : perms) {
    WreathElement w;
    w.perm = p;
    group.push_back(std::move(w));
  }
  return is_dihedral_of_order(group, n);
}

}  // namespace detail

struct DynkinStabilizer {
  std::size_t order = 0;
  /// True iff the stabilizer itself is dihedral of order 2n.
  bool dihedral = false;
  /// Greedily chosen small generating set.
  std::vector<WreathElement> generators{};
  /// True iff power flips act trivially on the marks in use (exactly q = 2).
  bool position_flips_trivial = false;
  /// The stabilizer's image in Sₙ (forgetting flips) and whether that image is
  /// dihedral of order 2n — the meaningful reading in the degenerate case.
  std::size_t perm_image_order = 0;
  bool perm_image_dihedral = false;
};

/// Enumerates Z₂ ≀ Sₙ (guarded: 2ⁿ·n! ≤ 10⁷, i.e. n ≤ 7) and returns the full
/// set-stabilizer of the diagram family together with its structure report.
[[nodiscard]] inline DynkinStabilizer dynkin_stabilizer(int n, int q) {
  if (n < 1 || q < 2) throw InputError("diagram stabilizer needs n >= 1 and q >= 2");
  std::size_t group_size = 1;
  for (int i = 1; i <= n; ++i) group_size *= static_cast<std::size_t>(i);
  for (int i = 0; i < n; ++i) group_size *= 2;
  if (group_size > 10'000'000) {
    throw GuardExceeded("wreath product enumeration would exceed 10^7 elements");
  }

  const std::vector<detail::Diagram> family = detail::diagram_family(n, q);
  std::vector<WreathElement> stabilizer;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  do {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      WreathElement w;
      w.perm = perm;
      w.flips = mask;
      std::set<detail::Diagram> image;
      for (const auto& d : family) image.insert(detail::apply_to_diagram(w, d, q));
      if (std::vector<detail::Diagram>(image.begin(), image.end()) == family) {
        stabilizer.push_back(std::move(w));
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  DynkinStabilizer out;
  out.order = stabilizer.size();
  out.dihedral = detail::is_dihedral_of_order(stabilizer, static_cast<std::size_t>(n));
  out.position_flips_trivial = (q == 2);

  std::set<std::vector<int>> perm_image;
  for (const auto& w : stabilizer) perm_image.insert(w.perm);
  out.perm_image_order = perm_image.size();
  out.perm_image_dihedral = detail::perms_dihedral_of_order(perm_image, static_cast<std::size_t>(n));

  // Greedy generating set: absorb elements that enlarge the generated closure.
  std::set<WreathElement> closure{WreathElement::identity(n)};
  const std::set<WreathElement> full(stabilizer.begin(), stabilizer.end());
  for (const auto& w : stabilizer) {
    if (closure.count(w) > 0) continue;
    out.generators.push_back(w);
    // Close under composition with the new generator set.
    for (;;) {
      std::set<WreathElement> next = closure;
      for (const auto& a : closure) {
        for (const auto& g : out.generators) {
          next.insert(compose(a, g));
          next.insert(compose(g, a));
        }
      }
      if (next.size() == closure.size()) break;
      closure = std::move(next);
    }
    if (closure.size() == full.size()) break;
  }
  return out;
}

}  // namespace immgeo
