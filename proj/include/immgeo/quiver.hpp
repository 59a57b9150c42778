#pragma once
/// @file quiver.hpp
/// @brief Irreducible components of the singular locus of {IMM = 0} via
///        nilpotent representations of the cyclic quiver on n vertices.
///
/// A point (X₁, …, Xₙ) is singular iff every product of n−1 consecutive
/// blocks vanishes; such tuples are exactly the (n−1)-nilpotent cyclic-quiver
/// representations with dimension vector (q, …, q).  Those decompose uniquely
/// into interval modules E(start, end) — supported on the cyclic walk
/// start → start+1 → ⋯ → end of at most n−1 vertices, with identity arrows
/// inside the walk — so the singular locus is stratified by multiplicity
/// vectors.  Maximal strata are found two independent ways and cross-checked:
/// as fixed points of the gluing/shift moves, and as entrywise-maximal rank
/// matrices over the full enumeration.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "immgeo/errors.hpp"
#include "immgeo/imm.hpp"
#include "immgeo/linalg.hpp"
#include "immgeo/mat_tuple.hpp"
#include "immgeo/matrix.hpp"
#include "immgeo/rational.hpp"

namespace immgeo {

/// Cyclic interval [start, end] on vertices 1..n, read forward with wrap.
struct Interval {
  int start = 1;
  int end = 1;
  [[nodiscard]] auto operator<=>(const Interval&) const = default;
};

/// Number of vertices the interval covers (1..n−1 for valid intervals).
[[nodiscard]] inline int interval_length(const Interval& e, int n) {
  return ((e.end - e.start) % n + n) % n + 1;
}

/// Whether vertex γ lies on the walk start → end.
[[nodiscard]] inline bool interval_supports(const Interval& e, int gamma, int n) {
  const int pos = ((gamma - e.start) % n + n) % n;
  return pos < interval_length(e, n);
}

/// Valid iff in range and not the full cycle (start = end+1 is excluded:
/// its walk would visit all n vertices, breaking (n−1)-nilpotency).
[[nodiscard]] inline bool valid_interval(const Interval& e, int n) {
  if (e.start < 1 || e.start > n || e.end < 1 || e.end > n) return false;
  return e.start != cyc(e.end + 1, n);
}

/// All valid intervals in lexicographic (start, end) order: n²−n of them for
/// n ≥ 2, none for n = 1 (the lone pair (1,1) would wrap the full cycle).
[[nodiscard]] inline std::vector<Interval> enumerate_intervals(int n) {
  if (n < 1) throw InputError("interval enumeration needs n >= 1");
  std::vector<Interval> out;
  for (int s = 1; s <= n; ++s)
    for (int e = 1; e <= n; ++e)
      if (valid_interval({s, e}, n)) out.push_back({s, e});
  return out;
}

/// Direct sum of interval modules with multiplicities; a valid rep has every
/// vertex covered exactly q times (dimension vector (q, …, q)).
struct QuiverRep {
  int n = 1;
  int q = 1;
  std::map<Interval, int> multiplicity;  // entries are >= 1

  [[nodiscard]] bool operator==(const QuiverRep&) const = default;
};

inline void validate_rep(const QuiverRep& rep) {
  if (rep.n < 1 || rep.q < 1) throw InputError("rep needs n >= 1 and q >= 1");
  for (const auto& [e, m] : rep.multiplicity) {
    if (!valid_interval(e, rep.n)) throw InputError("rep contains an invalid interval");
    if (m < 1) throw InputError("rep multiplicities must be positive");
  }
  for (int gamma = 1; gamma <= rep.n; ++gamma) {
    int total = 0;
    for (const auto& [e, m] : rep.multiplicity)
      if (interval_supports(e, gamma, rep.n)) total += m;
    if (total != rep.q) throw InputError("rep dimension vector is not (q, ..., q)");
  }
}

/// Canonical display form, e.g. "2*E(1,2)+E(3,3)"; summands in lex order.
[[nodiscard]] inline std::string rep_label(const QuiverRep& rep) {
  if (rep.multiplicity.empty()) return "0";
  std::string out;
  for (const auto& [e, m] : rep.multiplicity) {
    if (!out.empty()) out += "+";
    if (m > 1) out += std::to_string(m) + "*";
    out += "E(" + std::to_string(e.start) + "," + std::to_string(e.end) + ")";
  }
  return out;
}

namespace detail {

/// Backtracking over intervals in lex order; calls sink(multiplicities) at
/// every exact cover of the budget vector (q per vertex).  When the current
/// interval is the last one supporting some vertex, its copy count is forced
/// to that vertex's remaining budget, which prunes every undershooting
/// branch.
template <class Sink>
void decomposition_walk(const std::vector<Interval>& intervals, const std::vector<int>& last,
                        int n, std::size_t idx, std::vector<int>& budget, std::vector<int>& m,
                        Sink&& sink) {
  if (idx == intervals.size()) {
    sink(m);  // deadline forcing guarantees every budget is already zero
    return;
  }
  const Interval& e = intervals[idx];
  int cap = -1;
  int forced = -1;
  for (int gamma = 1; gamma <= n; ++gamma) {
    if (!interval_supports(e, gamma, n)) continue;
    const int left = budget[static_cast<std::size_t>(gamma - 1)];
    if (cap < 0 || left < cap) cap = left;
    if (last[static_cast<std::size_t>(gamma - 1)] == static_cast<int>(idx)) {
      if (forced >= 0 && forced != left) return;  // two deadlines disagree
      forced = left;
    }
  }
  int lo = 0;
  int hi = cap;
  if (forced >= 0) {
    if (forced > cap) return;
    lo = hi = forced;
  }
  for (int copies = lo; copies <= hi; ++copies) {
    for (int gamma = 1; gamma <= n; ++gamma)
      if (interval_supports(e, gamma, n)) budget[static_cast<std::size_t>(gamma - 1)] -= copies;
    m[idx] = copies;
    decomposition_walk(intervals, last, n, idx + 1, budget, m, sink);
    for (int gamma = 1; gamma <= n; ++gamma)
      if (interval_supports(e, gamma, n)) budget[static_cast<std::size_t>(gamma - 1)] += copies;
  }
  m[idx] = 0;
}

}  // namespace detail

/// Every decomposition of the dimension vector (q, …, q) into intervals.
/// Guarded: a counting pre-pass aborts past 10⁶ solutions before any rep is
/// materialized.
[[nodiscard]] inline std::vector<QuiverRep> enumerate_decompositions(int n, int q) {
  if (n < 1 || q < 1) throw InputError("decomposition enumeration needs n >= 1 and q >= 1");
  const std::vector<Interval> intervals = enumerate_intervals(n);
  if (intervals.empty()) return {};  // n = 1: nothing can cover the vertex
  std::vector<int> last(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < intervals.size(); ++i)
    for (int gamma = 1; gamma <= n; ++gamma)
      if (interval_supports(intervals[i], gamma, n))
        last[static_cast<std::size_t>(gamma - 1)] = static_cast<int>(i);
  std::vector<int> budget(static_cast<std::size_t>(n), q);
  std::vector<int> m(intervals.size(), 0);

  constexpr std::size_t kGuard = 1000000;
  std::size_t count = 0;
  detail::decomposition_walk(intervals, last, n, 0, budget, m, [&](const std::vector<int>&) {
    if (++count > kGuard) {
      throw GuardExceeded("decomposition enumeration guarded at 10^6 solutions");
    }
  });

  std::vector<QuiverRep> out;
  out.reserve(count);
  detail::decomposition_walk(intervals, last, n, 0, budget, m, [&](const std::vector<int>& mult) {
    QuiverRep rep{n, q, {}};
    for (std::size_t i = 0; i < intervals.size(); ++i)
      if (mult[i] > 0) rep.multiplicity.emplace(intervals[i], mult[i]);
    out.push_back(std::move(rep));
  });
  return out;
}

/// 0/1 matrices assembling the direct sum.  Each vertex owns q basis slots,
/// one per incident interval copy, allocated in lex (start, end, copy) order;
/// arrow α sends the slot of a copy at vertex α to its slot at α+1 unless the
/// interval ends at α.
[[nodiscard]] inline RationalTuple realize(const QuiverRep& rep) {
  validate_rep(rep);
  const int n = rep.n;
  const int q = rep.q;
  // slot[γ−1] maps (interval, copy) to its basis index at vertex γ.
  std::vector<std::map<std::pair<Interval, int>, int>> slot(static_cast<std::size_t>(n));
  for (int gamma = 1; gamma <= n; ++gamma) {
    int next = 0;
    for (const auto& [e, m] : rep.multiplicity) {
      if (!interval_supports(e, gamma, n)) continue;
      for (int c = 0; c < m; ++c) slot[static_cast<std::size_t>(gamma - 1)][{e, c}] = next++;
    }
  }
  RationalTuple x(n, q);
  for (int alpha = 1; alpha <= n; ++alpha) {
    for (const auto& [e, m] : rep.multiplicity) {
      if (!interval_supports(e, alpha, n) || alpha == e.end) continue;
      for (int c = 0; c < m; ++c) {
        const int row = slot[static_cast<std::size_t>(cyc(alpha + 1, n) - 1)].at({e, c});
        const int col = slot[static_cast<std::size_t>(alpha - 1)].at({e, c});
        x.block(alpha)(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) =
            Rational(1);
      }
    }
  }
  return x;
}

/// Ranks of all walk compositions: at(src, dst) is the rank of the arrow
/// chain starting at vertex src and ending at dst (length (dst−src) mod n;
/// the empty walk has rank q).  First index is the source.
class RankMatrix {
 public:
  RankMatrix(int n, int q) : n_(n), q_(q), r_(static_cast<std::size_t>(n) * n, 0) {
    for (int a = 1; a <= n; ++a) set(a, a, q);
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int q() const { return q_; }

  [[nodiscard]] int at(int src, int dst) const {
    return r_[static_cast<std::size_t>(cyc(src, n_) - 1) * static_cast<std::size_t>(n_) +
              static_cast<std::size_t>(cyc(dst, n_) - 1)];
  }
  void set(int src, int dst, int value) {
    r_[static_cast<std::size_t>(cyc(src, n_) - 1) * static_cast<std::size_t>(n_) +
       static_cast<std::size_t>(cyc(dst, n_) - 1)] = value;
  }

  [[nodiscard]] bool operator==(const RankMatrix&) const = default;

 private:
  int n_;
  int q_;
  std::vector<int> r_;
};

/// a ≤ b entrywise.
[[nodiscard]] inline bool rank_leq(const RankMatrix& a, const RankMatrix& b) {
  if (a.n() != b.n() || a.q() != b.q()) throw ShapeError("rank matrices of different shape");
  for (int s = 1; s <= a.n(); ++s)
    for (int d = 1; d <= a.n(); ++d)
      if (a.at(s, d) > b.at(s, d)) return false;
  return true;
}

namespace detail {

/// Count of summands whose support contains the whole walk src → dst.
[[nodiscard]] inline int combinatorial_walk_rank(const QuiverRep& rep, int src, int dst) {
  const int len = ((dst - src) % rep.n + rep.n) % rep.n;
  if (len == 0) return rep.q;
  int total = 0;
  for (const auto& [e, m] : rep.multiplicity) {
    const int pos = ((src - e.start) % rep.n + rep.n) % rep.n;
    if (pos + len <= interval_length(e, rep.n) - 1) total += m;
  }
  return total;
}

[[nodiscard]] inline RankMatrix rank_matrix_combinatorial(const QuiverRep& rep) {
  RankMatrix r(rep.n, rep.q);
  for (int src = 1; src <= rep.n; ++src)
    for (int dst = 1; dst <= rep.n; ++dst)
      if (src != dst) r.set(src, dst, combinatorial_walk_rank(rep, src, dst));
  return r;
}

}  // namespace detail

/// Rank matrix computed two independent ways — combinatorial summand count
/// and exact rank of the realized matrix chains — and hard-asserted equal.
[[nodiscard]] inline RankMatrix rank_matrix(const QuiverRep& rep) {
  validate_rep(rep);
  const RankMatrix r = detail::rank_matrix_combinatorial(rep);
  const RationalTuple x = realize(rep);
  for (int src = 1; src <= rep.n; ++src) {
    Matrix<Rational> chain = Matrix<Rational>::identity(static_cast<std::size_t>(rep.q));
    for (int len = 1; len <= rep.n - 1; ++len) {
      chain = x.block(src + len - 1) * chain;
      if (static_cast<std::size_t>(r.at(src, src + len)) != exact_rank(chain)) {
        throw InternalCheckFailure("combinatorial and realized walk ranks disagree");
      }
    }
  }
  return r;
}

/// One elementary operation applicable to a rep, with its result.
struct AppliedMove {
  std::string description;
  QuiverRep result;
};

/// All applicable moves plus a log of the attempts rejected because the glued
/// or shifted long interval would be the full cycle (leaving nilpotency).
struct MoveScan {
  std::vector<AppliedMove> applicable;
  std::vector<std::string> rejected_degenerate;
};

namespace detail {

[[nodiscard]] inline std::string interval_name(const Interval& e) {
  return "E(" + std::to_string(e.start) + "," + std::to_string(e.end) + ")";
}

inline void add_copy(QuiverRep& rep, const Interval& e) { ++rep.multiplicity[e]; }

inline void remove_copy(QuiverRep& rep, const Interval& e) {
  auto it = rep.multiplicity.find(e);
  if (--(it->second) == 0) rep.multiplicity.erase(it);
}

}  // namespace detail

/// Gluing: E(a,b) ⊕ E(b+1,c) with disjoint adjacent supports becomes E(a,c).
/// Shift: E(α,β) ⊕ E(γ,δ) with endpoints in cyclic order α, γ, β, δ becomes
/// E(α,δ) ⊕ E(γ,β); γ = β (supports touching in one vertex) is allowed, and
/// is in fact required for move-fixed reps to coincide with the rank-maximal
/// ones — without it E(1,2)⊕E(2,3)⊕E(3,4)⊕E(4,1) at n=4 would be stuck yet
/// strictly below E(1,3)⊕E(2,2)⊕E(3,1)⊕E(4,4).  Every other coincidence of
/// endpoints either shrinks ranks or fixes the rep, so those never move.
/// Both moves grow the rank matrix strictly.  An attempt whose long interval
/// would cover all n vertices is rejected and logged; a gluing whose supports
/// overlap is not an extension at all and is skipped silently.
[[nodiscard]] inline MoveScan applicable_moves(const QuiverRep& rep) {
  validate_rep(rep);
  const int n = rep.n;
  MoveScan scan;
  std::vector<Interval> present;
  present.reserve(rep.multiplicity.size());
  for (const auto& entry : rep.multiplicity) present.push_back(entry.first);

  for (const Interval& e1 : present) {
    for (const Interval& e2 : present) {
      if (e1 == e2) continue;
      // Gluing with e2 starting right after e1 ends.
      if (e2.start == cyc(e1.end + 1, n)) {
        const int joined = interval_length(e1, n) + interval_length(e2, n);
        if (joined == n) {
          scan.rejected_degenerate.push_back("glue " + detail::interval_name(e1) + "+" +
                                             detail::interval_name(e2) +
                                             " rejected: full cycle");
        } else if (joined < n) {
          QuiverRep next = rep;
          detail::remove_copy(next, e1);
          detail::remove_copy(next, e2);
          detail::add_copy(next, {e1.start, e2.end});
          scan.applicable.push_back({"glue " + detail::interval_name(e1) + "+" +
                                         detail::interval_name(e2) + " -> " +
                                         detail::interval_name({e1.start, e2.end}),
                                     std::move(next)});
        }
      }
      // Shift with endpoints in cyclic order e1.start, e2.start, e1.end,
      // e2.end; the middle two may coincide.
      const int wb = ((e1.end - e1.start) % n + n) % n;
      const int wg = ((e2.start - e1.start) % n + n) % n;
      const int wd = ((e2.end - e1.start) % n + n) % n;
      if (wg > 0 && wb >= wg && wd > wb) {
        if (wd == n - 1) {
          scan.rejected_degenerate.push_back("shift " + detail::interval_name(e1) + "+" +
                                             detail::interval_name(e2) +
                                             " rejected: full cycle");
        } else {
          QuiverRep next = rep;
          detail::remove_copy(next, e1);
          detail::remove_copy(next, e2);
          detail::add_copy(next, {e1.start, e2.end});
          detail::add_copy(next, {e2.start, e1.end});
          scan.applicable.push_back({"shift " + detail::interval_name(e1) + "+" +
                                         detail::interval_name(e2) + " -> " +
                                         detail::interval_name({e1.start, e2.end}) + "+" +
                                         detail::interval_name({e2.start, e1.end}),
                                     std::move(next)});
        }
      }
    }
  }
  return scan;
}

/// Stratum dimension from the rank matrix alone:
///   Σ_{α=1..n} Σ_{β=2..n} (r(α+β,α) − r(α+β−1,α)) · (r(α+β−1,α) + r(α+β,α+1)).
[[nodiscard]] inline std::size_t component_dimension(const RankMatrix& r) {
  long long total = 0;
  for (int alpha = 1; alpha <= r.n(); ++alpha) {
    for (int beta = 2; beta <= r.n(); ++beta) {
      const long long step = r.at(alpha + beta, alpha) - r.at(alpha + beta - 1, alpha);
      total += step * (r.at(alpha + beta - 1, alpha) + r.at(alpha + beta, alpha + 1));
    }
  }
  if (total < 0) throw InternalCheckFailure("negative component dimension");
  return static_cast<std::size_t>(total);
}

/// Independent dimension oracle: dim of the conjugation orbit of realize(rep),
/// computed as nq² minus the nullity of the commutation system
/// f_{α+1}·Xα = Xα·f_α (unknowns (f_α) ordered (α, i, j) lex).  Guarded:
/// nq² ≤ 400.
[[nodiscard]] inline std::size_t orbit_dimension_oracle(const QuiverRep& rep) {
  validate_rep(rep);
  const int n = rep.n;
  const int q = rep.q;
  if (static_cast<long long>(n) * q * q > 400) {
    throw GuardExceeded("orbit dimension oracle guarded at nq^2 <= 400");
  }
  const RationalTuple x = realize(rep);
  const std::size_t dim = static_cast<std::size_t>(n) * q * q;
  const auto unknown = [q](int beta, int i, int j) {
    return (static_cast<std::size_t>(beta - 1) * q + static_cast<std::size_t>(i - 1)) * q +
           static_cast<std::size_t>(j - 1);
  };
  Matrix<Rational> system(dim, dim);
  for (int alpha = 1; alpha <= n; ++alpha) {
    const Matrix<Rational>& xa = x.block(alpha);
    for (int i = 1; i <= q; ++i) {
      for (int j = 1; j <= q; ++j) {
        const std::size_t row = unknown(alpha, i, j);
        for (int k = 1; k <= q; ++k) {
          system(row, unknown(cyc(alpha + 1, n), i, k)) +=
              xa(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(j - 1));
          system(row, unknown(alpha, k, j)) -=
              xa(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(k - 1));
        }
      }
    }
  }
  const std::size_t nullity = dim - exact_rank(system);
  return dim - nullity;
}

/// One irreducible component of the singular locus.
struct SingComponent {
  QuiverRep rep;
  RankMatrix rank;
  std::size_t dim_formula = 0;
  std::size_t dim_oracle = 0;
  RationalTuple representative;
  std::string label;
};

/// The maximal strata of the singular locus, certified two ways over the full
/// enumeration: a stratum is kept iff no gluing/shift move applies, every
/// kept stratum is checked against all others for entrywise rank domination,
/// and every emitted move result is checked to strictly grow the rank matrix
/// (so a discarded stratum always has a strictly larger neighbour).  Output
/// is sorted by dimension descending, then by label.
[[nodiscard]] inline std::vector<SingComponent> maximal_components(int n, int q) {
  if (n < 1 || q < 1) throw InputError("component search needs n >= 1 and q >= 1");
  if (n == 1) return {};  // a linear form cuts a smooth hypersurface
  const std::vector<QuiverRep> reps = enumerate_decompositions(n, q);
  std::vector<RankMatrix> ranks;
  ranks.reserve(reps.size());
  for (const QuiverRep& rep : reps) ranks.push_back(rank_matrix(rep));

  std::vector<std::size_t> fixed;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const MoveScan scan = applicable_moves(reps[i]);
    for (const AppliedMove& mv : scan.applicable) {
      const RankMatrix after = detail::rank_matrix_combinatorial(mv.result);
      if (!rank_leq(ranks[i], after) || after == ranks[i]) {
        throw InternalCheckFailure("move failed to strictly grow the rank matrix");
      }
    }
    if (scan.applicable.empty()) fixed.push_back(i);
  }

  // Move-fixed strata must be exactly the entrywise-maximal ones.  Each fixed
  // stratum is compared against the whole enumeration; each non-fixed stratum
  // is dominated by its own move result (checked strict above), so the two
  // characterizations coincide iff no fixed stratum is dominated.
  for (const std::size_t i : fixed) {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      if (j != i && rank_leq(ranks[i], ranks[j]) && !(ranks[i] == ranks[j])) {
        throw InternalCheckFailure("move-fixed stratum is not rank-maximal");
      }
    }
  }

  std::vector<SingComponent> out;
  out.reserve(fixed.size());
  for (const std::size_t i : fixed) {
    SingComponent c{reps[i], ranks[i], component_dimension(ranks[i]),
                    orbit_dimension_oracle(reps[i]), realize(reps[i]), rep_label(reps[i])};
    if (!is_singular_point(c.representative)) {
      throw InternalCheckFailure("component representative is not a singular point");
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const SingComponent& a, const SingComponent& b) {
    if (a.dim_formula != b.dim_formula) return a.dim_formula > b.dim_formula;
    return a.label < b.label;
  });
  return out;
}

}  // namespace immgeo
