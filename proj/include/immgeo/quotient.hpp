#pragma once
/// @file quotient.hpp
/// @brief Exact arithmetic in the quotient ring ℚ[t]/(tᵈ + c).
///
/// Scalars of this ring appear as eigenvalue-like symbols ω with ωᵈ = −c.  The
/// modulus tᵈ + c is reducible for most parameter choices, so the ring has zero
/// divisors: elements are never factored, and invertibility is decided by an
/// extended gcd with the modulus rather than by any field assumption.
///
/// A `QuotientScalar` is either *attached* to a concrete ring (degree d ≥ 1 and
/// constant c fixed) or a *plain* rational that adopts the ring of the other
/// operand on mixed arithmetic.  Plain scalars make zero-initialized matrices
/// and generic ring code work uniformly; combining scalars attached to two
/// different rings throws RingMismatch.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "immgeo/errors.hpp"
#include "immgeo/rational.hpp"

namespace immgeo {

namespace detail {

/// Dense univariate polynomial over ℚ, little-endian (index = degree).
/// The empty vector is the zero polynomial.
using Poly = std::vector<Rational>;

[[nodiscard]] inline Poly poly_trim(Poly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

[[nodiscard]] inline Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return poly_trim(std::move(r));
}

[[nodiscard]] inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return poly_trim(std::move(r));
}

[[nodiscard]] inline Poly poly_scale(Poly a, const Rational& s) {
  for (auto& x : a) x *= s;
  return poly_trim(std::move(a));
}

/// Quotient and remainder of a by b over ℚ; b must be nonzero.
[[nodiscard]] inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  const Poly bt = poly_trim(b);
  if (bt.empty()) throw InputError("polynomial division by zero");
  a = poly_trim(std::move(a));
  Poly q;
  if (a.size() >= bt.size()) q.assign(a.size() - bt.size() + 1, Rational(0));
  const Rational lead = bt.back();
  while (a.size() >= bt.size()) {
    const std::size_t shift = a.size() - bt.size();
    const Rational f = a.back() / lead;
    q[shift] = f;
    for (std::size_t i = 0; i + 1 < bt.size(); ++i) a[shift + i] -= f * bt[i];
    a.pop_back();  // leading term cancels exactly
    a = poly_trim(std::move(a));
  }
  return {std::move(q), std::move(a)};
}

struct PolyExtGcd {
  Poly g;  ///< monic gcd (empty iff both inputs are zero)
  Poly u;  ///< Bézout coefficient of the first input
  Poly v;  ///< Bézout coefficient of the second input: u·a + v·b = g
};

[[nodiscard]] inline PolyExtGcd poly_ext_gcd(Poly a, Poly b) {
  Poly r0 = poly_trim(std::move(a)), r1 = poly_trim(std::move(b));
  Poly s0{Rational(1)}, s1{};
  Poly t0{}, t1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(std::move(r0), r1);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    Poly t2 = poly_sub(t0, poly_mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!r0.empty()) {
    const Rational inv_lead = Rational(1) / r0.back();
    r0 = poly_scale(std::move(r0), inv_lead);
    s0 = poly_scale(std::move(s0), inv_lead);
    t0 = poly_scale(std::move(t0), inv_lead);
  }
  return {std::move(r0), std::move(s0), std::move(t0)};
}

}  // namespace detail

/// Outcome of an exact invertibility test in ℚ[t]/(tᵈ + c).
struct UnitCheck {
  bool is_unit = false;
  /// Little-endian coefficients of the inverse; meaningful only when is_unit.
  std::vector<Rational> inverse_coefficients{};
  /// For a non-unit attached scalar: monic non-constant gcd of its
  /// representative with the modulus (a certified common divisor).  Empty for
  /// units; for a plain non-unit (only zero) no witness exists.
  std::vector<Rational> witness{};
};

class QuotientScalar {
 public:
  /// Plain rational zero; adopts a ring on first mixed operation.
  QuotientScalar() : coef_{Rational(0)} {}
  QuotientScalar(const Rational& x) : coef_{x} {}  // NOLINT: implicit by design
  QuotientScalar(int x) : coef_{Rational(x)} {}    // NOLINT: implicit by design

  /// Element of ℚ[t]/(t^mod_degree + mod_constant) with the given coefficients
  /// (little-endian; reduced modulo the modulus if over-long).
  [[nodiscard]] static QuotientScalar attached(int mod_degree, Rational mod_constant,
                                               std::vector<Rational> coeffs) {
    if (mod_degree < 1) throw InputError("quotient ring needs modulus degree >= 1");
    QuotientScalar r;
    r.deg_ = mod_degree;
    r.c_ = std::move(mod_constant);
    r.coef_ = reduce_mod(std::move(coeffs), mod_degree, r.c_);
    return r;
  }

  /// The class of t itself.
  [[nodiscard]] static QuotientScalar generator(int mod_degree, const Rational& mod_constant) {
    return attached(mod_degree, mod_constant, {Rational(0), Rational(1)});
  }

  /// ω with ωⁿ = −(q−1): the root symbol used throughout the Hessian analysis.
  [[nodiscard]] static QuotientScalar omega(int n, int q) {
    return generator(n, Rational(q - 1));
  }

  [[nodiscard]] bool attached_ring() const { return deg_ > 0; }
  [[nodiscard]] int mod_degree() const { return deg_; }
  [[nodiscard]] const Rational& mod_constant() const { return c_; }
  /// Little-endian coefficients; size mod_degree() when attached, 1 when plain.
  [[nodiscard]] const std::vector<Rational>& coefficients() const { return coef_; }

  [[nodiscard]] bool is_zero() const {
    for (const auto& x : coef_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  [[nodiscard]] bool is_one() const {
    if (coef_[0] != 1) return false;
    for (std::size_t i = 1; i < coef_.size(); ++i) {
      if (!coef_[i].is_zero()) return false;
    }
    return true;
  }

  [[nodiscard]] friend QuotientScalar operator+(const QuotientScalar& a, const QuotientScalar& b) {
    auto [x, y] = aligned(a, b);
    for (std::size_t i = 0; i < x.coef_.size(); ++i) x.coef_[i] += y.coef_[i];
    return x;
  }

  [[nodiscard]] friend QuotientScalar operator-(const QuotientScalar& a, const QuotientScalar& b) {
    auto [x, y] = aligned(a, b);
    for (std::size_t i = 0; i < x.coef_.size(); ++i) x.coef_[i] -= y.coef_[i];
    return x;
  }

  [[nodiscard]] QuotientScalar operator-() const {
    QuotientScalar r = *this;
    for (auto& x : r.coef_) x = -x;
    return r;
  }

  [[nodiscard]] friend QuotientScalar operator*(const QuotientScalar& a, const QuotientScalar& b) {
    auto [x, y] = aligned(a, b);
    if (x.deg_ == 0) {
      x.coef_[0] *= y.coef_[0];
      return x;
    }
    const std::size_t d = static_cast<std::size_t>(x.deg_);
    std::vector<Rational> conv(2 * d - 1, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
      if (x.coef_[i].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (y.coef_[j].is_zero()) continue;
        conv[i + j] += x.coef_[i] * y.coef_[j];
      }
    }
    // Fold t^k ≡ −c·t^{k−d} for k ≥ d (a single pass suffices: k − d < d).
    for (std::size_t k = 2 * d - 2; k >= d && k < conv.size(); --k) {
      if (!conv[k].is_zero()) conv[k - d] -= x.c_ * conv[k];
    }
    conv.resize(d);
    x.coef_ = std::move(conv);
    return x;
  }

  QuotientScalar& operator+=(const QuotientScalar& o) { return *this = *this + o; }
  QuotientScalar& operator-=(const QuotientScalar& o) { return *this = *this - o; }
  QuotientScalar& operator*=(const QuotientScalar& o) { return *this = *this * o; }

  [[nodiscard]] friend bool operator==(const QuotientScalar& a, const QuotientScalar& b) {
    auto [x, y] = aligned(a, b);
    return x.coef_ == y.coef_;
  }

  [[nodiscard]] QuotientScalar pow(unsigned e) const {
    QuotientScalar result(1);
    QuotientScalar base = *this;
    while (e > 0) {
      if (e & 1u) result = result * base;
      base = base * base;
      e >>= 1u;
    }
    return result;
  }

  /// Exact invertibility in the attached ring (extended gcd with the modulus).
  /// Plain scalars are units iff nonzero.
  [[nodiscard]] UnitCheck unit_check() const {
    UnitCheck out;
    if (deg_ == 0) {
      if (!coef_[0].is_zero()) {
        out.is_unit = true;
        out.inverse_coefficients = {Rational(1) / coef_[0]};
      }
      return out;
    }
    const detail::Poly m = modulus_poly(deg_, c_);
    const detail::Poly a = detail::poly_trim(coef_);
    if (a.empty()) {
      out.witness = m;  // gcd(0, m) = m
      return out;
    }
    detail::PolyExtGcd e = detail::poly_ext_gcd(a, m);
    if (e.g.size() == 1) {
      // u·a ≡ 1 (mod m): reduce u into the canonical coefficient window.
      detail::Poly u = detail::poly_divmod(std::move(e.u), m).second;
      u.resize(static_cast<std::size_t>(deg_), Rational(0));
      out.is_unit = true;
      out.inverse_coefficients = std::move(u);
    } else {
      out.witness = std::move(e.g);
    }
    return out;
  }

  /// Inverse as a scalar of the same ring; throws NotInvertible for non-units.
  [[nodiscard]] QuotientScalar inverse() const {
    UnitCheck u = unit_check();
    if (!u.is_unit) throw NotInvertible("quotient-ring scalar is not a unit");
    if (deg_ == 0) return QuotientScalar(u.inverse_coefficients[0]);
    return attached(deg_, c_, std::move(u.inverse_coefficients));
  }

 private:
  [[nodiscard]] static detail::Poly modulus_poly(int deg, const Rational& c) {
    detail::Poly m(static_cast<std::size_t>(deg) + 1, Rational(0));
    m[0] = c;
    m.back() = Rational(1);
    return m;
  }

  [[nodiscard]] static std::vector<Rational> reduce_mod(std::vector<Rational> coeffs, int deg,
                                                        const Rational& c) {
    detail::Poly r = detail::poly_divmod(std::move(coeffs), modulus_poly(deg, c)).second;
    r.resize(static_cast<std::size_t>(deg), Rational(0));
    return r;
  }

  /// Lifts plain operands into the ring of the attached one; verifies that two
  /// attached operands share the same ring.
  [[nodiscard]] static std::pair<QuotientScalar, QuotientScalar> aligned(QuotientScalar a,
                                                                         QuotientScalar b) {
    if (a.deg_ == 0 && b.deg_ > 0) {
      a.deg_ = b.deg_;
      a.c_ = b.c_;
      a.coef_.resize(b.coef_.size(), Rational(0));
    } else if (b.deg_ == 0 && a.deg_ > 0) {
      b.deg_ = a.deg_;
      b.c_ = a.c_;
      b.coef_.resize(a.coef_.size(), Rational(0));
    } else if (a.deg_ != b.deg_ || a.c_ != b.c_) {
      throw RingMismatch("scalars attached to different quotient rings");
    }
    return {std::move(a), std::move(b)};
  }

  int deg_ = 0;    ///< 0 = plain rational, otherwise modulus degree
  Rational c_{0};  ///< modulus constant (meaningful iff deg_ > 0)
  std::vector<Rational> coef_;
};

template <>
struct RingTraits<QuotientScalar> {
  [[nodiscard]] static QuotientScalar zero() { return QuotientScalar(); }
  [[nodiscard]] static QuotientScalar one() { return QuotientScalar(1); }
  [[nodiscard]] static bool is_zero(const QuotientScalar& x) { return x.is_zero(); }
  [[nodiscard]] static bool is_one(const QuotientScalar& x) { return x.is_one(); }
};

/// Human-readable rendering with generator symbol `w`, e.g. "1 - 2*w + w^2".
[[nodiscard]] inline std::string to_string(const QuotientScalar& x) {
  const auto& c = x.coefficients();
  std::string out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    Rational v = c[k];
    if (out.empty()) {
      if (v < 0) {
        out += "-";
        v = -v;
      }
    } else {
      out += (v < 0) ? " - " : " + ";
      if (v < 0) v = -v;
    }
    const bool unit_coeff = (v == 1) && k > 0;
    if (!unit_coeff) out += to_string(v);
    if (k > 0) {
      if (!unit_coeff) out += "*";
      out += "w";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace immgeo
