#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rtype/rational.hpp"

namespace rtype {

/// Dense univariate polynomial over the rationals, for exact sign and root
/// work (Sturm sequences, bisection refinement).
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static UniPoly zero() { return UniPoly(); }
  static UniPoly constant(Rational v) { return UniPoly({std::move(v)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& coeff(int k) const { return c_[static_cast<size_t>(k)]; }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const;

  UniPoly derivative() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly operator-() const;

  /// Euclidean remainder.
  UniPoly rem(const UniPoly& d) const;
  /// Monic gcd.
  static UniPoly gcd(UniPoly a, UniPoly b);

  /// Number of distinct real roots in the half-open interval (a, b].
  int count_roots(const Rational& a, const Rational& b) const;

  /// Isolating intervals (lo, hi] for every distinct real root in (a, b],
  /// refined until each interval has width <= `width`.
  std::vector<std::pair<Rational, Rational>> isolate_roots(const Rational& a, const Rational& b,
                                                           const Rational& width) const;

  /// A rational point x in (a, b) with p(x) < 0, if one exists.
  std::optional<Rational> find_negative_point(const Rational& a, const Rational& b) const;

  /// True when p(x) >= 0 for every x in [a, b].
  bool nonnegative_on(const Rational& a, const Rational& b) const;

 private:
  void normalize();
  std::vector<UniPoly> sturm_chain() const;
  static int sign_changes(const std::vector<UniPoly>& chain, const Rational& x);

  std::vector<Rational> c_;  // c_[k] is the coefficient of x^k; empty = zero
};

}  // namespace rtype
