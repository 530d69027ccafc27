#pragma once

#include <memory>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rtype/complex.hpp"
#include "rtype/germ.hpp"

namespace rtype {

/// Parameter table for a disc family: m complex parameters (each occupying
/// a slot pair: the parameter and its conjugate) followed by r real
/// parameters (one slot each; used for |b|^2 of components through zero
/// base coordinates, so they are nonnegative by meaning).
struct ParamTable {
  int n_complex = 0;
  int n_real = 0;

  int slots() const { return 2 * n_complex + n_real; }
  int c_slot(int j) const { return 2 * j; }
  int cb_slot(int j) const { return 2 * j + 1; }
  int s_slot(int j) const { return 2 * n_complex + j; }
  bool is_c(int slot) const { return slot < 2 * n_complex && slot % 2 == 0; }
  bool is_cb(int slot) const { return slot < 2 * n_complex && slot % 2 == 1; }
  bool is_s(int slot) const { return slot >= 2 * n_complex; }
  int param_of_slot(int slot) const { return is_s(slot) ? slot - 2 * n_complex : slot / 2; }
};

/// Sparse polynomial over Gaussian rationals in the slots of a ParamTable,
/// with the conjugation involution (swap each complex slot pair, conjugate
/// coefficients, fix real slots). The zero polynomial and scalars may carry
/// no table; arithmetic adopts the other operand's table.
class ParamPoly {
 public:
  ParamPoly() = default;
  ParamPoly(Rational r) {  // NOLINT: scalar embedding
    if (!r.is_zero()) terms_[Expo{}] = Complex(std::move(r));
  }
  ParamPoly(Complex c) {  // NOLINT: scalar embedding
    if (!c.is_zero()) terms_[Expo{}] = std::move(c);
  }

  static ParamPoly variable(std::shared_ptr<const ParamTable> table, int slot);
  static ParamPoly scalar(Complex c) { return ParamPoly(std::move(c)); }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Expo, Complex>& terms() const { return terms_; }
  const std::shared_ptr<const ParamTable>& table() const { return table_; }

  ParamPoly operator+(const ParamPoly& o) const;
  ParamPoly operator-(const ParamPoly& o) const;
  ParamPoly operator*(const ParamPoly& o) const;
  ParamPoly operator-() const;
  ParamPoly& operator+=(const ParamPoly& o) { return *this = *this + o; }
  ParamPoly& operator-=(const ParamPoly& o) { return *this = *this - o; }
  ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

  ParamPoly conjugated() const;

  /// Substitutes `slot` by a polynomial (and does NOT touch the conjugate
  /// slot; callers pair the mirrored substitution).
  ParamPoly substituted(int slot, const ParamPoly& value) const;

  /// Sets a whole parameter to zero: for a complex parameter both slots.
  ParamPoly with_param_zero(int param, bool is_real) const;

  /// Exact evaluation given per-parameter values.
  Complex eval(const std::vector<Complex>& cvals, const std::vector<Rational>& svals) const;

  int total_degree() const;
  bool uses_slot(int slot) const;

  /// Every term balanced (equal c/cbar exponents per complex parameter) with
  /// real coefficients all of the same strict sign: the polynomial has a
  /// fixed sign wherever all participating parameters are nonzero.
  bool balanced_signed() const;

  /// Exactly one term.
  bool is_monomial() const { return terms_.size() == 1; }

  /// Degree-1 polynomial supported on unconjugated complex slots only.
  bool linear_holomorphic() const;

  /// Supported on real slots only.
  bool s_only() const;

  /// Supported on the (c, cbar) pair of a single complex parameter, with no
  /// conjugate occurrences: a univariate holomorphic polynomial.
  std::optional<int> single_holomorphic_param() const;

  /// Writes the polynomial as sum H[j][k] c_j conj(c_k) if every term has
  /// total c-degree 1 and cbar-degree 1 and no real slots.
  std::optional<std::vector<std::vector<Complex>>> herm_form() const;

  std::string str() const;  // debugging aid

  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Expo& e, const Complex& c);
  Expo resize_expo(const Expo& e) const;
  void adopt(const ParamPoly& o);

  std::shared_ptr<const ParamTable> table_;
  std::map<Expo, Complex> terms_;  // exponent over slots (possibly empty for scalars)
};

inline ParamPoly conj(const ParamPoly& p) { return p.conjugated(); }

}  // namespace rtype
