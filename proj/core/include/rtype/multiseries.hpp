#pragma once

#include <map>
#include <vector>

#include "rtype/germ.hpp"

namespace rtype {

/// Sparse multivariate truncated series over the rationals. Each variable
/// carries a weight; monomials whose weighted total degree exceeds the
/// truncation are dropped by every operation. Weights let log-displacement
/// variables (weight 1) and modulus-squared variables (weight 2) share one
/// truncation scale that matches composition orders along discs.
class MultiSeries {
 public:
  MultiSeries(std::vector<int> weights, int trunc)
      : weights_(std::move(weights)), trunc_(trunc) {}

  static MultiSeries constant(const Rational& c, std::vector<int> weights, int trunc);
  static MultiSeries variable(int j, std::vector<int> weights, int trunc);

  int nvars() const { return static_cast<int>(weights_.size()); }
  int trunc_order() const { return trunc_; }
  const std::vector<int>& weights() const { return weights_; }
  const std::map<Expo, Rational>& terms() const { return terms_; }

  int weighted_degree(const Expo& e) const;
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Expo& e, const Rational& c);

  Rational coeff(const Expo& e) const;
  Rational constant_term() const { return coeff(Expo(static_cast<size_t>(nvars()))); }

  MultiSeries operator+(const MultiSeries& o) const;
  MultiSeries operator-(const MultiSeries& o) const;
  MultiSeries operator*(const MultiSeries& o) const;
  MultiSeries operator-() const;
  MultiSeries scaled(const Rational& c) const;
  MultiSeries pow(long e) const;

  /// exp(s) for zero constant term.
  MultiSeries exp() const;

  /// 1/s for nonzero constant term.
  MultiSeries reciprocal() const;

  /// Substitutes series `value` for variable j (value must use the same
  /// variable table).
  MultiSeries substitute(int j, const MultiSeries& value) const;

  /// Drops every monomial that uses variable j (i.e. sets it to zero).
  MultiSeries set_var_zero(int j) const;

  /// Exact evaluation at a rational point.
  Rational eval(const std::vector<Rational>& x) const;

  /// Lowest weighted degree of a nonzero term; Vanishing-style sentinel via
  /// trunc when zero.
  int min_weighted_degree() const;  // trunc_ + 1 when zero

 private:
  std::vector<int> weights_;
  int trunc_;
  std::map<Expo, Rational> terms_;
};

}  // namespace rtype
