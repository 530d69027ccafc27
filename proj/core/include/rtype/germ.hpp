#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rtype/complex.hpp"

namespace rtype {

/// Which variables a germ's monomials live in:
///   MOD:  t_j = |z_j|^2   (modulus model)
///   LOG:  u_j = log|z_j|  (logarithmic model)
enum class Model { MOD, LOG };

inline const char* model_name(Model m) { return m == Model::MOD ? "modulus" : "log"; }

using Expo = std::vector<int>;  // exponent vector, one slot per coordinate

/// A defining-function germ as a finite monomial sum over u- or t-variables,
/// plus a constant. Zero coefficients are never stored; the support map is
/// ordered lexicographically by exponent vector, which fixes the canonical
/// printing order.
struct Germ {
  Model model = Model::MOD;
  int n = 0;
  std::map<Expo, Rational> support;
  Rational constant;
  std::vector<Complex> base_point;  // empty until bound to a point
  std::optional<int> normal_index;  // 1-based; set by the geometry layer

  void add_term(const Expo& e, const Rational& c);

  bool positive_coefficients() const;
  int total_degree() const;

  /// Exact value of the monomial sum (plus constant) at a rational point of
  /// the germ's variable space.
  Rational eval(const std::vector<Rational>& x) const;

  /// Exact gradient at a rational point.
  std::vector<Rational> gradient(const std::vector<Rational>& x) const;

  /// Exact Hessian at a rational point.
  std::vector<std::vector<Rational>> hessian(const std::vector<Rational>& x) const;

  /// Partial derivative germ (same model).
  Germ partial(int j) const;

  /// Canonical text form; reparsing it reproduces the germ exactly.
  std::string str() const;

  friend bool operator==(const Germ& a, const Germ& b) {
    return a.model == b.model && a.n == b.n && a.support == b.support &&
           a.constant == b.constant;
  }
};

/// t_j = |p_j|^2 for each coordinate.
std::vector<Rational> moduli_squared(const std::vector<Complex>& p);

/// Exact residual rho(p) for membership tests. LOG-model germs require
/// |p_j| = 1 for every coordinate (the only case exact in the rationals).
Rational boundary_residual(const Germ& g, const std::vector<Complex>& p);

}  // namespace rtype
