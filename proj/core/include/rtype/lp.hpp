#pragma once

#include <optional>
#include <vector>

#include "rtype/rational.hpp"

namespace rtype {

/// a . x >= b
struct LinConstraint {
  std::vector<Rational> a;
  Rational b;
};

/// Minimizes c . x over { x : every constraint holds } by exact vertex
/// enumeration (dimensions <= 4, desk scale). Returns nullopt when the
/// polytope is empty; the problem must be bounded below on the feasible set
/// (callers include box constraints).
std::optional<std::pair<Rational, std::vector<Rational>>> lp_minimize(
    const std::vector<Rational>& c, const std::vector<LinConstraint>& cons);

/// Feasibility of { constraints } with some equalities pinned: eq rows hold
/// with equality.
bool lp_feasible_with_equalities(const std::vector<LinConstraint>& cons,
                                 const std::vector<LinConstraint>& eqs);

}  // namespace rtype
