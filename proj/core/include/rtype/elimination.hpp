#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "rtype/engine.hpp"
#include "rtype/parampoly.hpp"

namespace rtype {

using PSeries = HermSeries<ParamPoly>;

/// A parametric disc family whose composition with the germ has been built
/// symbolically: coefficients of the Hermitian series are polynomials in
/// the family parameters.
enum class FamilyKind { Line, ExpDiscs, TailLines };

struct Family {
  FamilyKind kind = FamilyKind::Line;
  int n = 0;
  std::vector<Complex> base;
  std::vector<int> param_of_coord;  // size n, -1 = no parameter (frozen coordinate)
  std::vector<bool> param_is_real;  // indexed by parameter id (s-type vs complex)
  std::shared_ptr<const ParamTable> table;
  PSeries series;
  /// Composition is a polynomial of (zeta, conj zeta)-degree at most this;
  /// -1 when it is a genuine power series (log/exp compositions).
  int poly_degree_bound = -1;

  int n_params() const { return static_cast<int>(param_is_real.size()); }
};

Family build_line_family(const Germ& g, const BoundaryPoint& p, int trunc);
Family build_expdisc_family(const Germ& g, const BoundaryPoint& p, int trunc);
Family build_tailline_family(const Germ& g, const BoundaryPoint& p, int trunc);

/// Concrete disc from parameter values (truncated at `trunc`).
Disc instantiate(const Family& fam, const std::vector<Complex>& cvals,
                 const std::vector<Rational>& svals, int trunc);

struct FamilyOutcome {
  enum class Kind { Exact, Infinite, Bounds };
  Kind kind = Kind::Exact;
  int order = 0;                 // exact value, or certified lower bound
  std::optional<int> upper;      // certified upper bound (Bounds only)
  std::optional<Disc> witness;   // attains `order` (verified by composition)
};

/// Maximizes the vanishing order of the composed series over the family
/// parameters by stratified order-by-order elimination. Exact outcomes are
/// double-certified: infeasibility proof above, verified witness below.
FamilyOutcome maximize_order(const Family& fam, const Germ& g, const BoundaryPoint& p,
                             int max_level);

}  // namespace rtype
