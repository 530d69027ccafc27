#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rtype/geometry.hpp"
#include "rtype/series.hpp"

namespace rtype {

/// An analytic disc through a base point, held as exact truncated series
/// with phi_j(0) = base_j. A component may instead carry the "identically
/// zero" flag (only meaningful over a zero base coordinate).
struct Disc {
  static constexpr int kInf = std::numeric_limits<int>::max();

  std::vector<Complex> base;
  std::vector<CSeries> components;
  std::vector<bool> zero_flag;
  std::vector<int> beta;  // vanishing order of (component - base), kInf if flagged or static

  int v() const;  // min over components; kInf when every component is frozen

  std::string str() const;
};

/// Builds a disc and validates: constant terms match the base, zero flags
/// only over zero base coordinates, beta derived exactly.
Disc make_disc(std::vector<Complex> base, std::vector<CSeries> components,
               std::vector<bool> zero_flag = {});

/// Convenience: the line base + b*zeta at truncation trunc.
Disc line_disc(const std::vector<Complex>& base, const std::vector<Complex>& b, int trunc);

// ---------------------------------------------------------------------------

/// A computed invariant: exact rational value, a lower/upper enclosure (the
/// upper side may be unbounded), or infinite type. Witnesses attain the
/// exact value (or the lower bound) and are re-checkable via compose_order.
struct TypeValue {
  enum class Kind { Exact, Bounds, Infinite };
  Kind kind = Kind::Exact;
  Rational exact;
  Rational lo;
  std::optional<Rational> hi;  // empty = unbounded
  std::optional<Disc> witness;
  std::string method;
  bool search_truncated = false;  // oracle budget ran out

  static TypeValue exact_value(Rational q, std::string method);
  static TypeValue bounds(Rational lo, std::optional<Rational> hi, std::string method);
  static TypeValue infinite(std::string method);

  bool is_exact() const { return kind == Kind::Exact; }
  bool is_infinite() const { return kind == Kind::Infinite; }
  std::string str() const;
};

/// Hard failure of the variety/regular cross-check: a certified lower bound
/// exceeded the computed supremum.
struct InconsistencyError : std::runtime_error {
  TypeValue engine_value;
  TypeValue oracle_value;
  InconsistencyError(std::string msg, TypeValue ev, TypeValue ov)
      : std::runtime_error(std::move(msg)), engine_value(std::move(ev)),
        oracle_value(std::move(ov)) {}
};

// ---------------------------------------------------------------------------
// Composition.

/// rho composed with a disc, as an exact Hermitian series (truncation from
/// the disc components). Modulus-model germs compose at any rational base;
/// log-model germs require |phi_j(0)| = 1 and reject discs whose components
/// vanish at 0 wherever the germ depends on them.
CHerm compose_herm(const Germ& g, const Disc& phi);

/// Same against a local normal form (normal log term plus h-part).
CHerm compose_herm(const LocalGerm& lg, const Disc& phi);

Vanishing compose_order(const Germ& g, const Disc& phi);
Vanishing compose_order(const LocalGerm& lg, const Disc& phi);

// ---------------------------------------------------------------------------
// Newton-support order in the no-cancellation regime.

/// min over the support of the beta-weighted order (2<a,b> in the modulus
/// model, <a,b> in the positive log model); std::nullopt = every monomial
/// meets an infinite component. Coefficients must all be positive.
std::optional<long> newton_order(const std::map<Expo, Rational>& support,
                                 const std::vector<int>& beta, Model model);

// ---------------------------------------------------------------------------
// Type invariants.

struct EngineOptions {
  int max_order = 12;
  int truncation() const { return 2 * max_order + 2; }
};

/// Line type: supremum order over honest complex lines p + b zeta, by
/// symbolic order-by-order elimination over b.
TypeValue line_type(const Germ& g, const BoundaryPoint& p, const EngineOptions& opt = {});

/// Regular type via the disc-family reduction: exponential discs through
/// the nonzero coordinates (directly when p is off the axes, on the
/// tangential section otherwise) and linear tails through the zero
/// coordinates, maximized symbolically.
TypeValue regular_type(const Germ& g, const BoundaryPoint& p, const EngineOptions& opt = {});

struct OracleConfig {
  int max_deg = 3;
  std::vector<Complex> lattice;  // empty = default preset
  long budget = 2'000'000;
  int threads = 0;  // 0 = auto
};

/// Brute-force certified lower bound: enumerates polynomial discs with
/// lattice coefficients, composes exactly, returns the best ratio
/// v(rho o phi)/v(phi) with its witness. Deterministic regardless of the
/// thread count.
TypeValue jet_oracle(const Germ& g, const BoundaryPoint& p, const OracleConfig& cfg = {});

/// Regular type cross-checked against the oracle lower bound (they must
/// agree up to <=); a violation throws InconsistencyError.
TypeValue variety_type(const Germ& g, const BoundaryPoint& p, const EngineOptions& opt = {},
                       const OracleConfig& cross_check = {.max_deg = 2, .budget = 20'000});

/// Default lattice preset {0, +-1, +-2, +-1/2, +-i, +-i/2}.
std::vector<Complex> default_lattice();

// ---------------------------------------------------------------------------
// Disc reduction (normal-component freezing).

struct ReduceResult {
  Disc reduced;
  int v_phi, v_reduced;
  int order_phi, order_reduced;  // v(r o phi), v(r o psi)
};

/// Replaces the normal component by its base value. Requires
/// v(r o phi) > v(phi); guarantees (and verifies exactly on truncations)
/// v(psi) = v(phi) and v(r o psi) >= v(r o phi).
ReduceResult reduce_disc(const LocalGerm& lg, const Disc& phi);

// ---------------------------------------------------------------------------
// q-type tuple and multitype.

struct QTypeTuple {
  std::vector<TypeValue> values;  // index 0 = Delta_n, ..., last = Delta_1
  std::string str() const;
};

struct QTypeOptions {
  EngineOptions engine;
  std::uint64_t seed = 20240915;
  int draws = 3;
  int redraw_rounds = 3;
};

/// D'Angelo q-types by generic affine slices: Delta_q is the variety type
/// restricted to a generic (n-q+1)-plane through p, computed per draw via
/// the no-cancellation support analysis, with the draw-agreement policy.
QTypeTuple q_types(const Germ& g, const BoundaryPoint& p, const QTypeOptions& opt = {});

struct Multitype {
  std::vector<Rational> entries;      // m_1 = 1 first, nondecreasing
  std::vector<bool> infinite;         // per entry
  std::string str() const;
};

/// Catlin multitype for monomial-sum germs with positive coefficients:
/// weight feasibility over the tangential support solved by iterated exact
/// rational linear programs (lexicographically largest nondecreasing tuple).
Multitype multitype(const Germ& g, const BoundaryPoint& p, int trunc = 26);

}  // namespace rtype
