#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtype/germ.hpp"
#include "rtype/multiseries.hpp"

namespace rtype {

/// Axis-aligned box in the germ's variable space (t- or u-space).
struct Box {
  std::vector<Rational> lo, hi;

  bool nondegenerate() const {
    if (lo.empty() || lo.size() != hi.size()) return false;
    for (size_t j = 0; j < lo.size(); ++j)
      if (!(lo[j] < hi[j])) return false;
    return true;
  }
  static Box cube(int n, Rational l, Rational h) {
    return Box{std::vector<Rational>(static_cast<size_t>(n), l),
               std::vector<Rational>(static_cast<size_t>(n), h)};
  }
};

/// Deterministic rational sample points in a box (seeded).
std::vector<std::vector<Rational>> sample_box(const Box& box, int count, std::uint64_t seed);

struct DomainSpec {
  Germ rho;
  Box region_hint;

  int n() const { return rho.n; }
  static DomainSpec with_default_region(Germ g);
};

/// A point of the boundary rho = 0, validated exactly. Never the origin.
struct BoundaryPoint {
  std::vector<Complex> p;
  std::vector<int> zero_set;  // 1-based indices with p_j = 0
  int k = 0;                  // number of nonzero coordinates

  bool on_axis() const { return !zero_set.empty(); }
};

BoundaryPoint make_boundary_point(const Germ& rho, std::vector<Complex> p);

// ---------------------------------------------------------------------------
// Log-convexity and the axis-contraction property.

enum class ConvexityKind { certified_quadratic, convex_sampled, not_convex };

struct ConvexityResult {
  ConvexityKind kind;
  // witness for not_convex: a sample point and a principal minor that is
  // negative there, re-checkable independently
  std::vector<Rational> witness_point;
  std::vector<int> minor_rows;  // 1-based variable indices of the minor
  Rational minor_value;

  bool convex() const { return kind != ConvexityKind::not_convex; }
};

/// Positive-semidefiniteness of the Hessian of the log-model rewrite of rho,
/// decided exactly: globally for quadratic log-model germs, at seeded sample
/// points otherwise. Modulus-model germs are checked through t_j = e^(2 u_j),
/// whose u-Hessian at a sample is an exact rational matrix.
ConvexityResult check_log_convex(const DomainSpec& d, int samples, std::uint64_t seed);

struct MonotoneResult {
  bool monotone;
  std::vector<Rational> witness_point;  // where the t_j-derivative is negative
  Rational derivative_value;
};

/// d rho / d t_j >= 0 on sampled points of the region (modulus model only):
/// the contraction property along the j-th axis for monomial germs.
MonotoneResult check_axis_monotone(const DomainSpec& d, int j, int samples);

// ---------------------------------------------------------------------------
// Local normal form at a boundary point.

/// Local defining germ at p in the normal form
///     sum_i A_i * log|z_i / p_i|  +  h(tangential variables)
/// where A is an integer exponent vector supported on the nonzero
/// coordinates of p (the monomial coordinate change making the first
/// block the outward normal), and h is a truncated series in
///   w_i = log|z_i / p_i| (weight 1) for nonzero tangential coordinates,
///   t_j = |z_j|^2        (weight 2) for zero coordinates,
/// with h(0) = 0 and dh(0) = 0 in the nonzero tangential directions.
struct LocalGerm {
  int n = 0;
  int normal_index = 0;            // 1-based
  std::vector<Complex> base;       // p
  std::vector<int> normal_exponents;  // size n; entry for z_i in the normal monomial
  std::vector<int> tangential;     // 1-based coordinate indices, ascending, size n-1
  MultiSeries h;                   // over the tangential variables
  bool recentred = true;           // property (a): h(0) = 0, dh(0) = 0
  bool rotation_invariant = true;  // property (b): depends on moduli only
  bool psh_sampled = false;        // property (c): sampled convexity of the log rewrite

  LocalGerm() : h({}, 0) {}

  int trunc() const { return h.trunc_order(); }
  /// Position of coordinate `coord` in the tangential table, or -1.
  int var_of_coord(int coord) const;
  /// True when every tangential variable is a t-variable (axis point, k=1).
  bool tangential_all_mod() const;
  /// The h-part as a modulus-model germ over the tangential coordinates
  /// (requires tangential_all_mod()).
  Germ tangential_mod_germ() const;
};

/// Builds the local normal form by exact implicit solve of rho = 0 for the
/// normal log-coordinate, to the weighted truncation `trunc`. The normal
/// index is chosen among nonzero coordinates of p to maximize
/// |d rho/d t_j(p) * t_j(p)| (ties to the smallest index).
LocalGerm local_germ_at(const DomainSpec& d, const BoundaryPoint& p, int trunc);

/// Hessian, in log coordinates, of the h-part of a local germ at a rational
/// point given in the h-variables (w for log slots, t for modulus slots).
std::vector<std::vector<Rational>> local_h_log_hessian(const LocalGerm& lg,
                                                       const std::vector<Rational>& x);

// ---------------------------------------------------------------------------
// Star-likeness of a tangential germ.

struct StarlikeResult {
  bool starlike;
  bool limit_test_passed;             // small-radius derivative sign test
  std::vector<Rational> witness_dir;  // direction where monotonicity fails
  Rational witness_t;                 // a point with negative derivative
};

/// Tests whether t -> h(t a) is nondecreasing on [0, delta] for seeded
/// rational directions a with all entries nonzero, by exact root isolation
/// of the derivative. h must vanish at 0.
StarlikeResult check_starlike(const Germ& h, int directions, const Rational& delta,
                              std::uint64_t seed);

// ---------------------------------------------------------------------------
// The normalizing monomial coordinate change.

struct CoordChange {
  int normal_index = 0;
  std::vector<int> exponents;  // exponent of z_j in the new first coordinate

  /// e.g. "(z1*z2, z2, z3)" for exponents (1,1,0) at normal index 1.
  std::string str() const;
};

/// The monomial change z'_norm = prod z_i^(A_i) (identity on the other
/// coordinates) that makes the normal direction a coordinate, together with
/// the transformed local germ. The exponents are the cleared-to-integer
/// gradient data of the implicit solve.
std::pair<CoordChange, LocalGerm> normalize_coords(const DomainSpec& d, const BoundaryPoint& p,
                                                   int trunc);

// ---------------------------------------------------------------------------
// Exact PSD test for small rational symmetric matrices (shared helper).

struct PsdWitness {
  std::vector<int> rows;  // 1-based principal-minor index set
  Rational det;
};

/// Checks positive semidefiniteness by exact principal minors; returns the
/// first negative minor found otherwise.
std::optional<PsdWitness> psd_violation(const std::vector<std::vector<Rational>>& m);

}  // namespace rtype
