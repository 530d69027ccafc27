#include <doctest.h>

#include "rtype/expr.hpp"
#include "rtype/geometry.hpp"

using namespace rtype;

namespace {

Germ parse_germ(const std::string& s, int n) { return to_germ_n(parse_expr(s, n), n); }

DomainSpec log_domain(const std::string& s, int n) {
  return DomainSpec::with_default_region(parse_germ(s, n));
}

}  // namespace

TEST_CASE("log convexity: certified quadratic, sampled, and rejection") {
  // u1^2 + u2^2: identity-like Hessian, certified globally
  auto r1 = check_log_convex(log_domain("log|z1|^2 + log|z2|^2", 2), 50, 1);
  CHECK(r1.kind == ConvexityKind::certified_quadratic);

  // linear plus convex quartic of a linear form: sampled convex
  auto r2 = check_log_convex(
      log_domain("log|z1| + log|z2| + (log|z1| - log|z2|)^4", 2), 200, 1);
  CHECK(r2.kind == ConvexityKind::convex_sampled);

  // planted non-convex germ: exact negative principal minor witness
  auto r3 = check_log_convex(log_domain("log|z1| + log|z2| - (log|z1| - log|z2|)^2", 2), 200, 1);
  REQUIRE(r3.kind == ConvexityKind::not_convex);
  CHECK(r3.minor_value.sign() < 0);
  // re-check the witness independently: H = -2 [[1,-1],[-1,1]]
  Germ g = parse_germ("log|z1| + log|z2| - (log|z1| - log|z2|)^2", 2);
  auto h = g.hessian(r3.witness_point.empty()
                         ? std::vector<Rational>{Rational(0), Rational(0)}
                         : r3.witness_point);
  auto viol = psd_violation(h);
  REQUIRE(viol.has_value());
  CHECK(viol->det == r3.minor_value);
}

TEST_CASE("modulus-model convexity through the exponential substitution") {
  Germ g = parse_germ("|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1", 3);
  auto r = check_log_convex(DomainSpec::with_default_region(g), 200, 3);
  CHECK(r.kind == ConvexityKind::convex_sampled);
}

TEST_CASE("axis monotonicity") {
  Germ g = parse_germ("|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1", 3);
  auto d = DomainSpec::with_default_region(g);
  CHECK(check_axis_monotone(d, 2, 100).monotone);

  // t2 - t2^2 dips, derivative negative at t2 near 1
  Germ bad = parse_germ("|z2|^2 - |z2|^4 + |z1|^2", 2);
  DomainSpec db{bad, Box::cube(2, Rational(1, 8), Rational(3, 2))};
  auto rb = check_axis_monotone(db, 2, 200);
  REQUIRE_FALSE(rb.monotone);
  CHECK(rb.derivative_value.sign() < 0);
  // the witness re-checks exactly: d/dt2 = 1 - 2 t2 < 0 there
  CHECK(Rational(1) - Rational(2) * rb.witness_point[1] == rb.derivative_value);

  // constant in t2: monotone with derivative identically 0
  Germ c = parse_germ("|z1|^2 - 1", 2);
  CHECK(check_axis_monotone(DomainSpec::with_default_region(c), 2, 50).monotone);

  CHECK_THROWS_AS(check_axis_monotone(log_domain("log|z1| + log|z2|", 2), 1, 10), DomainError);
}

TEST_CASE("local germ at a sphere boundary point") {
  Germ g = parse_germ("|z1|^2 + |z2|^2 - 1", 2);
  auto d = DomainSpec::with_default_region(g);
  auto bp = make_boundary_point(g, {Complex(1), Complex(0)});
  LocalGerm lg = local_germ_at(d, bp, 10);
  CHECK(lg.normal_index == 1);
  CHECK(lg.tangential == std::vector<int>{2});
  CHECK(lg.normal_exponents == std::vector<int>{1, 0});
  // h = t2/2 + t2^2/4 + t2^3/6 + ... from -log(1 - t2)/2
  CHECK(lg.h.coeff({1}) == Rational(1, 2));
  CHECK(lg.h.coeff({2}) == Rational(1, 4));
  CHECK(lg.h.coeff({3}) == Rational(1, 6));
  CHECK(lg.recentred);
  CHECK(lg.psh_sampled);
}

TEST_CASE("local germ for the three-variable modulus corpus germ") {
  Germ g = parse_germ("|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1", 3);
  auto d = DomainSpec::with_default_region(g);
  auto bp = make_boundary_point(g, {Complex(1), Complex(0), Complex(0)});
  LocalGerm lg = local_germ_at(d, bp, 14);
  CHECK(lg.normal_index == 1);
  // leading tangential part: (t2^3 + t3^3 + t2 t3)/2
  CHECK(lg.h.coeff({3, 0}) == Rational(1, 2));
  CHECK(lg.h.coeff({0, 3}) == Rational(1, 2));
  CHECK(lg.h.coeff({1, 1}) == Rational(1, 2));
  // the log-expansion correction starts at weighted degree 8
  CHECK(lg.h.coeff({2, 2}) == Rational(1, 4));
  CHECK(lg.tangential_all_mod());
  Germ tang = lg.tangential_mod_germ();
  CHECK(tang.support.at({1, 1}) == Rational(1, 2));
}

TEST_CASE("local germ: origin and degenerate inputs rejected") {
  Germ g = parse_germ("|z1|^2 + |z2|^2 - 1", 2);
  auto d = DomainSpec::with_default_region(g);
  CHECK_THROWS_WITH_AS(make_boundary_point(g, {Complex(0), Complex(0)}),
                       doctest::Contains("origin"), DomainError);
  CHECK_THROWS_WITH_AS(make_boundary_point(g, {Complex(1), Complex(1)}),
                       doctest::Contains("not on the boundary"), DomainError);

  // degenerate: normal derivative vanishes at the base point
  Germ flat = parse_germ("|z1|^4 - 2*|z1|^2 + 1 + |z2|^2", 2);
  auto dp = DomainSpec::with_default_region(flat);
  auto bp = make_boundary_point(flat, {Complex(1), Complex(0)});
  CHECK_THROWS_WITH_AS(local_germ_at(dp, bp, 8), doctest::Contains("degenerate"), DomainError);
}

TEST_CASE("local germ at an off-unit-modulus boundary point stays exact") {
  // boundary point (3/5 + 4/5 i, 0): t1 = 1 on the sphere |z1|^2 + |z2|^2 = 1
  Germ g = parse_germ("|z1|^2 + |z2|^2 - 1", 2);
  auto d = DomainSpec::with_default_region(g);
  auto bp = make_boundary_point(g, {Complex::parse("3/5+4/5i"), Complex(0)});
  LocalGerm lg = local_germ_at(d, bp, 8);
  CHECK(lg.h.coeff({1}) == Rational(1, 2));

  // scaled sphere 4 t1 + t2 = 4 at (1,0): h = t2/8 + ...
  Germ s = parse_germ("4*|z1|^2 + |z2|^2 - 4", 2);
  auto d2 = DomainSpec::with_default_region(s);
  auto bp2 = make_boundary_point(s, {Complex(1), Complex(0)});
  LocalGerm lg2 = local_germ_at(d2, bp2, 8);
  CHECK(lg2.h.coeff({1}) == Rational(1, 8));
}

TEST_CASE("local germ at an all-nonzero point absorbs the tangential linear part") {
  Germ g = parse_germ("log|z1| + log|z2| + (log|z1| - log|z2|)^4", 2);
  auto d = DomainSpec::with_default_region(g);
  auto bp = make_boundary_point(g, {Complex(1), Complex(1)});
  LocalGerm lg = local_germ_at(d, bp, 16);
  CHECK(lg.normal_index == 1);
  CHECK(lg.normal_exponents == std::vector<int>{1, 1});  // z'_1 = z1 z2
  CHECK(lg.recentred);
  // h = 16 w2^4 + 512 w2^7 + ...
  CHECK(lg.h.coeff({1}) == Rational(0));
  CHECK(lg.h.coeff({4}) == Rational(16));
  CHECK(lg.h.coeff({7}) == Rational(512));
}

TEST_CASE("normalize_coords: description and exponents") {
  Germ g = parse_germ("log|z1| + log|z2| + (log|z1| - log|z2|)^4", 2);
  auto d = DomainSpec::with_default_region(g);
  auto bp = make_boundary_point(g, {Complex(1), Complex(1)});
  auto [cc, lg] = normalize_coords(d, bp, 12);
  CHECK(cc.normal_index == 1);
  CHECK(cc.exponents == std::vector<int>{1, 1});
  CHECK(cc.str() == "(z1*z2, z2)");

  Germ s = parse_germ("|z1|^2 + |z2|^2 - 1", 2);
  auto ds = DomainSpec::with_default_region(s);
  auto [ccs, lgs] = normalize_coords(ds, make_boundary_point(s, {Complex(1), Complex(0)}), 8);
  CHECK(ccs.exponents == std::vector<int>{1, 0});  // identity up to a power of z1
  CHECK(ccs.str() == "(z1, z2)");

  // boundary membership is preserved: h(0) = 0 exactly
  CHECK(lgs.h.constant_term() == Rational(0));
}

TEST_CASE("starlike tests") {
  // h = t2: k_a(t) = a t, increasing
  CHECK(check_starlike(to_germ(parse_expr("|z1|^2", 1)), 16, Rational(1, 2), 5).starlike);

  // positive monomial sum
  Germ h2 = to_germ(parse_expr("|z1|^6 + |z2|^6 + |z1*z2|^2", 2));
  CHECK(check_starlike(h2, 32, Rational(1, 2), 5).starlike);

  // h = t^2 (t - 1/2)^2 with delta = 1/2: decreasing between the roots
  Germ h3 = to_germ(parse_expr("|z1|^4*(|z1|^2 - 1/2)^2", 1));
  auto r = check_starlike(h3, 8, Rational(1, 2), 5);
  REQUIRE_FALSE(r.starlike);
  CHECK(r.witness_t > Rational(1, 4));
  CHECK(r.witness_t < Rational(1, 2));

  CHECK_THROWS_AS(check_starlike(to_germ(parse_expr("|z1|^2 - 1", 1)), 4, Rational(1, 2), 5),
                  DomainError);
}

TEST_CASE("local h log-rewrite has convex sampled hessian for convex domains") {
  Germ g = parse_germ("|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1", 3);
  auto d = DomainSpec::with_default_region(g);
  auto conv = check_log_convex(d, 200, 11);
  REQUIRE(conv.convex());
  auto bp = make_boundary_point(g, {Complex(1), Complex(0), Complex(0)});
  LocalGerm lg = local_germ_at(d, bp, 12);
  CHECK(lg.psh_sampled);
}

TEST_CASE("inequality: adding tail coordinates does not decrease rho") {
  // mixed-case germ at p = (1,1,0): compare rho with and without the tail
  Germ g = parse_germ("|z1|^2 + |z2|^2 + |z2|^2*|z3|^4 + |z3|^8 - 2", 3);
  Box box = Box::cube(3, Rational(1, 16), Rational(1));
  for (const auto& x : sample_box(box, 50, 17)) {
    std::vector<Rational> zeroed = x;
    zeroed[2] = Rational(0);
    CHECK(g.eval(x) >= g.eval(zeroed));
  }
}
