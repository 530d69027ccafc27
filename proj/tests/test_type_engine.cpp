#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "rtype/engine.hpp"
#include "rtype/expr.hpp"

using namespace rtype;

namespace {

Germ parse_germ(const std::string& s, int n) { return to_germ_n(parse_expr(s, n), n); }

const char* kRemark51 = "log|z1| + log|z2| + (log|z1| - log|z2|)^4";
const char* kRemark52 = "|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1";

Disc exp_disc(const std::vector<Complex>& base, const std::vector<Complex>& a, int trunc) {
  std::vector<CSeries> comps;
  for (size_t j = 0; j < base.size(); ++j) {
    CSeries e = series_exp(CSeries::monomial(a[j], 1, trunc));
    for (int k = 0; k <= trunc; ++k) e[k] = e[k] * base[j];
    comps.push_back(std::move(e));
  }
  return make_disc(base, std::move(comps));
}

Rational value_of(const TypeValue& t) {
  REQUIRE(t.kind == TypeValue::Kind::Exact);
  return t.exact;
}

}  // namespace

TEST_CASE("disc construction and orders") {
  std::vector<Complex> base{Complex(1), Complex(0)};
  Disc d = line_disc(base, {Complex(0), Complex(1)}, 8);
  CHECK(d.v() == 1);
  CHECK(d.beta[0] == Disc::kInf);
  CHECK(d.beta[1] == 1);

  // flagged zero component only over a zero base coordinate
  CHECK_THROWS_AS(make_disc({Complex(1)}, {CSeries(4)}, {true}), DomainError);

  // component must pass through the base
  CHECK_THROWS_AS(make_disc({Complex(1)}, {CSeries::constant(Complex(2), 4)}), DomainError);
}

TEST_CASE("compose_order: log germ with exponential disc") {
  Germ g = parse_germ(kRemark51, 2);
  Disc phi = exp_disc({Complex(1), Complex(1)}, {Complex(1), Complex(-1)}, 12);
  auto vo = compose_order(g, phi);
  CHECK(vo == Vanishing::at(4));
}

TEST_CASE("compose_order: sphere local germ with a tangential line") {
  Germ g = parse_germ("|z1|^2 + |z2|^2 - 1", 2);
  auto d = DomainSpec::with_default_region(g);
  auto bp = make_boundary_point(g, {Complex(1), Complex(0)});
  LocalGerm lg = local_germ_at(d, bp, 10);
  Disc phi = line_disc(bp.p, {Complex(0), Complex(1)}, 10);
  CHECK(compose_order(lg, phi) == Vanishing::at(2));
}

TEST_CASE("compose_order: tangential germ of the three-variable example") {
  // leading tangential part (t2^3 + t3^3 + t2 t3)/2 composed with (zeta, zeta)
  Germ g = parse_germ(kRemark52, 3);
  auto d = DomainSpec::with_default_region(g);
  auto bp = make_boundary_point(g, {Complex(1), Complex(0), Complex(0)});
  LocalGerm lg = local_germ_at(d, bp, 12);
  Germ h = lg.tangential_mod_germ();
  Disc phi = line_disc({Complex(0), Complex(0)}, {Complex(1), Complex(1)}, 12);
  CHECK(compose_order(h, phi) == Vanishing::at(4));
}

TEST_CASE("compose_order: log chart errors") {
  Germ g = parse_germ("log|z1| + log|z2|", 2);
  std::vector<CSeries> comps{CSeries::monomial(Complex(1), 1, 6),
                             CSeries::constant(Complex(1), 6)};
  Disc bad = make_disc({Complex(0), Complex(1)}, std::move(comps));
  CHECK_THROWS_WITH_AS(compose_order(g, bad), doctest::Contains("chart"), DomainError);
}

TEST_CASE("newton_order examples") {
  std::map<Expo, Rational> supp{{{3, 0}, Rational(1)}, {{0, 3}, Rational(1)}, {{1, 1}, Rational(1)}};
  CHECK(newton_order(supp, {1, Disc::kInf}, Model::MOD) == 6);
  CHECK(newton_order(supp, {1, 1}, Model::MOD) == 4);
  std::map<Expo, Rational> single{{{1, 1}, Rational(1)}};
  CHECK(newton_order(single, {Disc::kInf, 1}, Model::MOD) == std::nullopt);
  std::map<Expo, Rational> neg{{{1, 0}, Rational(-1)}};
  CHECK_THROWS_AS(newton_order(neg, {1, 1}, Model::MOD), DomainError);
}

TEST_CASE("line type: strict against regular type on the log-model example") {
  Germ g = parse_germ(kRemark51, 2);
  auto bp = make_boundary_point(g, {Complex(1), Complex(1)});
  TypeValue lt = line_type(g, bp);
  CHECK(value_of(lt) == Rational(2));
  REQUIRE(lt.witness.has_value());
  CHECK(compose_order(g, *lt.witness) == Vanishing::at(2));
  CHECK(lt.witness->v() == 1);
}

TEST_CASE("line type: modulus examples") {
  Germ g = parse_germ(kRemark52, 3);
  auto bp = make_boundary_point(g, {Complex(1), Complex(0), Complex(0)});
  TypeValue lt = line_type(g, bp);
  CHECK(value_of(lt) == Rational(6));
  REQUIRE(lt.witness.has_value());
  CHECK(compose_order(g, *lt.witness) == Vanishing::at(6));

  Germ s = parse_germ("|z1|^2 + |z2|^2 - 1", 2);
  auto bs = make_boundary_point(s, {Complex(1), Complex(0)});
  CHECK(value_of(line_type(s, bs)) == Rational(2));
}

TEST_CASE("regular type: log-model example with witness") {
  Germ g = parse_germ(kRemark51, 2);
  auto bp = make_boundary_point(g, {Complex(1), Complex(1)});
  TypeValue rt = regular_type(g, bp);
  CHECK(value_of(rt) == Rational(4));
  REQUIRE(rt.witness.has_value());
  CHECK(rt.witness->v() == 1);
  CHECK(compose_order(g, *rt.witness) == Vanishing::at(4));
}

TEST_CASE("regular type: modulus examples") {
  Germ g = parse_germ(kRemark52, 3);
  auto bp = make_boundary_point(g, {Complex(1), Complex(0), Complex(0)});
  TypeValue rt = regular_type(g, bp);
  CHECK(value_of(rt) == Rational(6));
  REQUIRE(rt.witness.has_value());
  // the reduced witness (1, zeta, 0)
  CHECK(rt.witness->beta[0] == Disc::kInf);
  CHECK(rt.witness->beta[1] == 1);
  CHECK(rt.witness->zero_flag[2]);
  CHECK(compose_order(g, *rt.witness) == Vanishing::at(6));

  Germ s = parse_germ("|z1|^2 + |z2|^2 - 1", 2);
  auto bs = make_boundary_point(s, {Complex(1), Complex(0)});
  CHECK(value_of(regular_type(s, bs)) == Rational(2));
}

TEST_CASE("regular type: infinite cylinder reports infinity with its witness") {
  Germ g = parse_germ("|z1|^2 + |z2|^2 - 1", 3);
  auto bp = make_boundary_point(g, {Complex(1), Complex(0), Complex(0)});
  TypeValue rt = regular_type(g, bp);
  REQUIRE(rt.is_infinite());
  REQUIRE(rt.witness.has_value());
  CHECK(rt.witness->zero_flag[1]);   // (1, 0, zeta)
  CHECK(rt.witness->beta[2] == 1);
  CHECK(compose_order(g, *rt.witness).zero_up_to_truncation);
}

TEST_CASE("variety type equals regular type and cross-checks") {
  Germ g1 = parse_germ(kRemark51, 2);
  auto b1 = make_boundary_point(g1, {Complex(1), Complex(1)});
  CHECK(value_of(variety_type(g1, b1)) == Rational(4));

  Germ g2 = parse_germ(kRemark52, 3);
  auto b2 = make_boundary_point(g2, {Complex(1), Complex(0), Complex(0)});
  CHECK(value_of(variety_type(g2, b2)) == Rational(6));

  Germ s = parse_germ("|z1|^2 + |z2|^2 - 1", 2);
  auto bs = make_boundary_point(s, {Complex(1), Complex(0)});
  CHECK(value_of(variety_type(s, bs)) == Rational(2));
}

TEST_CASE("jet oracle examples") {
  // max_deg 1, lattice {0,1}: lower bound 6 on the three-variable example
  Germ g = parse_germ(kRemark52, 3);
  auto bp = make_boundary_point(g, {Complex(1), Complex(0), Complex(0)});
  OracleConfig cfg;
  cfg.max_deg = 1;
  cfg.lattice = {Complex(0), Complex(1)};
  cfg.budget = 1000;
  TypeValue ov = jet_oracle(g, bp, cfg);
  CHECK(ov.lo == Rational(6));
  REQUIRE(ov.witness.has_value());
  CHECK(compose_order(g, *ov.witness) == Vanishing::at(6));

  // sphere: 2 under any settings
  Germ s = parse_germ("|z1|^2 + |z2|^2 - 1", 2);
  auto bs = make_boundary_point(s, {Complex(1), Complex(0)});
  OracleConfig c2;
  c2.max_deg = 2;
  c2.budget = 100000;
  CHECK(jet_oracle(s, bs, c2).lo == Rational(2));

  // log-model example: 4 via (1 + z + z^2/2, 1 - z + z^2/2)
  Germ r = parse_germ(kRemark51, 2);
  auto br = make_boundary_point(r, {Complex(1), Complex(1)});
  OracleConfig c3;
  c3.max_deg = 2;
  c3.lattice = {Complex(0), Complex(1), Complex(-1), Complex(Rational(1, 2)),
                Complex(Rational(-1, 2))};
  c3.budget = 100000;
  TypeValue o3 = jet_oracle(r, br, c3);
  CHECK(o3.lo == Rational(4));
  REQUIRE(o3.witness.has_value());
  CHECK(o3.witness->v() == 1);
}

TEST_CASE("reduce_disc examples") {
  Germ s = parse_germ("|z1|^2 + |z2|^2 - 1", 2);
  auto d = DomainSpec::with_default_region(s);
  auto bp = make_boundary_point(s, {Complex(1), Complex(0)});
  LocalGerm lg = local_germ_at(d, bp, 12);

  // phi = (1 + zeta^2, zeta): v = 1, r o phi has order 2
  std::vector<CSeries> comps;
  comps.push_back(CSeries::constant(Complex(1), 12) + CSeries::monomial(Complex(1), 2, 12));
  comps.push_back(CSeries::monomial(Complex(1), 1, 12));
  Disc phi = make_disc(bp.p, std::move(comps));
  ReduceResult rr = reduce_disc(lg, phi);
  CHECK(rr.v_phi == 1);
  CHECK(rr.v_reduced == 1);
  CHECK(rr.order_phi == 2);
  CHECK(rr.order_reduced == 2);
  CHECK(rr.reduced.beta[0] == Disc::kInf);

  // already reduced: identity on the tangential part
  ReduceResult rr2 = reduce_disc(lg, rr.reduced);
  CHECK(rr2.reduced.components[1] == rr.reduced.components[1]);

  // the three-variable example: order grows from 3 to 6
  Germ g = parse_germ(kRemark52, 3);
  auto dg = DomainSpec::with_default_region(g);
  auto bg = make_boundary_point(g, {Complex(1), Complex(0), Complex(0)});
  LocalGerm lgg = local_germ_at(dg, bg, 14);
  std::vector<CSeries> c3;
  c3.push_back(CSeries::constant(Complex(1), 14) + CSeries::monomial(Complex(1), 3, 14));
  c3.push_back(CSeries::monomial(Complex(1), 1, 14));
  c3.push_back(CSeries(14));
  Disc phi3 = make_disc(bg.p, std::move(c3));
  ReduceResult rr3 = reduce_disc(lgg, phi3);
  CHECK(rr3.order_phi == 3);
  CHECK(rr3.order_reduced == 6);

  // precondition violation: v(r o phi) = v(phi)
  Disc fast = line_disc(bp.p, {Complex(1), Complex(0)}, 12);
  CHECK_THROWS_WITH_AS(reduce_disc(lg, fast), doctest::Contains("requires"), DomainError);
}

TEST_CASE("property: reduction never breaks the claim inequalities") {
  Germ g = parse_germ(kRemark52, 3);
  auto d = DomainSpec::with_default_region(g);
  auto bp = make_boundary_point(g, {Complex(1), Complex(0), Complex(0)});
  LocalGerm lg = local_germ_at(d, bp, 14);
  std::mt19937_64 rng(31);
  auto rand_c = [&]() {
    long re = static_cast<long>(rng() % 5) - 2;
    long im = static_cast<long>(rng() % 5) - 2;
    return Complex(Rational(re), Rational(im));
  };
  int done = 0;
  while (done < 50) {
    // random disc through p with nonvanishing first component
    std::vector<CSeries> comps;
    CSeries c0 = CSeries::constant(Complex(1), 14);
    for (int k = 2; k <= 4; ++k) c0[k] = rand_c();
    comps.push_back(c0);
    for (int j = 1; j < 3; ++j) {
      CSeries cj(14);
      for (int k = 1; k <= 3; ++k) cj[k] = rand_c();
      comps.push_back(cj);
    }
    Disc phi = make_disc(bp.p, std::move(comps));
    if (phi.v() == Disc::kInf) continue;
    Vanishing vo = compose_order(lg, phi);
    int order = vo.known() ? vo.value : vo.value + 1;
    if (order <= phi.v()) continue;  // precondition not met
    ReduceResult rr = reduce_disc(lg, phi);
    CHECK(rr.v_reduced == rr.v_phi);
    CHECK(rr.order_reduced >= rr.order_phi);
    ++done;
  }
}

TEST_CASE("q-types") {
  Germ g = parse_germ(kRemark52, 3);
  auto bp = make_boundary_point(g, {Complex(1), Complex(0), Complex(0)});
  QTypeTuple qt = q_types(g, bp);
  REQUIRE(qt.values.size() == 3);
  CHECK(value_of(qt.values[0]) == Rational(1));
  CHECK(value_of(qt.values[1]) == Rational(4));
  CHECK(value_of(qt.values[2]) == Rational(6));

  Germ s = parse_germ("|z1|^2 + |z2|^2 - 1", 2);
  auto bs = make_boundary_point(s, {Complex(1), Complex(0)});
  QTypeTuple qs = q_types(s, bs);
  REQUIRE(qs.values.size() == 2);
  CHECK(value_of(qs.values[0]) == Rational(1));
  CHECK(value_of(qs.values[1]) == Rational(2));

  Germ dec = parse_germ("|z1|^2 + |z2|^8 + |z3|^12 - 1", 3);
  auto bd = make_boundary_point(dec, {Complex(1), Complex(0), Complex(0)});
  QTypeTuple qd = q_types(dec, bd);
  CHECK(value_of(qd.values[0]) == Rational(1));
  CHECK(value_of(qd.values[1]) == Rational(8));
  CHECK(value_of(qd.values[2]) == Rational(12));
}

TEST_CASE("multitype") {
  Germ g = parse_germ(kRemark52, 3);
  auto bp = make_boundary_point(g, {Complex(1), Complex(0), Complex(0)});
  Multitype mt = multitype(g, bp);
  REQUIRE(mt.entries.size() == 3);
  CHECK(mt.entries[0] == Rational(1));
  CHECK(mt.entries[1] == Rational(4));
  CHECK(mt.entries[2] == Rational(4));

  Germ s = parse_germ("|z1|^2 + |z2|^2 - 1", 2);
  auto bs = make_boundary_point(s, {Complex(1), Complex(0)});
  Multitype ms = multitype(s, bs);
  CHECK(ms.entries.size() == 2);
  CHECK(ms.entries[1] == Rational(2));

  Germ dec = parse_germ("|z1|^2 + |z2|^8 + |z3|^12 - 1", 3);
  auto bd = make_boundary_point(dec, {Complex(1), Complex(0), Complex(0)});
  Multitype md = multitype(dec, bd);
  CHECK(md.entries[1] == Rational(8));
  CHECK(md.entries[2] == Rational(12));

  // mixed-sign tangential germs are out of the monomial-sum scope
  Germ bad = parse_germ("|z1|^2 - |z2|^4 + |z2|^2 - 1", 2);
  auto bb = make_boundary_point(bad, {Complex(1), Complex(0)});
  CHECK_THROWS_AS(multitype(bad, bb), DomainError);
}

TEST_CASE("multitype is dominated by the q-type tuple, strictly somewhere") {
  Germ g = parse_germ(kRemark52, 3);
  auto bp = make_boundary_point(g, {Complex(1), Complex(0), Complex(0)});
  Multitype mt = multitype(g, bp);
  QTypeTuple qt = q_types(g, bp);
  bool strict = false;
  for (size_t i = 0; i < mt.entries.size(); ++i) {
    Rational dq = value_of(qt.values[i]);
    CHECK(mt.entries[i] <= dq);
    if (mt.entries[i] < dq) strict = true;
  }
  CHECK(strict);
}

TEST_CASE("ordering chain: line <= regular = variety") {
  struct Case {
    std::string rho;
    int n;
    std::vector<Complex> p;
  };
  std::vector<Case> cases = {
      {kRemark51, 2, {Complex(1), Complex(1)}},
      {kRemark52, 3, {Complex(1), Complex(0), Complex(0)}},
      {"|z1|^2 + |z2|^2 - 1", 2, {Complex(1), Complex(0)}},
      {"|z1|^2 + |z2|^8 + |z3|^12 - 1", 3, {Complex(1), Complex(0), Complex(0)}},
  };
  for (const auto& c : cases) {
    Germ g = parse_germ(c.rho, c.n);
    auto bp = make_boundary_point(g, c.p);
    Rational lt = value_of(line_type(g, bp));
    Rational rt = value_of(regular_type(g, bp));
    Rational vt = value_of(variety_type(g, bp));
    CHECK(lt <= rt);
    CHECK(rt == vt);
  }
  // strictness on the log-model example
  Germ g = parse_germ(kRemark51, 2);
  auto bp = make_boundary_point(g, {Complex(1), Complex(1)});
  CHECK(value_of(line_type(g, bp)) < value_of(regular_type(g, bp)));
}

TEST_CASE("coordinate invariance: rotations and the monomial change") {
  // rotations z_j -> e^{i theta} z_j with rational unit modulus
  Germ g = parse_germ(kRemark52, 3);
  Complex rot = Complex::parse("3/5+4/5i");
  auto bp = make_boundary_point(g, {rot, Complex(0), Complex(0)});
  CHECK(value_of(variety_type(g, bp)) == Rational(6));

  // transformed log-model germ under (z1, z2) -> (z1 z2, z2):
  // u1 + (u1 - 2 u2)^4 pulled back equals the original's type
  Germ orig = parse_germ(kRemark51, 2);
  auto b0 = make_boundary_point(orig, {Complex(1), Complex(1)});
  Germ moved = parse_germ("log|z1| + (log|z1| - 2*log|z2|)^4", 2);
  auto b1 = make_boundary_point(moved, {Complex(1), Complex(1)});
  CHECK(value_of(regular_type(orig, b0)) == value_of(regular_type(moved, b1)));
}

TEST_CASE("property: no-cancellation equivalence of newton and composition") {
  std::mt19937_64 rng(37);
  int done = 0;
  while (done < 100) {
    int n = 2 + static_cast<int>(rng() % 2);  // 2 or 3 variables
    // random positive support
    std::map<Expo, Rational> supp;
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      Expo e(static_cast<size_t>(n));
      int total = 0;
      for (int j = 0; j < n; ++j) {
        e[static_cast<size_t>(j)] = static_cast<int>(rng() % 4);
        total += e[static_cast<size_t>(j)];
      }
      if (total == 0 || total > 6) continue;
      supp[e] = Rational(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3));
    }
    if (supp.empty()) continue;
    std::vector<int> beta(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      int b = static_cast<int>(rng() % 6);  // 0 means infinite component
      beta[static_cast<size_t>(j)] = b == 0 ? Disc::kInf : b;
    }
    auto expected = newton_order(supp, beta, Model::MOD);

    // germ over t-variables with base at the origin hyperplane point: use a
    // synthetic germ in n coordinates with the given support
    Germ h;
    h.model = Model::MOD;
    h.n = n;
    h.support = supp;
    std::vector<Complex> zero(static_cast<size_t>(n));
    std::vector<CSeries> comps;
    static const std::vector<Complex> leads = {Complex(1), Complex(2), Complex(Rational(1, 2)),
                                               Complex(Rational(0), Rational(1)),
                                               Complex(Rational(1), Rational(1))};
    int trunc = 62;
    for (int j = 0; j < n; ++j) {
      if (beta[static_cast<size_t>(j)] == Disc::kInf) {
        comps.push_back(CSeries(trunc));
      } else {
        comps.push_back(CSeries::monomial(leads[static_cast<size_t>(
                                              (rng() % leads.size()))],
                                          beta[static_cast<size_t>(j)], trunc));
      }
    }
    Disc phi = make_disc(zero, std::move(comps));
    Vanishing vo = compose_order(h, phi);
    if (!expected) {
      CHECK(vo.zero_up_to_truncation);
    } else if (*expected <= trunc) {
      CHECK(vo == Vanishing::at(static_cast<int>(*expected)));
    }
    ++done;
  }
}

TEST_CASE("property: circle averages respect the sub-mean-value inequality") {
  Germ g = parse_germ(kRemark52, 3);
  auto d = DomainSpec::with_default_region(g);
  auto bp = make_boundary_point(g, {Complex(1), Complex(0), Complex(0)});
  LocalGerm lg = local_germ_at(d, bp, 12);
  Germ h = lg.tangential_mod_germ();

  std::mt19937_64 rng(41);
  auto rand_c = [&]() {
    long re = static_cast<long>(rng() % 5) - 2;
    long im = static_cast<long>(rng() % 5) - 2;
    return Complex(Rational(re), Rational(im));
  };
  for (int it = 0; it < 20; ++it) {
    std::vector<CSeries> comps;
    for (int j = 0; j < 2; ++j) {
      CSeries cj(10);
      for (int k = 1; k <= 3; ++k) cj[k] = rand_c();
      comps.push_back(cj);
    }
    Disc phi = make_disc({Complex(0), Complex(0)}, std::move(comps));
    CHerm comp = compose_herm(h, phi);
    // trapezoid average over |zeta| = 1/8 must dominate the center value
    const int M = 64;
    double avg = 0;
    for (int m = 0; m < M; ++m) {
      double th = 2.0 * M_PI * m / M;
      std::complex<double> z = std::polar(0.125, th);
      std::complex<double> acc = 0;
      for (int dd = 0; dd <= comp.trunc_order(); ++dd)
        for (int k = 0; k <= dd; ++k) {
          const Complex& c = comp.at(dd - k, k);
          if (c.is_zero()) continue;
          acc += std::complex<double>(c.re().to_double(), c.im().to_double()) *
                 std::pow(z, dd - k) * std::pow(std::conj(z), k);
        }
      avg += acc.real();
    }
    avg /= M;
    double center = comp.at(0, 0).re().to_double();
    CHECK(avg >= center - 1e-9);
  }
}

TEST_CASE("property: freezing the tail does not lower the composition order") {
  Germ g = parse_germ("|z1|^2 + |z2|^2 + |z2|^2*|z3|^4 + |z3|^8 - 2", 3);
  auto bp = make_boundary_point(g, {Complex(1), Complex(1), Complex(0)});
  std::mt19937_64 rng(43);
  auto rand_c = [&]() {
    long re = static_cast<long>(rng() % 3) - 1;
    long im = static_cast<long>(rng() % 3) - 1;
    return Complex(Rational(re), Rational(im));
  };
  for (int it = 0; it < 25; ++it) {
    std::vector<CSeries> comps;
    for (int j = 0; j < 3; ++j) {
      CSeries cj = CSeries::constant(bp.p[static_cast<size_t>(j)], 12);
      for (int k = 1; k <= 2; ++k) cj[k] = rand_c();
      comps.push_back(cj);
    }
    Disc with_tail = make_disc(bp.p, std::move(comps));
    std::vector<CSeries> cut = with_tail.components;
    cut[2] = CSeries(12);
    Disc without_tail = make_disc(bp.p, std::move(cut));
    auto vo_with = compose_order(g, with_tail);
    auto vo_without = compose_order(g, without_tail);
    int a = vo_with.known() ? vo_with.value : 1000;
    int b = vo_without.known() ? vo_without.value : 1000;
    CHECK(b >= a);
  }
}
