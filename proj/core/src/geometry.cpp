#include "rtype/geometry.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "rtype/sturm.hpp"

namespace rtype {

std::vector<std::vector<Rational>> sample_box(const Box& box, int count, std::uint64_t seed) {
  if (!box.nondegenerate()) throw DomainError("empty or degenerate sampling region");
  std::mt19937_64 rng(seed);
  const long kGrid = 256;
  std::vector<std::vector<Rational>> pts;
  pts.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<Rational> x(box.lo.size());
    for (size_t j = 0; j < x.size(); ++j) {
      long num = static_cast<long>(rng() % static_cast<unsigned long>(kGrid + 1));
      x[j] = box.lo[j] + (box.hi[j] - box.lo[j]) * Rational(num, kGrid);
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

DomainSpec DomainSpec::with_default_region(Germ g) {
  Box box = g.model == Model::MOD ? Box::cube(g.n, Rational(1, 8), Rational(2))
                                  : Box::cube(g.n, Rational(-1), Rational(1));
  return DomainSpec{std::move(g), std::move(box)};
}

BoundaryPoint make_boundary_point(const Germ& rho, std::vector<Complex> p) {
  if (static_cast<int>(p.size()) != rho.n)
    throw DomainError("point dimension does not match the domain");
  bool all_zero = true;
  for (const auto& z : p)
    if (!z.is_zero()) all_zero = false;
  if (all_zero)
    throw DomainError("the origin cannot be a boundary point of a smooth Reinhardt domain");
  Rational res = boundary_residual(rho, p);
  if (!res.is_zero())
    throw DomainError("point is not on the boundary: rho(p) = " + res.str());
  BoundaryPoint bp;
  bp.p = std::move(p);
  for (size_t j = 0; j < bp.p.size(); ++j) {
    if (bp.p[j].is_zero())
      bp.zero_set.push_back(static_cast<int>(j) + 1);
    else
      ++bp.k;
  }
  return bp;
}

// ---------------------------------------------------------------------------

std::optional<PsdWitness> psd_violation(const std::vector<std::vector<Rational>>& m) {
  int n = static_cast<int>(m.size());
  // determinant of a principal submatrix by gaussian elimination over Q
  auto minor_det = [&](const std::vector<int>& rows) {
    int k = static_cast<int>(rows.size());
    std::vector<std::vector<Rational>> a(static_cast<size_t>(k),
                                         std::vector<Rational>(static_cast<size_t>(k)));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            m[static_cast<size_t>(rows[static_cast<size_t>(i)] - 1)]
             [static_cast<size_t>(rows[static_cast<size_t>(j)] - 1)];
    Rational det(1);
    for (int c = 0; c < k; ++c) {
      int pivot = -1;
      for (int r = c; r < k; ++r)
        if (!a[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) return Rational(0);
      if (pivot != c) {
        std::swap(a[static_cast<size_t>(pivot)], a[static_cast<size_t>(c)]);
        det = -det;
      }
      det *= a[static_cast<size_t>(c)][static_cast<size_t>(c)];
      for (int r = c + 1; r < k; ++r) {
        if (a[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero()) continue;
        Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(c)] /
                     a[static_cast<size_t>(c)][static_cast<size_t>(c)];
        for (int cc = c; cc < k; ++cc)
          a[static_cast<size_t>(r)][static_cast<size_t>(cc)] -=
              f * a[static_cast<size_t>(c)][static_cast<size_t>(cc)];
      }
    }
    return det;
  };

  // all principal minors, by size then lexicographic index set
  for (int size = 1; size <= n; ++size) {
    std::vector<int> idx(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<size_t>(i)] = i + 1;
    while (true) {
      Rational d = minor_det(idx);
      if (d.sign() < 0) return PsdWitness{idx, d};
      int pos = size - 1;
      while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - (size - 1 - pos)) --pos;
      if (pos < 0) break;
      ++idx[static_cast<size_t>(pos)];
      for (int i = pos + 1; i < size; ++i)
        idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
    }
  }
  return std::nullopt;
}

namespace {

// Hessian in u-coordinates of the log rewrite of a germ, exact at a sample
// point given in the germ's own variables (t for MOD, u for LOG).
std::vector<std::vector<Rational>> log_hessian_at(const Germ& g, const std::vector<Rational>& x) {
  int n = g.n;
  std::vector<std::vector<Rational>> h(static_cast<size_t>(n),
                                       std::vector<Rational>(static_cast<size_t>(n)));
  if (g.model == Model::LOG) return g.hessian(x);
  // t_j = e^(2 u_j): d/du_i = 2 t_i d/dt_i, so
  // H[i][j] = 4 t_i t_j rho_{t_i t_j} + (i==j) 4 t_i rho_{t_i},
  // and for a monomial sum this collapses to sum c_a (2a_i)(2a_j) t^a.
  for (const auto& [e, c] : g.support) {
    Rational tm = c;
    for (size_t j = 0; j < e.size(); ++j)
      if (e[j] > 0) tm *= x[j].pow(e[j]);
    for (int i = 0; i < n; ++i) {
      if (e[static_cast<size_t>(i)] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (e[static_cast<size_t>(j)] == 0) continue;
        h[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
            tm * Rational(4) * Rational(e[static_cast<size_t>(i)]) *
            Rational(e[static_cast<size_t>(j)]);
      }
    }
  }
  return h;
}

}  // namespace

ConvexityResult check_log_convex(const DomainSpec& d, int samples, std::uint64_t seed) {
  if (!d.region_hint.nondegenerate()) throw DomainError("empty region");
  const Germ& g = d.rho;

  if (g.model == Model::LOG && g.total_degree() <= 2) {
    // constant Hessian: a single exact global decision
    std::vector<Rational> zero(static_cast<size_t>(g.n));
    auto h = g.hessian(zero);
    auto viol = psd_violation(h);
    if (!viol) return {ConvexityKind::certified_quadratic, {}, {}, Rational(0)};
    std::vector<Rational> center(static_cast<size_t>(g.n));
    for (int j = 0; j < g.n; ++j)
      center[static_cast<size_t>(j)] =
          (d.region_hint.lo[static_cast<size_t>(j)] + d.region_hint.hi[static_cast<size_t>(j)]) *
          Rational(1, 2);
    return {ConvexityKind::not_convex, center, viol->rows, viol->det};
  }

  for (const auto& x : sample_box(d.region_hint, samples, seed)) {
    auto h = log_hessian_at(g, x);
    auto viol = psd_violation(h);
    if (viol) return {ConvexityKind::not_convex, x, viol->rows, viol->det};
  }
  return {ConvexityKind::convex_sampled, {}, {}, Rational(0)};
}

MonotoneResult check_axis_monotone(const DomainSpec& d, int j, int samples) {
  if (d.rho.model != Model::MOD)
    throw DomainError("axis monotonicity concerns the modulus model (the axis is not "
                      "in the log chart)");
  if (j < 1 || j > d.n()) throw DomainError("axis index out of range");
  Germ dj = d.rho.partial(j - 1);
  for (const auto& x : sample_box(d.region_hint, samples, /*seed=*/1729)) {
    Rational v = dj.eval(x);
    if (v.sign() < 0) return {false, x, v};
  }
  return {true, {}, Rational(0)};
}

// ---------------------------------------------------------------------------

int LocalGerm::var_of_coord(int coord) const {
  for (size_t i = 0; i < tangential.size(); ++i)
    if (tangential[i] == coord) return static_cast<int>(i);
  return -1;
}

bool LocalGerm::tangential_all_mod() const {
  for (int w : h.weights())
    if (w != 2) return false;
  return true;
}

Germ LocalGerm::tangential_mod_germ() const {
  if (!tangential_all_mod())
    throw DomainError("tangential part mixes log and modulus variables");
  Germ g;
  g.model = Model::MOD;
  g.n = static_cast<int>(tangential.size());
  for (const auto& [e, c] : h.terms()) g.add_term(e, c);
  return g;
}

LocalGerm local_germ_at(const DomainSpec& d, const BoundaryPoint& bp, int trunc) {
  const Germ& rho = d.rho;
  int n = rho.n;
  if (bp.k == 0)
    throw DomainError("the origin cannot be a boundary point of a smooth Reinhardt domain");
  if (rho.model == Model::LOG && bp.on_axis())
    throw DomainError("log-model germ is not a chart at a point on the coordinate axes");

  // Normal index: maximize |d rho/d t_j(p) * t_j(p)| over nonzero coords.
  std::vector<Rational> tp = moduli_squared(bp.p);
  std::vector<Rational> grad;
  if (rho.model == Model::MOD) {
    grad = rho.gradient(tp);
  } else {
    std::vector<Rational> zero(static_cast<size_t>(n));
    grad = rho.gradient(zero);
  }
  int normal = -1;
  Rational best(0);
  for (int j = 1; j <= n; ++j) {
    if (bp.p[static_cast<size_t>(j - 1)].is_zero()) continue;
    Rational score = rho.model == Model::MOD
                         ? (grad[static_cast<size_t>(j - 1)] * tp[static_cast<size_t>(j - 1)]).abs()
                         : grad[static_cast<size_t>(j - 1)].abs();
    if (normal < 0 || score > best) {
      normal = j;
      best = score;
    }
  }
  if (normal < 0 || best.is_zero())
    throw DomainError("degenerate boundary: every candidate normal derivative vanishes at p");

  // Variable table for the solve: slot 0 = w_normal, then tangential slots.
  std::vector<int> tangential;
  for (int j = 1; j <= n; ++j)
    if (j != normal) tangential.push_back(j);
  std::vector<int> weights(static_cast<size_t>(n));
  weights[0] = 1;
  for (size_t i = 0; i < tangential.size(); ++i) {
    int coord = tangential[i];
    weights[i + 1] = bp.p[static_cast<size_t>(coord - 1)].is_zero() ? 2 : 1;
  }

  MultiSeries F(weights, trunc);
  if (rho.model == Model::MOD) {
    // rho(t) with t_i = t_i(p) e^(2 w_i) on nonzero coords, plain t_j on axes.
    std::vector<MultiSeries> exp2w;  // e^(2 w_slot) per nonzero slot, lazily
    auto slot_of_coord = [&](int coord) {
      if (coord == normal) return 0;
      for (size_t i = 0; i < tangential.size(); ++i)
        if (tangential[i] == coord) return static_cast<int>(i) + 1;
      return -1;
    };
    std::vector<MultiSeries> exp_cache(static_cast<size_t>(n), MultiSeries(weights, trunc));
    std::vector<bool> exp_ready(static_cast<size_t>(n), false);
    auto exp_of = [&](int coord) -> const MultiSeries& {
      size_t idx = static_cast<size_t>(coord - 1);
      if (!exp_ready[idx]) {
        int slot = slot_of_coord(coord);
        exp_cache[idx] = MultiSeries::variable(slot, weights, trunc).scaled(Rational(2)).exp();
        exp_ready[idx] = true;
      }
      return exp_cache[idx];
    };
    F = MultiSeries::constant(rho.constant, weights, trunc);
    for (const auto& [e, c] : rho.support) {
      Rational coeff = c;
      MultiSeries mono = MultiSeries::constant(Rational(1), weights, trunc);
      for (int j = 1; j <= n; ++j) {
        int ej = e[static_cast<size_t>(j - 1)];
        if (ej == 0) continue;
        if (bp.p[static_cast<size_t>(j - 1)].is_zero()) {
          Expo v(static_cast<size_t>(n));
          v[static_cast<size_t>(slot_of_coord(j))] = ej;
          MultiSeries tpow(weights, trunc);
          tpow.add_term(v, Rational(1));
          mono = mono * tpow;
        } else {
          coeff *= tp[static_cast<size_t>(j - 1)].pow(ej);
          mono = mono * exp_of(j).pow(ej);
        }
      }
      F = F + mono.scaled(coeff);
    }
  } else {
    // polynomial in the u-displacements (u(p) = 0 on the unit torus)
    auto slot_of_coord = [&](int coord) {
      if (coord == normal) return 0;
      for (size_t i = 0; i < tangential.size(); ++i)
        if (tangential[i] == coord) return static_cast<int>(i) + 1;
      return -1;
    };
    F = MultiSeries::constant(rho.constant, weights, trunc);
    for (const auto& [e, c] : rho.support) {
      Expo v(static_cast<size_t>(n));
      for (int j = 1; j <= n; ++j) {
        int ej = e[static_cast<size_t>(j - 1)];
        if (ej) v[static_cast<size_t>(slot_of_coord(j))] = ej;
      }
      MultiSeries mono(weights, trunc);
      mono.add_term(v, Rational(1));
      F = F + mono.scaled(c);
    }
  }

  if (!F.constant_term().is_zero())
    throw DomainError("internal: boundary residual nonzero in local solve");

  // c * w0 coefficient
  Expo w0(static_cast<size_t>(n));
  w0[0] = 1;
  Rational cw = F.coeff(w0);
  if (cw.is_zero())
    throw DomainError("degenerate boundary: normal derivative vanishes in the solve");

  // Fixed point w0 = -(F(w0,.) - cw * w0)/cw, gaining one weighted order per step.
  MultiSeries G(weights, trunc);  // zero
  for (int it = 0; it <= trunc + 1; ++it) {
    MultiSeries FG = F.substitute(0, G);
    MultiSeries next = (G - FG.scaled(cw.inv()));
    // next = G - (F(G) )/cw; fixed point when F(G) = 0
    if (FG.is_zero()) break;
    G = next;
  }
  MultiSeries residual = F.substitute(0, G);
  if (!residual.is_zero())
    throw DomainError("implicit solve did not converge at this truncation");

  // Absorb the linear part over nonzero tangential slots.
  std::vector<Rational> gcoef(static_cast<size_t>(n));  // slot -> linear coefficient of G
  for (size_t i = 1; i < static_cast<size_t>(n); ++i) {
    if (weights[i] != 1) continue;
    Expo e(static_cast<size_t>(n));
    e[i] = 1;
    gcoef[i] = G.coeff(e);
  }
  // Denominator-clearing to integer exponents A: A0 = D, A_i = -D g_i.
  mpz_class D(1);
  for (size_t i = 1; i < static_cast<size_t>(n); ++i)
    if (!gcoef[i].is_zero()) {
      mpz_class den = gcoef[i].den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), D.get_mpz_t(), den.get_mpz_t());
      D = D / g * den;
    }
  Rational Dr{mpq_class(D)};

  MultiSeries ell(weights, trunc);
  for (size_t i = 1; i < static_cast<size_t>(n); ++i) {
    if (gcoef[i].is_zero()) continue;
    Expo e(static_cast<size_t>(n));
    e[i] = 1;
    ell.add_term(e, gcoef[i]);
  }
  MultiSeries h_full = (ell - G).scaled(Dr);  // h = -D (G - ell)

  LocalGerm lg;
  lg.n = n;
  lg.normal_index = normal;
  lg.base = bp.p;
  lg.tangential = tangential;
  lg.normal_exponents.assign(static_cast<size_t>(n), 0);
  lg.normal_exponents[static_cast<size_t>(normal - 1)] =
      static_cast<int>(mpz_class(Dr.num()).get_si());
  for (size_t i = 0; i < tangential.size(); ++i) {
    Rational a = -(Dr * gcoef[i + 1]);
    lg.normal_exponents[static_cast<size_t>(tangential[i] - 1)] =
        static_cast<int>(mpz_class(a.num()).get_si());
  }

  // Re-index h from the solve table (slot 0 unused now) to tangential vars.
  std::vector<int> tweights(weights.begin() + 1, weights.end());
  MultiSeries h(tweights, trunc);
  for (const auto& [e, c] : h_full.terms()) {
    if (e[0] != 0) throw DomainError("internal: solve result still depends on the normal");
    Expo te(e.begin() + 1, e.end());
    h.add_term(te, c);
  }
  lg.h = h;

  // Property flags.
  lg.recentred = h.constant_term().is_zero();
  for (size_t i = 0; i < tweights.size() && lg.recentred; ++i) {
    if (tweights[i] != 1) continue;
    Expo e(tweights.size());
    e[i] = 1;
    if (!h.coeff(e).is_zero()) lg.recentred = false;
  }
  lg.rotation_invariant = true;
  // Sampled convexity of the log rewrite of h near 0.
  lg.psh_sampled = true;
  {
    Box small;
    small.lo.assign(tweights.size(), Rational(-1, 16));
    small.hi.assign(tweights.size(), Rational(1, 16));
    for (size_t i = 0; i < tweights.size(); ++i)
      if (tweights[i] == 2) small.lo[i] = Rational(1, 64);  // t-vars stay positive
    for (const auto& x : sample_box(small, 12, /*seed=*/7)) {
      auto hess = local_h_log_hessian(lg, x);
      if (psd_violation(hess)) {
        lg.psh_sampled = false;
        break;
      }
    }
  }
  return lg;
}

std::vector<std::vector<Rational>> local_h_log_hessian(const LocalGerm& lg,
                                                       const std::vector<Rational>& x) {
  const MultiSeries& h = lg.h;
  int m = h.nvars();
  const auto& w = h.weights();
  // first and second partials of the monomial sum at x
  std::vector<Rational> d1(static_cast<size_t>(m));
  std::vector<std::vector<Rational>> d2(static_cast<size_t>(m),
                                        std::vector<Rational>(static_cast<size_t>(m)));
  for (const auto& [e, c] : h.terms()) {
    auto mono_partial = [&](const Expo& ee) {
      Rational v = c;
      for (size_t j = 0; j < ee.size(); ++j)
        if (ee[j] > 0) v *= x[j].pow(ee[j]);
      return v;
    };
    for (int i = 0; i < m; ++i) {
      int ei = e[static_cast<size_t>(i)];
      if (ei == 0) continue;
      Expo de = e;
      de[static_cast<size_t>(i)] -= 1;
      d1[static_cast<size_t>(i)] += Rational(ei) * mono_partial(de);
      for (int j = i; j < m; ++j) {
        Expo dee = de;
        int ej = dee[static_cast<size_t>(j)];
        if (ej == 0) continue;
        dee[static_cast<size_t>(j)] -= 1;
        Rational v = Rational(ei) * Rational(ej) * mono_partial(dee);
        d2[static_cast<size_t>(i)][static_cast<size_t>(j)] += v;
        if (i != j) d2[static_cast<size_t>(j)][static_cast<size_t>(i)] += v;
      }
    }
  }
  // chain rule into log coordinates: w-vars are already log; t-vars use
  // t = e^(2 v): d/dv = 2 t d/dt
  std::vector<std::vector<Rational>> hess(static_cast<size_t>(m),
                                          std::vector<Rational>(static_cast<size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Rational v = d2[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (w[static_cast<size_t>(i)] == 2) v *= Rational(2) * x[static_cast<size_t>(i)];
      if (w[static_cast<size_t>(j)] == 2) v *= Rational(2) * x[static_cast<size_t>(j)];
      hess[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
    }
  for (int i = 0; i < m; ++i)
    if (w[static_cast<size_t>(i)] == 2)
      hess[static_cast<size_t>(i)][static_cast<size_t>(i)] +=
          Rational(4) * x[static_cast<size_t>(i)] * d1[static_cast<size_t>(i)];
  return hess;
}

StarlikeResult check_starlike(const Germ& h, int directions, const Rational& delta,
                              std::uint64_t seed) {
  if (!h.constant.is_zero()) throw DomainError("tangential germ must vanish at the base point");
  if (delta.sign() <= 0) throw DomainError("delta must be positive");
  std::mt19937_64 rng(seed);
  int m = h.n;
  StarlikeResult res{true, true, {}, Rational(0)};
  for (int d = 0; d < directions; ++d) {
    // rational direction with all entries nonzero, normalized to sum 1
    std::vector<Rational> a(static_cast<size_t>(m));
    Rational sum(0);
    for (int j = 0; j < m; ++j) {
      long num = 1 + static_cast<long>(rng() % 16);
      a[static_cast<size_t>(j)] = Rational(num, 16);
      sum += a[static_cast<size_t>(j)];
    }
    for (auto& v : a) v /= sum;

    // k_a(t) = h(t a) as a univariate polynomial, exactly
    std::vector<Rational> k(static_cast<size_t>(h.total_degree()) + 1);
    for (const auto& [e, c] : h.support) {
      int deg = 0;
      Rational coef = c;
      for (size_t j = 0; j < e.size(); ++j) {
        deg += e[j];
        if (e[j] > 0) coef *= a[j].pow(e[j]);
      }
      k[static_cast<size_t>(deg)] += coef;
    }
    UniPoly kp{std::vector<Rational>(k)};
    UniPoly dk = kp.derivative();
    if (dk.is_zero()) continue;

    // limit test: sign of the lowest-order coefficient of k' controls
    // monotonicity near 0
    int low = 0;
    while (low <= dk.degree() && dk.coeff(low).is_zero()) ++low;
    if (low <= dk.degree() && dk.coeff(low).sign() < 0) res.limit_test_passed = false;

    auto neg = dk.find_negative_point(Rational(0), delta);
    if (neg) {
      res.starlike = false;
      res.witness_dir = a;
      res.witness_t = *neg;
      return res;
    }
  }
  return res;
}

std::string CoordChange::str() const {
  std::ostringstream os;
  os << "(";
  int n = static_cast<int>(exponents.size());
  for (int j = 1; j <= n; ++j) {
    if (j > 1) os << ", ";
    if (j == normal_index) {
      bool first = true;
      for (int i = 1; i <= n; ++i) {
        int e = exponents[static_cast<size_t>(i - 1)];
        if (e == 0) continue;
        if (!first) os << "*";
        first = false;
        os << "z" << i;
        if (e != 1) os << "^" << e;
      }
      if (first) os << "1";
    } else {
      os << "z" << j;
    }
  }
  os << ")";
  return os.str();
}

std::pair<CoordChange, LocalGerm> normalize_coords(const DomainSpec& d, const BoundaryPoint& p,
                                                   int trunc) {
  LocalGerm lg = local_germ_at(d, p, trunc);
  bool any = false;
  for (int e : lg.normal_exponents) any = any || e != 0;
  if (!any) throw DomainError("degenerate normal: all exponents vanish");
  CoordChange cc{lg.normal_index, lg.normal_exponents};
  return {cc, lg};
}

}  // namespace rtype
