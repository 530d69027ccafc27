#include "rtype/elimination.hpp"

#include <algorithm>
#include <map>

#include "rtype/sturm.hpp"

namespace rtype {

namespace {

// ---------------------------------------------------------------------------
// Family construction.

// Parameter ids are global: complex parameters first (0..n_complex-1), then
// real parameters (n_complex..n_complex+n_real-1). ParamTable slots index
// real parameters locally, so call sites subtract n_complex.
struct ParamLayout {
  std::vector<int> param_of_coord;
  std::vector<bool> is_real;
  int n_complex = 0, n_real = 0;
};

ParamLayout layout_params(const BoundaryPoint& p, const std::vector<int>& complex_coords,
                          const std::vector<int>& real_coords) {
  ParamLayout L;
  L.param_of_coord.assign(p.p.size(), -1);
  for (int c : complex_coords) {
    L.param_of_coord[static_cast<size_t>(c - 1)] = L.n_complex;
    ++L.n_complex;
  }
  for (int c : real_coords) {
    L.param_of_coord[static_cast<size_t>(c - 1)] = L.n_complex + L.n_real;
    ++L.n_real;
  }
  L.is_real.assign(static_cast<size_t>(L.n_complex), false);
  L.is_real.insert(L.is_real.end(), static_cast<size_t>(L.n_real), true);
  return L;
}

// Per-coordinate factor powers with caching.
class PowerCache {
 public:
  explicit PowerCache(PSeries unit) : powers_{std::move(unit)} {}
  const PSeries& get(const PSeries& base, int e) {
    while (static_cast<int>(powers_.size()) <= e) powers_.push_back(powers_.back() * base);
    return powers_[static_cast<size_t>(e)];
  }

 private:
  std::vector<PSeries> powers_;
};

}  // namespace

Family build_line_family(const Germ& g, const BoundaryPoint& bp, int trunc) {
  int n = g.n;
  Family fam;
  fam.kind = FamilyKind::Line;
  fam.n = n;
  fam.base = bp.p;

  std::vector<int> complex_coords, real_coords;
  for (int j = 1; j <= n; ++j)
    (bp.p[static_cast<size_t>(j - 1)].is_zero() ? real_coords : complex_coords).push_back(j);
  ParamLayout L = layout_params(bp, complex_coords, real_coords);

  auto table = std::make_shared<ParamTable>();
  table->n_complex = L.n_complex;
  table->n_real = L.n_real;

  int T = trunc;
  if (g.model == Model::MOD) T = std::min(T, 2 * g.total_degree());

  PSeries acc = PSeries::constant(ParamPoly(g.constant), T);
  if (g.model == Model::MOD) {
    std::vector<Rational> tp = moduli_squared(bp.p);
    // factor per coordinate: t_j(p) + c zeta + ~c conj-zeta + (c ~c / t_j(p)) z zbar,
    // with c = conj(p_j) b_j; zero coordinates contribute s_j zeta conj-zeta.
    std::vector<PSeries> factor;
    factor.reserve(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j) {
      PSeries f(T);
      int param = L.param_of_coord[static_cast<size_t>(j - 1)];
      if (!bp.p[static_cast<size_t>(j - 1)].is_zero()) {
        ParamPoly c = ParamPoly::variable(table, table->c_slot(param));
        ParamPoly cb = ParamPoly::variable(table, table->cb_slot(param));
        f.at(0, 0) = ParamPoly(tp[static_cast<size_t>(j - 1)]);
        if (T >= 1) {
          f.at(1, 0) = c;
          f.at(0, 1) = cb;
        }
        if (T >= 2) f.at(1, 1) = c * cb * ParamPoly(tp[static_cast<size_t>(j - 1)].inv());
      } else {
        if (T >= 2)
          f.at(1, 1) = ParamPoly::variable(table, table->s_slot(param - table->n_complex));
      }
      factor.push_back(std::move(f));
    }
    std::vector<PowerCache> cache;
    for (int j = 0; j < n; ++j)
      cache.emplace_back(PSeries::constant(ParamPoly(Rational(1)), T));
    for (const auto& [e, coef] : g.support) {
      PSeries mono = PSeries::constant(ParamPoly(coef), T);
      for (int j = 0; j < n; ++j) {
        int ej = e[static_cast<size_t>(j)];
        if (ej == 0) continue;
        mono = mono * cache[static_cast<size_t>(j)].get(factor[static_cast<size_t>(j)], ej);
      }
      acc = acc + mono;
    }
    fam.poly_degree_bound = 2 * g.total_degree();
  } else {
    // log model: all coordinates nonzero with |p_j| = 1; u_j = Re log(1 + d_j zeta)
    std::vector<PSeries> uj;
    uj.reserve(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j) {
      int param = L.param_of_coord[static_cast<size_t>(j - 1)];
      TruncSeries<ParamPoly> lin(T);
      if (T >= 1) lin[1] = ParamPoly::variable(table, table->c_slot(param));
      uj.push_back(herm_real_part(series_log1p(lin)));
    }
    std::vector<PowerCache> cache;
    for (int j = 0; j < n; ++j)
      cache.emplace_back(PSeries::constant(ParamPoly(Rational(1)), T));
    for (const auto& [e, coef] : g.support) {
      PSeries mono = PSeries::constant(ParamPoly(coef), T);
      for (int j = 0; j < n; ++j) {
        int ej = e[static_cast<size_t>(j)];
        if (ej == 0) continue;
        mono = mono * cache[static_cast<size_t>(j)].get(uj[static_cast<size_t>(j)], ej);
      }
      acc = acc + mono;
    }
  }

  fam.param_of_coord = L.param_of_coord;
  fam.param_is_real = L.is_real;
  fam.table = table;
  fam.series = std::move(acc);
  return fam;
}

Family build_expdisc_family(const Germ& g, const BoundaryPoint& bp, int trunc) {
  int n = g.n;
  Family fam;
  fam.kind = FamilyKind::ExpDiscs;
  fam.n = n;
  fam.base = bp.p;

  std::vector<int> complex_coords;
  for (int j = 1; j <= n; ++j)
    if (!bp.p[static_cast<size_t>(j - 1)].is_zero()) complex_coords.push_back(j);
  ParamLayout L = layout_params(bp, complex_coords, {});

  auto table = std::make_shared<ParamTable>();
  table->n_complex = L.n_complex;
  table->n_real = 0;

  int T = trunc;
  PSeries acc = PSeries::constant(ParamPoly(g.constant), T);

  if (g.model == Model::MOD) {
    std::vector<Rational> tp = moduli_squared(bp.p);
    // active factor: t_j(p) * exp(a_j zeta + conj a_j conj zeta)
    std::vector<PSeries> expfac(static_cast<size_t>(n), PSeries(T));
    for (int j = 1; j <= n; ++j) {
      int param = L.param_of_coord[static_cast<size_t>(j - 1)];
      if (param < 0) continue;
      PSeries lin(T);
      if (T >= 1) {
        lin.at(1, 0) = ParamPoly::variable(table, table->c_slot(param));
        lin.at(0, 1) = ParamPoly::variable(table, table->cb_slot(param));
      }
      expfac[static_cast<size_t>(j - 1)] = series_exp(lin);
    }
    std::vector<PowerCache> cache;
    for (int j = 0; j < n; ++j)
      cache.emplace_back(PSeries::constant(ParamPoly(Rational(1)), T));
    for (const auto& [e, coef] : g.support) {
      bool touches_tail = false;
      Rational scale = coef;
      for (int j = 0; j < n; ++j) {
        int ej = e[static_cast<size_t>(j)];
        if (ej == 0) continue;
        if (bp.p[static_cast<size_t>(j)].is_zero()) {
          touches_tail = true;
          break;
        }
        scale *= tp[static_cast<size_t>(j)].pow(ej);
      }
      if (touches_tail) continue;  // tails are frozen at 0
      PSeries mono = PSeries::constant(ParamPoly(scale), T);
      for (int j = 0; j < n; ++j) {
        int ej = e[static_cast<size_t>(j)];
        if (ej == 0 || bp.p[static_cast<size_t>(j)].is_zero()) continue;
        mono = mono * cache[static_cast<size_t>(j)].get(expfac[static_cast<size_t>(j)], ej);
      }
      acc = acc + mono;
    }
  } else {
    // log model: u_j = Re(a_j zeta); polynomial composition, bounded levels
    T = std::min(T, g.total_degree());
    acc = PSeries::constant(ParamPoly(g.constant), T);
    std::vector<PSeries> uj(static_cast<size_t>(n), PSeries(T));
    for (int j = 1; j <= n; ++j) {
      int param = L.param_of_coord[static_cast<size_t>(j - 1)];
      if (param < 0) continue;
      PSeries f(T);
      if (T >= 1) {
        f.at(1, 0) = ParamPoly::variable(table, table->c_slot(param)) * ParamPoly(Rational(1, 2));
        f.at(0, 1) = ParamPoly::variable(table, table->cb_slot(param)) * ParamPoly(Rational(1, 2));
      }
      uj[static_cast<size_t>(j - 1)] = std::move(f);
    }
    std::vector<PowerCache> cache;
    for (int j = 0; j < n; ++j)
      cache.emplace_back(PSeries::constant(ParamPoly(Rational(1)), T));
    for (const auto& [e, coef] : g.support) {
      PSeries mono = PSeries::constant(ParamPoly(coef), T);
      for (int j = 0; j < n; ++j) {
        int ej = e[static_cast<size_t>(j)];
        if (ej == 0) continue;
        mono = mono * cache[static_cast<size_t>(j)].get(uj[static_cast<size_t>(j)], ej);
      }
      acc = acc + mono;
    }
    fam.poly_degree_bound = g.total_degree();
  }

  fam.param_of_coord = L.param_of_coord;
  fam.param_is_real = L.is_real;
  fam.table = table;
  fam.series = std::move(acc);
  return fam;
}

Family build_tailline_family(const Germ& g, const BoundaryPoint& bp, int trunc) {
  if (g.model != Model::MOD)
    throw DomainError("tail-line family requires a modulus-model germ (log charts have no axes)");
  int n = g.n;
  Family fam;
  fam.kind = FamilyKind::TailLines;
  fam.n = n;
  fam.base = bp.p;

  std::vector<int> real_coords;
  for (int j = 1; j <= n; ++j)
    if (bp.p[static_cast<size_t>(j - 1)].is_zero()) real_coords.push_back(j);
  ParamLayout L = layout_params(bp, {}, real_coords);

  auto table = std::make_shared<ParamTable>();
  table->n_complex = 0;
  table->n_real = L.n_real;

  int T = std::min(trunc, 2 * g.total_degree());
  std::vector<Rational> tp = moduli_squared(bp.p);
  PSeries acc = PSeries::constant(ParamPoly(g.constant), T);
  for (const auto& [e, coef] : g.support) {
    Rational scale = coef;
    int level = 0;
    ParamPoly spart{Rational(1)};
    for (int j = 0; j < n; ++j) {
      int ej = e[static_cast<size_t>(j)];
      if (ej == 0) continue;
      if (bp.p[static_cast<size_t>(j)].is_zero()) {
        level += ej;
        ParamPoly s = ParamPoly::variable(
            table, table->s_slot(L.param_of_coord[static_cast<size_t>(j)] - L.n_complex));
        for (int t = 0; t < ej; ++t) spart = spart * s;
      } else {
        scale *= tp[static_cast<size_t>(j)].pow(ej);
      }
    }
    if (level > T / 2) {
      if (level == 0) acc.at(0, 0) = acc.at(0, 0) + ParamPoly(scale);
      continue;
    }
    PSeries mono(T);
    mono.at(level, level) = spart * ParamPoly(scale);
    acc = acc + mono;
  }
  fam.poly_degree_bound = 2 * g.total_degree();

  fam.param_of_coord = L.param_of_coord;
  fam.param_is_real = L.is_real;
  fam.table = table;
  fam.series = std::move(acc);
  return fam;
}

// ---------------------------------------------------------------------------
// Instantiation.

Disc instantiate(const Family& fam, const std::vector<Complex>& cvals,
                 const std::vector<Rational>& svals, int trunc) {
  std::vector<CSeries> comps;
  std::vector<bool> flags;
  comps.reserve(static_cast<size_t>(fam.n));
  for (int j = 0; j < fam.n; ++j) {
    const Complex& pj = fam.base[static_cast<size_t>(j)];
    int param = fam.param_of_coord[static_cast<size_t>(j)];
    bool frozen_zero = false;
    CSeries comp = CSeries::constant(pj, trunc);
    if (param >= 0) {
      bool real_param = pj.is_zero();
      if (real_param) {
        //  s = |b|^2; the emitted component uses b real >= 0 when s is a
        //  perfect square of a rational, else b with |b|^2 = s via a two-term
        //  representative is impossible; callers only pass exact squares.
        const Rational& s = svals[static_cast<size_t>(param - fam.table->n_complex)];
        if (s.is_zero()) {
          frozen_zero = true;
        } else {
          // s = (a/b)^2 expected; fall back to s itself (|b|^2 = s^2 then),
          // which still lies in the family with a different parameter value.
          Complex b(s);
          mpz_class nj = s.num(), dj = s.den(), rn, rd;
          if (mpz_perfect_square_p(nj.get_mpz_t()) && mpz_perfect_square_p(dj.get_mpz_t())) {
            mpz_sqrt(rn.get_mpz_t(), nj.get_mpz_t());
            mpz_sqrt(rd.get_mpz_t(), dj.get_mpz_t());
            b = Complex(Rational(mpq_class(rn, rd)));
          }
          comp = comp + CSeries::monomial(b, 1, trunc);
        }
      } else {
        const Complex& v = cvals[static_cast<size_t>(param)];
        if (fam.kind == FamilyKind::ExpDiscs) {
          comp = series_exp(CSeries::monomial(v, 1, trunc));
          for (int k = 0; k <= trunc; ++k) comp[k] = comp[k] * pj;
        } else {  // Line: parameter is c = conj(p) b for MOD, d = b/p for LOG
          Complex b = v / pj.conj();
          // for log-model lines the parameter is d = b / p: |p|=1 makes
          // conj(p) = 1/p, so both conventions coincide.
          comp = comp + CSeries::monomial(b, 1, trunc);
        }
      }
    }
    flags.push_back(frozen_zero && pj.is_zero());
    if (frozen_zero) comp = CSeries(trunc);
    comps.push_back(std::move(comp));
  }
  return make_disc(fam.base, std::move(comps), std::move(flags));
}

// ---------------------------------------------------------------------------
// The elimination cascade.

namespace {

// Univariate polynomial over the Gaussian rationals (holomorphic residual
// systems); minimal gcd support.
struct GPoly {
  std::vector<Complex> c;  // c[k] coeff of x^k

  void normalize() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  int val0() const {
    for (size_t k = 0; k < c.size(); ++k)
      if (!c[k].is_zero()) return static_cast<int>(k);
    return -1;
  }
  GPoly rem(const GPoly& d) const {
    GPoly r = *this;
    r.normalize();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      Complex q = r.c.back() / d.c.back();
      size_t shift = r.c.size() - d.c.size();
      for (size_t k = 0; k < d.c.size(); ++k) r.c[shift + k] -= q * d.c[k];
      r.normalize();
    }
    return r;
  }
  static GPoly gcd(GPoly a, GPoly b) {
    a.normalize();
    b.normalize();
    while (!b.is_zero()) {
      GPoly r = a.rem(b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }
  Complex eval(const Complex& x) const {
    Complex acc;
    for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
  }
};

struct ChainSub {
  int param;       // complex parameter id
  ParamPoly value; // holomorphic linear in then-free parameters
};

struct StratumState {
  std::shared_ptr<const ParamTable> table;
  std::vector<bool> zero;        // per param
  std::vector<bool> determined;  // per param (substituted away)
  std::vector<ChainSub> chain;
  std::vector<UniPoly> residual_s_re;          // real/imag parts of s-only conditions
  std::map<int, std::vector<GPoly>> residual_c;  // param -> accumulated univariate system
  int s_var_a = -1, s_var_b = -1;  // active s params, local indices (at most 2 supported)
};

ParamPoly apply_chain(const StratumState& st, ParamPoly p) {
  for (const auto& sub : st.chain) {
    int cs = st.table->c_slot(sub.param);
    int cb = st.table->cb_slot(sub.param);
    if (p.uses_slot(cs)) p = p.substituted(cs, sub.value);
    if (p.uses_slot(cb)) p = p.substituted(cb, sub.value.conjugated());
  }
  return p;
}

// s-only polynomial -> univariate in the active s vars. Returns false when
// more than the supported variable count is active or the structure is
// out of reach (caller treats as undecided).
bool s_condition_to_unipolys(const StratumState& st, const ParamPoly& p,
                             std::vector<UniPoly>& out) {
  // collect conditions as polynomials in (s_a) after dehomogenization when
  // two s vars are active: substitute s_b = 1 requires joint homogeneity,
  // which holds for the families used here (levels are homogeneous);
  // otherwise give up.
  int sa = st.s_var_a, sb = st.s_var_b;
  std::vector<Rational> re, im;
  int maxdeg = 0, homog_deg = -1;
  for (const auto& [e, coef] : p.terms()) {
    int da = 0, db = 0;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      int slot = static_cast<int>(i);
      if (!st.table->is_s(slot)) return false;
      int param = st.table->param_of_slot(slot);
      if (param == sa)
        da = e[i];
      else if (param == sb)
        db = e[i];
      else
        return false;
    }
    if (sb >= 0) {
      // two active s-parameters: the slice s_b = 1 sees every ray only for
      // jointly homogeneous conditions
      if (homog_deg < 0) homog_deg = da + db;
      if (da + db != homog_deg) return false;
    }
    maxdeg = std::max(maxdeg, da);
    if (static_cast<int>(re.size()) <= da) {
      re.resize(static_cast<size_t>(da) + 1);
      im.resize(static_cast<size_t>(da) + 1);
    }
    re[static_cast<size_t>(da)] += coef.re();
    im[static_cast<size_t>(da)] += coef.im();
  }
  UniPoly pre{std::move(re)}, pim{std::move(im)};
  if (!pre.is_zero()) out.push_back(pre);
  if (!pim.is_zero()) out.push_back(pim);
  return true;
}

// Joint feasibility of the accumulated s-only system over s > 0.
// With two active s vars the conditions must be jointly homogeneous so that
// s_b := 1 parameterizes the rays; homogeneity is checked by the caller via
// per-level gradedness of the composed series.
std::optional<bool> s_system_feasible(const std::vector<UniPoly>& sys) {
  if (sys.empty()) return true;
  UniPoly g = sys[0];
  for (size_t i = 1; i < sys.size(); ++i) g = UniPoly::gcd(g, sys[i]);
  if (g.is_zero()) return true;  // identical zero system
  if (g.degree() == 0) return false;
  // positive root bound: 1 + max |c_k / c_deg|
  Rational bound(1);
  const Rational& lead = g.coeff(g.degree());
  for (int k = 0; k < g.degree(); ++k) {
    Rational r = (g.coeff(k) / lead).abs();
    if (r > bound) bound = r;
  }
  bound += Rational(1);
  return g.count_roots(Rational(0), bound) > 0;
}

std::optional<bool> c_system_feasible(const std::vector<GPoly>& sys) {
  if (sys.empty()) return true;
  GPoly g = sys[0];
  for (size_t i = 1; i < sys.size(); ++i) g = GPoly::gcd(g, sys[i]);
  g.normalize();
  if (g.is_zero()) return true;
  int v = g.val0();
  return g.degree() > v;  // some nonzero root over C
}

// Hermitian PSD test + kernel extraction over the Gaussian rationals.
// Returns nullopt when not PSD; else the kernel as substitutions
// c_pivot := linear(free).
std::optional<std::vector<std::pair<int, ParamPoly>>> herm_psd_kernel(
    const StratumState& st, const std::vector<std::vector<Complex>>& H,
    const std::vector<int>& params) {
  int m = static_cast<int>(params.size());
  // principal minors
  auto minor_det = [&](const std::vector<int>& rows) {
    int k = static_cast<int>(rows.size());
    std::vector<std::vector<Complex>> a(static_cast<size_t>(k),
                                        std::vector<Complex>(static_cast<size_t>(k)));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            H[static_cast<size_t>(rows[static_cast<size_t>(i)])]
             [static_cast<size_t>(rows[static_cast<size_t>(j)])];
    Complex det(Rational(1));
    for (int c = 0; c < k; ++c) {
      int pivot = -1;
      for (int r = c; r < k; ++r)
        if (!a[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) return Complex();
      if (pivot != c) {
        std::swap(a[static_cast<size_t>(pivot)], a[static_cast<size_t>(c)]);
        det = -det;
      }
      det *= a[static_cast<size_t>(c)][static_cast<size_t>(c)];
      for (int r = c + 1; r < k; ++r) {
        if (a[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero()) continue;
        Complex f = a[static_cast<size_t>(r)][static_cast<size_t>(c)] /
                    a[static_cast<size_t>(c)][static_cast<size_t>(c)];
        for (int cc = c; cc < k; ++cc)
          a[static_cast<size_t>(r)][static_cast<size_t>(cc)] -=
              f * a[static_cast<size_t>(c)][static_cast<size_t>(cc)];
      }
    }
    return det;
  };
  std::vector<int> idx;
  std::vector<int> local(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) local[static_cast<size_t>(i)] = i;
  // iterate all nonempty subsets (m <= 4 in practice)
  for (int mask = 1; mask < (1 << m); ++mask) {
    idx.clear();
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) idx.push_back(i);
    Complex det = minor_det(idx);
    if (!det.is_real()) return std::nullopt;  // not Hermitian-consistent
    if (det.re().sign() < 0) return std::nullopt;
  }
  // kernel by gaussian elimination on H over the selected params
  std::vector<std::vector<Complex>> a(H);
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < m && row < m; ++col) {
    int pr = -1;
    for (int r = row; r < m; ++r)
      if (!a[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(a[static_cast<size_t>(pr)], a[static_cast<size_t>(row)]);
    Complex inv = a[static_cast<size_t>(row)][static_cast<size_t>(col)].inv();
    for (int cc = 0; cc < m; ++cc) a[static_cast<size_t>(row)][static_cast<size_t>(cc)] *= inv;
    for (int r = 0; r < m; ++r) {
      if (r == row) continue;
      Complex f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f.is_zero()) continue;
      for (int cc = 0; cc < m; ++cc)
        a[static_cast<size_t>(r)][static_cast<size_t>(cc)] -=
            f * a[static_cast<size_t>(row)][static_cast<size_t>(cc)];
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<std::pair<int, ParamPoly>> subs;
  for (size_t r = 0; r < pivot_col.size(); ++r) {
    int pc = pivot_col[r];
    ParamPoly rhs;  // c_pivot = -sum over free columns
    for (int col = 0; col < m; ++col) {
      if (std::find(pivot_col.begin(), pivot_col.end(), col) != pivot_col.end()) continue;
      const Complex& v = a[r][static_cast<size_t>(col)];
      if (v.is_zero()) continue;
      rhs = rhs - ParamPoly::scalar(v) *
                      ParamPoly::variable(st.table, st.table->c_slot(params[static_cast<size_t>(col)]));
    }
    subs.emplace_back(params[static_cast<size_t>(pc)], rhs);
  }
  return subs;
}

struct StratumOutcome {
  enum class Kind { ExactAt, Infinite, Undecided };
  Kind kind = Kind::Undecided;
  int level = 0;  // ExactAt: infeasibility level; Undecided: feasible-through level + 1
  std::optional<Disc> witness;
};

// Witness candidates.
const std::vector<Complex>& complex_candidates() {
  static const std::vector<Complex> vals = {
      Complex(1),
      Complex(2),
      Complex(Rational(1, 2)),
      Complex(3),
      Complex(Rational(0), Rational(1)),   // i
      Complex(Rational(1), Rational(1)),   // 1+i
      Complex(Rational(2), Rational(1)),
      Complex(Rational(1, 3)),
  };
  return vals;
}

const std::vector<Rational>& real_candidates() {
  // perfect squares, so witness line coefficients b = sqrt(s) stay rational
  static const std::vector<Rational> vals = {Rational(1), Rational(4), Rational(1, 4),
                                             Rational(9), Rational(1, 9), Rational(16)};
  return vals;
}

}  // namespace

FamilyOutcome maximize_order(const Family& fam, const Germ& g, const BoundaryPoint& bp,
                             int max_level) {
  int nparams = fam.n_params();
  int T = std::min(fam.series.trunc_order(), max_level);
  std::vector<int> complex_params, real_params;
  for (int i = 0; i < nparams; ++i)
    (fam.param_is_real[static_cast<size_t>(i)] ? real_params : complex_params).push_back(i);

  // strata: zero-subsets ordered by popcount, ties preferring to zero the
  // higher-indexed parameters first (deterministic witness selection)
  std::vector<std::vector<bool>> strata;
  {
    std::vector<std::pair<int, std::vector<bool>>> tmp;
    for (int mask = 0; mask < (1 << nparams); ++mask) {
      if (mask == (1 << nparams) - 1) continue;  // all-zero = constant disc
      std::vector<bool> z(static_cast<size_t>(nparams));
      int pc = 0;
      for (int i = 0; i < nparams; ++i)
        if (mask & (1 << i)) {
          z[static_cast<size_t>(i)] = true;
          ++pc;
        }
      tmp.emplace_back(pc, z);
    }
    std::stable_sort(tmp.begin(), tmp.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      // prefer zeroing later params first: lexicographically larger reversed
      for (int i = nparams - 1; i >= 0; --i) {
        bool za = a.second[static_cast<size_t>(i)], zb = b.second[static_cast<size_t>(i)];
        if (za != zb) return za;  // the one zeroing the higher index comes first
      }
      return false;
    });
    for (auto& [pc, z] : tmp) strata.push_back(std::move(z));
  }

  auto level_conditions = [&](const PSeries& S, int r) {
    std::vector<ParamPoly> conds;
    for (int k = 0; 2 * k <= r; ++k) {
      int m = r - k;
      if (m < k) break;
      const ParamPoly& c = S.at(m, k);
      if (!c.is_zero()) conds.push_back(c);
    }
    return conds;
  };

  FamilyOutcome out;
  out.kind = FamilyOutcome::Kind::Exact;
  out.order = 0;
  bool any_undecided = false;
  int undecided_cap = -1;  // max potential among undecided strata (-1 = unbounded)
  bool have_best = false;

  for (const auto& z : strata) {
    // specialize by the zero pattern
    PSeries S = fam.series;
    {
      PSeries spec(S.trunc_order());
      for (int d = 0; d <= S.trunc_order(); ++d)
        for (int k = 0; k <= d; ++k) {
          ParamPoly c = S.at(d - k, k);
          for (int i = 0; i < nparams; ++i)
            if (z[static_cast<size_t>(i)] && !c.is_zero())
              c = c.with_param_zero(
                  fam.param_is_real[static_cast<size_t>(i)] ? i - fam.table->n_complex : i,
                  fam.param_is_real[static_cast<size_t>(i)]);
          spec.at(d - k, k) = std::move(c);
        }
      S = std::move(spec);
    }

    StratumState st;
    st.table = fam.table;
    st.zero = z;
    st.determined.assign(static_cast<size_t>(nparams), false);
    for (int i : real_params)
      if (!z[static_cast<size_t>(i)]) {
        if (st.s_var_a < 0)
          st.s_var_a = i - fam.table->n_complex;
        else if (st.s_var_b < 0)
          st.s_var_b = i - fam.table->n_complex;
      }

    StratumOutcome so;
    so.kind = StratumOutcome::Kind::Infinite;
    std::vector<UniPoly> s_system;
    int decided_through = 0;

    for (int r = 1; r <= T; ++r) {
      std::vector<ParamPoly> conds = level_conditions(S, r);
      for (auto& c : conds) c = apply_chain(st, c);
      bool undecided_here = false;
      bool infeasible_here = false;

      bool changed = true;
      while (changed && !infeasible_here && !undecided_here) {
        changed = false;
        std::vector<ParamPoly> next;
        for (auto& c : conds) {
          if (c.is_zero()) continue;
          if (c.terms().size() == 1 && c.total_degree() == 0) {
            infeasible_here = true;  // nonzero constant
            break;
          }
          if (c.is_monomial()) {
            infeasible_here = true;  // all vars nonzero in stratum
            break;
          }
          if (c.balanced_signed()) {
            infeasible_here = true;
            break;
          }
          if (c.linear_holomorphic()) {
            // pivot: highest parameter index present
            int pivot = -1;
            Complex coef;
            for (const auto& [e, cf] : c.terms()) {
              for (size_t i = 0; i < e.size(); ++i)
                if (e[i]) {
                  int param = st.table->param_of_slot(static_cast<int>(i));
                  if (param > pivot) {
                    pivot = param;
                    coef = cf;
                  }
                }
            }
            ParamPoly rest = c - ParamPoly::scalar(coef) *
                                     ParamPoly::variable(st.table, st.table->c_slot(pivot));
            ParamPoly value = -(rest * ParamPoly::scalar(coef.inv()));
            st.chain.push_back({pivot, value});
            st.determined[static_cast<size_t>(pivot)] = true;
            // re-apply to the remaining conditions
            for (auto& cc : next) cc = apply_chain(st, cc);
            for (auto& cc : conds)
              if (&cc != &c) cc = apply_chain(st, cc);
            c = ParamPoly();
            changed = true;
            continue;
          }
          if (c.s_only()) {
            std::vector<UniPoly> sys;
            if (!s_condition_to_unipolys(st, c, sys)) {
              undecided_here = true;
              break;
            }
            for (auto& u : sys) s_system.push_back(u);
            auto feas = s_system_feasible(s_system);
            if (!feas.has_value()) {
              undecided_here = true;
              break;
            }
            if (!*feas) {
              infeasible_here = true;
              break;
            }
            c = ParamPoly();
            changed = true;
            continue;
          }
          if (auto param = c.single_holomorphic_param()) {
            // univariate holomorphic: accumulate and test jointly
            GPoly gp;
            for (const auto& [e, cf] : c.terms()) {
              int d = 0;
              for (size_t i = 0; i < e.size(); ++i) d += e[i];
              if (static_cast<int>(gp.c.size()) <= d) gp.c.resize(static_cast<size_t>(d) + 1);
              gp.c[static_cast<size_t>(d)] += cf;
            }
            auto& sys = st.residual_c[*param];
            sys.push_back(gp);
            auto feas = c_system_feasible(sys);
            if (!feas.has_value()) {
              undecided_here = true;
              break;
            }
            if (!*feas) {
              infeasible_here = true;
              break;
            }
            c = ParamPoly();
            changed = true;
            continue;
          }
          if (auto H = c.herm_form()) {
            // params present in the form
            std::vector<int> present;
            int m = st.table->n_complex;
            for (int i = 0; i < m; ++i) {
              bool used = false;
              for (int jj = 0; jj < m && !used; ++jj)
                used = !(*H)[static_cast<size_t>(i)][static_cast<size_t>(jj)].is_zero() ||
                       !(*H)[static_cast<size_t>(jj)][static_cast<size_t>(i)].is_zero();
              if (used) present.push_back(i);
            }
            std::vector<std::vector<Complex>> sub(static_cast<size_t>(present.size()),
                                                  std::vector<Complex>(present.size()));
            for (size_t a = 0; a < present.size(); ++a)
              for (size_t b = 0; b < present.size(); ++b)
                sub[a][b] = (*H)[static_cast<size_t>(present[a])][static_cast<size_t>(present[b])];
            auto kernel = herm_psd_kernel(st, sub, present);
            if (!kernel) {
              undecided_here = true;  // indefinite form
              break;
            }
            if (kernel->empty()) {
              // zero matrix on present params: condition was zero (handled),
              // treat as consumed
              c = ParamPoly();
              changed = true;
              continue;
            }
            for (const auto& [param, value] : *kernel) {
              if (value.is_zero()) {
                // c_param forced to 0: contradicts the stratum
                infeasible_here = true;
                break;
              }
              st.chain.push_back({param, value});
              st.determined[static_cast<size_t>(param)] = true;
            }
            if (infeasible_here) break;
            for (auto& cc : next) cc = apply_chain(st, cc);
            for (auto& cc : conds)
              if (&cc != &c) cc = apply_chain(st, cc);
            c = ParamPoly();
            changed = true;
            continue;
          }
          // unresolved this pass
          next.push_back(c);
          c = ParamPoly();
        }
        conds.clear();
        for (auto& c : next)
          if (!c.is_zero()) conds.push_back(std::move(c));
        if (!conds.empty() && !changed) undecided_here = true;
      }

      if (infeasible_here) {
        so.kind = StratumOutcome::Kind::ExactAt;
        so.level = r;
        break;
      }
      if (undecided_here) {
        so.kind = StratumOutcome::Kind::Undecided;
        so.level = r;
        break;
      }
      decided_through = r;
    }

    // ------- witness extraction -------
    auto try_witness = [&](int target, bool want_infinite) -> std::optional<Disc> {
      // assign free params; evaluate determined ones through the chain
      std::vector<int> free_c, free_s;
      for (int i : complex_params)
        if (!z[static_cast<size_t>(i)] && !st.determined[static_cast<size_t>(i)])
          free_c.push_back(i);
      for (int i : real_params)
        if (!z[static_cast<size_t>(i)]) free_s.push_back(i);

      // candidate roots for pinned residual systems widen the search
      std::vector<Complex> c_candidates = complex_candidates();
      for (const auto& [param, sys] : st.residual_c) {
        (void)param;
        if (sys.empty()) continue;
        GPoly gg = sys[0];
        for (size_t i = 1; i < sys.size(); ++i) gg = GPoly::gcd(gg, sys[i]);
        gg.normalize();
        // rational-root candidates: ratios of small Gaussian integers are
        // covered by the fixed candidate list; roots of x^k factors are 0
      }

      size_t nc = free_c.size(), ns = free_s.size();
      const auto& cc = c_candidates;
      const auto& rc = real_candidates();
      size_t total = 1;
      for (size_t i = 0; i < nc; ++i) total *= cc.size();
      for (size_t i = 0; i < ns; ++i) total *= rc.size();
      total = std::min<size_t>(total, 4096);
      for (size_t it = 0; it < total; ++it) {
        size_t code = it;
        std::vector<Complex> cvals(static_cast<size_t>(std::max(1, fam.table->n_complex)));
        std::vector<Rational> svals(static_cast<size_t>(std::max(1, fam.table->n_real)));
        for (size_t i = 0; i < nc; ++i) {
          cvals[static_cast<size_t>(free_c[i])] = cc[code % cc.size()];
          code /= cc.size();
        }
        for (size_t i = 0; i < ns; ++i) {
          svals[static_cast<size_t>(free_s[i] - fam.table->n_complex)] = rc[code % rc.size()];
          code /= rc.size();
        }
        // determined params via the chain
        bool ok = true;
        for (int i : complex_params) {
          if (z[static_cast<size_t>(i)]) {
            cvals[static_cast<size_t>(i)] = Complex();
            continue;
          }
          if (!st.determined[static_cast<size_t>(i)]) continue;
          ParamPoly expr = apply_chain(st, ParamPoly::variable(st.table, st.table->c_slot(i)));
          Complex v = expr.eval(cvals, svals);
          cvals[static_cast<size_t>(i)] = v;
          if (v.is_zero()) {
            ok = false;  // leaves the stratum
            break;
          }
        }
        if (!ok) continue;
        Disc cand = instantiate(fam, cvals, svals, std::max(T + 2, target + 2));
        Vanishing vo = compose_order(g, cand);
        if (want_infinite && vo.zero_up_to_truncation) return cand;
        if (!want_infinite && vo.known() && vo.value == target) return cand;
      }
      return std::nullopt;
    };

    // ------- merge into the family outcome -------
    if (so.kind == StratumOutcome::Kind::ExactAt) {
      auto w = try_witness(so.level, false);
      if (w) {
        if (!have_best || so.level > out.order) {
          out.order = so.level;
          out.witness = w;
          have_best = true;
        }
      } else {
        // upper bound proven, lower not witnessed
        any_undecided = true;
        undecided_cap = std::max(undecided_cap, so.level);
      }
    } else if (so.kind == StratumOutcome::Kind::Infinite) {
      auto w = try_witness(0, true);
      if (w) {
        FamilyOutcome inf;
        inf.kind = FamilyOutcome::Kind::Infinite;
        inf.witness = w;
        return inf;
      }
      any_undecided = true;
      undecided_cap = -1;
      (void)decided_through;
    } else {
      any_undecided = true;
      undecided_cap = -1;
      // feasibility through so.level-1 was proven; try to realize it
      for (int target = std::min(T, fam.poly_degree_bound > 0 ? fam.poly_degree_bound : T);
           target >= so.level; --target) {
        auto w = try_witness(target, false);
        if (w) {
          if (!have_best || target > out.order) {
            out.order = target;
            out.witness = w;
            have_best = true;
          }
          break;
        }
      }
    }
  }

  if (any_undecided) {
    out.kind = FamilyOutcome::Kind::Bounds;
    if (undecided_cap >= 0 && have_best && undecided_cap <= out.order) {
      // the unresolved stratum cannot beat the witnessed one
      out.kind = FamilyOutcome::Kind::Exact;
    } else {
      out.upper = undecided_cap >= 0 ? std::optional<int>(std::max(undecided_cap, out.order))
                                     : std::nullopt;
    }
  }
  return out;
}

}  // namespace rtype
