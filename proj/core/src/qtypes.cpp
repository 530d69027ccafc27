#include <random>
#include <sstream>

#include "rtype/engine.hpp"
#include "rtype/lp.hpp"

namespace rtype {

namespace {

Rational rand_small_rational(std::mt19937_64& rng) {
  // nonzero, numerator/denominator at most 7
  long num = 0;
  while (num == 0) num = static_cast<long>(rng() % 15) - 7;
  long den = 1 + static_cast<long>(rng() % 7);
  return Rational(num, den);
}

// rank of a rational matrix (rows x cols)
int rank_of(std::vector<std::vector<Rational>> a) {
  int rows = static_cast<int>(a.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(a[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (!a[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[static_cast<size_t>(pivot)], a[static_cast<size_t>(rank)]);
    Rational inv = a[static_cast<size_t>(rank)][static_cast<size_t>(c)].inv();
    for (int cc = 0; cc < cols; ++cc) a[static_cast<size_t>(rank)][static_cast<size_t>(cc)] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(c)];
      if (f.is_zero()) continue;
      for (int cc = 0; cc < cols; ++cc)
        a[static_cast<size_t>(r)][static_cast<size_t>(cc)] -=
            f * a[static_cast<size_t>(rank)][static_cast<size_t>(cc)];
    }
    ++rank;
  }
  return rank;
}

// kernel basis of a rows x cols rational matrix (columns = variables)
std::vector<std::vector<Rational>> kernel_of(std::vector<std::vector<Rational>> a, int cols) {
  int rows = static_cast<int>(a.size());
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (!a[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[static_cast<size_t>(pivot)], a[static_cast<size_t>(rank)]);
    Rational inv = a[static_cast<size_t>(rank)][static_cast<size_t>(c)].inv();
    for (int cc = 0; cc < cols; ++cc) a[static_cast<size_t>(rank)][static_cast<size_t>(cc)] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(c)];
      if (f.is_zero()) continue;
      for (int cc = 0; cc < cols; ++cc)
        a[static_cast<size_t>(r)][static_cast<size_t>(cc)] -=
            f * a[static_cast<size_t>(rank)][static_cast<size_t>(cc)];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<std::vector<Rational>> basis;
  for (int c = 0; c < cols; ++c) {
    if (std::find(pivot_col.begin(), pivot_col.end(), c) != pivot_col.end()) continue;
    std::vector<Rational> v(static_cast<size_t>(cols));
    v[static_cast<size_t>(c)] = Rational(1);
    for (int r = 0; r < static_cast<int>(pivot_col.size()); ++r)
      v[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] =
          -a[static_cast<size_t>(r)][static_cast<size_t>(c)];
    basis.push_back(std::move(v));
  }
  return basis;
}

struct SliceValue {
  bool infinite = false;
  long value = 0;
  std::vector<int> zero_set;  // tangential variable indices forced to zero
};

// Generic-slice value at an axis point (k = 1): with d_free = n - q free
// tangential directions drawn as a random rational matrix U (tangential
// dim x d_free), the attainable zero patterns are the kernels of row
// subsets; the no-cancellation order over each pattern is the support
// minimum avoiding the pattern.
SliceValue slice_value_axis(const Germ& h, const std::vector<std::vector<Rational>>& U,
                            int d_free) {
  int m = h.n;  // tangential variable count
  SliceValue best;
  bool have = false;
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<int> Z;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) Z.push_back(i);
    // rows Z must have a common kernel direction
    std::vector<std::vector<Rational>> rows;
    for (int i : Z) rows.push_back(U[static_cast<size_t>(i)]);
    if (rank_of(rows) >= d_free) continue;  // kernel trivial
    // effective zero set: rows in the span of Z's rows vanish on the kernel
    std::vector<int> eff = Z;
    for (int i = 0; i < m; ++i) {
      if (std::find(Z.begin(), Z.end(), i) != Z.end()) continue;
      auto extended = rows;
      extended.push_back(U[static_cast<size_t>(i)]);
      if (rank_of(extended) == rank_of(rows)) eff.push_back(i);
    }
    // minimum weighted order over monomials avoiding eff
    std::optional<long> val;
    for (const auto& [e, c] : h.support) {
      bool avoid = true;
      for (int i : eff)
        if (e[static_cast<size_t>(i)] > 0) avoid = false;
      if (!avoid) continue;
      long w = 0;
      for (size_t j = 0; j < e.size(); ++j) w += 2L * e[j];
      if (!val || w < *val) val = w;
    }
    SliceValue cand;
    cand.zero_set = Z;
    if (!val) {
      cand.infinite = true;
    } else {
      cand.value = *val;
    }
    if (!have || (cand.infinite && !best.infinite) ||
        (!cand.infinite && !best.infinite && cand.value > best.value)) {
      best = cand;
      have = true;
    }
  }
  return best;
}

}  // namespace

std::string QTypeTuple::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) os << ", ";
    os << values[i].str();
  }
  os << ")";
  return os.str();
}

QTypeTuple q_types(const Germ& g, const BoundaryPoint& p, const QTypeOptions& opt) {
  int n = g.n;
  QTypeTuple tuple;
  tuple.values.resize(static_cast<size_t>(n));

  // Delta_n: the normal order, 1 for smooth nondegenerate boundaries;
  // witnessed by a line in the normal coordinate.
  {
    TypeValue dn = TypeValue::exact_value(Rational(1), "series_composition");
    int normal = -1;
    for (int j = 1; j <= n; ++j)
      if (!p.p[static_cast<size_t>(j - 1)].is_zero()) {
        normal = j;
        break;
      }
    std::vector<Complex> b(static_cast<size_t>(n));
    b[static_cast<size_t>(normal - 1)] = Complex(1);
    Disc line = line_disc(p.p, b, 8);
    Vanishing vo = compose_order(g, line);
    if (vo.known() && vo.value == 1) dn.witness = line;
    tuple.values[0] = dn;
  }

  // Delta_1 = variety type.
  tuple.values[static_cast<size_t>(n - 1)] = variety_type(g, p, opt.engine);

  if (n <= 2) return tuple;

  // middle q-types
  bool axis_case = (p.k == 1) && g.model == Model::MOD;
  LocalGerm lg;
  Germ h;
  if (axis_case) {
    DomainSpec d = DomainSpec::with_default_region(g);
    lg = local_germ_at(d, p, opt.engine.truncation());
    if (!lg.tangential_all_mod()) axis_case = false;
    if (axis_case) {
      h = lg.tangential_mod_germ();
      if (!h.positive_coefficients()) axis_case = false;
    }
  }

  std::mt19937_64 rng(opt.seed);
  for (int q = n - 1; q >= 2; --q) {
    size_t idx = static_cast<size_t>(n - q);
    if (!axis_case) {
      // honest enclosure: a restricted lattice search from below, Delta_1
      // from above (q-types are nonincreasing in q)
      const TypeValue& d1 = tuple.values[static_cast<size_t>(n - 1)];
      std::optional<Rational> hi;
      if (d1.kind == TypeValue::Kind::Exact) hi = d1.exact;
      tuple.values[idx] = TypeValue::bounds(Rational(1), hi, "jet_oracle");
      continue;
    }
    int d_free = n - q;
    int m = h.n;
    std::optional<SliceValue> agreed;
    bool failed = false;
    for (int round = 0; round < opt.redraw_rounds && !agreed; ++round) {
      std::vector<SliceValue> draws;
      for (int dr = 0; dr < opt.draws; ++dr) {
        std::vector<std::vector<Rational>> U(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) {
          U[static_cast<size_t>(i)].resize(static_cast<size_t>(d_free));
          for (int j = 0; j < d_free; ++j)
            U[static_cast<size_t>(i)][static_cast<size_t>(j)] = rand_small_rational(rng);
        }
        draws.push_back(slice_value_axis(h, U, d_free));
      }
      auto same = [](const SliceValue& a, const SliceValue& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
      };
      if (same(draws[0], draws[1]) && same(draws[1], draws[2])) {
        agreed = draws[0];
      } else if (!same(draws[0], draws[1]) && !same(draws[1], draws[2]) &&
                 !same(draws[0], draws[2])) {
        continue;  // pairwise disagreement: redraw
      } else {
        // two agree: the generic value is the minimum (types only jump up on
        // thin sets)
        SliceValue m0 = draws[0];
        for (const auto& d : draws) {
          if (d.infinite) continue;
          if (m0.infinite || d.value < m0.value) m0 = d;
        }
        agreed = m0;
      }
    }
    if (!agreed) failed = true;
    if (failed)
      throw DomainError("genericity failure: slice draws disagree pairwise after redraws");

    if (agreed->infinite) {
      tuple.values[idx] = TypeValue::infinite("newton_fast_path");
      continue;
    }
    TypeValue tv = TypeValue::exact_value(Rational(agreed->value), "newton_fast_path");
    // witness: tangential line vanishing exactly on the zero set
    {
      std::vector<Complex> b(static_cast<size_t>(n));
      for (int i = 0; i < m; ++i) {
        bool zero = std::find(agreed->zero_set.begin(), agreed->zero_set.end(), i) !=
                    agreed->zero_set.end();
        int coord = lg.tangential[static_cast<size_t>(i)];
        if (!zero) b[static_cast<size_t>(coord - 1)] = Complex(1);
      }
      Disc line = line_disc(p.p, b, std::max(10, static_cast<int>(agreed->value) + 2));
      Vanishing vo = compose_order(g, line);
      if (vo.known() && Rational(vo.value) == Rational(agreed->value)) tv.witness = line;
    }
    tuple.values[idx] = tv;
  }

  // enforce the monotone chain marker-wise: Delta_n <= ... <= Delta_1 is a
  // property of the values; we do not adjust, only report.
  return tuple;
}

// ---------------------------------------------------------------------------

std::string Multitype::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) os << ", ";
    os << (infinite[i] ? std::string("infinite") : entries[i].str());
  }
  os << ")";
  return os.str();
}

Multitype multitype(const Germ& g, const BoundaryPoint& p, int trunc) {
  DomainSpec d = DomainSpec::with_default_region(g);
  LocalGerm lg = local_germ_at(d, p, trunc);
  // positive tangential coefficients only (monomial-sum scope)
  for (const auto& [e, c] : lg.h.terms())
    if (c.sign() <= 0)
      throw DomainError(
          "multitype requires a positive-coefficient tangential germ (general "
          "multitype is out of scope)");

  int m = static_cast<int>(lg.tangential.size());
  const auto& weights = lg.h.weights();

  // constraints over mu_i = 1/lambda_i: sum weight_i gamma_i mu_i >= 1
  std::vector<LinConstraint> cons;
  std::vector<bool> constrained(static_cast<size_t>(m), false);
  for (const auto& [e, c] : lg.h.terms()) {
    LinConstraint con;
    con.a.assign(static_cast<size_t>(m), Rational(0));
    bool any = false;
    for (int i = 0; i < m; ++i) {
      if (e[static_cast<size_t>(i)] == 0) continue;
      con.a[static_cast<size_t>(i)] = Rational(weights[static_cast<size_t>(i)]) *
                                      Rational(e[static_cast<size_t>(i)]);
      constrained[static_cast<size_t>(i)] = true;
      any = true;
    }
    con.b = Rational(1);
    if (any) cons.push_back(std::move(con));
  }

  // box 0 <= mu <= 1/2 (multitype entries are >= 2 beyond the normal)
  for (int i = 0; i < m; ++i) {
    LinConstraint lo, hi;
    lo.a.assign(static_cast<size_t>(m), Rational(0));
    lo.a[static_cast<size_t>(i)] = Rational(1);
    lo.b = Rational(0);
    hi.a.assign(static_cast<size_t>(m), Rational(0));
    hi.a[static_cast<size_t>(i)] = Rational(-1);
    hi.b = Rational(-1, 2);
    cons.push_back(std::move(lo));
    cons.push_back(std::move(hi));
  }

  std::vector<std::optional<Rational>> fixed(static_cast<size_t>(m));
  std::vector<Rational> lambda_order;  // in fixing order (nondecreasing lambda)
  std::vector<bool> lambda_inf;

  auto undetermined = [&]() {
    std::vector<int> u;
    for (int i = 0; i < m; ++i)
      if (!fixed[static_cast<size_t>(i)] && constrained[static_cast<size_t>(i)]) u.push_back(i);
    return u;
  };

  // variables touched by no constraint: weight infinity
  int n_inf = 0;
  for (int i = 0; i < m; ++i)
    if (!constrained[static_cast<size_t>(i)]) ++n_inf;

  while (true) {
    std::vector<int> und = undetermined();
    if (und.empty()) break;
    // LP over (mu, t): minimize t subject to mu_i <= t for undetermined i
    size_t dim = static_cast<size_t>(m) + 1;
    std::vector<LinConstraint> full;
    for (const auto& con : cons) {
      LinConstraint c2;
      c2.a = con.a;
      c2.a.push_back(Rational(0));
      c2.b = con.b;
      full.push_back(std::move(c2));
    }
    for (int i : und) {
      LinConstraint c2;  // t - mu_i >= 0
      c2.a.assign(dim, Rational(0));
      c2.a[static_cast<size_t>(i)] = Rational(-1);
      c2.a[dim - 1] = Rational(1);
      c2.b = Rational(0);
      full.push_back(std::move(c2));
    }
    for (int i = 0; i < m; ++i) {
      if (!fixed[static_cast<size_t>(i)]) continue;
      LinConstraint eq1, eq2;  // mu_i = fixed value
      eq1.a.assign(dim, Rational(0));
      eq1.a[static_cast<size_t>(i)] = Rational(1);
      eq1.b = *fixed[static_cast<size_t>(i)];
      eq2.a.assign(dim, Rational(0));
      eq2.a[static_cast<size_t>(i)] = Rational(-1);
      eq2.b = -*fixed[static_cast<size_t>(i)];
      full.push_back(std::move(eq1));
      full.push_back(std::move(eq2));
    }
    // t bounded below by 0
    {
      LinConstraint c2;
      c2.a.assign(dim, Rational(0));
      c2.a[dim - 1] = Rational(1);
      c2.b = Rational(0);
      full.push_back(std::move(c2));
    }
    std::vector<Rational> obj(dim, Rational(0));
    obj[dim - 1] = Rational(1);
    auto sol = lp_minimize(obj, full);
    if (!sol) throw DomainError("multitype: weight program infeasible (internal)");
    Rational tstar = sol->first;

    if (tstar.is_zero()) {
      // every remaining variable can be 0: all unbounded weights
      for (int i : und) {
        fixed[static_cast<size_t>(i)] = Rational(0);
        ++n_inf;
      }
      break;
    }

    // fix the smallest index that can attain mu_i = t* at the optimum
    int pick = -1;
    for (int i : und) {
      std::vector<LinConstraint> eqs;
      LinConstraint eq;
      eq.a.assign(dim, Rational(0));
      eq.a[static_cast<size_t>(i)] = Rational(1);
      eq.b = tstar;
      eqs.push_back(eq);
      LinConstraint tcap;  // t <= t*, with the t >= t(opt) handled by min
      tcap.a.assign(dim, Rational(0));
      tcap.a[dim - 1] = Rational(-1);
      tcap.b = -tstar;
      std::vector<LinConstraint> sys = full;
      sys.push_back(tcap);
      if (lp_feasible_with_equalities(sys, eqs)) {
        pick = i;
        break;
      }
    }
    if (pick < 0) throw DomainError("multitype: no attaining coordinate (internal)");
    fixed[static_cast<size_t>(pick)] = tstar;
    lambda_order.push_back(tstar.inv());
    lambda_inf.push_back(false);
  }

  Multitype mt;
  mt.entries.push_back(Rational(1));  // the normal weight
  mt.infinite.push_back(false);
  for (size_t i = 0; i < lambda_order.size(); ++i) {
    mt.entries.push_back(lambda_order[i]);
    mt.infinite.push_back(false);
  }
  for (int i = 0; i < n_inf; ++i) {
    mt.entries.push_back(Rational(0));
    mt.infinite.push_back(true);
  }
  return mt;
}

}  // namespace rtype
