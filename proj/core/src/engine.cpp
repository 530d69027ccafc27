#include "rtype/engine.hpp"

#include <algorithm>
#include <sstream>

#include "rtype/elimination.hpp"

namespace rtype {

int Disc::v() const {
  int best = kInf;
  for (int b : beta) best = std::min(best, b);
  return best;
}

std::string Disc::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t j = 0; j < components.size(); ++j) {
    if (j) os << ", ";
    if (zero_flag[j]) {
      os << "0";
      continue;
    }
    const CSeries& s = components[j];
    bool first = true;
    for (int k = 0; k <= s.trunc_order(); ++k) {
      if (s[k].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      std::string c = s[k].str();
      bool needs_parens = c.find('+') != std::string::npos ||
                          (c.find('-') != std::string::npos && c.find('-') != 0);
      if (k == 0) {
        os << c;
      } else {
        if (needs_parens) os << "(" << c << ")";
        else os << c;
        os << "*z^" << k;
      }
    }
    if (first) os << "0";
  }
  os << ")";
  return os.str();
}

Disc make_disc(std::vector<Complex> base, std::vector<CSeries> components,
               std::vector<bool> zero_flag) {
  if (base.size() != components.size()) throw DomainError("disc component count mismatch");
  Disc d;
  d.base = std::move(base);
  d.components = std::move(components);
  if (zero_flag.empty()) zero_flag.assign(d.base.size(), false);
  if (zero_flag.size() != d.base.size()) throw DomainError("disc flag count mismatch");
  d.zero_flag = std::move(zero_flag);
  d.beta.assign(d.base.size(), Disc::kInf);
  for (size_t j = 0; j < d.base.size(); ++j) {
    if (d.zero_flag[j]) {
      if (!d.base[j].is_zero())
        throw DomainError("identically-zero component requires a zero base coordinate");
      if (!d.components[j].all_zero())
        throw DomainError("flagged component carries nonzero coefficients");
      continue;
    }
    if (d.components[j][0] != d.base[j])
      throw DomainError("disc component does not pass through the base point");
    CSeries delta = d.components[j];
    delta[0] = Complex();
    auto vo = delta.vanishing_order();
    if (vo.known()) d.beta[j] = vo.value;
    // identically-constant components keep beta = infinity
    if (!vo.known() && d.base[j].is_zero()) d.zero_flag[j] = true;
  }
  return d;
}

Disc line_disc(const std::vector<Complex>& base, const std::vector<Complex>& b, int trunc) {
  std::vector<CSeries> comps;
  comps.reserve(base.size());
  for (size_t j = 0; j < base.size(); ++j) {
    CSeries s = CSeries::constant(base[j], trunc);
    s[1] = b[j];
    comps.push_back(std::move(s));
  }
  return make_disc(base, std::move(comps));
}

// ---------------------------------------------------------------------------

TypeValue TypeValue::exact_value(Rational q, std::string method) {
  TypeValue t;
  t.kind = Kind::Exact;
  t.exact = q;
  t.lo = q;
  t.hi = q;
  t.method = std::move(method);
  return t;
}

TypeValue TypeValue::bounds(Rational lo, std::optional<Rational> hi, std::string method) {
  TypeValue t;
  t.kind = Kind::Bounds;
  t.lo = std::move(lo);
  t.hi = std::move(hi);
  t.method = std::move(method);
  return t;
}

TypeValue TypeValue::infinite(std::string method) {
  TypeValue t;
  t.kind = Kind::Infinite;
  t.method = std::move(method);
  return t;
}

std::string TypeValue::str() const {
  switch (kind) {
    case Kind::Exact:
      return exact.str();
    case Kind::Infinite:
      return "infinite";
    case Kind::Bounds:
      return "[" + lo.str() + ", " + (hi ? hi->str() : "unbounded") + "]";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Composition.

namespace {

class HermPowerCache {
 public:
  explicit HermPowerCache(CHerm base, int trunc)
      : base_(std::move(base)), powers_{CHerm::constant(Complex(1), trunc)} {}
  const CHerm& get(int e) {
    while (static_cast<int>(powers_.size()) <= e) powers_.push_back(powers_.back() * base_);
    return powers_[static_cast<size_t>(e)];
  }

 private:
  CHerm base_;
  std::vector<CHerm> powers_;
};

int disc_trunc(const Disc& phi) {
  int t = -1;
  for (size_t j = 0; j < phi.components.size(); ++j) {
    int tj = phi.components[j].trunc_order();
    t = t < 0 ? tj : std::min(t, tj);
  }
  return std::max(t, 0);
}

}  // namespace

CHerm compose_herm(const Germ& g, const Disc& phi) {
  if (static_cast<int>(phi.components.size()) != g.n)
    throw DomainError("disc dimension does not match the germ");
  int T = disc_trunc(phi);
  if (g.model == Model::MOD) {
    std::vector<HermPowerCache> cache;
    cache.reserve(static_cast<size_t>(g.n));
    for (int j = 0; j < g.n; ++j)
      cache.emplace_back(herm_square_modulus(phi.components[static_cast<size_t>(j)].truncated(T)),
                         T);
    CHerm acc = CHerm::constant(Complex(g.constant), T);
    for (const auto& [e, c] : g.support) {
      bool dead = false;
      for (int j = 0; j < g.n && !dead; ++j)
        if (e[static_cast<size_t>(j)] > 0 && phi.zero_flag[static_cast<size_t>(j)]) dead = true;
      if (dead) continue;
      CHerm mono = CHerm::constant(Complex(c), T);
      for (int j = 0; j < g.n; ++j) {
        int ej = e[static_cast<size_t>(j)];
        if (ej == 0) continue;
        mono = mono * cache[static_cast<size_t>(j)].get(ej);
      }
      acc = acc + mono;
    }
    return acc;
  }
  // log model
  std::vector<CHerm> uj;
  uj.reserve(static_cast<size_t>(g.n));
  for (int j = 0; j < g.n; ++j) {
    bool used = false;
    for (const auto& [e, c] : g.support)
      if (e[static_cast<size_t>(j)] > 0) used = true;
    if (!used) {
      uj.push_back(CHerm(T));
      continue;
    }
    if (phi.zero_flag[static_cast<size_t>(j)])
      throw DomainError("log-model germ composed with an identically zero component (chart)");
    const CSeries comp = phi.components[static_cast<size_t>(j)].truncated(T);
    const Complex& c0 = comp[0];
    if (c0.is_zero())
      throw DomainError("log-model germ composed with a component vanishing at 0 (chart)");
    if (!(c0.norm() == Rational(1)))
      throw DomainError("log-model composition requires |component(0)| = 1, got |.|^2 = " +
                        c0.norm().str());
    CSeries delta = comp;
    delta[0] = Complex();
    Complex inv = c0.inv();
    for (int k = 0; k <= T; ++k) delta[k] = delta[k] * inv;
    uj.push_back(herm_real_part(series_log1p(delta)));
  }
  std::vector<HermPowerCache> cache;
  cache.reserve(static_cast<size_t>(g.n));
  for (int j = 0; j < g.n; ++j) cache.emplace_back(uj[static_cast<size_t>(j)], T);
  CHerm acc = CHerm::constant(Complex(g.constant), T);
  for (const auto& [e, c] : g.support) {
    CHerm mono = CHerm::constant(Complex(c), T);
    for (int j = 0; j < g.n; ++j) {
      int ej = e[static_cast<size_t>(j)];
      if (ej == 0) continue;
      mono = mono * cache[static_cast<size_t>(j)].get(ej);
    }
    acc = acc + mono;
  }
  return acc;
}

CHerm compose_herm(const LocalGerm& lg, const Disc& phi) {
  if (static_cast<int>(phi.components.size()) != lg.n)
    throw DomainError("disc dimension does not match the local germ");
  int T = disc_trunc(phi);
  auto log_displacement = [&](int coord) {
    const CSeries comp = phi.components[static_cast<size_t>(coord - 1)].truncated(T);
    if (phi.zero_flag[static_cast<size_t>(coord - 1)] || comp[0].is_zero())
      throw DomainError("local-germ composition needs nonvanishing components over nonzero "
                        "coordinates");
    CSeries delta = comp;
    delta[0] = Complex();
    Complex inv = comp[0].inv();
    for (int k = 0; k <= T; ++k) delta[k] = delta[k] * inv;
    // log |phi_j / p_j| needs |phi_j(0)| = |p_j|, true since phi(0) = p
    return herm_real_part(series_log1p(delta));
  };

  CHerm acc(T);
  for (int j = 1; j <= lg.n; ++j) {
    int a = lg.normal_exponents[static_cast<size_t>(j - 1)];
    if (a == 0) continue;
    CHerm term = log_displacement(j);
    acc = acc + term.scaled(Complex(Rational(a)));
  }
  // h-part variables
  std::vector<CHerm> vars;
  vars.reserve(lg.tangential.size());
  for (size_t i = 0; i < lg.tangential.size(); ++i) {
    int coord = lg.tangential[i];
    if (lg.h.weights()[i] == 1) {
      vars.push_back(log_displacement(coord));
    } else {
      vars.push_back(herm_square_modulus(phi.components[static_cast<size_t>(coord - 1)].truncated(T)));
    }
  }
  std::vector<HermPowerCache> cache;
  for (auto& v : vars) cache.emplace_back(v, T);
  for (const auto& [e, c] : lg.h.terms()) {
    CHerm mono = CHerm::constant(Complex(c), T);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mono = mono * cache[i].get(e[i]);
    }
    acc = acc + mono;
  }
  return acc;
}

Vanishing compose_order(const Germ& g, const Disc& phi) { return compose_herm(g, phi).vanishing_order(); }

Vanishing compose_order(const LocalGerm& lg, const Disc& phi) {
  return compose_herm(lg, phi).vanishing_order();
}

// ---------------------------------------------------------------------------

std::optional<long> newton_order(const std::map<Expo, Rational>& support,
                                 const std::vector<int>& beta, Model model) {
  for (const auto& [e, c] : support)
    if (c.sign() <= 0)
      throw DomainError("newton_order requires positive coefficients (no-cancellation regime)");
  std::optional<long> best;
  for (const auto& [e, c] : support) {
    long w = 0;
    bool inf = false;
    for (size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (beta[j] == Disc::kInf) {
        inf = true;
        break;
      }
      w += static_cast<long>(e[j]) * beta[j];
    }
    if (inf) continue;
    if (model == Model::MOD) w *= 2;
    if (!best || w < *best) best = w;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Types via the elimination engine.

namespace {

TypeValue outcome_to_value(const FamilyOutcome& fo, std::string method) {
  switch (fo.kind) {
    case FamilyOutcome::Kind::Exact: {
      TypeValue t = TypeValue::exact_value(Rational(fo.order), std::move(method));
      t.witness = fo.witness;
      return t;
    }
    case FamilyOutcome::Kind::Infinite: {
      TypeValue t = TypeValue::infinite(std::move(method));
      t.witness = fo.witness;
      return t;
    }
    case FamilyOutcome::Kind::Bounds: {
      TypeValue t = TypeValue::bounds(
          Rational(fo.order),
          fo.upper ? std::optional<Rational>(Rational(*fo.upper)) : std::nullopt,
          std::move(method));
      t.witness = fo.witness;
      return t;
    }
  }
  throw DomainError("unreachable family outcome");
}

TypeValue merge_max(const std::vector<TypeValue>& parts, const std::string& method) {
  for (const auto& p : parts)
    if (p.is_infinite()) return p;
  Rational lo(0);
  std::optional<Rational> hi = Rational(0);
  bool exact = true;
  const TypeValue* best = nullptr;
  for (const auto& p : parts) {
    Rational plo = p.kind == TypeValue::Kind::Exact ? p.exact : p.lo;
    if (!best || plo > lo) {
      lo = plo;
      best = &p;
    }
    if (p.kind == TypeValue::Kind::Exact) {
      if (hi && p.exact > *hi) hi = p.exact;
    } else {
      exact = false;
      if (!p.hi)
        hi = std::nullopt;
      else if (hi && *p.hi > *hi)
        hi = *p.hi;
    }
  }
  if (exact) {
    TypeValue t = TypeValue::exact_value(lo, method);
    if (best) t.witness = best->witness;
    return t;
  }
  if (hi && *hi == lo) {
    TypeValue t = TypeValue::exact_value(lo, method);
    if (best) t.witness = best->witness;
    return t;
  }
  TypeValue t = TypeValue::bounds(lo, hi, method);
  if (best) t.witness = best->witness;
  return t;
}

void check_point(const Germ& g, const BoundaryPoint& p) {
  if (static_cast<int>(p.p.size()) != g.n) throw DomainError("point/germ dimension mismatch");
  if (p.k == 0)
    throw DomainError("the origin cannot be a boundary point of a smooth Reinhardt domain");
}

}  // namespace

TypeValue line_type(const Germ& g, const BoundaryPoint& p, const EngineOptions& opt) {
  check_point(g, p);
  Family fam = build_line_family(g, p, opt.truncation());
  FamilyOutcome fo = maximize_order(fam, g, p, opt.truncation());
  return outcome_to_value(fo, "elimination");
}

TypeValue regular_type(const Germ& g, const BoundaryPoint& p, const EngineOptions& opt) {
  check_point(g, p);
  std::vector<TypeValue> parts;
  // exponential discs through the nonzero coordinates (the log-chart family;
  // on the tangential section when p lies on axes)
  {
    Family fam = build_expdisc_family(g, p, opt.truncation());
    parts.push_back(outcome_to_value(maximize_order(fam, g, p, opt.truncation()), "elimination"));
  }
  if (p.on_axis()) {
    Family fam = build_tailline_family(g, p, opt.truncation());
    parts.push_back(outcome_to_value(maximize_order(fam, g, p, opt.truncation()), "elimination"));
  }
  return merge_max(parts, "elimination");
}

TypeValue variety_type(const Germ& g, const BoundaryPoint& p, const EngineOptions& opt,
                       const OracleConfig& cross_check) {
  TypeValue reg = regular_type(g, p, opt);
  TypeValue oracle = jet_oracle(g, p, cross_check);
  // the oracle is a certified lower bound for the variety type; with the
  // regular = variety identity it must not exceed the engine value
  Rational oracle_lo = oracle.kind == TypeValue::Kind::Exact ? oracle.exact : oracle.lo;
  if (reg.kind == TypeValue::Kind::Exact && !oracle.is_infinite() && oracle_lo > reg.exact)
    throw InconsistencyError("certified disc lower bound " + oracle_lo.str() +
                                 " exceeds the computed supremum " + reg.exact.str(),
                             reg, oracle);
  if (reg.is_infinite() || reg.kind == TypeValue::Kind::Exact) return reg;
  // bounds: tighten the lower side with the oracle
  if (!oracle.is_infinite() && oracle_lo > reg.lo) {
    TypeValue t = TypeValue::bounds(oracle_lo, reg.hi, reg.method);
    t.witness = oracle.witness;
    return t;
  }
  return reg;
}

std::vector<Complex> default_lattice() {
  std::vector<Complex> l;
  l.push_back(Complex(0));
  l.push_back(Complex(1));
  l.push_back(Complex(-1));
  l.push_back(Complex(2));
  l.push_back(Complex(-2));
  l.push_back(Complex(Rational(1, 2)));
  l.push_back(Complex(Rational(-1, 2)));
  l.push_back(Complex::i());
  l.push_back(-Complex::i());
  l.push_back(Complex(Rational(0), Rational(1, 2)));
  l.push_back(Complex(Rational(0), Rational(-1, 2)));
  return l;
}

// ---------------------------------------------------------------------------

ReduceResult reduce_disc(const LocalGerm& lg, const Disc& phi) {
  int vphi = phi.v();
  if (vphi == Disc::kInf) throw DomainError("constant disc cannot be reduced");
  Vanishing vo = compose_order(lg, phi);
  int order_phi = vo.known() ? vo.value : vo.value + 1;  // zero-up-to counts as > trunc
  if (vo.known() && vo.value <= vphi)
    throw DomainError("reduction requires v(r o phi) > v(phi): got " + std::to_string(vo.value) +
                      " <= " + std::to_string(vphi));

  Disc psi = phi;
  int nidx = lg.normal_index - 1;
  psi.components[static_cast<size_t>(nidx)] =
      CSeries::constant(lg.base[static_cast<size_t>(nidx)],
                        phi.components[static_cast<size_t>(nidx)].trunc_order());
  psi = make_disc(psi.base, std::move(psi.components), psi.zero_flag);

  Vanishing vr = compose_order(lg, psi);
  int order_red = vr.known() ? vr.value : vr.value + 1;

  ReduceResult res{std::move(psi), vphi, 0, order_phi, order_red};
  res.v_reduced = res.reduced.v();
  if (res.v_reduced != vphi)
    throw DomainError("reduction changed the disc order (internal check)");
  if (vr.known() && vo.known() && order_red < order_phi)
    throw DomainError("reduction decreased the composition order (internal check)");
  return res;
}

}  // namespace rtype
