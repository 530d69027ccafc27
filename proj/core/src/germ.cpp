#include "rtype/germ.hpp"

#include <sstream>

namespace rtype {

void Germ::add_term(const Expo& e, const Rational& c) {
  if (c.is_zero()) return;
  auto it = support.find(e);
  if (it == support.end()) {
    support.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) support.erase(it);
  }
}

bool Germ::positive_coefficients() const {
  for (const auto& [e, c] : support)
    if (c.sign() <= 0) return false;
  return true;
}

int Germ::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : support) {
    int s = 0;
    for (int ej : e) s += ej;
    d = std::max(d, s);
  }
  return d;
}

namespace {

Rational monomial_eval(const Expo& e, const std::vector<Rational>& x) {
  Rational acc(1);
  for (size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    acc *= x[j].pow(e[j]);
  }
  return acc;
}

}  // namespace

Rational Germ::eval(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != n) throw DomainError("germ evaluation: dimension mismatch");
  Rational acc = constant;
  for (const auto& [e, c] : support) acc += c * monomial_eval(e, x);
  return acc;
}

std::vector<Rational> Germ::gradient(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != n) throw DomainError("germ gradient: dimension mismatch");
  std::vector<Rational> g(static_cast<size_t>(n));
  for (const auto& [e, c] : support)
    for (int j = 0; j < n; ++j) {
      int ej = e[static_cast<size_t>(j)];
      if (ej == 0) continue;
      Expo de = e;
      de[static_cast<size_t>(j)] -= 1;
      g[static_cast<size_t>(j)] += c * Rational(ej) * monomial_eval(de, x);
    }
  return g;
}

std::vector<std::vector<Rational>> Germ::hessian(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != n) throw DomainError("germ hessian: dimension mismatch");
  std::vector<std::vector<Rational>> h(static_cast<size_t>(n),
                                       std::vector<Rational>(static_cast<size_t>(n)));
  for (const auto& [e, c] : support)
    for (int i = 0; i < n; ++i) {
      int ei = e[static_cast<size_t>(i)];
      if (ei == 0) continue;
      for (int j = i; j < n; ++j) {
        Expo de = e;
        Rational factor;
        if (i == j) {
          if (ei < 2) continue;
          factor = Rational(ei) * Rational(ei - 1);
          de[static_cast<size_t>(i)] -= 2;
        } else {
          int ej = e[static_cast<size_t>(j)];
          if (ej == 0) continue;
          factor = Rational(ei) * Rational(ej);
          de[static_cast<size_t>(i)] -= 1;
          de[static_cast<size_t>(j)] -= 1;
        }
        Rational v = c * factor * monomial_eval(de, x);
        h[static_cast<size_t>(i)][static_cast<size_t>(j)] += v;
        if (i != j) h[static_cast<size_t>(j)][static_cast<size_t>(i)] += v;
      }
    }
  return h;
}

Germ Germ::partial(int j) const {
  Germ d;
  d.model = model;
  d.n = n;
  d.base_point = base_point;
  for (const auto& [e, c] : support) {
    int ej = e[static_cast<size_t>(j)];
    if (ej == 0) continue;
    Expo de = e;
    de[static_cast<size_t>(j)] -= 1;
    d.add_term(de, c * Rational(ej));
  }
  // A constant term produced by differentiating a linear monomial lands in
  // the zero exponent; move it into the constant slot.
  Expo zero(static_cast<size_t>(n));
  auto it = d.support.find(zero);
  if (it != d.support.end()) {
    d.constant = it->second;
    d.support.erase(it);
  }
  return d;
}

std::string Germ::str() const {
  std::ostringstream os;
  bool first = true;
  auto emit_sign = [&](const Rational& c) -> Rational {
    if (first) {
      first = false;
      if (c.sign() < 0) {
        os << "-";
        return -c;
      }
      return c;
    }
    os << (c.sign() < 0 ? " - " : " + ");
    return c.abs();
  };
  for (const auto& [e, c] : support) {
    Rational a = emit_sign(c);
    bool coeff_shown = !(a == Rational(1));
    if (coeff_shown) os << a.str();
    bool any = false;
    for (size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (coeff_shown || any) os << "*";
      any = true;
      if (model == Model::MOD) {
        os << "|z" << (j + 1) << "|^" << 2 * e[j];
      } else {
        os << "log|z" << (j + 1) << "|";
        if (e[j] > 1) os << "^" << e[j];
      }
    }
    if (!any && !coeff_shown) os << "1";
  }
  if (!constant.is_zero() || first) {
    Rational a = emit_sign(constant);
    os << a.str();
  }
  return os.str();
}

std::vector<Rational> moduli_squared(const std::vector<Complex>& p) {
  std::vector<Rational> t;
  t.reserve(p.size());
  for (const auto& z : p) t.push_back(z.norm());
  return t;
}

Rational boundary_residual(const Germ& g, const std::vector<Complex>& p) {
  if (static_cast<int>(p.size()) != g.n)
    throw DomainError("boundary point dimension does not match the domain");
  if (g.model == Model::MOD) return g.eval(moduli_squared(p));
  for (const auto& z : p)
    if (!(z.norm() == Rational(1)))
      throw DomainError(
          "log-model germs require base points with |z_j| = 1 (got |z|^2 = " + z.norm().str() +
          ")");
  std::vector<Rational> u(p.size());  // log|z_j| = 0 on the unit torus
  return g.eval(u);
}

}  // namespace rtype
