#include "rtype/sturm.hpp"

#include <algorithm>

namespace rtype {

void UniPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational UniPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return zero();
  std::vector<Rational> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long>(k));
  return UniPoly(std::move(d));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
  for (size_t k = 0; k < r.size(); ++k) {
    if (k < a.c_.size()) r[k] += a.c_[k];
    if (k < b.c_.size()) r[k] += b.c_[k];
  }
  return UniPoly(std::move(r));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
  for (size_t k = 0; k < r.size(); ++k) {
    if (k < a.c_.size()) r[k] += a.c_[k];
    if (k < b.c_.size()) r[k] -= b.c_[k];
  }
  return UniPoly(std::move(r));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly::zero();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-() const {
  std::vector<Rational> r(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) r[k] = -c_[k];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::rem(const UniPoly& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> r = c_;
  int dd = d.degree();
  const Rational& lead = d.c_.back();
  while (static_cast<int>(r.size()) - 1 >= dd) {
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    if (static_cast<int>(r.size()) - 1 < dd) break;
    Rational q = r.back() / lead;
    size_t shift = r.size() - 1 - static_cast<size_t>(dd);
    for (size_t k = 0; k < d.c_.size(); ++k) r[shift + k] -= q * d.c_[k];
  }
  return UniPoly(std::move(r));
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.rem(b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  Rational lead = a.c_.back();
  for (auto& c : a.c_) c /= lead;
  return a;
}

std::vector<UniPoly> UniPoly::sturm_chain() const {
  std::vector<UniPoly> chain;
  chain.push_back(*this);
  chain.push_back(derivative());
  while (!chain.back().is_zero()) {
    UniPoly r = chain[chain.size() - 2].rem(chain.back());
    chain.push_back(-r);
  }
  chain.pop_back();
  return chain;
}

int UniPoly::sign_changes(const std::vector<UniPoly>& chain, const Rational& x) {
  int changes = 0, prev = 0;
  for (const auto& p : chain) {
    int s = p.eval(x).sign();
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int UniPoly::count_roots(const Rational& a, const Rational& b) const {
  if (is_zero()) throw DomainError("root count of the zero polynomial");
  if (!(a < b)) return 0;
  auto chain = sturm_chain();
  return sign_changes(chain, a) - sign_changes(chain, b);
}

std::vector<std::pair<Rational, Rational>> UniPoly::isolate_roots(const Rational& a,
                                                                  const Rational& b,
                                                                  const Rational& width) const {
  std::vector<std::pair<Rational, Rational>> out;
  if (is_zero() || !(a < b)) return out;
  auto chain = sturm_chain();
  struct Seg {
    Rational lo, hi;
    int nroots;
  };
  int total = sign_changes(chain, a) - sign_changes(chain, b);
  std::vector<Seg> work{{a, b, total}};
  while (!work.empty()) {
    Seg s = work.back();
    work.pop_back();
    if (s.nroots == 0) continue;
    Rational w = s.hi - s.lo;
    if (s.nroots == 1 && w <= width) {
      out.emplace_back(s.lo, s.hi);
      continue;
    }
    Rational mid = (s.lo + s.hi) * Rational(1, 2);
    int left = sign_changes(chain, s.lo) - sign_changes(chain, mid);
    work.push_back({mid, s.hi, s.nroots - left});
    work.push_back({s.lo, mid, left});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::optional<Rational> UniPoly::find_negative_point(const Rational& a, const Rational& b) const {
  if (is_zero() || !(a < b)) return std::nullopt;
  // Candidate points: midpoints between consecutive root intervals and the
  // interval ends; the sign of p is constant between roots.
  Rational w = (b - a) * Rational(1, 1024);
  auto roots = isolate_roots(a, b, w);
  std::vector<Rational> candidates;
  Rational prev = a;
  for (const auto& [lo, hi] : roots) {
    if (prev < lo) candidates.push_back((prev + lo) * Rational(1, 2));
    prev = hi;
  }
  if (prev < b) candidates.push_back((prev + b) * Rational(1, 2));
  candidates.push_back(a + (b - a) * Rational(1, 7));  // guard for roots at ends
  for (const auto& x : candidates)
    if (x > a && x < b && eval(x).sign() < 0) return x;
  return std::nullopt;
}

bool UniPoly::nonnegative_on(const Rational& a, const Rational& b) const {
  if (is_zero()) return true;
  if (eval(a).sign() < 0 || eval(b).sign() < 0) return false;
  return !find_negative_point(a, b).has_value();
}

}  // namespace rtype
