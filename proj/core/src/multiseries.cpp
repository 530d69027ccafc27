#include "rtype/multiseries.hpp"

namespace rtype {

MultiSeries MultiSeries::constant(const Rational& c, std::vector<int> weights, int trunc) {
  MultiSeries s(std::move(weights), trunc);
  s.add_term(Expo(static_cast<size_t>(s.nvars())), c);
  return s;
}

MultiSeries MultiSeries::variable(int j, std::vector<int> weights, int trunc) {
  MultiSeries s(std::move(weights), trunc);
  Expo e(static_cast<size_t>(s.nvars()));
  e[static_cast<size_t>(j)] = 1;
  s.add_term(e, Rational(1));
  return s;
}

int MultiSeries::weighted_degree(const Expo& e) const {
  int d = 0;
  for (size_t j = 0; j < e.size(); ++j) d += e[j] * weights_[j];
  return d;
}

void MultiSeries::add_term(const Expo& e, const Rational& c) {
  if (c.is_zero() || weighted_degree(e) > trunc_) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational MultiSeries::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

MultiSeries MultiSeries::operator+(const MultiSeries& o) const {
  MultiSeries r(weights_, std::min(trunc_, o.trunc_));
  for (const auto& [e, c] : terms_) r.add_term(e, c);
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiSeries MultiSeries::operator-(const MultiSeries& o) const {
  MultiSeries r(weights_, std::min(trunc_, o.trunc_));
  for (const auto& [e, c] : terms_) r.add_term(e, c);
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MultiSeries MultiSeries::operator*(const MultiSeries& o) const {
  MultiSeries r(weights_, std::min(trunc_, o.trunc_));
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Expo e(ea.size());
      for (size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiSeries MultiSeries::operator-() const {
  MultiSeries r(weights_, trunc_);
  for (const auto& [e, c] : terms_) r.add_term(e, -c);
  return r;
}

MultiSeries MultiSeries::scaled(const Rational& c) const {
  MultiSeries r(weights_, trunc_);
  for (const auto& [e, v] : terms_) r.add_term(e, v * c);
  return r;
}

MultiSeries MultiSeries::pow(long e) const {
  MultiSeries acc = constant(Rational(1), weights_, trunc_);
  MultiSeries base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

MultiSeries MultiSeries::exp() const {
  if (!constant_term().is_zero()) throw DomainError("multiseries exp requires zero constant term");
  MultiSeries acc = constant(Rational(1), weights_, trunc_);
  MultiSeries term = acc;
  for (int k = 1; k <= trunc_; ++k) {
    term = (term * *this).scaled(Rational(1, k));
    if (term.is_zero()) break;
    acc = acc + term;
  }
  return acc;
}

MultiSeries MultiSeries::reciprocal() const {
  Rational c0 = constant_term();
  if (c0.is_zero()) throw DomainError("multiseries reciprocal requires nonzero constant term");
  MultiSeries u = constant(Rational(1), weights_, trunc_) - scaled(c0.inv());
  MultiSeries acc = constant(Rational(1), weights_, trunc_);
  MultiSeries pw = acc;
  for (int k = 1; k <= trunc_; ++k) {
    pw = pw * u;
    if (pw.is_zero()) break;
    acc = acc + pw;
  }
  return acc.scaled(c0.inv());
}

MultiSeries MultiSeries::substitute(int j, const MultiSeries& value) const {
  MultiSeries r(weights_, trunc_);
  std::vector<MultiSeries> powers{constant(Rational(1), weights_, trunc_)};
  for (const auto& [e, c] : terms_) {
    int ej = e[static_cast<size_t>(j)];
    while (static_cast<int>(powers.size()) <= ej) powers.push_back(powers.back() * value);
    Expo rest = e;
    rest[static_cast<size_t>(j)] = 0;
    MultiSeries mono(weights_, trunc_);
    mono.add_term(rest, c);
    r = r + mono * powers[static_cast<size_t>(ej)];
  }
  return r;
}

MultiSeries MultiSeries::set_var_zero(int j) const {
  MultiSeries r(weights_, trunc_);
  for (const auto& [e, c] : terms_)
    if (e[static_cast<size_t>(j)] == 0) r.add_term(e, c);
  return r;
}

Rational MultiSeries::eval(const std::vector<Rational>& x) const {
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (size_t j = 0; j < e.size(); ++j)
      if (e[j] > 0) m *= x[j].pow(e[j]);
    acc += m;
  }
  return acc;
}

int MultiSeries::min_weighted_degree() const {
  int best = trunc_ + 1;
  for (const auto& [e, c] : terms_) best = std::min(best, weighted_degree(e));
  return best;
}

}  // namespace rtype
