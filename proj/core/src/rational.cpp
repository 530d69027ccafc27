#include "rtype/rational.hpp"

#include <cctype>
#include <ostream>

namespace rtype {

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  canonicalize();
}

Rational Rational::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw DomainError("empty rational literal");
  if (s[0] == '+') s = s.substr(1);  // GMP rejects an explicit leading '+'
  if (s.empty()) throw DomainError("malformed rational: " + text);
  // mpq_class accepts "n" and "n/d" but not a signed denominator.
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      mpq_class q(s, 10);
      q.canonicalize();
      return Rational(q);
    }
    std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (ns.empty() || ds.empty()) throw DomainError("malformed rational: " + text);
    bool neg = false;
    if (ds[0] == '+' || ds[0] == '-') {
      neg = ds[0] == '-';
      ds = ds.substr(1);
    }
    mpz_class n(ns, 10), d(ds, 10);
    if (d == 0) throw DomainError("rational with zero denominator: " + text);
    mpq_class q(neg ? mpz_class(-n) : n, d);
    q.canonicalize();
    return Rational(q);
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational: " + text);
  }
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::inv() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return Rational(mpq_class(1) / v_);
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  Rational base = e < 0 ? inv() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.v_.get_num().get_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), base.v_.get_den().get_mpz_t(), k);
  return Rational(mpq_class(n, d));
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace rtype
