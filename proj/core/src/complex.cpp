#include "rtype/complex.hpp"

#include <cctype>
#include <ostream>
#include <vector>

namespace rtype {

Complex& Complex::operator*=(const Complex& o) {
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  if (o.is_zero()) throw DomainError("complex division by zero");
  Rational n = o.norm();
  Rational r = (re_ * o.re_ + im_ * o.im_) / n;
  Rational i = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Complex Complex::inv() const {
  if (is_zero()) throw DomainError("inverse of zero");
  Rational n = norm();
  return Complex(re_ / n, -im_ / n);
}

Complex Complex::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Complex acc(Rational(1));
  Complex base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

namespace {

// Splits "a+bi" into the two signed terms; each term is a rational literal
// optionally suffixed with 'i'.
struct Term {
  std::string body;
  bool imag = false;
};

std::vector<Term> split_terms(const std::string& s) {
  std::vector<Term> out;
  std::string cur;
  for (size_t k = 0; k < s.size(); ++k) {
    char c = s[k];
    if ((c == '+' || c == '-') && k > 0 && s[k - 1] != '/' && s[k - 1] != '+' &&
        s[k - 1] != '-') {
      out.push_back({cur, false});
      cur.clear();
      cur += c;
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back({cur, false});
  for (auto& t : out) {
    if (!t.body.empty() && (t.body.back() == 'i' || t.body.back() == 'I')) {
      t.imag = true;
      t.body.pop_back();
      if (t.body.empty() || t.body == "+" || t.body == "-") t.body += "1";
    }
  }
  return out;
}

}  // namespace

Complex Complex::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw DomainError("empty complex literal");
  Rational re(0), im(0);
  bool saw_re = false, saw_im = false;
  for (const Term& t : split_terms(s)) {
    Rational v = Rational::parse(t.body);
    if (t.imag) {
      if (saw_im) throw DomainError("malformed complex literal: " + text);
      im += v;
      saw_im = true;
    } else {
      if (saw_re) throw DomainError("malformed complex literal: " + text);
      re += v;
      saw_re = true;
    }
  }
  return Complex(re, im);
}

std::string Complex::str() const {
  if (im_.is_zero()) return re_.str();
  std::string is = im_.abs() == Rational(1) ? "i" : im_.abs().str() + "i";
  std::string sign = im_.sign() < 0 ? "-" : "";
  if (re_.is_zero()) return sign + is;
  return re_.str() + (im_.sign() < 0 ? "-" : "+") + is;
}

std::ostream& operator<<(std::ostream& os, const Complex& z) { return os << z.str(); }

bool lex_less(const Complex& a, const Complex& b) {
  if (a.re() != b.re()) return a.re() < b.re();
  return a.im() < b.im();
}

}  // namespace rtype
