#pragma once

#include <iosfwd>
#include <string>

#include "rtype/rational.hpp"

namespace rtype {

/// Gaussian rational: exact complex number with rational real and imaginary
/// parts. Field operations are closed; conjugation is an involution.
class Complex {
 public:
  Complex() = default;
  Complex(Rational re) : re_(std::move(re)) {}  // NOLINT: implicit by design
  Complex(long re) : re_(re) {}                 // NOLINT
  Complex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Complex i() { return Complex(Rational(0), Rational(1)); }

  /// Parses "a", "a/b", "a+ci", "a/b-c/di", "ci", "-i", "2i", ...
  static Complex parse(const std::string& text);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  Complex conj() const { return Complex(re_, -im_); }
  Rational norm() const { return re_ * re_ + im_ * im_; }  // |z|^2

  Complex& operator+=(const Complex& o) { re_ += o.re_; im_ += o.im_; return *this; }
  Complex& operator-=(const Complex& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  Complex operator-() const { return Complex(-re_, -im_); }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

  Complex inv() const;
  Complex pow(long e) const;

  /// Canonical text: "0", "3/2", "i", "-1/2i", "1+i", "1/2-3i".
  std::string str() const;

 private:
  Rational re_, im_;
};

std::ostream& operator<<(std::ostream& os, const Complex& z);

/// Total order used only for deterministic tie-breaking (lexicographic on
/// (re, im)); not compatible with arithmetic.
bool lex_less(const Complex& a, const Complex& b);

inline Complex conj(const Complex& z) { return z.conj(); }

}  // namespace rtype
