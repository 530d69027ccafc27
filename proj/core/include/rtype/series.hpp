#pragma once

#include <algorithm>
#include <cassert>
#include <string>
#include <vector>

#include "rtype/complex.hpp"

namespace rtype {

/// Order of vanishing of a truncated series: either a definite order, or
/// "every stored coefficient is zero" (which callers may read as infinite
/// type or as a request for a deeper truncation).
struct Vanishing {
  bool zero_up_to_truncation = false;
  int value = 0;  // the order, or the truncation order when indeterminate

  static Vanishing at(int k) { return {false, k}; }
  static Vanishing zero_up_to(int trunc) { return {true, trunc}; }

  bool known() const { return !zero_up_to_truncation; }
  friend bool operator==(const Vanishing& a, const Vanishing& b) {
    return a.zero_up_to_truncation == b.zero_up_to_truncation && a.value == b.value;
  }
};

/// Truncated holomorphic power series in one variable: coefficients for
/// powers 0..trunc_order. Arithmetic never reads beyond the truncation;
/// results take the minimum truncation of the operands.
template <class C>
class TruncSeries {
 public:
  TruncSeries() : coeffs_(1) {}
  explicit TruncSeries(int trunc) : coeffs_(static_cast<size_t>(trunc) + 1) {
    assert(trunc >= 0);
  }
  TruncSeries(std::vector<C> coeffs, int trunc) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(static_cast<size_t>(trunc) + 1);
  }

  static TruncSeries constant(C c, int trunc) {
    TruncSeries s(trunc);
    s.coeffs_[0] = std::move(c);
    return s;
  }
  /// c * zeta^k (zero if k exceeds the truncation).
  static TruncSeries monomial(C c, int k, int trunc) {
    TruncSeries s(trunc);
    if (k <= trunc) s.coeffs_[static_cast<size_t>(k)] = std::move(c);
    return s;
  }

  int trunc_order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const C& operator[](int k) const { return coeffs_[static_cast<size_t>(k)]; }
  C& operator[](int k) { return coeffs_[static_cast<size_t>(k)]; }

  TruncSeries truncated(int trunc) const {
    std::vector<C> c(coeffs_.begin(),
                     coeffs_.begin() + std::min<size_t>(coeffs_.size(), static_cast<size_t>(trunc) + 1));
    return TruncSeries(std::move(c), trunc);
  }

  bool all_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const C& c) { return c.is_zero(); });
  }

  Vanishing vanishing_order() const {
    for (size_t k = 0; k < coeffs_.size(); ++k)
      if (!coeffs_[k].is_zero()) return Vanishing::at(static_cast<int>(k));
    return Vanishing::zero_up_to(trunc_order());
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    int t = std::min(a.trunc_order(), b.trunc_order());
    TruncSeries r(t);
    for (int k = 0; k <= t; ++k) r[k] = a[k] + b[k];
    return r;
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    int t = std::min(a.trunc_order(), b.trunc_order());
    TruncSeries r(t);
    for (int k = 0; k <= t; ++k) r[k] = a[k] - b[k];
    return r;
  }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    int t = std::min(a.trunc_order(), b.trunc_order());
    TruncSeries r(t);
    for (int i = 0; i <= t; ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; i + j <= t; ++j) {
        if (b[j].is_zero()) continue;
        r[i + j] += a[i] * b[j];
      }
    }
    return r;
  }
  TruncSeries operator-() const {
    TruncSeries r(trunc_order());
    for (int k = 0; k <= trunc_order(); ++k) r[k] = -coeffs_[static_cast<size_t>(k)];
    return r;
  }

  TruncSeries pow(long e) const {
    if (e < 0) throw DomainError("int_pow with negative exponent");
    TruncSeries acc = constant(C(Rational(1)), trunc_order());
    TruncSeries base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  TruncSeries conjugated() const {
    TruncSeries r(trunc_order());
    for (int k = 0; k <= trunc_order(); ++k) r[k] = conj(coeffs_[static_cast<size_t>(k)]);
    return r;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<C> coeffs_;
};

/// Truncated real-valued series in (zeta, conj zeta): coefficients c_{j,k}
/// for j + k <= trunc_order with the Hermitian symmetry
/// c_{j,k} = conj(c_{k,j}). All arithmetic preserves the symmetry.
template <class C>
class HermSeries {
 public:
  HermSeries() : trunc_(0), coeffs_(1) {}
  explicit HermSeries(int trunc)
      : trunc_(trunc), coeffs_(storage_size(trunc)) {
    assert(trunc >= 0);
  }

  static HermSeries constant(C c, int trunc) {
    HermSeries h(trunc);
    h.at(0, 0) = std::move(c);
    return h;
  }

  int trunc_order() const { return trunc_; }

  const C& at(int j, int k) const { return coeffs_[index(j, k)]; }
  C& at(int j, int k) { return coeffs_[index(j, k)]; }

  bool in_range(int j, int k) const { return j >= 0 && k >= 0 && j + k <= trunc_; }

  bool all_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const C& c) { return c.is_zero(); });
  }

  Vanishing vanishing_order() const {
    for (int d = 0; d <= trunc_; ++d)
      for (int k = 0; k <= d; ++k)
        if (!at(d - k, k).is_zero()) return Vanishing::at(d);
    return Vanishing::zero_up_to(trunc_);
  }

  HermSeries truncated(int trunc) const {
    HermSeries r(trunc);
    int t = std::min(trunc, trunc_);
    for (int d = 0; d <= t; ++d)
      for (int k = 0; k <= d; ++k) r.at(d - k, k) = at(d - k, k);
    return r;
  }

  friend HermSeries operator+(const HermSeries& a, const HermSeries& b) {
    int t = std::min(a.trunc_, b.trunc_);
    HermSeries r(t);
    for (int d = 0; d <= t; ++d)
      for (int k = 0; k <= d; ++k) r.at(d - k, k) = a.at(d - k, k) + b.at(d - k, k);
    return r;
  }
  friend HermSeries operator-(const HermSeries& a, const HermSeries& b) {
    int t = std::min(a.trunc_, b.trunc_);
    HermSeries r(t);
    for (int d = 0; d <= t; ++d)
      for (int k = 0; k <= d; ++k) r.at(d - k, k) = a.at(d - k, k) - b.at(d - k, k);
    return r;
  }
  friend HermSeries operator*(const HermSeries& a, const HermSeries& b) {
    int t = std::min(a.trunc_, b.trunc_);
    HermSeries r(t);
    for (int d1 = 0; d1 <= t; ++d1)
      for (int k1 = 0; k1 <= d1; ++k1) {
        const C& x = a.at(d1 - k1, k1);
        if (x.is_zero()) continue;
        for (int d2 = 0; d1 + d2 <= t; ++d2)
          for (int k2 = 0; k2 <= d2; ++k2) {
            const C& y = b.at(d2 - k2, k2);
            if (y.is_zero()) continue;
            r.at(d1 - k1 + d2 - k2, k1 + k2) += x * y;
          }
      }
    return r;
  }
  HermSeries operator-() const {
    HermSeries r(trunc_);
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = -coeffs_[i];
    return r;
  }

  HermSeries pow(long e) const {
    if (e < 0) throw DomainError("int_pow with negative exponent");
    HermSeries acc = constant(C(Rational(1)), trunc_);
    HermSeries base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  /// Scales every coefficient (scalar must be real for symmetry to survive;
  /// callers pass rationals).
  HermSeries scaled(const C& s) const {
    HermSeries r(trunc_);
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] * s;
    return r;
  }

  bool hermitian_symmetric() const {
    for (int d = 0; d <= trunc_; ++d)
      for (int k = 0; k <= d; ++k)
        if (!(at(d - k, k) - conj(at(k, d - k))).is_zero()) return false;
    return true;
  }

  friend bool operator==(const HermSeries& a, const HermSeries& b) {
    return a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
  }

 private:
  static size_t storage_size(int trunc) {
    return static_cast<size_t>(trunc + 1) * static_cast<size_t>(trunc + 2) / 2;
  }
  size_t index(int j, int k) const {
    assert(in_range(j, k));
    int d = j + k;
    return static_cast<size_t>(d) * static_cast<size_t>(d + 1) / 2 + static_cast<size_t>(k);
  }

  int trunc_;
  std::vector<C> coeffs_;
};

/// f * conj(f) as a Hermitian series: entries f_j * conj(f_k).
template <class C>
HermSeries<C> herm_square_modulus(const TruncSeries<C>& f) {
  int t = f.trunc_order();
  HermSeries<C> r(t);
  for (int j = 0; j <= t; ++j) {
    if (f[j].is_zero()) continue;
    for (int k = 0; j + k <= t; ++k) {
      if (f[k].is_zero()) continue;
      r.at(j, k) = f[j] * conj(f[k]);
    }
  }
  return r;
}

/// (f + conj f) / 2: the real part of a holomorphic series, as a Hermitian
/// series (pure zeta^j and conj-zeta^k entries only).
template <class C>
HermSeries<C> herm_real_part(const TruncSeries<C>& f) {
  int t = f.trunc_order();
  HermSeries<C> r(t);
  C half(Rational(1, 2));
  r.at(0, 0) = (f[0] + conj(f[0])) * half;
  for (int j = 1; j <= t; ++j) {
    r.at(j, 0) = f[j] * half;
    r.at(0, j) = conj(f[j]) * half;
  }
  return r;
}

/// |f|^(2a) for a positive integer a: (f^a) * conj(f^a). The exponent must
/// be a whole number; modulus-model germs only carry even modulus powers.
template <class C>
HermSeries<C> modulus_power(const TruncSeries<C>& f, const Rational& a) {
  if (!a.is_integer() || a.sign() <= 0)
    throw DomainError("modulus_power requires a positive integer exponent, got " + a.str());
  long e = a.num().get_si();
  return herm_square_modulus(f.pow(e));
}

/// exp(s) for a series with zero constant term (the only case that stays
/// exact over the rationals).
template <class S>
S series_exp(const S& s);

template <class C>
TruncSeries<C> series_exp(const TruncSeries<C>& s) {
  if (!s[0].is_zero()) throw DomainError("series exp requires zero constant term");
  int t = s.trunc_order();
  TruncSeries<C> acc = TruncSeries<C>::constant(C(Rational(1)), t);
  TruncSeries<C> term = acc;
  for (int k = 1; k <= t; ++k) {
    term = term * s;
    for (int j = 0; j <= t; ++j) term[j] = term[j] * C(Rational(1, k));
    acc = acc + term;
  }
  return acc;
}

template <class C>
HermSeries<C> series_exp(const HermSeries<C>& s) {
  if (!s.at(0, 0).is_zero()) throw DomainError("series exp requires zero constant term");
  int t = s.trunc_order();
  HermSeries<C> acc = HermSeries<C>::constant(C(Rational(1)), t);
  HermSeries<C> term = acc;
  for (int k = 1; k <= t; ++k) {
    term = (term * s).scaled(C(Rational(1, k)));
    acc = acc + term;
  }
  return acc;
}

/// log(1 + s) for a series with zero constant term.
template <class C>
TruncSeries<C> series_log1p(const TruncSeries<C>& s) {
  if (!s[0].is_zero()) throw DomainError("series log1p requires zero constant term");
  int t = s.trunc_order();
  TruncSeries<C> acc(t);
  TruncSeries<C> pw = TruncSeries<C>::constant(C(Rational(1)), t);
  for (int k = 1; k <= t; ++k) {
    pw = pw * s;
    Rational c = Rational(k % 2 == 1 ? 1 : -1, k);
    for (int j = 0; j <= t; ++j) acc[j] += pw[j] * C(c);
  }
  return acc;
}

/// 1 / s for a series with nonzero constant term.
template <class C>
TruncSeries<C> series_reciprocal(const TruncSeries<C>& s) {
  if (s[0].is_zero()) throw DomainError("series reciprocal requires nonzero constant term");
  int t = s.trunc_order();
  C c0inv = C(Rational(1)) / s[0];
  // u = 1 - s/s0 has zero constant term; 1/s = (1/s0) * sum u^k.
  TruncSeries<C> u(t);
  for (int j = 1; j <= t; ++j) u[j] = -(s[j] * c0inv);
  TruncSeries<C> acc = TruncSeries<C>::constant(C(Rational(1)), t);
  TruncSeries<C> pw = acc;
  for (int k = 1; k <= t; ++k) {
    pw = pw * u;
    acc = acc + pw;
  }
  for (int j = 0; j <= t; ++j) acc[j] = acc[j] * c0inv;
  return acc;
}

using CSeries = TruncSeries<Complex>;
using CHerm = HermSeries<Complex>;

}  // namespace rtype
