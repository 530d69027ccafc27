#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "rtype/series.hpp"

using namespace rtype;

namespace {

CSeries zeta(int trunc) { return CSeries::monomial(Complex(1), 1, trunc); }

Complex rand_complex(std::mt19937_64& rng) {
  auto pick = [&] {
    long num = static_cast<long>(rng() % 9) - 4;
    long den = 1 + static_cast<long>(rng() % 4);
    return Rational(num, den);
  };
  return Complex(pick(), pick());
}

CSeries rand_series(std::mt19937_64& rng, int trunc, int min_order) {
  CSeries s(trunc);
  for (int k = min_order; k <= trunc; ++k) s[k] = rand_complex(rng);
  if (min_order <= trunc && s[min_order].is_zero()) s[min_order] = Complex(1);
  return s;
}

std::complex<double> eval_herm(const CHerm& h, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (int d = 0; d <= h.trunc_order(); ++d)
    for (int k = 0; k <= d; ++k) {
      const Complex& c = h.at(d - k, k);
      if (c.is_zero()) continue;
      std::complex<double> cv(c.re().to_double(), c.im().to_double());
      acc += cv * std::pow(z, d - k) * std::pow(std::conj(z), k);
    }
  return acc;
}

}  // namespace

TEST_CASE("rational basics") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(6, 4).num() == 3);
  CHECK(Rational(6, 4).den() == 2);
  CHECK(Rational(1, -2).den() == 2);  // denominator kept positive
  CHECK(Rational(1, -2).num() == -1);
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational::parse("-3/6") == Rational(-1, 2));
  CHECK(Rational::parse("12") == Rational(12));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
  CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
}

TEST_CASE("complex field ops and conjugation involution") {
  Complex a(Rational(1, 2), Rational(-3));
  Complex b(Rational(2), Rational(1, 5));
  CHECK(a.conj().conj() == a);
  CHECK((a * b) / b == a);
  CHECK((a + b) - b == a);
  CHECK(Complex::parse("1/2-3i") == a);
  CHECK(Complex::parse("-i") == Complex(Rational(0), Rational(-1)));
  CHECK(Complex::parse("2i") == Complex(Rational(0), Rational(2)));
  CHECK(Complex::parse("-3/5+4/5i").norm() == Rational(1));
  CHECK(Complex::parse(a.str()) == a);
  CHECK(a.pow(3) == a * a * a);
}

TEST_CASE("series add/sub/mul, difference of squares") {
  int T = 8;
  CSeries one = CSeries::constant(Complex(1), T);
  CSeries z = zeta(T);
  CSeries p = (one + z) * (one - z);
  CSeries expect = one - z * z;
  CHECK(p == expect);
}

TEST_CASE("hermitian sub keeps symmetry") {
  int T = 4;
  CHerm h(T);
  h.at(0, 0) = Complex(1);
  h.at(1, 0) = Complex(1);
  h.at(0, 1) = Complex(1);
  h.at(1, 1) = Complex(1);
  CHerm one = CHerm::constant(Complex(1), T);
  CHerm d = h - one;
  CHECK(d.hermitian_symmetric());
  CHECK(d.at(0, 0).is_zero());
  CHECK(d.at(1, 0) == Complex(1));
  CHECK(d.at(1, 1) == Complex(1));
  CHECK(d.vanishing_order() == Vanishing::at(1));
}

TEST_CASE("int_pow past the truncation is the zero series") {
  CSeries z = zeta(3);
  CSeries p = z.pow(4);
  CHECK(p.all_zero());
  CHECK(p.vanishing_order() == Vanishing::zero_up_to(3));
}

TEST_CASE("exp series of a*zeta") {
  int T = 6;
  Complex a(Rational(2));
  CSeries s = CSeries::monomial(a, 1, T);
  CSeries e = series_exp(s);
  Rational fact(1);
  for (int k = 0; k <= T; ++k) {
    if (k > 0) fact *= Rational(k);
    CHECK(e[k] == Complex(Rational(2).pow(k) / fact));
  }
}

TEST_CASE("log1p Mercator series and round-trips") {
  int T = 6;
  CSeries z = zeta(T);
  CSeries l = series_log1p(z);
  CHECK(l[1] == Complex(1));
  CHECK(l[2] == Complex(Rational(-1, 2)));
  CHECK(l[3] == Complex(Rational(1, 3)));

  // log1p(exp(2 zeta) - 1) == 2 zeta up to truncation
  CSeries e = series_exp(CSeries::monomial(Complex(2), 1, T));
  CSeries em1 = e - CSeries::constant(Complex(1), T);
  CSeries round = series_log1p(em1);
  CHECK(round == CSeries::monomial(Complex(2), 1, T));

  // both orders of the identity on random zero-constant series
  std::mt19937_64 rng(42);
  for (int it = 0; it < 10; ++it) {
    CSeries s = rand_series(rng, T, 1);
    CSeries a = series_log1p(series_exp(s) - CSeries::constant(Complex(1), T));
    CHECK(a == s);
    CSeries b = series_exp(series_log1p(s));
    CSeries via = b - CSeries::constant(Complex(1), T);
    CHECK(via == s);
  }
}

TEST_CASE("exp and log1p preconditions") {
  CSeries c1 = CSeries::constant(Complex(1), 4);
  CHECK_THROWS_AS(series_exp(c1), DomainError);
  CHECK_THROWS_AS(series_log1p(c1), DomainError);
  CHECK_THROWS_AS(series_reciprocal(zeta(4)), DomainError);
  CHECK(series_reciprocal(c1 + zeta(4))[1] == Complex(-1));
}

TEST_CASE("modulus_power examples") {
  int T = 10;
  // phi = zeta, a = 1: single coefficient at (1,1)
  CHerm m = modulus_power(zeta(T), Rational(1));
  CHECK(m.at(1, 1) == Complex(1));
  CHECK(m.vanishing_order() == Vanishing::at(2));

  // phi = 1 + zeta, a = 1: 1 + zeta + conj zeta + zeta conj zeta
  CHerm p = modulus_power(CSeries::constant(Complex(1), T) + zeta(T), Rational(1));
  CHECK(p.at(0, 0) == Complex(1));
  CHECK(p.at(1, 0) == Complex(1));
  CHECK(p.at(0, 1) == Complex(1));
  CHECK(p.at(1, 1) == Complex(1));

  // phi = zeta^2, a = 2: zeta^4 conj-zeta^4, order 8
  CHerm q = modulus_power(CSeries::monomial(Complex(1), 2, T), Rational(2));
  CHECK(q.at(4, 4) == Complex(1));
  CHECK(q.vanishing_order() == Vanishing::at(8));

  CHECK_THROWS_AS(modulus_power(zeta(T), Rational(3, 2)), DomainError);
  CHECK_THROWS_AS(modulus_power(zeta(T), Rational(-1)), DomainError);
}

TEST_CASE("vanishing order examples") {
  int T = 10;
  CSeries s = CSeries::monomial(Complex(1), 3, T) + CSeries::monomial(Complex(1), 5, T);
  CHECK(s.vanishing_order() == Vanishing::at(3));

  CHerm h(T);
  h.at(1, 1) = Complex(1);
  h.at(3, 0) = Complex(1);
  h.at(0, 3) = Complex(1);
  CHECK(h.vanishing_order() == Vanishing::at(2));

  CHECK(CSeries(10).vanishing_order() == Vanishing::zero_up_to(10));
}

TEST_CASE("property: v(fg) = v(f) + v(g) within truncation") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 100; ++it) {
    int T = 12;
    int vf = static_cast<int>(rng() % 4);
    int vg = static_cast<int>(rng() % 4);
    CSeries f = rand_series(rng, T, vf);
    CSeries g = rand_series(rng, T, vg);
    auto of = f.vanishing_order(), og = g.vanishing_order();
    REQUIRE(of.known());
    REQUIRE(og.known());
    if (of.value + og.value <= T) {
      auto ofg = (f * g).vanishing_order();
      CHECK(ofg == Vanishing::at(of.value + og.value));
    }
  }
}

TEST_CASE("property: v(f+g) >= min, equality when orders differ") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    int T = 12;
    CSeries f = rand_series(rng, T, static_cast<int>(rng() % 5));
    CSeries g = rand_series(rng, T, static_cast<int>(rng() % 5));
    auto of = f.vanishing_order(), og = g.vanishing_order();
    auto osum = (f + g).vanishing_order();
    int m = std::min(of.value, og.value);
    if (osum.known()) CHECK(osum.value >= m);
    if (of.value != og.value) CHECK(osum == Vanishing::at(m));
  }
}

TEST_CASE("property: hermitian symmetry survives arithmetic, numerically real") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 20; ++it) {
    int T = 8;
    CSeries f = rand_series(rng, T, 0);
    CSeries g = rand_series(rng, T, 1);
    CHerm a = herm_square_modulus(f);
    CHerm b = herm_real_part(g);
    CHerm c = (a + b) * a - b.pow(2);
    REQUIRE(c.hermitian_symmetric());
    // numeric spot check on |zeta| <= 1/2: imaginary part ~ 0
    std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> rad(0.0, 0.5);
    for (int p = 0; p < 20; ++p) {
      double r = rad(rng), th = ang(rng);
      std::complex<double> z = std::polar(r, th);
      CHECK(std::abs(eval_herm(c, z).imag()) < 1e-12);
    }
  }
}

TEST_CASE("property: modulus_power vanishing order is 2 a v(phi)") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 50; ++it) {
    int T = 16;
    int v = 1 + static_cast<int>(rng() % 3);
    long a = 1 + static_cast<long>(rng() % 3);
    CSeries f = rand_series(rng, T, v);
    if (2 * a * v > T) continue;
    CHerm m = modulus_power(f, Rational(a));
    CHECK(m.vanishing_order() == Vanishing::at(static_cast<int>(2 * a * v)));
  }
}
