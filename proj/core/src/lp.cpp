#include "rtype/lp.hpp"

namespace rtype {

namespace {

// Solves a square rational system A x = b; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  size_t n = a.size();
  for (size_t c = 0; c < n; ++c) {
    size_t pivot = n;
    for (size_t r = c; r < n; ++r)
      if (!a[r][c].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[c]);
    std::swap(b[pivot], b[c]);
    Rational inv = a[c][c].inv();
    for (size_t cc = c; cc < n; ++cc) a[c][cc] *= inv;
    b[c] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Rational f = a[r][c];
      for (size_t cc = c; cc < n; ++cc) a[r][cc] -= f * a[c][cc];
      b[r] -= f * b[c];
    }
  }
  return b;
}

bool satisfies(const std::vector<LinConstraint>& cons, const std::vector<Rational>& x) {
  for (const auto& con : cons) {
    Rational v(0);
    for (size_t j = 0; j < x.size(); ++j) v += con.a[j] * x[j];
    if (v < con.b) return false;
  }
  return true;
}

}  // namespace

std::optional<std::pair<Rational, std::vector<Rational>>> lp_minimize(
    const std::vector<Rational>& c, const std::vector<LinConstraint>& cons) {
  size_t dim = c.size();
  size_t m = cons.size();
  if (m < dim) return std::nullopt;
  std::optional<std::pair<Rational, std::vector<Rational>>> best;
  // enumerate active sets of size dim
  std::vector<size_t> idx(dim);
  for (size_t i = 0; i < dim; ++i) idx[i] = i;
  auto advance = [&]() {
    size_t pos = dim;
    while (pos-- > 0) {
      if (idx[pos] != m - (dim - 1 - pos)) {
        ++idx[pos];
        for (size_t i = pos + 1; i < dim; ++i) idx[i] = idx[i - 1] + 1;
        return true;
      }
    }
    return false;
  };
  while (true) {
    std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(dim));
    std::vector<Rational> b(dim);
    for (size_t r = 0; r < dim; ++r) {
      a[r] = cons[idx[r]].a;
      b[r] = cons[idx[r]].b;
    }
    if (auto x = solve_square(std::move(a), std::move(b))) {
      if (satisfies(cons, *x)) {
        Rational val(0);
        for (size_t j = 0; j < dim; ++j) val += c[j] * (*x)[j];
        if (!best || val < best->first) best = std::make_pair(val, *x);
      }
    }
    if (!advance()) break;
  }
  return best;
}

bool lp_feasible_with_equalities(const std::vector<LinConstraint>& cons,
                                 const std::vector<LinConstraint>& eqs) {
  // phase-free feasibility: a vertex of the system with the equalities
  // enforced both ways must exist when feasible and bounded; callers supply
  // box constraints, so we simply search the combined system's vertices.
  std::vector<LinConstraint> all = cons;
  for (const auto& e : eqs) {
    all.push_back(e);
    LinConstraint neg;
    neg.a.reserve(e.a.size());
    for (const auto& v : e.a) neg.a.push_back(-v);
    neg.b = -e.b;
    all.push_back(neg);
  }
  if (all.empty()) return true;
  size_t dim = all[0].a.size();
  std::vector<Rational> c(dim, Rational(0));
  return lp_minimize(c, all).has_value();
}

}  // namespace rtype
