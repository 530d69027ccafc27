#include <atomic>
#include <future>
#include <thread>

#include "rtype/engine.hpp"

namespace rtype {

namespace {

struct Best {
  bool found = false;
  Rational ratio;
  bool infinite = false;
  std::vector<Complex> coeffs;  // flattened (component-major) for tie-breaking
  Disc disc;

  // max by (infinite, ratio), ties to the lexicographically smallest
  // coefficient vector
  bool better_than(const Best& o) const {
    if (!found) return false;
    if (!o.found) return true;
    if (infinite != o.infinite) return infinite;
    if (!infinite && !(ratio == o.ratio)) return o.ratio < ratio;
    // equal value: smaller coefficient vector wins
    for (size_t i = 0; i < coeffs.size() && i < o.coeffs.size(); ++i) {
      if (coeffs[i] == o.coeffs[i]) continue;
      return lex_less(coeffs[i], o.coeffs[i]);
    }
    return false;
  }
};

// vanishing order with escalating truncation; nullopt = zero up to the cap
std::optional<int> order_escalating(const Germ& g, const Disc& phi, int cap) {
  for (int t : {6, 12, cap}) {
    if (t > cap) t = cap;
    Disc cut = phi;
    for (auto& c : cut.components) c = c.truncated(t);
    Vanishing vo = compose_order(g, cut);
    if (vo.known()) return vo.value;
    if (t >= cap) return std::nullopt;
  }
  return std::nullopt;
}

struct SearchSlice {
  long first_lo, first_hi;  // range of the first coefficient index
  long budget;
};

Best search_slice(const Germ& g, const BoundaryPoint& bp, const std::vector<Complex>& lattice,
                  int max_deg, int cap, const SearchSlice& slice, std::atomic<bool>* truncated) {
  int n = g.n;
  Best best;
  long used = 0;
  const long L = static_cast<long>(lattice.size());

  // degree-by-degree: all coefficient tuples for slots (j, k), k <= d, with
  // at least one slot at degree d nonzero (lower-degree discs were already
  // enumerated at their own level)
  for (int d = 1; d <= max_deg; ++d) {
    const int slots = n * d;
    std::vector<long> idx(static_cast<size_t>(slots), 0);
    auto bump = [&]() {
      for (int i = slots - 1; i >= 0; --i) {
        // the first slot ranges only over the assigned slice at the top level
        long limit = (i == 0) ? slice.first_hi : L;
        if (++idx[static_cast<size_t>(i)] < limit) return true;
        idx[static_cast<size_t>(i)] = (i == 0) ? slice.first_lo : 0;
      }
      return false;
    };
    idx[0] = slice.first_lo;
    if (slice.first_lo >= slice.first_hi) continue;
    for (bool more = true; more; more = bump()) {
      // top-degree coefficient must be nonzero somewhere, else this disc was
      // seen at a lower degree
      bool top_nonzero = false;
      for (int j = 0; j < n; ++j)
        if (idx[static_cast<size_t>(j * d + (d - 1))] != 0) top_nonzero = true;
      if (!top_nonzero) continue;
      bool any_nonzero = false;
      for (int i = 0; i < slots; ++i)
        if (idx[static_cast<size_t>(i)] != 0) any_nonzero = true;
      if (!any_nonzero) continue;

      if (used >= slice.budget) {
        truncated->store(true);
        return best;
      }
      ++used;

      std::vector<CSeries> comps;
      std::vector<Complex> flat;
      comps.reserve(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) {
        CSeries s = CSeries::constant(bp.p[static_cast<size_t>(j)], cap);
        for (int k = 1; k <= d; ++k) {
          const Complex& c = lattice[static_cast<size_t>(idx[static_cast<size_t>(j * d + (k - 1))])];
          s[k] = c;
          flat.push_back(c);
        }
        comps.push_back(std::move(s));
      }
      Disc disc;
      try {
        disc = make_disc(bp.p, std::move(comps));
      } catch (const DomainError&) {
        continue;
      }
      int vphi = disc.v();
      if (vphi == Disc::kInf) continue;

      std::optional<int> order;
      try {
        order = order_escalating(g, disc, cap);
      } catch (const DomainError&) {
        continue;  // log-chart violations etc: not a valid probe
      }
      Best cand;
      cand.found = true;
      cand.coeffs = std::move(flat);
      cand.disc = disc;
      if (!order) {
        cand.infinite = true;
      } else {
        cand.ratio = Rational(*order) / Rational(vphi);
      }
      if (cand.better_than(best)) best = std::move(cand);
    }
  }
  return best;
}

}  // namespace

TypeValue jet_oracle(const Germ& g, const BoundaryPoint& bp, const OracleConfig& cfg) {
  std::vector<Complex> lattice = cfg.lattice.empty() ? default_lattice() : cfg.lattice;
  const int cap = 26;
  long L = static_cast<long>(lattice.size());

  // One slice per leading-coefficient value with a fixed budget share, so the
  // work set (and hence the merged result) does not depend on how many
  // workers execute the slices.
  std::atomic<bool> truncated{false};
  long per_budget = std::max<long>(1, cfg.budget / L);
  std::vector<std::future<Best>> futs;
  futs.reserve(static_cast<size_t>(L));
  for (long i = 0; i < L; ++i) {
    SearchSlice slice{i, i + 1, per_budget};
    futs.push_back(std::async(std::launch::async, [&, slice] {
      return search_slice(g, bp, lattice, cfg.max_deg, cap, slice, &truncated);
    }));
  }
  Best best;
  for (auto& f : futs) {
    Best b = f.get();
    if (b.better_than(best)) best = std::move(b);
  }

  if (!best.found) {
    TypeValue t = TypeValue::bounds(Rational(0), std::nullopt, "jet_oracle");
    t.search_truncated = truncated.load();
    return t;
  }
  if (best.infinite) {
    TypeValue t = TypeValue::infinite("jet_oracle");
    t.witness = best.disc;
    t.search_truncated = truncated.load();
    return t;
  }
  // a certified lower bound: the witness attains it exactly
  TypeValue t = TypeValue::bounds(best.ratio, std::nullopt, "jet_oracle");
  t.witness = best.disc;
  t.search_truncated = truncated.load();
  return t;
}

}  // namespace rtype
