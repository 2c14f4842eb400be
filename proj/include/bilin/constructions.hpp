// The explicit sets: the F_3 counterexample and its two pieces, the tabulated
// permutation of P(F_2^3), the sets P_sigma built from bijections of
// projective spaces, and the hyperplane-fiber sets P_xi.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bilin/fpcore.hpp"
#include "bilin/pairsets.hpp"
#include "bilin/rng.hpp"

namespace bilin {

/// An injective map P(F_p^n_dom) -> P(F_p^n_cod), stored as a table from
/// domain point ordinal to codomain point ordinal (proj_enumerate order).
class ProjBijection {
 public:
  ProjBijection(Residue p, std::size_t n_dom, std::size_t n_cod, std::vector<std::size_t> table)
      : p_(p), n_dom_(n_dom), n_cod_(n_cod), table_(std::move(table)) {
    Field{p};
    const auto dom = proj_size(p, n_dom), cod = proj_size(p, n_cod);
    if (table_.size() != dom) throw std::invalid_argument("ProjBijection: table must cover every domain point");
    std::vector<bool> seen(cod, false);
    for (auto t : table_) {
      if (t >= cod) throw std::invalid_argument("ProjBijection: codomain ordinal out of range");
      if (seen[t]) throw std::invalid_argument("ProjBijection: table is not injective");
      seen[t] = true;
    }
  }

  static ProjBijection identity(Residue p, std::size_t n) {
    std::vector<std::size_t> t(proj_size(p, n));
    std::iota(t.begin(), t.end(), std::size_t{0});
    return ProjBijection(p, n, n, std::move(t));
  }

  /// Builds from (domain vector index, codomain vector index) pairs; any
  /// nonzero representative of each class is accepted.
  static ProjBijection from_pairs(Residue p, std::size_t n_dom, std::size_t n_cod,
                                  std::span<const std::pair<Index, Index>> pairs) {
    const ProjectiveSpace dom(p, n_dom), cod(p, n_cod);
    if (pairs.size() != dom.size()) throw std::invalid_argument("ProjBijection: need one pair per domain point");
    std::vector<std::size_t> t(dom.size(), dom.size());
    for (auto [d, c] : pairs) {
      const auto k = dom.ordinal_of(d);
      if (t[k] != dom.size()) throw std::invalid_argument("ProjBijection: domain point listed twice");
      t[k] = cod.ordinal_of(c);
    }
    return ProjBijection(p, n_dom, n_cod, std::move(t));
  }

  Residue p() const { return p_; }
  std::size_t n_dom() const { return n_dom_; }
  std::size_t n_cod() const { return n_cod_; }
  const std::vector<std::size_t>& table() const { return table_; }
  bool is_permutation() const { return n_dom_ == n_cod_; }

  ProjPoint apply(const ProjPoint& x) const {
    const ProjectiveSpace dom(p_, n_dom_), cod(p_, n_cod_);
    return cod.point(table_.at(dom.ordinal_of(x.rep())));
  }

  /// (domain index, codomain index) of normalized representatives, in domain order.
  std::vector<std::pair<Index, Index>> pairs() const {
    const auto dom = proj_enumerate(p_, n_dom_);
    const auto cod = proj_enumerate(p_, n_cod_);
    std::vector<std::pair<Index, Index>> out;
    for (std::size_t k = 0; k < table_.size(); ++k) out.emplace_back(dom[k].index(), cod[table_[k]].index());
    return out;
  }

  ProjBijection compose_after(const ProjBijection& inner) const {
    if (inner.n_cod_ != n_dom_ || inner.p_ != p_) throw std::invalid_argument("ProjBijection: cannot compose");
    std::vector<std::size_t> t(inner.table_.size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = table_[inner.table_[k]];
    return ProjBijection(p_, inner.n_dom_, n_cod_, std::move(t));
  }

  friend bool operator==(const ProjBijection&, const ProjBijection&) = default;

 private:
  Residue p_;
  std::size_t n_dom_;
  std::size_t n_cod_;
  std::vector<std::size_t> table_;
};

/// Solutions in F_3^2 x F_3^2 of x1 y1^2 + x2 y2^2 = 0 and x1^2 y1 + x2^2 y2 = 0.
inline PairSet f3_example() {
  const Residue p = 3;
  PairSet s(p, 2, 2);
  for (Index x = 0; x < 9; ++x) {
    const auto xv = VecP::decode(x, p, 2);
    for (Index y = 0; y < 9; ++y) {
      const auto yv = VecP::decode(y, p, 2);
      const auto e1 = (xv[0] * yv[0] * yv[0] + xv[1] * yv[1] * yv[1]) % p;
      const auto e2 = (xv[0] * xv[0] * yv[0] + xv[1] * xv[1] * yv[1]) % p;
      if (e1 == 0 && e2 == 0) s.insert(x, y);
    }
  }
  return s;
}

struct F3Pieces {
  PairSet p0;  // x1 y1 = 0 and x2 y2 = 0
  PairSet p1;  // x1 + x2 = 0 and y1 + y2 = 0
};

inline F3Pieces p0_p1() {
  const Residue p = 3;
  F3Pieces r{PairSet(p, 2, 2), PairSet(p, 2, 2)};
  for (Index x = 0; x < 9; ++x) {
    const auto xv = VecP::decode(x, p, 2);
    for (Index y = 0; y < 9; ++y) {
      const auto yv = VecP::decode(y, p, 2);
      if ((xv[0] * yv[0]) % p == 0 && (xv[1] * yv[1]) % p == 0) r.p0.insert(x, y);
      if ((xv[0] + xv[1]) % p == 0 && (yv[0] + yv[1]) % p == 0) r.p1.insert(x, y);
    }
  }
  return r;
}

/// The tabulated permutation of P(F_2^3) that yields a non-bilinear P_sigma.
inline ProjBijection sigma_figure2() {
  auto v = [](Residue a, Residue b, Residue c) { return VecP(2, {a, b, c}).encode(); };
  const std::vector<std::pair<Index, Index>> rows = {
      {v(1, 0, 0), v(1, 0, 0)}, {v(0, 1, 0), v(0, 1, 0)}, {v(0, 0, 1), v(0, 0, 1)}, {v(1, 1, 0), v(1, 1, 0)},
      {v(1, 0, 1), v(0, 1, 1)}, {v(0, 1, 1), v(1, 1, 1)}, {v(1, 1, 1), v(1, 0, 1)},
  };
  return ProjBijection::from_pairs(2, 3, 3, rows);
}

/// P_sigma = {0} x V2  union  Span(x) x Span(sigma(x)) over x in P(V1).
inline PairSet build_P_sigma(const ProjBijection& sigma, const Cap& cap = {}) {
  if (!sigma.is_permutation()) throw std::invalid_argument("build_P_sigma: sigma must be a bijection of P(F_p^n)");
  const Residue p = sigma.p();
  const std::size_t n = sigma.n_dom();
  PairSet s(p, n, n, cap);
  const IndexArith ar(p, n);
  for (Index y = 0; y < s.size2(); ++y) s.insert(0, y);
  const auto pts = proj_enumerate(p, n, cap);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Index x = pts[k].index();
    const Index y = pts[sigma.table()[k]].index();
    for (Residue a = 1; a < p; ++a) {
      for (Residue b = 0; b < p; ++b) s.insert(ar.scale(x, a), ar.scale(y, b));
    }
  }
  return s;
}

/// Fibers of the hyperplane construction: x in W gets V2; otherwise x maps to
/// its class in V1/W ~ F_p^2 (the non-pivot coordinates of x reduced modulo W),
/// xi_prime sends that to a point of P(F_p^2), read in the basis of L, and the
/// fiber is the orthogonal hyperplane of that vector.
inline PairSet build_P_xi(const Subspace& w, const Subspace& l, const ProjBijection& xi_prime, const Cap& cap = {}) {
  const Residue p = w.p();
  if (l.p() != p || xi_prime.p() != p) throw std::invalid_argument("build_P_xi: field mismatch");
  if (w.codim() != 2) throw std::invalid_argument("build_P_xi: W must have codimension 2");
  if (l.dim() != 2) throw std::invalid_argument("build_P_xi: L must have dimension 2");
  if (xi_prime.n_dom() != 2 || xi_prime.n_cod() != 2) {
    throw std::invalid_argument("build_P_xi: xi' must be a bijection between projective lines");
  }
  const std::size_t n1 = w.ambient_dim(), n2 = l.ambient_dim();
  const Field f(p);

  std::vector<std::size_t> free_cols;
  {
    std::vector<bool> piv(n1, false);
    for (auto c : w.pivots()) piv[c] = true;
    for (std::size_t c = 0; c < n1; ++c) {
      if (!piv[c]) free_cols.push_back(c);
    }
  }
  const ProjectiveSpace line(p, 2, cap);
  const auto line_pts = line.points();

  PairSet s(p, n1, n2, cap);
  const auto v2 = Subspace::full(p, n2).element_indices(cap);
  for (Index x = 0; x < s.size1(); ++x) {
    const auto xv = VecP::decode(x, p, n1);
    std::vector<Residue> r(xv.coords().begin(), xv.coords().end());
    for (std::size_t i = 0; i < w.dim(); ++i) {
      const Residue k = r[w.pivots()[i]];
      if (k == 0) continue;
      for (std::size_t j = 0; j < n1; ++j) r[j] = f.sub(r[j], f.mul(k, w.basis()[i][j]));
    }
    const VecP q(p, {r[free_cols[0]], r[free_cols[1]]});
    if (q.is_zero()) {
      for (auto y : v2) s.insert(x, y);
      continue;
    }
    const auto& image = line_pts[xi_prime.table()[line.ordinal_of(q)]].rep();
    const auto dir = l.combination(image.coords());
    for (auto y : complement(dir).element_indices(cap)) s.insert(x, y);
  }
  return s;
}

/// Uniform permutation of P(F_p^n) from a seed: identity table shuffled by SeededRng.
inline ProjBijection random_sigma(Residue p, std::size_t n, std::uint64_t seed, const Cap& cap = {}) {
  cap.require(proj_size(p, n), "random_sigma");
  std::vector<std::size_t> t(proj_size(p, n));
  std::iota(t.begin(), t.end(), std::size_t{0});
  SeededRng rng(seed);
  rng.shuffle(t);
  return ProjBijection(p, n, n, std::move(t));
}

}  // namespace bilin
