// Sweeps over canonical candidate spaces (subset integers, permutation ranks,
// mixed-radix fiber-map indices) that check the structural claims about
// transverse and bilinear sets, plus small search tools for the Bogolyubov
// statements.
#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bilin/bilinear.hpp"
#include "bilin/constructions.hpp"
#include "bilin/oracle.hpp"
#include "bilin/pairsets.hpp"
#include "bilin/parallel.hpp"
#include "bilin/projgeom.hpp"
#include "bilin/rng.hpp"

namespace bilin {

/// A candidate worth keeping: a non-bilinear set or a counterexample.
struct Hit {
  Index rank = 0;
  std::string label;
  PairSet set;
  BilinearVerdict verdict;
};

/// Partial and final results of a sweep. `classes` partitions the candidate
/// space; `tallies` are secondary counters. Hits and failures are kept in
/// rank order up to a limit, while their totals are always exact.
struct SweepTally {
  std::map<std::string, Index> classes;
  std::map<std::string, Index> tallies;
  std::vector<Hit> hits;
  Index hit_count = 0;
  std::vector<std::string> failures;
  Index failure_count = 0;

  void add_class(const std::string& k) { ++classes[k]; }
  void add_tally(const std::string& k, Index by = 1) { tallies[k] += by; }

  void add_hit(Hit h, std::size_t max_hits) {
    ++hit_count;
    if (hits.size() < max_hits) hits.push_back(std::move(h));
  }

  void fail(std::string msg, std::size_t max_failures = 16) {
    ++failure_count;
    if (failures.size() < max_failures) failures.push_back(std::move(msg));
  }

  void merge(SweepTally&& o, std::size_t max_hits, std::size_t max_failures = 16) {
    for (const auto& [k, v] : o.classes) classes[k] += v;
    for (const auto& [k, v] : o.tallies) tallies[k] += v;
    hit_count += o.hit_count;
    for (auto& h : o.hits) {
      if (hits.size() < max_hits) hits.push_back(std::move(h));
    }
    failure_count += o.failure_count;
    for (auto& f : o.failures) {
      if (failures.size() < max_failures) failures.push_back(std::move(f));
    }
  }

  Index class_total() const {
    Index t = 0;
    for (const auto& [k, v] : classes) t += v;
    return t;
  }

  Index count(const std::string& k) const {
    auto it = classes.find(k);
    if (it != classes.end()) return it->second;
    it = tallies.find(k);
    return it == tallies.end() ? 0 : it->second;
  }
};

struct SweepReport {
  std::string name;
  Residue p = 2;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  Index candidates = 0;
  SweepTally result;
  double wall_seconds = 0.0;

  bool ok() const { return result.failure_count == 0; }
};

struct SweepOptions {
  std::size_t jobs = 1;
  Cap cap{};
  std::size_t max_hits = 64;
  bool cross_check = false;  // classification: compare the fiber filter with direct transversality
  bool allow_slow = false;   // classification: permit candidate spaces above kSlowSweep
};

inline constexpr Index kSlowSweep = 2'000'000;

namespace detail {

template <class Body>
SweepReport run_sweep(SweepReport header, const SweepOptions& opt, Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  header.workers = std::max<std::size_t>(1, opt.jobs);
  header.result = parallel_reduce<SweepTally>(
      header.candidates, header.workers,
      [&](Index begin, Index end) {
        SweepTally t;
        for (Index r = begin; r < end; ++r) body(r, t);
        return t;
      },
      [&](SweepTally& into, SweepTally&& next) { into.merge(std::move(next), opt.max_hits); });
  header.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return header;
}

inline std::string rank_label(const char* what, Index r) { return std::string(what) + " " + std::to_string(r); }

}  // namespace detail

/// Every subset of F_p^n x F_p^n (p^{2n} <= 16 by default): transversality in
/// both modes, is_bilinear, and the brute-force bilinear oracle.
inline SweepReport exhaustive_subset_sweep(Residue p, std::size_t n, const SweepOptions& opt = {}) {
  Field{p};
  const Index cells = checked_pow(p, 2 * n);
  if (cells > 16 && opt.cap.limit != Cap::unlimited().limit) {
    throw CapExceeded("exhaustive_subset_sweep: p^(2n) = " + std::to_string(cells) + " cells exceeds 16");
  }
  if (cells > 62) throw CapExceeded("exhaustive_subset_sweep: subset index does not fit 64 bits");
  const Index total = Index{1} << cells;
  opt.cap.require(total, "exhaustive_subset_sweep");

  std::unordered_set<Index> oracle_masks;
  for (const auto& m : oracle::bilinear_sets(p, n, n)) {
    Index bits = 0;
    for (Index i = 0; i < m.size(); ++i) bits |= Index{m[i]} << i;
    oracle_masks.insert(bits);
  }

  SweepReport h{"exhaustive_subset_sweep", p, n, n, "exhaustive", std::nullopt, 1, total, {}, 0.0};
  return detail::run_sweep(std::move(h), opt, [&](Index mask, SweepTally& t) {
    PairSet s(p, n, n);
    for (Index i = 0; i < cells; ++i) {
      if (mask >> i & 1U) s.insert(s.x_of(i), s.y_of(i));
    }
    if (s.empty()) {
      t.add_class("empty");
      return;
    }
    const bool direct = is_transverse(s, TransverseMode::Direct);
    const bool fiberwise = is_transverse(s, TransverseMode::Fiberwise);
    if (direct != fiberwise) t.fail(detail::rank_label("transversality modes disagree on subset", mask));
    const auto v = is_bilinear(s);
    const bool bil = v.status == BilinearStatus::Bilinear;
    if (bil) t.add_tally("bilinear");
    if (bil != (oracle_masks.count(mask) > 0)) t.fail(detail::rank_label("is_bilinear disagrees with the oracle on subset", mask));
    if (!direct) {
      t.add_class("non_transverse");
    } else if (bil) {
      t.add_class("transverse_bilinear");
    } else {
      t.add_class("transverse_non_bilinear");
      t.fail(detail::rank_label("transverse but not bilinear: subset", mask));
      t.add_hit({mask, detail::rank_label("subset", mask), s, v}, opt.max_hits);
    }
  });
}

/// Which alternative of the hyperplane-fiber trichotomy a transverse set fits,
/// tested in the order 1, 2, 3; 0 means none.
struct Trichotomy {
  int alternative = 0;
  std::optional<Subspace> w;  // alternative 1 (empty optional: W is empty) and 3
  std::optional<Subspace> h;  // alternative 1
  std::optional<MatP> form;   // alternative 2
};

/// Requires a transverse set whose fibers all have codimension <= 1.
inline Trichotomy classify_trichotomy(const PairSet& s) {
  const Residue p = s.p();
  const std::size_t n1 = s.n1(), n2 = s.n2();
  const auto fm = FiberMap::from_pairset(s);
  const auto full2 = Subspace::full(p, n2);
  const auto pts = proj_enumerate(p, n1, Cap::unlimited());
  Trichotomy out;

  // W = {x : P_x = V2}, or empty when the fiber at 0 is a hyperplane
  std::optional<Subspace> w;
  if (fm.fiber0() == full2) {
    std::vector<VecP> reps;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (fm.fibers()[k] && *fm.fibers()[k] == full2) reps.push_back(pts[k].rep());
    }
    w = Subspace::span(p, n1, reps);
  }

  // alternative 1: every fiber outside W is one hyperplane H
  {
    std::optional<Subspace> h;
    bool same = true;
    for (std::size_t k = 0; k < pts.size() && same; ++k) {
      if (w && w->contains(pts[k].rep())) continue;
      const auto& f = fm.fibers()[k];
      if (!f || f->codim() != 1) {
        same = false;
      } else if (!h) {
        h = *f;
      } else {
        same = *h == *f;
      }
    }
    if (!w && same && !h) same = false;
    if (same) {
      if (!h) h = complement(VecP::unit(p, n2, 0));
      PairSet q = PairSet::product(Subspace::full(p, n1), *h, Cap::unlimited());
      if (w) q |= PairSet::product(*w, full2, Cap::unlimited());
      if (q == s) {
        out.alternative = 1;
        out.w = w;
        out.h = h;
        return out;
      }
    }
  }

  // alternative 2: a single form b with P = {b = 0}
  {
    const auto a = ann(s);
    for (const auto& b : a.elements(Cap::unlimited())) {
      const auto one = FormSpace::span(p, n1, n2, std::vector<MatP>{b});
      if (orth(one, Cap::unlimited()) == s) {
        out.alternative = 2;
        out.form = b;
        return out;
      }
    }
  }

  // alternative 3: p >= 5 and the largest W with W x V2 in P has codimension 2
  if (p >= 5 && w && w->codim() == 2) {
    out.alternative = 3;
    out.w = w;
  }
  return out;
}

/// All fiber maps with values in {V2} and the hyperplanes of V2, filtered by
/// the fiberwise transversality conditions, each survivor classified.
inline SweepReport classify_hyperplane_fibers(Residue p, std::size_t n, const SweepOptions& opt = {}) {
  Field{p};
  const ProjectiveGeometry g1(p, n, opt.cap);
  const ProjectiveSpace v2(p, n, opt.cap);
  std::vector<Subspace> options{Subspace::full(p, n)};
  for (const auto& pt : v2.points()) options.push_back(complement(pt.rep()));
  const std::size_t k = options.size(), np = g1.size();
  const Index total = checked_pow(k, np + 1);
  opt.cap.require(total, "classify_hyperplane_fibers");
  if (total > kSlowSweep && !opt.allow_slow) {
    throw CapExceeded("classify_hyperplane_fibers: " + std::to_string(total) + " fiber maps needs the opt-in flag");
  }

  std::vector<char> contains(k * k), meet_in(k * k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      contains[i * k + j] = options[i].contains(options[j]);
      const auto m = options[i].intersect(options[j]);
      for (std::size_t c = 0; c < k; ++c) meet_in[(i * k + j) * k + c] = options[c].contains(m);
    }
  }
  std::vector<std::array<std::size_t, 3>> triples;
  for (const auto& line : g1.lines()) {
    for (auto a : line) {
      for (auto b : line) {
        for (auto c : line) {
          if (a != b && b != c && a != c) triples.push_back({a, b, c});
        }
      }
    }
  }

  SweepReport h{"classify_hyperplane_fibers", p, n, n, "exhaustive", std::nullopt, 1, total, {}, 0.0};
  return detail::run_sweep(std::move(h), opt, [&](Index rank, SweepTally& t) {
    std::vector<std::size_t> d(np + 1);
    Index r = rank;
    for (auto& x : d) {
      x = static_cast<std::size_t>(r % k);
      r /= k;
    }
    bool pass = true;
    for (std::size_t q = 1; q <= np && pass; ++q) pass = contains[d[0] * k + d[q]];
    for (std::size_t q = 0; q < triples.size() && pass; ++q) {
      const auto [a, b, c] = triples[q];
      pass = meet_in[(d[1 + a] * k + d[1 + b]) * k + d[1 + c]];
    }
    auto build = [&] {
      std::vector<std::optional<Subspace>> fibers;
      for (std::size_t q = 1; q <= np; ++q) fibers.emplace_back(options[d[q]]);
      PairSet s(p, n, n, Cap::unlimited());
      for (auto y : options[d[0]].element_indices(Cap::unlimited())) s.insert(0, y);
      const IndexArith ar(p, n);
      for (std::size_t q = 0; q < np; ++q) {
        const Index rep = g1.space().point(q).index();
        const auto ys = options[d[1 + q]].element_indices(Cap::unlimited());
        for (Residue l = 1; l < p; ++l) {
          for (auto y : ys) s.insert(ar.scale(rep, l), y);
        }
      }
      return s;
    };
    if (opt.cross_check) {
      const auto s = build();
      if (is_transverse(s, TransverseMode::Direct) != pass) t.fail(detail::rank_label("fiber filter disagrees with direct check at rank", rank));
    }
    if (!pass) {
      t.add_class("filtered_out");
      return;
    }
    const auto s = build();
    const auto tri = classify_trichotomy(s);
    const auto v = is_bilinear(s);
    const bool bil = v.status == BilinearStatus::Bilinear;
    switch (tri.alternative) {
      case 1:
        t.add_class("alternative_1");
        break;
      case 2:
        t.add_class("alternative_2");
        break;
      case 3:
        t.add_class("alternative_3");
        t.add_tally(bil ? "alternative_3_bilinear" : "alternative_3_non_bilinear");
        break;
      default:
        t.add_class("no_alternative");
        t.fail(detail::rank_label("no alternative fits fiber map", rank));
        return;
    }
    if (tri.alternative <= 2 && !bil) t.fail(detail::rank_label("alternative 1-2 set is not bilinear at rank", rank));
    if (p <= 3 && tri.alternative == 3) t.fail(detail::rank_label("alternative 3 at p <= 3, rank", rank));
    if (!bil) t.add_hit({rank, detail::rank_label("fiber map", rank), s, v}, opt.max_hits);
  });
}

/// Every bijection xi' of P(F_p^2) (by lexicographic rank) fed to build_P_xi
/// with W = span(e_3, ..., e_n1) and L = span(e_1, e_2).
inline SweepReport xi_sweep(Residue p, std::size_t n1, std::size_t n2, const SweepOptions& opt = {}) {
  Field{p};
  if (n1 < 2 || n2 < 2) throw std::invalid_argument("xi_sweep: both dimensions must be at least 2");
  if (p + 1 > 20) throw CapExceeded("xi_sweep: (p+1)! does not fit 64 bits");
  const Index total = factorial_u64(p + 1);
  opt.cap.require(total, "xi_sweep");
  std::vector<VecP> wb;
  for (std::size_t i = 2; i < n1; ++i) wb.push_back(VecP::unit(p, n1, i));
  const auto w = Subspace::span(p, n1, wb);
  const auto l = Subspace::span(p, n2, std::vector<VecP>{VecP::unit(p, n2, 0), VecP::unit(p, n2, 1)});

  SweepReport h{"xi_sweep", p, n1, n2, "exhaustive", std::nullopt, 1, total, {}, 0.0};
  return detail::run_sweep(std::move(h), opt, [&](Index rank, SweepTally& t) {
    const ProjBijection xi(p, 2, 2, unrank_permutation(rank, p + 1));
    const bool projective = recognize_projective(xi).has_value();
    const auto s = build_P_xi(w, l, xi);
    if (!is_transverse(s)) t.fail(detail::rank_label("P_xi not transverse for rank", rank));
    const auto v = is_bilinear(s);
    const bool bil = v.status == BilinearStatus::Bilinear;
    if (projective) {
      t.add_class("projective");
      if (bil) {
        t.add_tally("projective_bilinear");
      } else {
        t.fail(detail::rank_label("projective xi' gives a non-bilinear set, rank", rank));
      }
    } else {
      t.add_class("non_projective");
      if (!bil && v.ann.dim() == 0) {
        t.add_tally("non_projective_ann_zero_non_bilinear");
      } else {
        t.fail(detail::rank_label("non-projective xi' without Ann = {0} and non-bilinear verdict, rank", rank));
      }
    }
    if (!bil) t.add_hit({rank, detail::rank_label("xi' rank", rank), s, v}, opt.max_hits);
  });
}

enum class SigmaMode { Exhaustive, Samples };

/// P_sigma for every permutation sigma of P(F_p^n) (exhaustive, by rank) or
/// for `samples` seeded random ones; hits are the non-bilinear P_sigma.
inline SweepReport search_sigma(Residue p, std::size_t n, SigmaMode mode, Index samples = 0, std::uint64_t seed = 0,
                                const SweepOptions& opt = {}) {
  Field{p};
  const ProjectiveGeometry g(p, n, opt.cap);
  const std::size_t np = g.size();
  Index total = samples;
  if (mode == SigmaMode::Exhaustive) {
    if (np > 20) throw CapExceeded("search_sigma: too many points for exhaustive mode");
    total = factorial_u64(np);
  }
  opt.cap.require(total, "search_sigma");
  std::optional<std::vector<std::size_t>> fig2;
  if (p == 2 && n == 3) fig2 = sigma_figure2().table();

  SweepReport h{"search_sigma", p, n, n, mode == SigmaMode::Exhaustive ? "exhaustive" : "samples", std::nullopt, 1, total, {}, 0.0};
  if (mode == SigmaMode::Samples) h.seed = seed;
  return detail::run_sweep(std::move(h), opt, [&](Index rank, SweepTally& t) {
    const auto sigma = mode == SigmaMode::Exhaustive ? ProjBijection(p, n, n, unrank_permutation(rank, np))
                                                     : random_sigma(p, n, derive_seed(seed, rank));
    const auto s = build_P_sigma(sigma);
    if (!is_transverse(s)) t.fail(detail::rank_label("P_sigma not transverse at", rank));
    const auto v = is_bilinear(s);
    const bool bil = v.status == BilinearStatus::Bilinear;
    const bool projective = recognize_projective(sigma.table(), g.space(), g.space()).has_value();
    t.add_class(bil ? "bilinear" : "non_bilinear");
    if (projective) {
      t.add_tally("projective");
      if (bil) t.add_tally("projective_bilinear");
      else t.fail(detail::rank_label("projective sigma gives a non-bilinear set at", rank));
    }
    if (fig2 && sigma.table() == *fig2) t.add_tally(bil ? "tabulated_sigma_bilinear" : "tabulated_sigma_non_bilinear");
    if (!bil) {
      t.add_hit({rank, detail::rank_label(mode == SigmaMode::Exhaustive ? "sigma rank" : "sample", rank), s, v}, opt.max_hits);
    }
  });
}

/// Permutations of P(F_p^n) by rank: line-preserving against recognized
/// projective. A mismatch is a failure when n >= 3 or p <= 3.
inline SweepReport fundamental_sweep(Residue p, std::size_t n, const SweepOptions& opt = {}) {
  Field{p};
  const ProjectiveGeometry g(p, n, opt.cap);
  const std::size_t np = g.size();
  if (np > 20) throw CapExceeded("fundamental_sweep: too many points");
  const Index total = factorial_u64(np);
  opt.cap.require(total, "fundamental_sweep");
  const bool strict = n >= 3 || p <= 3;

  SweepReport h{"fundamental_sweep", p, n, n, "exhaustive", std::nullopt, 1, total, {}, 0.0};
  return detail::run_sweep(std::move(h), opt, [&](Index rank, SweepTally& t) {
    const auto perm = unrank_permutation(rank, np);
    const bool lp = is_line_preserving(perm, g, g);
    const bool pr = recognize_projective(perm, g.space(), g.space()).has_value();
    if (lp && pr) {
      t.add_class("line_preserving_projective");
    } else if (!lp && !pr) {
      t.add_class("neither");
    } else if (lp) {
      t.add_class("line_preserving_not_projective");
      if (strict) t.fail(detail::rank_label("line-preserving but not projective: rank", rank));
    } else {
      t.add_class("projective_not_line_preserving");
      t.fail(detail::rank_label("projective but not line-preserving: rank", rank));
    }
  });
}

/// All total maps P(F_p^n_dom) -> P(F_p^n_cod) in mixed radix; those with the
/// line condition must be constant or injective.
inline SweepReport verify_collineation_lemma(Residue p, std::size_t n_dom, std::size_t n_cod, const SweepOptions& opt = {}) {
  Field{p};
  const ProjectiveGeometry dom(p, n_dom, opt.cap), cod(p, n_cod, opt.cap);
  const std::size_t nd = dom.size(), nc = cod.size();
  const Index total = checked_pow(nc, nd);
  opt.cap.require(total, "verify_collineation_lemma");
  std::vector<std::array<std::size_t, 3>> triples;
  for (const auto& line : dom.lines()) {
    for (auto a : line) {
      for (auto b : line) {
        for (auto c : line) {
          if (a < b && c != a && c != b) triples.push_back({a, b, c});
        }
      }
    }
  }

  SweepReport h{"verify_collineation_lemma", p, n_dom, n_cod, "exhaustive", std::nullopt, 1, total, {}, 0.0};
  return detail::run_sweep(std::move(h), opt, [&](Index rank, SweepTally& t) {
    std::vector<std::size_t> m(nd);
    Index r = rank;
    for (auto& x : m) {
      x = static_cast<std::size_t>(r % nc);
      r /= nc;
    }
    for (const auto& [a, b, c] : triples) {
      if (!cod.in_span(m[a], m[b], m[c])) {
        t.add_class("fails_line_condition");
        return;
      }
    }
    if (std::all_of(m.begin(), m.end(), [&](std::size_t v) { return v == m[0]; })) {
      t.add_class("constant");
      return;
    }
    auto sorted = m;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
      t.add_class("injective");
      return;
    }
    t.add_class("violation");
    t.fail(detail::rank_label("line-condition map neither constant nor injective: rank", rank));
  });
}

/// Embeds coefficients c (row-major d1 x d2, in the bases of w1 and w2) as an
/// ambient matrix supported on the pivot rows of w1 and pivot columns of w2.
inline MatP embed_form(const VecP& c, const Subspace& w1, const Subspace& w2) {
  MatP q(c.p(), w1.ambient_dim(), w2.ambient_dim());
  const std::size_t d2 = w2.dim();
  for (std::size_t a = 0; a < w1.dim(); ++a) {
    for (std::size_t b = 0; b < d2; ++b) q.set(w1.pivots()[a], w2.pivots()[b], c[a * d2 + b]);
  }
  return q;
}

/// Is {(x, y) in W1 x W2 : every form of M vanishes} contained in T?
inline bool contains_bilinear(const PairSet& t, const Subspace& w1, const Subspace& w2, const FormSpace& m) {
  return orth(m, w1, w2, Cap::unlimited()).subset_of(t);
}

struct BogolyubovTriple {
  Subspace w1;
  Subspace w2;
  FormSpace forms;
  std::size_t r1 = 0;
  std::size_t r2 = 0;
  std::size_t r3 = 0;
};

struct BogolyubovReport {
  PairSet image;
  std::optional<BogolyubovTriple> best;
  Index tried = 0;
};

/// T = phi(A, word), then the triple (W1, W2, M) with dim M <= r_max and
/// orth inside T minimizing (max(r1, r2, r3), r1 + r2 + r3); ties keep the
/// first in enumeration order.
inline BogolyubovReport bogolyubov_explore(const PairSet& a, std::string_view word, std::size_t r_max, const Cap& cap = {}) {
  BogolyubovReport rep{phi(a, word), std::nullopt, 0};
  const Residue p = a.p();
  auto key = [](const BogolyubovTriple& b) {
    return std::make_pair(std::max({b.r1, b.r2, b.r3}), b.r1 + b.r2 + b.r3);
  };
  const auto w1s = all_subspaces(p, a.n1(), cap), w2s = all_subspaces(p, a.n2(), cap);
  for (const auto& w1 : w1s) {
    for (const auto& w2 : w2s) {
      const std::size_t d = w1.dim() * w2.dim();
      for (std::size_t k = 0; k <= std::min(r_max, d); ++k) {
        std::optional<FormSpace> found;
        for (const auto& sub : subspaces_of_dim(p, d, k, cap)) {
          ++rep.tried;
          cap.require(rep.tried, "bogolyubov_explore");
          std::vector<MatP> qs;
          for (const auto& c : sub.basis()) qs.push_back(embed_form(c, w1, w2));
          auto m = FormSpace::span(p, a.n1(), a.n2(), qs);
          if (contains_bilinear(rep.image, w1, w2, m)) {
            found = std::move(m);
            break;
          }
        }
        if (!found) continue;
        BogolyubovTriple cand{w1, w2, *found, w1.codim(), w2.codim(), k};
        if (!rep.best || key(cand) < key(*rep.best)) rep.best = std::move(cand);
        break;
      }
    }
  }
  return rep;
}

/// A largest subspace of codimension <= codim_max inside 2A - 2A, or none.
inline std::optional<Subspace> subspace_in_sumset(const SingleSet& a, std::size_t codim_max, const Cap& cap = {}) {
  if (a.empty()) return std::nullopt;
  const auto s = sumset_word(a, "A+A-A-A");
  const std::size_t n = a.dim();
  const std::size_t lowest = codim_max >= n ? 0 : n - codim_max;
  for (std::size_t k = n + 1; k-- > lowest;) {
    for (const auto& w : subspaces_of_dim(a.p(), n, k, cap)) {
      const auto e = w.element_indices(cap);
      if (std::all_of(e.begin(), e.end(), [&](Index i) { return s.contains(i); })) return w;
    }
  }
  return std::nullopt;
}

}  // namespace bilin
