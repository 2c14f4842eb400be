// Lines of P(F_p^n), line-preserving maps, recognition of projective maps and
// collineation counts.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bilin/constructions.hpp"
#include "bilin/fpcore.hpp"

namespace bilin {

using BigCount = boost::multiprecision::cpp_int;

/// The p+1 points of a 2-dimensional subspace, ascending by point index.
struct ProjLine {
  Residue p = 2;
  std::size_t n = 0;
  std::vector<ProjPoint> points;

  friend bool operator==(const ProjLine&, const ProjLine&) = default;
};

/// Point ordinals plus line incidence for P(F_p^n).
class ProjectiveGeometry {
 public:
  explicit ProjectiveGeometry(Residue p, std::size_t n, const Cap& cap = {}) : space_(p, n, cap) {
    const std::size_t np = space_.size();
    cap.require(static_cast<Index>(np) * np, "ProjectiveGeometry");
    line_of_.assign(np * np, kNone);
    const IndexArith ar(p, n);
    for (std::size_t a = 0; a < np; ++a) {
      for (std::size_t b = a + 1; b < np; ++b) {
        if (line_of_[a * np + b] != kNone) continue;
        std::vector<std::size_t> pts{a, b};
        Index z = space_.point(a).index();
        const Index step = space_.point(b).index();
        for (Residue l = 1; l < p; ++l) {
          z = ar.add(z, step);
          pts.push_back(space_.ordinal_of(z));
        }
        std::sort(pts.begin(), pts.end());
        const auto id = static_cast<std::uint32_t>(lines_.size());
        for (auto u : pts) {
          for (auto v : pts) {
            if (u != v) line_of_[u * np + v] = id;
          }
        }
        lines_.push_back(std::move(pts));
      }
    }
  }

  const ProjectiveSpace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  const std::vector<std::vector<std::size_t>>& lines() const { return lines_; }

  /// Is point c in Span(a, b)? For a == b the span is the single point a.
  bool in_span(std::size_t a, std::size_t b, std::size_t c) const {
    if (a == b) return c == a;
    if (c == a) return true;
    const std::size_t np = size();
    return line_of_[a * np + c] == line_of_[a * np + b];
  }

  bool collinear(std::size_t a, std::size_t b, std::size_t c) const {
    return a == b || in_span(a, b, c);
  }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffU;
  ProjectiveSpace space_;
  std::vector<std::vector<std::size_t>> lines_;
  std::vector<std::uint32_t> line_of_;
};

/// Every projective line of P(F_p^n) exactly once, ordered by their point lists.
inline std::vector<ProjLine> lines_enumerate(Residue p, std::size_t n, const Cap& cap = {}) {
  if (n < 2) throw std::invalid_argument("lines_enumerate: n must be at least 2");
  const ProjectiveGeometry g(p, n, cap);
  std::vector<ProjLine> out;
  for (const auto& l : g.lines()) {
    ProjLine pl{p, n, {}};
    for (auto k : l) pl.points.push_back(g.space().point(k));
    out.push_back(std::move(pl));
  }
  return out;
}

/// True iff for every line of the domain and every x != y, z on it,
/// xi(z) lies in Span(xi(x), xi(y)). `table` maps domain ordinals to
/// codomain ordinals.
inline bool is_line_preserving(std::span<const std::size_t> table, const ProjectiveGeometry& dom,
                               const ProjectiveGeometry& cod) {
  if (table.size() != dom.size()) throw std::invalid_argument("is_line_preserving: map must be total");
  for (const auto& line : dom.lines()) {
    for (auto x : line) {
      for (auto y : line) {
        if (x == y) continue;
        for (auto z : line) {
          if (!cod.in_span(table[x], table[y], table[z])) return false;
        }
      }
    }
  }
  return true;
}

inline bool is_line_preserving(const ProjBijection& m) {
  const ProjectiveGeometry dom(m.p(), m.n_dom()), cod(m.p(), m.n_cod());
  return is_line_preserving(m.table(), dom, cod);
}

/// Scales a nonzero matrix so that its first nonzero entry (row-major) is 1.
inline MatP normalize_scalar(const MatP& m) {
  for (auto e : m.entries()) {
    if (e != 0) return m.scaled(Field(m.p()).inv(e));
  }
  return m;
}

/// An n_cod x n_dom matrix F with [F x] = xi([x]) for every domain point,
/// found from the projective frame (e_1, ..., e_n, e_1 + ... + e_n), or none.
inline std::optional<MatP> recognize_projective(std::span<const std::size_t> table, const ProjectiveSpace& dom,
                                                const ProjectiveSpace& cod) {
  const Residue p = dom.p();
  const std::size_t n = dom.dim(), m = cod.dim();
  if (table.size() != dom.size()) throw std::invalid_argument("recognize_projective: map must be total");
  const Field f(p);

  auto image = [&](const VecP& x) { return cod.point(table[dom.ordinal_of(x)]).rep(); };

  std::vector<VecP> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(image(VecP::unit(p, n, i)));
  MatP candidate(p, m, n);
  if (n == 1) {
    for (std::size_t r = 0; r < m; ++r) candidate.set(r, 0, v[0][r]);
  } else {
    const VecP u = image(VecP(p, std::vector<Residue>(n, 1)));
    // Solve sum_i lambda_i v_i = u: kernel of [v_1 ... v_n | -u] with last coordinate 1.
    MatP sys(p, m, n + 1);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t i = 0; i < n; ++i) sys.set(r, i, v[i][r]);
      sys.set(r, n, f.neg(u[r]));
    }
    const auto rr = rref_kernel(sys);
    // Images of a basis must be independent, so the kernel is at most one line.
    if (rr.kernel.dim() != 1) return std::nullopt;
    const auto& k = rr.kernel.basis()[0];
    if (k[n] == 0) return std::nullopt;
    const Residue scale = f.inv(k[n]);
    for (std::size_t i = 0; i < n; ++i) {
      const Residue lambda = f.mul(k[i], scale);
      if (lambda == 0) return std::nullopt;
      for (std::size_t r = 0; r < m; ++r) candidate.set(r, i, f.mul(lambda, v[i][r]));
    }
  }
  for (std::size_t k = 0; k < dom.size(); ++k) {
    const auto fx = candidate.apply(dom.point(k).rep());
    if (fx.is_zero() || cod.ordinal_of(fx) != table[k]) return std::nullopt;
  }
  return normalize_scalar(candidate);
}

inline std::optional<MatP> recognize_projective(const ProjBijection& m) {
  const ProjectiveSpace dom(m.p(), m.n_dom()), cod(m.p(), m.n_cod());
  return recognize_projective(m.table(), dom, cod);
}

/// Lexicographic permutation of {0..n-1} with the given rank.
inline std::vector<std::size_t> unrank_permutation(Index rank, std::size_t n) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::vector<Index> fact(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  if (rank >= fact[n]) throw std::out_of_range("unrank_permutation: rank out of range");
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t i = n; i-- > 0;) {
    const auto q = static_cast<std::size_t>(rank / fact[i]);
    rank %= fact[i];
    out.push_back(pool[q]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
  }
  return out;
}

/// Inverse of unrank_permutation.
inline Index rank_permutation(std::span<const std::size_t> perm) {
  const std::size_t n = perm.size();
  Index rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Index smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller += perm[j] < perm[i];
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

inline Index factorial_u64(std::size_t n) {
  Index r = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (r > (Index{1} << 63) / i) throw std::overflow_error("factorial_u64: overflow");
    r *= i;
  }
  return r;
}

struct CollineationCounts {
  BigCount bijections;
  BigCount line_preserving;
  BigCount projective;
};

enum class CountMode { Exhaustive, Formula };

/// Permutations of P(F_p^n), how many preserve lines, and how many are projective.
/// Formula mode is for n = 2 only: (p+1)!, (p+1)!, (p+1)p(p-1).
inline CollineationCounts count_collineations(Residue p, std::size_t n, CountMode mode, const Cap& cap = {}) {
  Field{p};
  if (mode == CountMode::Formula) {
    if (n != 2) throw std::invalid_argument("count_collineations: formula mode covers projective lines only");
    BigCount fact = 1;
    for (Residue i = 2; i <= p + 1; ++i) fact *= i;
    return {fact, fact, BigCount(p + 1) * p * (p - 1)};
  }
  const ProjectiveGeometry g(p, n, cap);
  const std::size_t np = g.size();
  if (np > 20) throw CapExceeded("count_collineations: too many points for exhaustive mode");
  const Index total = factorial_u64(np);
  cap.require(total, "count_collineations");
  CollineationCounts c{BigCount(total), 0, 0};
  std::vector<std::size_t> perm(np);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Index lp = 0, proj = 0;
  do {
    if (is_line_preserving(perm, g, g)) ++lp;
    if (recognize_projective(perm, g.space(), g.space())) ++proj;
  } while (std::next_permutation(perm.begin(), perm.end()));
  c.line_preserving = lp;
  c.projective = proj;
  return c;
}

}  // namespace bilin
