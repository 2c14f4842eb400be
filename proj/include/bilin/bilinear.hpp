// Bilinear forms over F_p, the Ann/Orth Galois connection between pair sets
// and spaces of forms, the bilinear closure, and the bilinearity decision.
//
// A form on W1 x W2 is stored as an ambient n1 x n2 matrix supported on the
// pivot rows of W1 and the pivot columns of W2. Since the pivot entries of a
// vector of W are its coordinates in the canonical basis, this identifies
// forms on W1 x W2 with ambient matrices in a canonical way.
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bilin/fpcore.hpp"
#include "bilin/pairsets.hpp"

namespace bilin {

/// (x, y) -> x^T Q y for an n1 x n2 matrix Q.
class BilinearForm {
 public:
  BilinearForm() = default;
  explicit BilinearForm(MatP q) : q_(std::move(q)) {}

  static BilinearForm zero(Residue p, std::size_t n1, std::size_t n2) { return BilinearForm(MatP(p, n1, n2)); }

  Residue p() const { return q_.p(); }
  std::size_t n1() const { return q_.rows(); }
  std::size_t n2() const { return q_.cols(); }
  const MatP& matrix() const { return q_; }

  Residue eval(const VecP& x, const VecP& y) const {
    if (x.dim() != n1() || y.dim() != n2() || x.p() != p() || y.p() != p()) {
      throw std::invalid_argument("BilinearForm::eval: shape mismatch");
    }
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n1(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n2(); ++j) s = (s + std::uint64_t{x[i]} * q_.at(i, j) % p() * y[j]) % p();
    }
    return static_cast<Residue>(s);
  }

  friend bool operator==(const BilinearForm&, const BilinearForm&) = default;

 private:
  MatP q_;
};

inline Residue eval_form(const BilinearForm& q, const VecP& x, const VecP& y) { return q.eval(x, y); }

inline VecP flatten(const MatP& m) { return VecP(m.p(), std::vector<Residue>(m.entries().begin(), m.entries().end())); }

inline MatP unflatten(const VecP& v, std::size_t n1, std::size_t n2) {
  return MatP(v.p(), n1, n2, std::vector<Residue>(v.coords().begin(), v.coords().end()));
}

/// A subspace of the n1*n2-dimensional space of forms, canonical in the
/// row-major flattened coordinates.
class FormSpace {
 public:
  FormSpace() = default;

  FormSpace(Residue p, std::size_t n1, std::size_t n2) : n1_(n1), n2_(n2), flat_(Subspace::zero(p, n1 * n2)) {}

  static FormSpace span(Residue p, std::size_t n1, std::size_t n2, std::span<const MatP> forms) {
    std::vector<VecP> vs;
    for (const auto& q : forms) {
      if (q.rows() != n1 || q.cols() != n2 || q.p() != p) throw std::invalid_argument("FormSpace::span: shape mismatch");
      vs.push_back(flatten(q));
    }
    FormSpace f(p, n1, n2);
    f.flat_ = Subspace::span(p, n1 * n2, vs);
    return f;
  }

  Residue p() const { return flat_.p(); }
  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t dim() const { return flat_.dim(); }
  const Subspace& flat() const { return flat_; }

  std::vector<MatP> basis() const {
    std::vector<MatP> out;
    for (const auto& b : flat_.basis()) out.push_back(unflatten(b, n1_, n2_));
    return out;
  }

  bool contains(const MatP& q) const { return flat_.contains(flatten(q)); }
  bool contains(const FormSpace& o) const { return flat_.contains(o.flat_); }

  /// Every form of the space, ascending by flattened index.
  std::vector<MatP> elements(const Cap& cap = {}) const {
    std::vector<MatP> out;
    for (auto i : flat_.element_indices(cap)) out.push_back(unflatten(VecP::decode(i, p(), n1_ * n2_), n1_, n2_));
    return out;
  }

  friend bool operator==(const FormSpace& a, const FormSpace& b) {
    return a.n1_ == b.n1_ && a.n2_ == b.n2_ && a.flat_ == b.flat_;
  }

 private:
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  Subspace flat_;
};

namespace detail {

inline void require_inside(const PairSet& s, const Subspace& w1, const Subspace& w2) {
  if (w1.p() != s.p() || w2.p() != s.p() || w1.ambient_dim() != s.n1() || w2.ambient_dim() != s.n2()) {
    throw std::invalid_argument("ambient mismatch between the set and (w1, w2)");
  }
  const auto pr = projections(s);
  const auto in1 = SingleSet::from_subspace(w1, Cap::unlimited());
  const auto in2 = SingleSet::from_subspace(w2, Cap::unlimited());
  if (!pr.pi1.subset_of(in1) || !pr.pi2.subset_of(in2)) {
    throw std::invalid_argument("ann: the set is not contained in w1 x w2");
  }
}

}  // namespace detail

/// Forms on w1 x w2 vanishing on every pair of P, as ambient matrices
/// supported on the pivot rows of w1 and pivot columns of w2.
inline FormSpace ann(const PairSet& s, const Subspace& w1, const Subspace& w2) {
  detail::require_inside(s, w1, w2);
  const Residue p = s.p();
  const Field f(p);
  const std::size_t d1 = w1.dim(), d2 = w2.dim();
  const std::size_t unknowns = d1 * d2;

  // Coordinates of x in w1 are its pivot entries; same for y.
  auto coords = [&](Index v, std::size_t n, const Subspace& w) {
    const auto vec = VecP::decode(v, p, n);
    return w.coordinates(vec);
  };

  std::set<std::vector<Residue>> rows;
  std::vector<std::vector<Residue>> xc(s.size1()), yc(s.size2());
  std::vector<bool> have_x(s.size1(), false), have_y(s.size2(), false);
  s.bits().for_each([&](Index i) {
    const Index x = s.x_of(i), y = s.y_of(i);
    if (!have_x[x]) {
      xc[x] = coords(x, s.n1(), w1);
      have_x[x] = true;
    }
    if (!have_y[y]) {
      yc[y] = coords(y, s.n2(), w2);
      have_y[y] = true;
    }
    std::vector<Residue> row(unknowns);
    bool nonzero = false;
    for (std::size_t a = 0; a < d1; ++a) {
      for (std::size_t b = 0; b < d2; ++b) {
        row[a * d2 + b] = f.mul(xc[x][a], yc[y][b]);
        nonzero |= row[a * d2 + b] != 0;
      }
    }
    if (nonzero) rows.insert(std::move(row));
  });

  MatP system(p, rows.size(), unknowns);
  std::size_t r = 0;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < unknowns; ++c) system.set(r, c, row[c]);
    ++r;
  }
  const auto kernel = rref_kernel(system).kernel;

  std::vector<MatP> forms;
  for (const auto& k : kernel.basis()) {
    MatP q(p, s.n1(), s.n2());
    for (std::size_t a = 0; a < d1; ++a) {
      for (std::size_t b = 0; b < d2; ++b) q.set(w1.pivots()[a], w2.pivots()[b], k[a * d2 + b]);
    }
    forms.push_back(std::move(q));
  }
  return FormSpace::span(p, s.n1(), s.n2(), forms);
}

/// Pairs of w1 x w2 on which every form of M vanishes.
inline PairSet orth(const FormSpace& m, const Subspace& w1, const Subspace& w2, const Cap& cap = {}) {
  const Residue p = m.p();
  if (w1.p() != p || w2.p() != p || w1.ambient_dim() != m.n1() || w2.ambient_dim() != m.n2()) {
    throw std::invalid_argument("orth: ambient mismatch");
  }
  PairSet out(p, m.n1(), m.n2(), cap);
  const auto basis = m.basis();
  const auto xs = w1.element_indices(cap);
  const auto ys = w2.element_indices(cap);
  std::vector<VecP> yv;
  yv.reserve(ys.size());
  for (auto y : ys) yv.push_back(VecP::decode(y, p, m.n2()));

  for (auto x : xs) {
    const auto xv = VecP::decode(x, p, m.n1());
    // covectors x^T Q_k
    std::vector<std::vector<Residue>> cov;
    cov.reserve(basis.size());
    for (const auto& q : basis) {
      std::vector<Residue> c(m.n2(), 0);
      for (std::size_t j = 0; j < m.n2(); ++j) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < m.n1(); ++i) acc += std::uint64_t{xv[i]} * q.at(i, j);
        c[j] = static_cast<Residue>(acc % p);
      }
      cov.push_back(std::move(c));
    }
    for (std::size_t t = 0; t < ys.size(); ++t) {
      bool zero = true;
      for (const auto& c : cov) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < m.n2(); ++j) acc += std::uint64_t{c[j]} * yv[t][j];
        if (acc % p != 0) {
          zero = false;
          break;
        }
      }
      if (zero) out.insert(x, ys[t]);
    }
  }
  return out;
}

/// Ann over the full ambient space.
inline FormSpace ann(const PairSet& s) {
  return ann(s, Subspace::full(s.p(), s.n1()), Subspace::full(s.p(), s.n2()));
}

/// Orth over the full ambient space.
inline PairSet orth(const FormSpace& m, const Cap& cap = {}) {
  return orth(m, Subspace::full(m.p(), m.n1()), Subspace::full(m.p(), m.n2()), cap);
}

struct Closure {
  Subspace w1;
  Subspace w2;
  FormSpace ann;
  PairSet set;
};

/// The minimal bilinear superset of a nonempty P: Orth(Ann(P)) inside
/// span(pi1 P) x span(pi2 P).
inline Closure closure(const PairSet& s) {
  if (s.empty()) throw std::invalid_argument("closure: empty input");
  const auto pr = projections(s);
  Closure c;
  c.w1 = pr.pi1.span();
  c.w2 = pr.pi2.span();
  c.ann = ann(s, c.w1, c.w2);
  c.set = orth(c.ann, c.w1, c.w2, Cap::unlimited());
  return c;
}

enum class BilinearStatus { Bilinear, NonBilinear, Empty };

inline const char* to_string(BilinearStatus s) {
  switch (s) {
    case BilinearStatus::Bilinear:
      return "bilinear";
    case BilinearStatus::NonBilinear:
      return "non_bilinear";
    case BilinearStatus::Empty:
      return "empty";
  }
  return "?";
}

struct BilinearVerdict {
  BilinearStatus status = BilinearStatus::Empty;
  Subspace w1;
  Subspace w2;
  FormSpace ann;
  /// Pair of closure \ P minimal in (x_index, y_index) order.
  std::optional<std::pair<Index, Index>> witness;
  /// Set when a projection is not a subspace: 1 or 2.
  std::optional<int> projection_not_subspace;
  Index closure_size = 0;

  std::size_t r1() const { return w1.codim(); }
  std::size_t r2() const { return w2.codim(); }
  std::size_t r3() const { return ann.dim(); }
};

/// P is bilinear iff both projections are subspaces and P equals its closure.
inline BilinearVerdict is_bilinear(const PairSet& s) {
  BilinearVerdict v;
  if (s.empty()) {
    v.status = BilinearStatus::Empty;
    v.w1 = Subspace::zero(s.p(), s.n1());
    v.w2 = Subspace::zero(s.p(), s.n2());
    v.ann = FormSpace(s.p(), s.n1(), s.n2());
    return v;
  }
  // A bilinear set projects onto its W1 and W2, so a non-subspace projection
  // already rules it out; the closure then still supplies a witness.
  const auto pr = projections(s);
  const bool ok1 = pr.pi1.is_subspace();
  const bool ok2 = pr.pi2.is_subspace();
  if (!ok1 || !ok2) v.projection_not_subspace = ok1 ? 2 : 1;
  auto c = closure(s);
  v.w1 = std::move(c.w1);
  v.w2 = std::move(c.w2);
  v.ann = std::move(c.ann);
  v.closure_size = c.set.size();
  std::optional<std::pair<Index, Index>> best;
  c.set.bits().for_each([&](Index i) {
    if (s.bits().test(i)) return;
    const std::pair<Index, Index> xy{s.x_of(i), s.y_of(i)};
    if (!best || xy < *best) best = xy;
  });
  if (best) {
    v.status = BilinearStatus::NonBilinear;
    v.witness = best;
  } else {
    v.status = BilinearStatus::Bilinear;
  }
  return v;
}

/// The bilinear set described by a verdict's (w1, w2, ann).
inline PairSet reconstruct(const BilinearVerdict& v, const Cap& cap = {}) { return orth(v.ann, v.w1, v.w2, cap); }

}  // namespace bilin
