// Subsets of F_p^n (SingleSet) and of F_p^n1 x F_p^n2 (PairSet), with the
// vertical/horizontal sum operators, Bogolyubov words and transversality.
//
// A PairSet is a dense bit array indexed by pair_index = x_index + p^n1 * y_index.
#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bilin/fpcore.hpp"

namespace bilin {

enum class Direction { V, H };
enum class Sign { Plus, Minus };
enum class TransverseMode { Direct, Fiberwise };

/// Fixed-length bit array with a cached population count.
class DenseBits {
 public:
  DenseBits() = default;
  explicit DenseBits(Index length) : length_(length), words_((length + 63) / 64, 0) {}

  Index length() const { return length_; }
  Index count() const { return count_; }

  bool test(Index i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

  void set(Index i) {
    auto& w = words_[i >> 6];
    const auto bit = std::uint64_t{1} << (i & 63);
    if (!(w & bit)) {
      w |= bit;
      ++count_;
    }
  }

  void reset(Index i) {
    auto& w = words_[i >> 6];
    const auto bit = std::uint64_t{1} << (i & 63);
    if (w & bit) {
      w &= ~bit;
      --count_;
    }
  }

  bool subset_of(const DenseBits& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] & ~o.words_[k]) return false;
    }
    return true;
  }

  DenseBits& operator|=(const DenseBits& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    recount();
    return *this;
  }

  DenseBits& operator&=(const DenseBits& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    recount();
    return *this;
  }

  /// Index of the lowest set bit of (*this & ~o), if any.
  std::optional<Index> first_not_in(const DenseBits& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      const auto d = words_[k] & ~o.words_[k];
      if (d) return Index{k} * 64 + static_cast<Index>(std::countr_zero(d));
    }
    return std::nullopt;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      auto w = words_[k];
      while (w) {
        f(Index{k} * 64 + static_cast<Index>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<Index> indices() const {
    std::vector<Index> out;
    out.reserve(count_);
    for_each([&](Index i) { out.push_back(i); });
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const DenseBits& a, const DenseBits& b) {
    return a.length_ == b.length_ && a.words_ == b.words_;
  }

 private:
  void recount() {
    count_ = 0;
    for (auto w : words_) count_ += static_cast<Index>(std::popcount(w));
  }

  Index length_ = 0;
  Index count_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A subset of F_p^n.
class SingleSet {
 public:
  SingleSet() = default;

  SingleSet(Residue p, std::size_t n, const Cap& cap = {}) : p_(p), n_(n) {
    Field{p};
    const Index u = checked_pow(p, n);
    cap.require(u, "SingleSet");
    bits_ = DenseBits(u);
  }

  static SingleSet from_indices(Residue p, std::size_t n, std::span<const Index> idx, const Cap& cap = {}) {
    SingleSet s(p, n, cap);
    for (auto i : idx) s.insert(i);
    return s;
  }

  static SingleSet from_subspace(const Subspace& w, const Cap& cap = {}) {
    auto idx = w.element_indices(cap);
    return from_indices(w.p(), w.ambient_dim(), idx, cap);
  }

  Residue p() const { return p_; }
  std::size_t dim() const { return n_; }
  Index universe() const { return bits_.length(); }
  Index size() const { return bits_.count(); }
  bool empty() const { return size() == 0; }
  double density() const { return universe() ? static_cast<double>(size()) / static_cast<double>(universe()) : 0.0; }

  bool contains(Index i) const { return i < universe() && bits_.test(i); }
  bool contains(const VecP& v) const { return contains(v.encode()); }
  void insert(Index i) {
    if (i >= universe()) throw std::out_of_range("SingleSet::insert: index out of range");
    bits_.set(i);
  }
  void insert(const VecP& v) { insert(v.encode()); }

  std::vector<Index> indices() const { return bits_.indices(); }
  const DenseBits& bits() const { return bits_; }
  DenseBits& mutable_bits() { return bits_; }

  bool subset_of(const SingleSet& o) const { return bits_.subset_of(o.bits_); }

  /// Linear span of the elements; the zero subspace for the empty set.
  Subspace span() const {
    std::vector<VecP> vs;
    for (auto i : indices()) vs.push_back(VecP::decode(i, p_, n_));
    return Subspace::span(p_, n_, vs);
  }

  /// The set as a subspace, when it is one (nonempty and closed under addition).
  std::optional<Subspace> as_subspace() const {
    if (empty() || !contains(0)) return std::nullopt;
    auto s = span();
    if (s.size() != size()) return std::nullopt;
    return s;
  }
  bool is_subspace() const { return as_subspace().has_value(); }

  friend bool operator==(const SingleSet& a, const SingleSet& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  Residue p_ = 2;
  std::size_t n_ = 0;
  DenseBits bits_;
};

/// A subset of F_p^n1 x F_p^n2.
class PairSet {
 public:
  PairSet() = default;

  PairSet(Residue p, std::size_t n1, std::size_t n2, const Cap& cap = {}) : p_(p), n1_(n1), n2_(n2) {
    Field{p};
    size1_ = checked_pow(p, n1);
    size2_ = checked_pow(p, n2);
    cap.require(checked_pow(p, n1 + n2), "PairSet");
    bits_ = DenseBits(size1_ * size2_);
  }

  static PairSet full(Residue p, std::size_t n1, std::size_t n2, const Cap& cap = {}) {
    PairSet s(p, n1, n2, cap);
    for (Index i = 0; i < s.universe(); ++i) s.bits_.set(i);
    return s;
  }

  /// W1 x W2.
  static PairSet product(const Subspace& w1, const Subspace& w2, const Cap& cap = {}) {
    if (w1.p() != w2.p()) throw std::invalid_argument("PairSet::product: field mismatch");
    PairSet s(w1.p(), w1.ambient_dim(), w2.ambient_dim(), cap);
    const auto xs = w1.element_indices(cap);
    const auto ys = w2.element_indices(cap);
    for (auto y : ys) {
      for (auto x : xs) s.insert(x, y);
    }
    return s;
  }

  Residue p() const { return p_; }
  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  Index size1() const { return size1_; }
  Index size2() const { return size2_; }
  Index universe() const { return bits_.length(); }
  Index size() const { return bits_.count(); }
  bool empty() const { return size() == 0; }
  double density() const { return universe() ? static_cast<double>(size()) / static_cast<double>(universe()) : 0.0; }

  Index pair_index(Index x, Index y) const { return x + size1_ * y; }
  Index x_of(Index pair) const { return pair % size1_; }
  Index y_of(Index pair) const { return pair / size1_; }

  bool contains(Index x, Index y) const { return x < size1_ && y < size2_ && bits_.test(pair_index(x, y)); }
  bool contains(const VecP& x, const VecP& y) const { return contains(x.encode(), y.encode()); }

  void insert(Index x, Index y) {
    if (x >= size1_ || y >= size2_) throw std::out_of_range("PairSet::insert: index out of range");
    bits_.set(pair_index(x, y));
  }
  void insert(const VecP& x, const VecP& y) { insert(x.encode(), y.encode()); }
  void erase(Index x, Index y) {
    if (x < size1_ && y < size2_) bits_.reset(pair_index(x, y));
  }

  /// Set pair indices, ascending.
  std::vector<Index> indices() const { return bits_.indices(); }
  const DenseBits& bits() const { return bits_; }

  bool same_shape(const PairSet& o) const { return p_ == o.p_ && n1_ == o.n1_ && n2_ == o.n2_; }
  bool subset_of(const PairSet& o) const {
    require_shape(o);
    return bits_.subset_of(o.bits_);
  }

  PairSet& operator|=(const PairSet& o) {
    require_shape(o);
    bits_ |= o.bits_;
    return *this;
  }
  PairSet& operator&=(const PairSet& o) {
    require_shape(o);
    bits_ &= o.bits_;
    return *this;
  }

  /// y-lists of the vertical fibers, indexed by x (Direction::V), or x-lists of
  /// the horizontal fibers indexed by y (Direction::H).
  std::vector<std::vector<Index>> fiber_lists(Direction d) const {
    std::vector<std::vector<Index>> out(d == Direction::V ? size1_ : size2_);
    bits_.for_each([&](Index i) {
      if (d == Direction::V) {
        out[x_of(i)].push_back(y_of(i));
      } else {
        out[y_of(i)].push_back(x_of(i));
      }
    });
    return out;
  }

  void require_shape(const PairSet& o) const {
    if (!same_shape(o)) throw std::invalid_argument("PairSet: shape mismatch");
  }

  friend bool operator==(const PairSet& a, const PairSet& b) { return a.same_shape(b) && a.bits_ == b.bits_; }

 private:
  Residue p_ = 2;
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  Index size1_ = 0;
  Index size2_ = 0;
  DenseBits bits_;
};

/// A +V B = {(x, y1 +- y2)} over common x; H fixes y instead.
inline PairSet dir_sum(const PairSet& a, const PairSet& b, Direction d, Sign s) {
  a.require_shape(b);
  PairSet out(a.p(), a.n1(), a.n2(), Cap::unlimited());
  const IndexArith ar(a.p(), d == Direction::V ? a.n2() : a.n1());
  const auto fa = a.fiber_lists(d);
  const auto fb = b.fiber_lists(d);
  for (Index k = 0; k < fa.size(); ++k) {
    if (fa[k].empty() || fb[k].empty()) continue;
    for (auto u : fa[k]) {
      for (auto v : fb[k]) {
        const Index w = s == Sign::Plus ? ar.add(u, v) : ar.sub(u, v);
        if (d == Direction::V) {
          out.insert(k, w);
        } else {
          out.insert(w, k);
        }
      }
    }
  }
  return out;
}

/// One Bogolyubov step: (A +d A) -d (A +d A).
inline PairSet phi_step(const PairSet& a, Direction d) {
  const auto twice = dir_sum(a, a, d, Sign::Plus);
  return dir_sum(twice, twice, d, Sign::Minus);
}

/// Applies a word over {V, H} right to left, so "HVH" is phi_H(phi_V(phi_H(A))).
inline PairSet phi(const PairSet& a, std::string_view word) {
  if (word.empty()) throw std::invalid_argument("phi: empty word");
  for (char c : word) {
    if (c != 'V' && c != 'H') throw std::invalid_argument(std::string("phi: invalid letter '") + c + "'");
  }
  PairSet cur = a;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = phi_step(cur, *it == 'V' ? Direction::V : Direction::H);
  return cur;
}

/// The fiber of A above `at`: {y : (at, y) in A} for V, {x : (x, at) in A} for H.
inline SingleSet fiber(const PairSet& a, Direction d, const VecP& at) {
  const std::size_t want = d == Direction::V ? a.n1() : a.n2();
  if (at.dim() != want || at.p() != a.p()) throw std::invalid_argument("fiber: point has the wrong dimension");
  const Index k = at.encode();
  if (d == Direction::V) {
    SingleSet s(a.p(), a.n2(), Cap::unlimited());
    for (Index y = 0; y < a.size2(); ++y) {
      if (a.contains(k, y)) s.insert(y);
    }
    return s;
  }
  SingleSet s(a.p(), a.n1(), Cap::unlimited());
  for (Index x = 0; x < a.size1(); ++x) {
    if (a.contains(x, k)) s.insert(x);
  }
  return s;
}

struct Projections {
  SingleSet pi1;
  SingleSet pi2;
};

inline Projections projections(const PairSet& a) {
  Projections r{SingleSet(a.p(), a.n1(), Cap::unlimited()), SingleSet(a.p(), a.n2(), Cap::unlimited())};
  a.bits().for_each([&](Index i) {
    r.pi1.insert(a.x_of(i));
    r.pi2.insert(a.y_of(i));
  });
  return r;
}

/// A failed condition of the fiber characterization of transversality, with a
/// pair that transversality forces into the set but which is missing.
struct TransverseViolation {
  int condition = 0;  // 1: fiber not a subspace or not inside the fiber at 0; 2: not constant on a class; 3: line condition
  Index x = 0;
  Index y = 0;
  std::string detail;
};

class NotTransverse : public std::domain_error {
 public:
  explicit NotTransverse(TransverseViolation v)
      : std::domain_error("set is not transverse: condition (" + std::to_string(v.condition) + ") fails; " + v.detail),
        violation_(std::move(v)) {}
  const TransverseViolation& violation() const { return violation_; }

 private:
  TransverseViolation violation_;
};

namespace detail {

/// Bits of span(F) for a fiber F of F_p^n, grown generator by generator.
inline DenseBits span_bits(const DenseBits& f, const IndexArith& ar) {
  DenseBits s(f.length());
  s.set(0);
  std::vector<Index> members{0};
  f.for_each([&](Index g) {
    if (s.test(g)) return;
    const std::size_t prev = members.size();
    Index step = g;
    for (Residue k = 1; k < ar.p(); ++k) {
      for (std::size_t i = 0; i < prev; ++i) {
        const Index v = ar.add(members[i], step);
        s.set(v);
        members.push_back(v);
      }
      step = ar.add(step, g);
    }
  });
  return s;
}

inline std::vector<DenseBits> vertical_fibers(const PairSet& a) {
  std::vector<DenseBits> fib(a.size1(), DenseBits(a.size2()));
  a.bits().for_each([&](Index i) { fib[a.x_of(i)].set(a.y_of(i)); });
  return fib;
}

inline std::string pair_text(const PairSet& a, Index x, Index y) {
  std::ostringstream os;
  os << "(x_index=" << x << ", y_index=" << y << ")";
  (void)a;
  return os.str();
}

}  // namespace detail

/// Checks the fiber characterization: (1) each fiber is empty or a subspace
/// contained in the fiber at 0, (2) fibers are constant on projective classes,
/// (3) the fiber at z contains the intersection of the fibers at x and y
/// whenever [z] lies on the line through [x] and [y].
inline std::optional<TransverseViolation> fiberwise_violation(const PairSet& a) {
  if (a.empty()) return std::nullopt;
  const IndexArith ar1(a.p(), a.n1());
  const IndexArith ar2(a.p(), a.n2());
  const auto fib = detail::vertical_fibers(a);

  for (Index x = 0; x < a.size1(); ++x) {
    if (fib[x].count() == 0) continue;
    const auto sp = detail::span_bits(fib[x], ar2);
    if (auto miss = sp.first_not_in(fib[x])) {
      return TransverseViolation{1, x, *miss, "fiber at x is not a subspace; missing " + detail::pair_text(a, x, *miss)};
    }
    if (auto out = fib[x].first_not_in(fib[0])) {
      return TransverseViolation{1, 0, *out, "fiber at x=" + std::to_string(x) + " is not inside the fiber at 0; missing " +
                                                 detail::pair_text(a, 0, *out)};
    }
  }
  if (a.n1() == 0) return std::nullopt;

  const ProjectiveSpace ps(a.p(), a.n1(), Cap::unlimited());
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const Index rep = ps.point(k).index();
    for (Residue l = 2; l < a.p(); ++l) {
      const Index x = ar1.scale(rep, l);
      if (fib[x] == fib[rep]) continue;
      if (auto m = fib[rep].first_not_in(fib[x])) {
        return TransverseViolation{2, x, *m, "fibers differ on a projective class; missing " + detail::pair_text(a, x, *m)};
      }
      auto m = fib[x].first_not_in(fib[rep]);
      return TransverseViolation{2, rep, *m, "fibers differ on a projective class; missing " + detail::pair_text(a, rep, *m)};
    }
  }

  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Index xi = ps.point(i).index();
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const Index xj = ps.point(j).index();
      DenseBits common = fib[xi];
      common &= fib[xj];
      if (common.count() == 0) continue;
      // points of the line: xi + l * xj (l = 0..p-1) and xj
      Index z = xi;
      for (Residue l = 1; l < a.p(); ++l) {
        z = ar1.add(z, xj);
        if (auto m = common.first_not_in(fib[z])) {
          return TransverseViolation{3, z, *m, "line condition fails; missing " + detail::pair_text(a, z, *m)};
        }
      }
    }
  }
  return std::nullopt;
}

inline bool is_transverse(const PairSet& a, TransverseMode mode = TransverseMode::Direct) {
  if (mode == TransverseMode::Fiberwise) return !fiberwise_violation(a).has_value();
  return dir_sum(a, a, Direction::V, Sign::Plus) == a && dir_sum(a, a, Direction::H, Sign::Plus) == a;
}

/// A transverse set held intrinsically: the fiber at 0 plus one fiber (or none)
/// per point of P(F_p^n1), ordered as proj_enumerate(p, n1).
class FiberMap {
 public:
  FiberMap(Residue p, std::size_t n1, std::size_t n2, Subspace fiber0, std::vector<std::optional<Subspace>> fibers)
      : p_(p), n1_(n1), n2_(n2), fiber0_(std::move(fiber0)), fibers_(std::move(fibers)) {
    if (fiber0_.p() != p || fiber0_.ambient_dim() != n2) throw std::invalid_argument("FiberMap: fiber0 shape mismatch");
    if (fibers_.size() != proj_size(p, n1)) throw std::invalid_argument("FiberMap: need one fiber per projective point");
    for (const auto& f : fibers_) {
      if (!f) continue;
      if (f->p() != p || f->ambient_dim() != n2) throw std::invalid_argument("FiberMap: fiber shape mismatch");
      if (!fiber0_.contains(*f)) throw std::invalid_argument("FiberMap: every fiber must lie inside the fiber at 0");
    }
  }

  Residue p() const { return p_; }
  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  const Subspace& fiber0() const { return fiber0_; }
  const std::vector<std::optional<Subspace>>& fibers() const { return fibers_; }

  const std::optional<Subspace>& fiber(const ProjPoint& x) const {
    const ProjectiveSpace ps(p_, n1_, Cap::unlimited());
    return fibers_.at(ps.ordinal_of(x.rep()));
  }

  PairSet to_pairset(const Cap& cap = {}) const {
    PairSet out(p_, n1_, n2_, cap);
    for (auto y : fiber0_.element_indices(cap)) out.insert(0, y);
    if (n1_ == 0) return out;
    const ProjectiveSpace ps(p_, n1_, cap);
    const IndexArith ar(p_, n1_);
    for (std::size_t k = 0; k < fibers_.size(); ++k) {
      if (!fibers_[k]) continue;
      const auto ys = fibers_[k]->element_indices(cap);
      const Index rep = ps.point(k).index();
      for (Residue l = 1; l < p_; ++l) {
        const Index x = ar.scale(rep, l);
        for (auto y : ys) out.insert(x, y);
      }
    }
    return out;
  }

  /// Requires a nonempty transverse set; throws NotTransverse otherwise.
  static FiberMap from_pairset(const PairSet& a) {
    if (a.empty()) throw std::invalid_argument("FiberMap::from_pairset: the empty set has no fiber map");
    if (auto v = fiberwise_violation(a)) throw NotTransverse(*v);
    const auto fib = detail::vertical_fibers(a);
    auto as_subspace = [&](Index x) -> std::optional<Subspace> {
      if (fib[x].count() == 0) return std::nullopt;
      std::vector<VecP> vs;
      fib[x].for_each([&](Index y) { vs.push_back(VecP::decode(y, a.p(), a.n2())); });
      return Subspace::span(a.p(), a.n2(), vs);
    };
    std::vector<std::optional<Subspace>> fibers;
    if (a.n1() > 0) {
      for (const auto& pt : proj_enumerate(a.p(), a.n1(), Cap::unlimited())) fibers.push_back(as_subspace(pt.index()));
    }
    return FiberMap(a.p(), a.n1(), a.n2(), *as_subspace(0), std::move(fibers));
  }

  friend bool operator==(const FiberMap&, const FiberMap&) = default;

 private:
  Residue p_;
  std::size_t n1_;
  std::size_t n2_;
  Subspace fiber0_;
  std::vector<std::optional<Subspace>> fibers_;
};

/// Iterated sumset for a signed word such as "+A+A-A-A" (or "A+A-A-A"),
/// folded left to right. Accepts ASCII '-' and U+2212 for minus.
inline SingleSet sumset_word(const SingleSet& a, std::string_view word) {
  std::vector<Sign> signs;
  std::size_t i = 0;
  bool first = true;
  while (i < word.size()) {
    Sign s = Sign::Plus;
    if (word[i] == '+') {
      ++i;
    } else if (word[i] == '-') {
      s = Sign::Minus;
      ++i;
    } else if (word.substr(i, 3) == "\xE2\x88\x92") {
      s = Sign::Minus;
      i += 3;
    } else if (!first) {
      throw std::invalid_argument("sumset_word: expected a sign at position " + std::to_string(i));
    }
    if (i >= word.size() || word[i] != 'A') {
      throw std::invalid_argument("sumset_word: expected 'A' at position " + std::to_string(i));
    }
    ++i;
    signs.push_back(s);
    first = false;
  }
  if (signs.empty()) throw std::invalid_argument("sumset_word: empty word");

  const IndexArith ar(a.p(), a.dim());
  const auto elems = a.indices();
  SingleSet cur(a.p(), a.dim(), Cap::unlimited());
  for (auto e : elems) cur.insert(signs[0] == Sign::Plus ? e : ar.sub(0, e));
  for (std::size_t k = 1; k < signs.size(); ++k) {
    SingleSet next(a.p(), a.dim(), Cap::unlimited());
    const auto cur_elems = cur.indices();
    for (auto u : cur_elems) {
      for (auto e : elems) next.insert(signs[k] == Sign::Plus ? ar.add(u, e) : ar.sub(u, e));
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace bilin
