// Exact arithmetic and linear algebra over a prime field F_p.
//
// Vectors are encoded little-endian base p: coordinate 0 is the least
// significant digit, so index(v) = sum_i v_i * p^i. Subspaces are always held
// in reduced row echelon form, which makes set equality structural equality.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bilin {

using Residue = std::uint32_t;
using Index = std::uint64_t;

/// Raised when an operation would materialize more objects than the cap allows.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Enumeration budget. Anything that materializes more than `limit` objects
/// refuses unless the caller passes an unlimited cap.
struct Cap {
  Index limit = Index{1} << 26;

  static constexpr Cap unlimited() { return Cap{std::numeric_limits<Index>::max()}; }

  void require(Index count, std::string_view what) const {
    if (count > limit) {
      throw CapExceeded(std::string(what) + ": " + std::to_string(count) +
                        " objects exceed the enumeration cap of " + std::to_string(limit) +
                        " (pass --override-cap to force)");
    }
  }
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// base^exp, throwing std::overflow_error past 2^63.
inline Index checked_pow(Index base, std::size_t exp) {
  constexpr Index kMax = Index{1} << 63;
  Index r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > kMax / base) {
      throw std::overflow_error("checked_pow: " + std::to_string(base) + "^" + std::to_string(exp) +
                                " overflows");
    }
    r *= base;
  }
  return r;
}

/// The prime field F_p. Construction validates primality by trial division.
class Field {
 public:
  explicit Field(Residue p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("Field: " + std::to_string(p) + " is not prime");
    if (p > (Residue{1} << 16)) throw std::invalid_argument("Field: p too large for desk-scale arithmetic");
  }

  Residue p() const { return p_; }

  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Residue reduce(std::int64_t v) const {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue inv(Residue a) const {
    if (a == 0) throw std::domain_error("Field: inverse of zero");
    // Fermat: a^(p-2)
    Residue result = 1, base = a;
    for (auto e = p_ - 2; e > 0; e >>= 1) {
      if (e & 1U) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Residue p_;
};

/// A vector of F_p^n.
class VecP {
 public:
  VecP() = default;

  VecP(Residue p, std::vector<Residue> coords) : p_(p), c_(std::move(coords)) {
    if (p < 2) throw std::invalid_argument("VecP: modulus must be at least 2");
    for (auto x : c_) {
      if (x >= p) throw std::invalid_argument("VecP: coordinate not reduced mod p");
    }
  }

  static VecP zero(Residue p, std::size_t n) { return VecP(p, std::vector<Residue>(n, 0)); }

  static VecP unit(Residue p, std::size_t n, std::size_t i) {
    auto v = zero(p, n);
    v.c_.at(i) = 1;
    return v;
  }

  static VecP decode(Index index, Residue p, std::size_t n) {
    if (index >= checked_pow(p, n)) {
      throw std::out_of_range("VecP::decode: index " + std::to_string(index) + " >= p^n");
    }
    std::vector<Residue> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = static_cast<Residue>(index % p);
      index /= p;
    }
    return VecP(p, std::move(c));
  }

  Index encode() const {
    Index idx = 0;
    for (std::size_t i = c_.size(); i-- > 0;) idx = idx * p_ + c_[i];
    return idx;
  }

  Residue p() const { return p_; }
  std::size_t dim() const { return c_.size(); }
  Residue operator[](std::size_t i) const { return c_[i]; }
  std::span<const Residue> coords() const { return c_; }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](Residue x) { return x == 0; });
  }

  VecP operator+(const VecP& o) const { return combine(o, 1); }
  VecP operator-(const VecP& o) const { return combine(o, p_ - 1); }

  VecP scaled(Residue lambda) const {
    VecP r = *this;
    for (auto& x : r.c_) x = static_cast<Residue>((static_cast<std::uint64_t>(x) * lambda) % p_);
    return r;
  }

  Residue dot(const VecP& o) const {
    require_same(o);
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) s = (s + static_cast<std::uint64_t>(c_[i]) * o.c_[i]) % p_;
    return static_cast<Residue>(s);
  }

  friend bool operator==(const VecP&, const VecP&) = default;

 private:
  void require_same(const VecP& o) const {
    if (o.p_ != p_ || o.c_.size() != c_.size()) throw std::invalid_argument("VecP: dimension mismatch");
  }
  VecP combine(const VecP& o, Residue k) const {
    require_same(o);
    VecP r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      r.c_[i] = static_cast<Residue>((c_[i] + static_cast<std::uint64_t>(k) * o.c_[i]) % p_);
    }
    return r;
  }

  Residue p_ = 2;
  std::vector<Residue> c_;
};

/// Digit-wise arithmetic on encoded indices of F_p^n, for hot loops.
class IndexArith {
 public:
  IndexArith(Residue p, std::size_t n) : p_(p), n_(n), size_(checked_pow(p, n)) {}

  Residue p() const { return p_; }
  std::size_t dim() const { return n_; }
  Index size() const { return size_; }

  Index add(Index a, Index b) const { return combine(a, b, 1); }
  Index sub(Index a, Index b) const { return combine(a, b, p_ - 1); }
  Index scale(Index a, Residue lambda) const {
    if (p_ == 2) return lambda % 2 ? a : 0;
    Index r = 0, w = 1;
    for (std::size_t i = 0; i < n_; ++i) {
      r += w * ((a % p_) * lambda % p_);
      a /= p_;
      w *= p_;
    }
    return r;
  }
  Residue digit(Index a, std::size_t i) const {
    for (std::size_t k = 0; k < i; ++k) a /= p_;
    return static_cast<Residue>(a % p_);
  }

 private:
  Index combine(Index a, Index b, Residue k) const {
    if (p_ == 2) return a ^ b;
    Index r = 0, w = 1;
    for (std::size_t i = 0; i < n_; ++i) {
      r += w * ((a % p_ + k * (b % p_)) % p_);
      a /= p_;
      b /= p_;
      w *= p_;
    }
    return r;
  }

  Residue p_;
  std::size_t n_;
  Index size_;
};

/// A dense r x c matrix over F_p, row-major. Acts on column vectors: f(x) = M x.
class MatP {
 public:
  MatP() = default;

  MatP(Residue p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

  MatP(Residue p, std::size_t rows, std::size_t cols, std::vector<Residue> entries)
      : p_(p), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows * cols) throw std::invalid_argument("MatP: entry count does not match shape");
    for (auto x : e_) {
      if (x >= p) throw std::invalid_argument("MatP: entry not reduced mod p");
    }
  }

  static MatP from_rows(Residue p, std::span<const VecP> rows, std::size_t cols) {
    MatP m(p, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].dim() != cols || rows[i].p() != p) throw std::invalid_argument("MatP: row shape mismatch");
      for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  static MatP identity(Residue p, std::size_t n) {
    MatP m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  Residue p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Residue at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Residue v) { e_[i * cols_ + j] = v % p_; }
  std::span<const Residue> entries() const { return e_; }

  VecP row(std::size_t i) const {
    return VecP(p_, std::vector<Residue>(e_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                         e_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)));
  }

  VecP apply(const VecP& x) const {
    if (x.dim() != cols_ || x.p() != p_) throw std::invalid_argument("MatP::apply: shape mismatch");
    std::vector<Residue> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < cols_; ++j) s = (s + static_cast<std::uint64_t>(at(i, j)) * x[j]) % p_;
      out[i] = static_cast<Residue>(s);
    }
    return VecP(p_, std::move(out));
  }

  MatP operator*(const MatP& o) const {
    if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("MatP: product shape mismatch");
    MatP r(p_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < o.cols_; ++j) {
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < cols_; ++k) s = (s + static_cast<std::uint64_t>(at(i, k)) * o.at(k, j)) % p_;
        r.set(i, j, static_cast<Residue>(s));
      }
    }
    return r;
  }

  MatP scaled(Residue lambda) const {
    MatP r = *this;
    for (auto& x : r.e_) x = static_cast<Residue>((static_cast<std::uint64_t>(x) * lambda) % p_);
    return r;
  }

  bool is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](Residue x) { return x == 0; });
  }

  friend bool operator==(const MatP&, const MatP&) = default;

 private:
  Residue p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> e_;
};

namespace detail {

/// In-place full row reduction of `rows` (each of length `cols`). Zero rows are
/// dropped; returns the pivot column of each surviving row.
inline std::vector<std::size_t> rref_in_place(const Field& f, std::vector<std::vector<Residue>>& rows,
                                              std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Residue inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Residue k = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(k, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace detail

/// A subspace of F_p^n in canonical reduced row echelon form.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Residue p, std::size_t n) {
    Field{p};
    Subspace s;
    s.p_ = p;
    s.n_ = n;
    return s;
  }

  static Subspace full(Residue p, std::size_t n) {
    std::vector<VecP> units;
    for (std::size_t i = 0; i < n; ++i) units.push_back(VecP::unit(p, n, i));
    return span(p, n, units);
  }

  /// Smallest subspace containing every vector of `vs`.
  static Subspace span(Residue p, std::size_t n, std::span<const VecP> vs) {
    Field f(p);
    std::vector<std::vector<Residue>> rows;
    rows.reserve(vs.size());
    for (const auto& v : vs) {
      if (v.p() != p || v.dim() != n) throw std::invalid_argument("Subspace::span: dimension mismatch");
      rows.emplace_back(v.coords().begin(), v.coords().end());
    }
    return from_rows(f, std::move(rows), n);
  }

  Residue p() const { return p_; }
  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t codim() const { return n_ - basis_.size(); }
  const std::vector<VecP>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Index size() const { return checked_pow(p_, dim()); }

  bool contains(const VecP& v) const {
    require_ambient(v.p(), v.dim());
    Field f(p_);
    std::vector<Residue> r(v.coords().begin(), v.coords().end());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Residue k = r[pivots_[i]];
      if (k == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) r[j] = f.sub(r[j], f.mul(k, basis_[i][j]));
    }
    return std::all_of(r.begin(), r.end(), [](Residue x) { return x == 0; });
  }

  bool contains(const Subspace& o) const {
    require_ambient(o.p_, o.n_);
    return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const VecP& b) { return contains(b); });
  }

  /// Coordinates of v in the canonical basis (its entries at the pivot columns).
  /// Only meaningful when contains(v).
  std::vector<Residue> coordinates(const VecP& v) const {
    std::vector<Residue> a;
    a.reserve(pivots_.size());
    for (auto c : pivots_) a.push_back(v[c]);
    return a;
  }

  VecP combination(std::span<const Residue> coeffs) const {
    Field f(p_);
    std::vector<Residue> r(n_, 0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (coeffs[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) r[j] = f.add(r[j], f.mul(coeffs[i], basis_[i][j]));
    }
    return VecP(p_, std::move(r));
  }

  /// {y : y . b = 0 for every basis vector b}, under the standard dot product.
  Subspace orthogonal() const;

  Subspace sum(const Subspace& o) const {
    require_ambient(o.p_, o.n_);
    std::vector<VecP> all = basis_;
    all.insert(all.end(), o.basis_.begin(), o.basis_.end());
    return span(p_, n_, all);
  }

  Subspace intersect(const Subspace& o) const {
    require_ambient(o.p_, o.n_);
    return orthogonal().sum(o.orthogonal()).orthogonal();
  }

  /// Encoded indices of all p^dim elements, ascending.
  std::vector<Index> element_indices(const Cap& cap = {}) const {
    const Index count = size();
    cap.require(count, "Subspace::element_indices");
    IndexArith ar(p_, n_);
    std::vector<Index> out{0};
    out.reserve(count);
    for (const auto& b : basis_) {
      const Index bi = b.encode();
      const std::size_t prev = out.size();
      Index step = bi;
      for (Residue k = 1; k < p_; ++k) {
        for (std::size_t i = 0; i < prev; ++i) out.push_back(ar.add(out[i], step));
        step = ar.add(step, bi);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.basis_ == b.basis_;
  }

 private:
  static Subspace from_rows(const Field& f, std::vector<std::vector<Residue>> rows, std::size_t n) {
    Subspace s;
    s.p_ = f.p();
    s.n_ = n;
    s.pivots_ = detail::rref_in_place(f, rows, n);
    s.basis_.reserve(rows.size());
    for (auto& r : rows) s.basis_.emplace_back(f.p(), std::move(r));
    return s;
  }

  void require_ambient(Residue p, std::size_t n) const {
    if (p != p_ || n != n_) throw std::invalid_argument("Subspace: ambient mismatch");
  }

  Residue p_ = 2;
  std::size_t n_ = 0;
  std::vector<VecP> basis_;
  std::vector<std::size_t> pivots_;
};

struct RrefResult {
  Subspace row_space;
  Subspace kernel;
  std::size_t rank = 0;
};

/// Row space, right kernel {x : M x = 0} and rank of m.
inline RrefResult rref_kernel(const MatP& m) {
  Field f(m.p());
  std::vector<std::vector<Residue>> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    rows.emplace_back(r.coords().begin(), r.coords().end());
  }
  auto reduced = rows;
  const auto pivots = detail::rref_in_place(f, reduced, m.cols());

  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<VecP> kern;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Residue> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(reduced[i][free]);
    kern.emplace_back(m.p(), std::move(v));
  }
  std::vector<VecP> row_vecs;
  row_vecs.reserve(reduced.size());
  for (auto& r : reduced) row_vecs.emplace_back(m.p(), std::move(r));
  return RrefResult{Subspace::span(m.p(), m.cols(), row_vecs), Subspace::span(m.p(), m.cols(), kern),
                    pivots.size()};
}

inline Subspace Subspace::orthogonal() const {
  if (basis_.empty()) return full(p_, n_);
  return rref_kernel(MatP::from_rows(p_, basis_, n_)).kernel;
}

inline Subspace span(Residue p, std::size_t n, std::span<const VecP> vs) { return Subspace::span(p, n, vs); }

inline bool member(const Subspace& s, const VecP& v) { return s.contains(v); }

inline Subspace intersect(const Subspace& s, const Subspace& t) { return s.intersect(t); }

/// {y : y . phi = 0}. The full space when phi = 0, a hyperplane otherwise.
inline Subspace complement(const VecP& phi) {
  const VecP one[] = {phi};
  return Subspace::span(phi.p(), phi.dim(), one).orthogonal();
}

/// A point of P(F_p^n): a nonzero vector scaled so its first nonzero coordinate is 1.
class ProjPoint {
 public:
  explicit ProjPoint(const VecP& v) : rep_(normalize(v)) {}

  static VecP normalize(const VecP& v) {
    for (std::size_t i = 0; i < v.dim(); ++i) {
      if (v[i] != 0) return v.scaled(Field(v.p()).inv(v[i]));
    }
    throw std::invalid_argument("ProjPoint: zero vector has no projective class");
  }

  const VecP& rep() const { return rep_; }
  Index index() const { return rep_.encode(); }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.index() < b.index(); }

 private:
  VecP rep_;
};

/// Number of points of P(F_p^n).
inline Index proj_size(Residue p, std::size_t n) { return (checked_pow(p, n) - 1) / (p - 1); }

/// All points of P(F_p^n), ascending by encoded index of the normalized representative.
inline std::vector<ProjPoint> proj_enumerate(Residue p, std::size_t n, const Cap& cap = {}) {
  if (n < 1) throw std::invalid_argument("proj_enumerate: n must be at least 1");
  Field{p};
  const Index total = checked_pow(p, n);
  cap.require(total, "proj_enumerate");
  std::vector<ProjPoint> out;
  out.reserve(static_cast<std::size_t>(proj_size(p, n)));
  for (Index i = 1; i < total; ++i) {
    // first nonzero digit (least significant) must be 1
    Index j = i;
    while (j % p == 0) j /= p;
    if (j % p == 1) out.emplace_back(VecP::decode(i, p, n));
  }
  return out;
}

/// P(F_p^n) with O(1) lookup from any nonzero vector index to its point ordinal.
class ProjectiveSpace {
 public:
  ProjectiveSpace(Residue p, std::size_t n, const Cap& cap = {})
      : p_(p), n_(n), points_(proj_enumerate(p, n, cap)), ordinal_(checked_pow(p, n), kNone) {
    IndexArith ar(p, n);
    for (std::size_t k = 0; k < points_.size(); ++k) {
      const Index rep = points_[k].index();
      for (Residue l = 1; l < p; ++l) ordinal_[ar.scale(rep, l)] = k;
    }
  }

  Residue p() const { return p_; }
  std::size_t dim() const { return n_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<ProjPoint>& points() const { return points_; }
  const ProjPoint& point(std::size_t ordinal) const { return points_[ordinal]; }

  /// Ordinal of the class of a nonzero vector index.
  std::size_t ordinal_of(Index vec_index) const {
    if (vec_index == 0 || vec_index >= ordinal_.size()) {
      throw std::out_of_range("ProjectiveSpace::ordinal_of: not a nonzero vector index");
    }
    return ordinal_[vec_index];
  }
  std::size_t ordinal_of(const VecP& v) const { return ordinal_of(v.encode()); }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  Residue p_;
  std::size_t n_;
  std::vector<ProjPoint> points_;
  std::vector<std::size_t> ordinal_;
};

/// Every subspace of F_p^n of dimension k, by enumerating RREF bases: pivot
/// sets in lexicographic order, free entries in base-p order.
inline std::vector<Subspace> subspaces_of_dim(Residue p, std::size_t n, std::size_t k, const Cap& cap = {}) {
  Field f(p);
  std::vector<Subspace> out;
  if (k > n) return out;
  if (k == 0) {
    out.push_back(Subspace::zero(p, n));
    return out;
  }
  std::vector<bool> choose(n, false);
  std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (choose[i]) piv.push_back(i);
    }
    // free slots: (row r, column c) with c > piv[r] and c not a pivot
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = piv[r] + 1; c < n; ++c) {
        if (!choose[c]) slots.emplace_back(r, c);
      }
    }
    const Index combos = checked_pow(p, slots.size());
    cap.require(out.size() + combos, "subspaces_of_dim");
    for (Index code = 0; code < combos; ++code) {
      std::vector<std::vector<Residue>> rows(k, std::vector<Residue>(n, 0));
      for (std::size_t r = 0; r < k; ++r) rows[r][piv[r]] = 1;
      Index c = code;
      for (auto [r, col] : slots) {
        rows[r][col] = static_cast<Residue>(c % p);
        c /= p;
      }
      std::vector<VecP> vs;
      for (auto& r : rows) vs.emplace_back(p, std::move(r));
      out.push_back(Subspace::span(p, n, vs));
    }
  } while (std::prev_permutation(choose.begin(), choose.end()));
  return out;
}

/// Every subspace of F_p^n, by increasing dimension.
inline std::vector<Subspace> all_subspaces(Residue p, std::size_t n, const Cap& cap = {}) {
  std::vector<Subspace> out;
  for (std::size_t k = 0; k <= n; ++k) {
    auto s = subspaces_of_dim(p, n, k, cap);
    out.insert(out.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
    cap.require(out.size(), "all_subspaces");
  }
  return out;
}

}  // namespace bilin
