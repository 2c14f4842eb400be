#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bilin/fpcore.hpp"

using namespace bilin;

namespace {

VecP v(Residue p, std::vector<Residue> c) { return VecP(p, std::move(c)); }

Subspace span_of(Residue p, std::size_t n, std::vector<VecP> vs) { return Subspace::span(p, n, vs); }

Subspace random_subspace(std::mt19937_64& rng, Residue p, std::size_t n) {
  std::vector<VecP> vs;
  const auto k = rng() % (n + 1);
  for (std::size_t i = 0; i < k; ++i) vs.push_back(VecP::decode(rng() % checked_pow(p, n), p, n));
  return Subspace::span(p, n, vs);
}

}  // namespace

TEST(Field, RejectsComposite) {
  EXPECT_THROW(Field(4), std::invalid_argument);
  EXPECT_THROW(Field(1), std::invalid_argument);
  EXPECT_NO_THROW(Field(13));
}

TEST(Field, InverseRoundTrip) {
  const Field f(7);
  for (Residue a = 1; a < 7; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1U);
  EXPECT_THROW((void)f.inv(0), std::domain_error);
}

TEST(EncodeDecode, Examples) {
  EXPECT_EQ(v(3, {1, 2}).encode(), 7U);
  EXPECT_EQ(v(2, {1, 0, 0}).encode(), 1U);
  EXPECT_EQ(VecP::decode(7, 3, 2), v(3, {1, 2}));
  EXPECT_THROW(VecP::decode(9, 3, 2), std::out_of_range);
}

TEST(EncodeDecode, MutuallyInverse) {
  for (auto [p, n] : {std::pair<Residue, std::size_t>{2, 4}, {3, 3}, {5, 2}, {7, 2}}) {
    const Index total = checked_pow(p, n);
    for (Index i = 0; i < total; ++i) ASSERT_EQ(VecP::decode(i, p, n).encode(), i);
  }
}

TEST(RrefKernel, Examples) {
  {
    const MatP m(3, 2, 2, {1, 2, 2, 1});
    EXPECT_EQ(rref_kernel(m).rank, 1U);
  }
  {
    const MatP m(3, 1, 2, {1, 2});
    const auto r = rref_kernel(m);
    EXPECT_EQ(r.kernel, span_of(3, 2, {v(3, {1, 1})}));
  }
  {
    const auto r = rref_kernel(MatP::identity(2, 3));
    EXPECT_EQ(r.rank, 3U);
    EXPECT_EQ(r.kernel.dim(), 0U);
  }
}

TEST(RrefKernel, KernelIsAnnihilatedAndDimensionsAdd) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const Residue p = std::vector<Residue>{2, 3, 5}[rng() % 3];
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    std::vector<Residue> e(r * c);
    for (auto& x : e) x = static_cast<Residue>(rng() % p);
    const MatP m(p, r, c, e);
    const auto res = rref_kernel(m);
    EXPECT_EQ(res.row_space.dim(), res.rank);
    EXPECT_EQ(res.kernel.dim(), c - res.rank);
    for (const auto& k : res.kernel.basis()) EXPECT_TRUE(m.apply(k).is_zero());
  }
}

TEST(Span, Examples) {
  EXPECT_EQ(span_of(2, 2, {v(2, {1, 0}), v(2, {0, 1})}), Subspace::full(2, 2));
  const auto s = span_of(3, 2, {v(3, {1, 2}), v(3, {2, 1})});
  ASSERT_EQ(s.dim(), 1U);
  EXPECT_EQ(s.basis()[0], v(3, {1, 2}));
  EXPECT_EQ(span_of(3, 2, {}), Subspace::zero(3, 2));
  EXPECT_THROW(span_of(3, 2, {v(3, {1, 2, 0})}), std::invalid_argument);
}

TEST(Span, CanonicalUnderRowShuffle) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Residue p = 3;
    const std::size_t n = 4;
    std::vector<VecP> vs;
    for (int i = 0; i < 4; ++i) vs.push_back(VecP::decode(rng() % 81, p, n));
    const auto a = Subspace::span(p, n, vs);
    std::shuffle(vs.begin(), vs.end(), rng);
    for (auto& x : vs) x = x.scaled(1 + static_cast<Residue>(rng() % 2));
    EXPECT_EQ(Subspace::span(p, n, vs), a);
  }
}

TEST(Member, Examples) {
  const auto s = span_of(3, 2, {v(3, {1, 1})});
  EXPECT_TRUE(member(s, v(3, {2, 2})));
  EXPECT_FALSE(member(s, v(3, {1, 2})));
  EXPECT_TRUE(member(s, VecP::zero(3, 2)));
  EXPECT_TRUE(member(Subspace::zero(5, 3), VecP::zero(5, 3)));
}

TEST(Intersect, Examples) {
  const auto diag = span_of(2, 2, {v(2, {1, 1})});
  EXPECT_EQ(intersect(Subspace::full(2, 2), diag), diag);
  EXPECT_EQ(intersect(span_of(3, 2, {v(3, {1, 0})}), span_of(3, 2, {v(3, {0, 1})})), Subspace::zero(3, 2));
  EXPECT_EQ(intersect(diag, diag), diag);
}

TEST(Intersect, GrassmannFormula) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 500; ++t) {
    const Residue p = std::vector<Residue>{2, 3, 5}[rng() % 3];
    const std::size_t n = 1 + rng() % 4;
    const auto s = random_subspace(rng, p, n), u = random_subspace(rng, p, n);
    const auto i = s.intersect(u);
    EXPECT_EQ(s.dim() + u.dim(), i.dim() + s.sum(u).dim());
    EXPECT_TRUE(s.contains(i));
    EXPECT_TRUE(u.contains(i));
  }
}

TEST(Complement, Examples) {
  EXPECT_EQ(complement(v(3, {1, 1})), span_of(3, 2, {v(3, {1, 2})}));
  EXPECT_EQ(complement(VecP::zero(3, 2)), Subspace::full(3, 2));
  EXPECT_EQ(complement(v(2, {1, 0, 0})), span_of(2, 3, {v(2, {0, 1, 0}), v(2, {0, 0, 1})}));
}

TEST(Complement, HyperplaneOrthogonalToPhi) {
  for (Index i = 1; i < 125; ++i) {
    const auto phi = VecP::decode(i, 5, 3);
    const auto h = complement(phi);
    EXPECT_EQ(h.dim(), 2U);
    for (const auto& b : h.basis()) EXPECT_EQ(b.dot(phi), 0U);
  }
}

TEST(ProjEnumerate, Examples) {
  EXPECT_EQ(proj_enumerate(2, 3).size(), 7U);
  const auto pts = proj_enumerate(2, 2);
  ASSERT_EQ(pts.size(), 3U);
  EXPECT_EQ(pts[0].rep(), v(2, {1, 0}));
  EXPECT_EQ(pts[1].rep(), v(2, {0, 1}));
  EXPECT_EQ(pts[2].rep(), v(2, {1, 1}));
  EXPECT_EQ(proj_enumerate(5, 2).size(), 6U);
}

TEST(ProjEnumerate, SizeAndNormalization) {
  for (auto [p, n] : {std::pair<Residue, std::size_t>{2, 4}, {3, 3}, {5, 2}, {7, 3}}) {
    const auto pts = proj_enumerate(p, n);
    EXPECT_EQ(pts.size(), proj_size(p, n));
    std::set<Index> seen;
    for (const auto& pt : pts) {
      EXPECT_TRUE(seen.insert(pt.index()).second);
      for (Residue l = 1; l < p; ++l) EXPECT_EQ(ProjPoint(pt.rep().scaled(l)), pt);
      EXPECT_EQ(ProjPoint::normalize(pt.rep()), pt.rep());
    }
    EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
  }
}

TEST(ProjEnumerate, CapGuard) {
  EXPECT_THROW(proj_enumerate(2, 30), CapExceeded);
  EXPECT_THROW(proj_enumerate(2, 3, Cap{4}), CapExceeded);
}

TEST(ProjPoint, ZeroHasNoClass) { EXPECT_THROW(ProjPoint(VecP::zero(3, 2)), std::invalid_argument); }

TEST(Subspaces, CountsMatchKnownValues) {
  // subspaces of F_2^3: 1 + 7 + 7 + 1
  EXPECT_EQ(all_subspaces(2, 3).size(), 16U);
  // subspaces of F_3^2: 1 + 4 + 1
  EXPECT_EQ(all_subspaces(3, 2).size(), 6U);
  const auto s = all_subspaces(2, 4);
  std::set<std::vector<Index>> distinct;
  for (const auto& w : s) distinct.insert(w.element_indices());
  EXPECT_EQ(distinct.size(), s.size());
}

TEST(Subspace, ElementsAreTheSpan) {
  const auto s = span_of(3, 3, {v(3, {1, 2, 0}), v(3, {0, 1, 1})});
  const auto e = s.element_indices();
  EXPECT_EQ(e.size(), 9U);
  for (auto i : e) EXPECT_TRUE(s.contains(VecP::decode(i, 3, 3)));
}
