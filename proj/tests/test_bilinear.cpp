#include <gtest/gtest.h>

#include <random>
#include <set>

#include "bilin/bilinear.hpp"
#include "bilin/constructions.hpp"
#include "bilin/oracle.hpp"

using namespace bilin;

namespace {

MatP mat(Residue p, std::size_t r, std::size_t c, std::vector<Residue> e) { return MatP(p, r, c, std::move(e)); }

Index idx(Residue p, std::vector<Residue> c) { return VecP(p, std::move(c)).encode(); }

PairSet from_mask(Residue p, std::size_t n1, std::size_t n2, const oracle::Mask& m) {
  PairSet s(p, n1, n2);
  for (Index i = 0; i < m.size(); ++i) {
    if (m[i]) s.insert(s.x_of(i), s.y_of(i));
  }
  return s;
}

oracle::Mask to_mask(const PairSet& s) {
  oracle::Mask m(s.universe(), false);
  for (auto i : s.indices()) m[i] = true;
  return m;
}

PairSet random_set(std::mt19937_64& rng, Residue p, std::size_t n, double density) {
  PairSet s(p, n, n);
  std::bernoulli_distribution coin(density);
  for (Index i = 0; i < s.universe(); ++i) {
    if (coin(rng)) s.insert(s.x_of(i), s.y_of(i));
  }
  return s;
}

FormSpace random_forms(std::mt19937_64& rng, Residue p, std::size_t n) {
  std::vector<MatP> qs;
  const auto k = rng() % 3;
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<Residue> e(n * n);
    for (auto& x : e) x = static_cast<Residue>(rng() % p);
    qs.emplace_back(p, n, n, e);
  }
  return FormSpace::span(p, n, n, qs);
}

}  // namespace

TEST(EvalForm, Examples) {
  const BilinearForm q(mat(3, 2, 2, {1, 0, 0, 2}));
  EXPECT_EQ(eval_form(q, VecP(3, {1, 1}), VecP(3, {1, 1})), 0U);
  EXPECT_EQ(eval_form(q, VecP(3, {1, 2}), VecP(3, {1, 2})), 0U);
  EXPECT_EQ(eval_form(q, VecP(3, {2, 1}), VecP::zero(3, 2)), 0U);
  EXPECT_EQ(eval_form(q, VecP(3, {1, 0}), VecP(3, {1, 0})), 1U);
  EXPECT_THROW((void)eval_form(q, VecP(3, {1, 0, 0}), VecP(3, {1, 0})), std::invalid_argument);
}

TEST(Ann, F3ExampleIsSpannedByDiag12) {
  const auto a = ann(f3_example());
  EXPECT_EQ(a, FormSpace::span(3, 2, 2, std::vector<MatP>{mat(3, 2, 2, {1, 0, 0, 2})}));
  EXPECT_EQ(a.dim(), 1U);
}

TEST(Ann, TabulatedSigmaSetMatchesDisplayedMatrices) {
  const auto a = ann(build_P_sigma(sigma_figure2()));
  ASSERT_EQ(a.dim(), 2U);
  const std::set<std::vector<Residue>> displayed = {
      {0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 1, 1, 0, 0},
      {0, 0, 1, 0, 0, 1, 0, 1, 0},
      {0, 0, 1, 0, 0, 0, 1, 1, 0},
  };
  std::set<std::vector<Residue>> got;
  for (const auto& q : a.elements()) got.emplace(q.entries().begin(), q.entries().end());
  EXPECT_EQ(got, displayed);
}

TEST(Ann, FullProductHasOnlyZeroForm) {
  EXPECT_EQ(ann(PairSet::full(3, 2, 2)).dim(), 0U);
  EXPECT_EQ(ann(PairSet::full(2, 2, 3)).dim(), 0U);
}

TEST(Ann, RejectsSetOutsideW1W2) {
  const auto line = Subspace::span(3, 2, std::vector<VecP>{VecP(3, {1, 0})});
  EXPECT_THROW(ann(f3_example(), line, Subspace::full(3, 2)), std::invalid_argument);
}

TEST(Ann, FormsAreSupportedOnW1W2Coordinates) {
  // P inside span{(1,1)} x F_3^2: forms live on pivot row 0 only
  const auto w1 = Subspace::span(3, 2, std::vector<VecP>{VecP(3, {1, 1})});
  PairSet s(3, 2, 2);
  s.insert(VecP(3, {1, 1}), VecP(3, {1, 0}));
  s.insert(VecP(3, {2, 2}), VecP(3, {2, 0}));
  s.insert(0, 0);
  const auto a = ann(s, w1, Subspace::full(3, 2));
  ASSERT_EQ(a.dim(), 1U);
  EXPECT_EQ(a.basis()[0], mat(3, 2, 2, {0, 1, 0, 0}));
}

TEST(Orth, Examples) {
  EXPECT_EQ(orth(FormSpace(3, 2, 2)), PairSet::full(3, 2, 2));

  const auto m = FormSpace::span(3, 2, 2, std::vector<MatP>{mat(3, 2, 2, {1, 0, 0, 2})});
  const auto o = orth(m);
  // brute force over the 81 pairs
  Index count = 0;
  for (Residue x1 = 0; x1 < 3; ++x1)
    for (Residue x2 = 0; x2 < 3; ++x2)
      for (Residue y1 = 0; y1 < 3; ++y1)
        for (Residue y2 = 0; y2 < 3; ++y2) {
          const bool zero = (x1 * y1 + 2 * x2 * y2) % 3 == 0;
          count += zero;
          EXPECT_EQ(o.contains(VecP(3, {x1, x2}), VecP(3, {y1, y2})), zero);
        }
  EXPECT_EQ(count, 33U);
  EXPECT_EQ(o.size(), 33U);

  const auto ps = build_P_sigma(sigma_figure2());
  const auto oo = orth(ann(ps));
  EXPECT_TRUE(oo.contains(VecP(2, {1, 0, 0}), VecP(2, {0, 1, 0})));
  EXPECT_FALSE(ps.contains(VecP(2, {1, 0, 0}), VecP(2, {0, 1, 0})));
}

TEST(Closure, Examples) {
  const auto c = closure(f3_example());
  EXPECT_EQ(c.set.size(), 33U);
  EXPECT_EQ(f3_example().size(), 29U);
  EXPECT_TRUE(f3_example().subset_of(c.set));

  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    std::vector<Residue> e(4);
    for (auto& x : e) x = static_cast<Residue>(rng() % 3);
    if (std::all_of(e.begin(), e.end(), [](Residue x) { return x == 0; })) continue;
    const auto zs = orth(FormSpace::span(3, 2, 2, std::vector<MatP>{mat(3, 2, 2, e)}));
    EXPECT_EQ(closure(zs).set, zs);
  }

  PairSet origin(3, 2, 2);
  origin.insert(0, 0);
  const auto co = closure(origin);
  EXPECT_EQ(co.w1, Subspace::zero(3, 2));
  EXPECT_EQ(co.w2, Subspace::zero(3, 2));
  EXPECT_EQ(co.set, origin);

  EXPECT_THROW(closure(PairSet(3, 2, 2)), std::invalid_argument);
}

TEST(IsBilinear, F3ExampleWitness) {
  const auto v = is_bilinear(f3_example());
  EXPECT_EQ(v.status, BilinearStatus::NonBilinear);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, std::make_pair(idx(3, {1, 1}), idx(3, {1, 1})));
  EXPECT_EQ(v.closure_size, 33U);
  EXPECT_EQ(v.r1(), 0U);
  EXPECT_EQ(v.r2(), 0U);
  EXPECT_EQ(v.r3(), 1U);
}

TEST(IsBilinear, TabulatedSigmaWitness) {
  const auto v = is_bilinear(build_P_sigma(sigma_figure2()));
  EXPECT_EQ(v.status, BilinearStatus::NonBilinear);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, std::make_pair(idx(2, {1, 0, 0}), idx(2, {0, 1, 0})));
}

TEST(IsBilinear, SubspaceTimesV2UnionV1TimesHyperplane) {
  for (const auto& w : all_subspaces(3, 2)) {
    for (Index phi = 1; phi < 9; ++phi) {
      const auto h = complement(VecP::decode(phi, 3, 2));
      auto s = PairSet::product(w, Subspace::full(3, 2));
      s |= PairSet::product(Subspace::full(3, 2), h);
      const auto v = is_bilinear(s);
      EXPECT_EQ(v.status, BilinearStatus::Bilinear);
      EXPECT_EQ(reconstruct(v), s);
    }
  }
}

TEST(IsBilinear, EmptyAndProjectionFlags) {
  EXPECT_EQ(is_bilinear(PairSet(2, 2, 2)).status, BilinearStatus::Empty);

  PairSet s(3, 2, 2);
  s.insert(VecP(3, {1, 0}), VecP(3, {0, 1}));  // pi1 = {(1,0)} is not a subspace
  const auto v = is_bilinear(s);
  EXPECT_EQ(v.status, BilinearStatus::NonBilinear);
  ASSERT_TRUE(v.projection_not_subspace.has_value());
  EXPECT_EQ(*v.projection_not_subspace, 1);
  // ann is zero on span(e1) x span(e2), so the closure is all 9 pairs
  EXPECT_EQ(v.closure_size, 9U);
  EXPECT_EQ(v.witness, std::make_pair(Index{0}, Index{0}));
}

TEST(Galois, ConnectionIdentities) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 500; ++t) {
    const Residue p = t % 2 ? 3 : 2;
    const auto s = random_set(rng, p, 2, 0.05 + 0.05 * (t % 6));
    const auto m = random_forms(rng, p, 2);
    const auto a = ann(s);
    EXPECT_TRUE(s.subset_of(orth(a)));
    EXPECT_TRUE(ann(orth(m)).contains(m));
    EXPECT_EQ(ann(orth(a)), a);
    EXPECT_EQ(orth(ann(orth(m))), orth(m));
  }
}

TEST(Galois, Antitone) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 300; ++t) {
    const auto m = random_forms(rng, 3, 2);
    auto bigger = m.basis();
    for (const auto& q : random_forms(rng, 3, 2).basis()) bigger.push_back(q);
    const auto m2 = FormSpace::span(3, 2, 2, bigger);
    EXPECT_TRUE(orth(m2).subset_of(orth(m)));

    const auto s = random_set(rng, 3, 2, 0.1);
    auto s2 = s;
    s2 |= random_set(rng, 3, 2, 0.1);
    EXPECT_TRUE(ann(s).contains(ann(s2)));
  }
}

TEST(IsBilinear, AgreesWithBruteForceOracleAt22) {
  const auto bil = oracle::bilinear_sets(2, 2, 2);
  std::size_t bilinear = 0;
  for (Index mask = 0; mask < (1U << 16); ++mask) {
    PairSet s(2, 2, 2);
    for (Index i = 0; i < 16; ++i) {
      if (mask >> i & 1U) s.insert(s.x_of(i), s.y_of(i));
    }
    const auto v = is_bilinear(s);
    const bool oracle_says = bil.count(to_mask(s)) > 0;
    if (s.empty()) {
      EXPECT_EQ(v.status, BilinearStatus::Empty);
      continue;
    }
    ASSERT_EQ(v.status == BilinearStatus::Bilinear, oracle_says) << mask;
    bilinear += oracle_says;
    if (v.status == BilinearStatus::Bilinear) {
      EXPECT_EQ(reconstruct(v), s);
      const auto c = closure(s);
      EXPECT_EQ(closure(c.set).set, c.set);
    }
  }
  // the oracle's nonempty sets are exactly the bilinear verdicts
  std::size_t nonempty = 0;
  for (const auto& m : bil) nonempty += from_mask(2, 2, 2, m).empty() ? 0 : 1;
  EXPECT_EQ(bilinear, nonempty);
}

TEST(Closure, ExtensiveAndIdempotentOnRandomSets) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 500; ++t) {
    const auto s = random_set(rng, t % 2 ? 3 : 2, 2, 0.1);
    if (s.empty()) continue;
    const auto c = closure(s);
    EXPECT_TRUE(s.subset_of(c.set));
    EXPECT_EQ(closure(c.set).set, c.set);
  }
}

TEST(IsBilinear, WitnessesCheckByDirectEvaluation) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 200; ++t) {
    const auto s = random_set(rng, 3, 2, 0.1);
    const auto v = is_bilinear(s);
    EXPECT_EQ(v.witness.has_value(), v.status == BilinearStatus::NonBilinear);
    if (!v.witness) continue;
    const auto [x, y] = *v.witness;
    const auto xv = VecP::decode(x, 3, 2), yv = VecP::decode(y, 3, 2);
    EXPECT_FALSE(s.contains(x, y));
    EXPECT_TRUE(v.w1.contains(xv));
    EXPECT_TRUE(v.w2.contains(yv));
    for (const auto& q : v.ann.basis()) EXPECT_EQ(BilinearForm(q).eval(xv, yv), 0U);
  }
}
