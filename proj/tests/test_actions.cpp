#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles/minors.hpp"
#include "titshom/actions.hpp"
#include "titshom/errors.hpp"
#include "titshom/fq_groups.hpp"

using namespace titshom;

namespace {

// H_1(G; Z) = G^ab from a finite presentation: cokernel of the
// exponent-sum matrix (one row per relator).
HomologyGroup abelianization(size_t generators, const std::vector<std::vector<int64_t>>& relators) {
  HomologyGroup h;
  auto d = oracle::invariant_factors(relators);
  h.betti = generators - d.size();
  for (auto x : d)
    if (x != 1) h.torsion.emplace_back(static_cast<long long>(x));
  return h;
}

HomologyGroup z_mod(std::initializer_list<int> t, size_t betti = 0) {
  HomologyGroup h{betti, {}};
  for (int x : t) h.torsion.emplace_back(x);
  return h;
}

// Signed permutations of m letters as permutations of the 2m points ±e_i.
struct SignedPerm {
  std::vector<int> image;
  std::vector<int> sign;

  std::vector<int> points() const {
    const int m = static_cast<int>(image.size());
    std::vector<int> p(static_cast<size_t>(2 * m));
    for (int i = 0; i < m; ++i) {
      const int t = image[static_cast<size_t>(i)] + (sign[static_cast<size_t>(i)] < 0 ? m : 0);
      p[static_cast<size_t>(i)] = t;
      p[static_cast<size_t>(i + m)] = (t + m) % (2 * m);
    }
    return p;
  }
  SparseIntMatrix matrix() const {
    SparseIntMatrix a(image.size(), image.size());
    for (size_t i = 0; i < image.size(); ++i) a.set(static_cast<size_t>(image[i]), i, Integer(sign[i]));
    return a;
  }
};

ModuleAction cyclic_action(int order, const SparseIntMatrix& gen) {
  std::vector<int> rot(static_cast<size_t>(order));
  for (int i = 0; i < order; ++i) rot[static_cast<size_t>(i)] = (i + 1) % order;
  return close_action({rot}, {gen});
}

}  // namespace

TEST(CoinvariantsTest, TrivialActionKeepsModule) {
  ModuleAction m;
  m.rank = 3;
  m.generators = {SparseIntMatrix::identity(3)};
  EXPECT_EQ(coinvariants(m), z_mod({}, 3));
  m.generators.clear();
  EXPECT_EQ(coinvariants(m), z_mod({}, 3));
}

TEST(CoinvariantsTest, SignedPermutationQuotient) {
  // swap with a sign: e0 = -e1, so Z^2 / <e0 + e1> = Z
  SparseIntMatrix g(2, 2);
  g.set(1, 0, Integer(-1));
  g.set(0, 1, Integer(-1));
  ModuleAction m{2, {g}, {}, {}};
  EXPECT_EQ(coinvariants(m), z_mod({}, 1));
  // negation: e = -e gives Z/2 per coordinate
  SparseIntMatrix neg(2, 2);
  neg.set(0, 0, Integer(-1));
  neg.set(1, 1, Integer(-1));
  m.generators = {neg};
  EXPECT_EQ(coinvariants(m), z_mod({2, 2}));
  // mixing a general generator with the union-find path
  SparseIntMatrix shear = SparseIntMatrix::identity(2);
  shear.set(0, 1, Integer(3));
  m.generators = {g, shear};
  ModuleAction plain{2, {shear, g}, {}, {}};
  EXPECT_EQ(coinvariants(m), coinvariants(plain));
  EXPECT_EQ(coinvariants(m), z_mod({3}));
}

TEST(CoinvariantsTest, ExtraColumnsKillClasses) {
  ModuleAction m{2, {SparseIntMatrix::identity(2)}, {}, {}};
  SparseIntMatrix extra(2, 1);
  extra.set(0, 0, Integer(4));
  EXPECT_EQ(coinvariants_modulo(m, extra), z_mod({4}, 1));
}

TEST(FqGroupsTest, GeneratorsGenerate) {
  for (auto text : {"GL:2:2", "GL:2:3", "GL:2:5", "GL:2:4", "GL:3:2", "GL:3:3", "SL:2:3", "SL:2:4",
                    "SL:3:2", "B:2:5", "B:3:2", "B:3:3", "B:2:4"}) {
    GroupSpec s = GroupSpec::parse(text);
    EXPECT_EQ(generated_order(FieldTable::get(s.q), group_generators(s)), s.order()) << text;
  }
  EXPECT_EQ(GroupSpec::parse("GL:3:3").order(), 11232u);
  EXPECT_THROW(GroupSpec::parse("PGL:2:2"), ParseError);
  EXPECT_THROW(GroupSpec::parse("GL:2"), ParseError);
}

TEST(FqGroupsTest, SteinbergMatricesFormARepresentation) {
  const FieldTable& f = FieldTable::get(3);
  LocalSteinberg st(f, FqSubspace::whole(3));
  const auto gens = group_generators(GroupSpec::parse("GL:3:3"));
  const auto& a = gens[0];
  const auto& b = gens[1];
  EXPECT_EQ(steinberg_matrix(st, mul(f, a, b)), steinberg_matrix(st, a) * steinberg_matrix(st, b));
  EXPECT_EQ(steinberg_matrix(st, FqMatrix::identity(3)), SparseIntMatrix::identity(st.rank()));
  // B permutes the apartment basis
  for (const auto& g : group_generators(GroupSpec::parse("B:3:3"))) {
    auto m = steinberg_matrix(st, g);
    for (size_t c = 0; c < m.cols(); ++c) {
      ASSERT_EQ(m.column(c).size(), 1u);
      EXPECT_TRUE(m.column(c)[0].second.is_one());
    }
  }
  auto sf = snf(steinberg_matrix(st, b));
  EXPECT_EQ(sf.rank, st.rank());
  EXPECT_TRUE(std::all_of(sf.diagonal.begin(), sf.diagonal.end(), [](const Integer& d) { return d.is_one(); }));
}

TEST(FqGroupsTest, ChamberMatrixIsAPermutation) {
  TitsBuilding b(3, 2);
  const auto gens = group_generators(GroupSpec::parse("GL:3:2"));
  auto m = chamber_matrix(b, gens[1]);
  std::vector<int> seen(m.rows(), 0);
  for (size_t c = 0; c < m.cols(); ++c) ++seen[static_cast<size_t>(m.column(c).at(0).first)];
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; }));
}

TEST(CoinvariantsTest, SteinbergUnderFullGroupVanishes) {
  for (auto text : {"GL:2:2", "GL:2:3", "GL:3:2", "GL:3:3", "SL:2:3"}) {
    auto m = fq_module_action(GroupSpec::parse(text), ModuleKind::Steinberg);
    EXPECT_TRUE(coinvariants(m).is_zero()) << text << " " << coinvariants(m).to_string();
  }
}

TEST(CoinvariantsTest, SteinbergUnderBorelIsZ) {
  for (auto text : {"B:2:2", "B:2:3", "B:2:5", "B:3:2", "B:3:3"}) {
    auto m = fq_module_action(GroupSpec::parse(text), ModuleKind::Steinberg);
    EXPECT_TRUE(coinvariants(m).is_z()) << text;
  }
}

TEST(CoinvariantsTest, IndependentOfGeneratingSet) {
  for (auto text : {"GL:2:3", "GL:3:2"}) {
    GroupSpec s = GroupSpec::parse(text);
    auto m = fq_module_action(s, ModuleKind::SteinbergSquared);
    const FieldTable& f = FieldTable::get(s.q);
    LocalSteinberg st(f, FqSubspace::whole(s.n));
    ModuleAction redundant = m;
    auto gens = group_generators(s);
    auto extra = group_generators(GroupSpec{GroupFamily::SL, s.n, s.q});
    extra.push_back(mul(f, gens[0], gens[1]));
    for (const auto& g : extra) {
      auto a = steinberg_matrix(st, g);
      redundant.generators.push_back(kronecker(a, a));
    }
    EXPECT_EQ(coinvariants(m), coinvariants(redundant)) << text;
  }
}

TEST(GroupHomologyTest, CyclicOfOrderTwo) {
  auto triv = cyclic_action(2, SparseIntMatrix::identity(1));
  EXPECT_EQ(triv.group->order(), 2u);
  EXPECT_EQ(group_homology(triv, 0), z_mod({}, 1));
  EXPECT_EQ(group_homology(triv, 1), z_mod({2}));
  EXPECT_EQ(group_homology(triv, 2), z_mod({}));
  // sign module: H_0 = Z/2, H_1 = 0
  SparseIntMatrix neg(1, 1);
  neg.set(0, 0, Integer(-1));
  auto sgn = cyclic_action(2, neg);
  EXPECT_EQ(group_homology(sgn, 0), z_mod({2}));
  EXPECT_EQ(group_homology(sgn, 1), z_mod({}));
  EXPECT_EQ(group_homology(cyclic_action(3, SparseIntMatrix::identity(1)), 1), z_mod({3}));
}

TEST(GroupHomologyTest, AgreesWithPresentations) {
  // S3 = <a, b | a^2, b^3, (ab)^2>
  auto s3 = close_action({{1, 0, 2}, {1, 2, 0}}, {SparseIntMatrix::identity(1), SparseIntMatrix::identity(1)});
  ASSERT_EQ(s3.group->order(), 6u);
  EXPECT_EQ(group_homology(s3, 1), abelianization(2, {{2, 0}, {0, 3}, {2, 2}}));
  EXPECT_EQ(group_homology(s3, 1), z_mod({2}));
  // Z/2 × Z/2 = <a, b | a^2, b^2, [a, b]>
  auto v4 = close_action({{1, 0, 2, 3}, {0, 1, 3, 2}}, {SparseIntMatrix::identity(1), SparseIntMatrix::identity(1)});
  EXPECT_EQ(group_homology(v4, 1), abelianization(2, {{2, 0}, {0, 2}, {0, 0}}));
  // Künneth: H_2(Z/2 × Z/2) = Tor(Z/2, Z/2) = Z/2
  EXPECT_EQ(group_homology(v4, 2), z_mod({2}));
  EXPECT_EQ(group_homology(s3, 2), z_mod({}));
}

TEST(GroupHomologyTest, ZeroMatchesCoinvariantsOnRandomActions) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 3);
    const int k = 1 + static_cast<int>(rng() % 2);
    std::vector<std::vector<int>> perms;
    std::vector<SparseIntMatrix> mats;
    for (int g = 0; g < k; ++g) {
      SignedPerm p{std::vector<int>(static_cast<size_t>(m)), std::vector<int>(static_cast<size_t>(m))};
      std::iota(p.image.begin(), p.image.end(), 0);
      std::shuffle(p.image.begin(), p.image.end(), rng);
      for (auto& s : p.sign) s = (rng() % 2) ? 1 : -1;
      perms.push_back(p.points());
      mats.push_back(p.matrix());
    }
    auto act = close_action(perms, mats);
    EXPECT_EQ(group_homology(act, 0), coinvariants(act)) << "trial " << trial;
  }
}

TEST(GroupHomologyTest, SteinbergOfSmallGroups) {
  auto m = fq_module_action(GroupSpec::parse("GL:2:2"), ModuleKind::Steinberg, true);
  EXPECT_EQ(m.group->order(), 6u);
  EXPECT_EQ(group_homology(m, 0), coinvariants(m));
  EXPECT_TRUE(group_homology(m, 0).is_zero());
  // St ⊗ Q is a sum of nontrivial irreducibles, so H_1 is finite
  EXPECT_EQ(group_homology(m, 1).betti, 0u);
}

TEST(GroupHomologyTest, BudgetsEnforced) {
  auto gl33 = GroupSpec::parse("GL:3:3");
  EXPECT_THROW(fq_module_action(gl33, ModuleKind::Trivial, true), BudgetExceeded);
  auto m = fq_module_action(GroupSpec::parse("GL:3:2"), ModuleKind::Trivial, true);
  EXPECT_EQ(m.group->order(), 168u);
  EXPECT_THROW(group_homology(m, 2), BudgetExceeded);
  EXPECT_THROW(group_homology(m, 3), DegreeOutOfRange);
  EXPECT_EQ(group_homology(m, 1), z_mod({}));  // GL_3(F_2) is perfect
}
