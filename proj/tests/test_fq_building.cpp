#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "oracles/fq_brute.hpp"
#include "titshom/errors.hpp"
#include "titshom/fq_building.hpp"

using namespace titshom;

TEST(FieldTableTest, PrimePowerFieldsSatisfyAxioms) {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27}) {
    const FieldTable& f = FieldTable::get(q);
    EXPECT_EQ(f.q(), q);
    EXPECT_TRUE(f.verify_axioms());
  }
  // F_4 over x^2 + x + 1, F_8 over x^3 + x + 1
  EXPECT_EQ(FieldTable::get(4).modulus(), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(FieldTable::get(8).modulus(), (std::vector<int>{1, 1, 0, 1}));
  EXPECT_THROW(FieldTable(6), InvalidArgument);
}

TEST(SubspacesTest, CountsMatchBruteForce) {
  EXPECT_EQ(subspaces(2, 2, 1).size(), 3u);
  EXPECT_EQ(subspaces(3, 2, 1).size(), 7u);
  EXPECT_EQ(subspaces(3, 3, 2).size(), 13u);
  for (int q : {2, 3, 5})
    for (int n = 1; n <= 3; ++n)
      for (int d = 0; d <= n; ++d) {
        if (std::pow(q, n * d) > 20000) continue;  // brute force cost
        EXPECT_EQ(subspaces(n, q, d).size(), oracle::subspaces(n, q, d).size()) << n << q << d;
      }
  EXPECT_EQ(subspaces(2, 4, 1).size(), 5u);
  EXPECT_THROW(subspaces(2, 32, 1), FieldTooLarge);
}

TEST(SubspacesTest, CanonicalAndDistinct) {
  auto s = subspaces(4, 2, 2);
  EXPECT_EQ(s.size(), 35u);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
  const FieldTable& f = FieldTable::get(2);
  for (const auto& v : s) EXPECT_EQ(FqSubspace::span(f, 4, v.rows()), v);
}

TEST(SubspacesTest, DiskCacheRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / "titshom_cache_test";
  std::filesystem::remove_all(dir);
  setenv("TITSHOM_CACHE_DIR", dir.c_str(), 1);
  auto first = subspaces(3, 3, 1);
  EXPECT_TRUE(std::filesystem::exists(dir / "subspaces-v1-n3-q3-d1.txt"));
  auto second = subspaces(3, 3, 1);
  EXPECT_EQ(first, second);
  // corrupted cache entries are ignored and rebuilt
  std::ofstream(dir / "subspaces-v1-n3-q3-d1.txt") << "garbage";
  EXPECT_EQ(subspaces(3, 3, 1), first);
  unsetenv("TITSHOM_CACHE_DIR");
  std::filesystem::remove_all(dir);
}

TEST(BuildingTest, FaceCounts) {
  EXPECT_EQ(TitsBuilding(2, 2).face_counts(), (std::vector<size_t>{1, 3}));
  EXPECT_EQ(TitsBuilding(3, 2).face_counts(), (std::vector<size_t>{1, 14, 21}));
  EXPECT_EQ(TitsBuilding(3, 3).face_counts(), (std::vector<size_t>{1, 26, 52}));
}

TEST(BuildingTest, ChamberCountsMatchGaussianProduct) {
  for (int n = 2; n <= 4; ++n)
    for (int q : {2, 3}) {
      long expect = 1;
      for (int k = 2; k <= n; ++k) {
        long qk = 1;
        for (int i = 0; i < k; ++i) qk *= q;
        expect *= (qk - 1) / (q - 1);
      }
      TitsBuilding b(n, q);
      EXPECT_EQ(static_cast<long>(b.chambers().size()), expect);
      EXPECT_EQ(oracle::complete_flags(n, q), expect);
    }
}

TEST(BuildingTest, SolomonTitsSmallCases) {
  auto h = all_homology(building_complex(2, 2));
  EXPECT_TRUE(h[0].is_zero());
  EXPECT_EQ(h[1], (HomologyGroup{2, {}}));
  auto h3 = all_homology(building_complex(3, 2));
  EXPECT_TRUE(h3[0].is_zero());
  EXPECT_TRUE(h3[1].is_zero());
  EXPECT_EQ(h3[2], (HomologyGroup{8, {}}));
  EXPECT_EQ(steinberg(2, 3).kernel.cols(), 3u);
  EXPECT_EQ(steinberg(2, 4).kernel.cols(), 4u);
}

TEST(BuildingTest, BudgetIsEnforced) {
  EnumerationOptions opt;
  opt.flag_budget = 10;
  EXPECT_THROW(TitsBuilding(3, 2, opt), BudgetExceeded);
}

TEST(ApartmentTest, IdentityInRankTwo) {
  TitsBuilding b(2, 2);
  auto a = apartment_class_fq(b, FqMatrix::identity(2));
  const FieldTable& f = b.field();
  long e1 = b.chamber_index({FqSubspace::span(f, 2, {{1, 0}})});
  long e2 = b.chamber_index({FqSubspace::span(f, 2, {{0, 1}})});
  for (size_t i = 0; i < a.size(); ++i) {
    long want = static_cast<long>(i) == e1 ? 1 : (static_cast<long>(i) == e2 ? -1 : 0);
    EXPECT_EQ(a[i], Integer(want));
  }
}

TEST(ApartmentTest, CyclesAndColumnSwap) {
  TitsBuilding b(3, 2);
  SparseIntMatrix d = b.complex().boundary(1);
  FqMatrix g = FqMatrix::identity(3);
  g(0, 1) = 1;
  g(2, 0) = 1;
  auto a = apartment_class_fq(b, g);
  int nonzero = 0;
  for (const auto& x : a) nonzero += !x.is_zero();
  EXPECT_EQ(nonzero, 6);
  for (const auto& x : d.apply(a)) EXPECT_TRUE(x.is_zero());
  FqMatrix swapped = mul(b.field(), g, permutation_matrix({1, 0, 2}));
  auto s = apartment_class_fq(b, swapped);
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(s[i], -a[i]);
}

TEST(ApartmentTest, BorelElementsShareTheUnipotentApartment) {
  TitsBuilding b(3, 3);
  const FieldTable& f = b.field();
  FqMatrix u = FqMatrix::identity(3);
  u(0, 1) = 2;
  u(1, 2) = 1;
  FqMatrix t = FqMatrix::identity(3);
  t(0, 0) = 2;
  t(2, 2) = 2;
  EXPECT_EQ(apartment_class_fq(b, mul(f, u, t)), apartment_class_fq(b, u));
}

TEST(UnipotentBasisTest, Unimodular) {
  for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    auto chk = unipotent_basis_check(n, q);
    EXPECT_TRUE(chk.unimodular()) << n << "," << q;
    size_t u = 1;
    for (int i = 0; i < n * (n - 1) / 2; ++i) u *= static_cast<size_t>(q);
    EXPECT_EQ(chk.smith.diagonal.size(), u);
  }
}

TEST(BruhatTest, WitnessExamples) {
  FqMatrix u = bruhat_witness(3, 2);
  EXPECT_EQ(u.to_string(), "[1,1,1;0,1,1;0,0,1]");
  FqMatrix u2 = bruhat_witness(2, 3);
  EXPECT_EQ(u2.to_string(), "[1,1;0,1]");
  EXPECT_FALSE(verify_bruhat_witness(FieldTable::get(2), FqMatrix::identity(3)));
}

TEST(LocalSteinbergTest, ReadsApartmentBasis) {
  const FieldTable& f = FieldTable::get(3);
  LocalSteinberg st(f, FqSubspace::whole(3));
  EXPECT_EQ(st.rank(), 27u);
  for (size_t i = 0; i < st.rank(); i += 5) {
    auto c = st.apartment_coordinates(st.frame(i));
    for (size_t j = 0; j < c.size(); ++j) EXPECT_EQ(c[j], Integer(i == j ? 1 : 0));
  }
}
