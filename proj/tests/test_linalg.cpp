#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles/minors.hpp"
#include "titshom/errors.hpp"
#include "titshom/smith.hpp"

using namespace titshom;

namespace {

SparseIntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
  std::vector<std::vector<Integer>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return SparseIntMatrix::from_dense(DenseIntMatrix::from_rows(r));
}

std::vector<Integer> ints(std::initializer_list<long long> v) { return {v.begin(), v.end()}; }

std::vector<std::vector<int64_t>> random_matrix(std::mt19937_64& rng, size_t r, size_t c) {
  std::uniform_int_distribution<int> e(-9, 9);
  std::vector<std::vector<int64_t>> m(r, std::vector<int64_t>(c));
  for (auto& row : m)
    for (auto& x : row) x = e(rng);
  return m;
}

SparseIntMatrix to_sparse(const std::vector<std::vector<int64_t>>& m) {
  std::vector<std::vector<long long>> rows;
  for (const auto& row : m) rows.emplace_back(row.begin(), row.end());
  return from_rows(rows);
}

}  // namespace

TEST(IntegerTest, OverflowPromotesAndDemotes) {
  Integer a(std::numeric_limits<int64_t>::max());
  Integer b = a + Integer(1);
  EXPECT_FALSE(b.is_small());
  EXPECT_EQ(b.to_string(), "9223372036854775808");
  Integer c = b - Integer(1);
  EXPECT_TRUE(c.is_small());
  EXPECT_EQ(c, a);
  Integer sq = a * a;
  EXPECT_EQ(sq / a, a);
  EXPECT_EQ(sq % a, Integer(0));
  Integer m(std::numeric_limits<int64_t>::min());
  EXPECT_EQ((-m).to_string(), "9223372036854775808");
  EXPECT_EQ(m / Integer(-1), -m);
  EXPECT_EQ(abs(m).sign(), 1);
}

TEST(IntegerTest, DivisionConventions) {
  EXPECT_EQ(Integer(-7) / Integer(2), Integer(-3));
  EXPECT_EQ(Integer(-7) % Integer(2), Integer(-1));
  EXPECT_EQ(floor_div(Integer(-7), Integer(2)), Integer(-4));
  EXPECT_EQ(floor_mod(Integer(-7), Integer(2)), Integer(1));
  EXPECT_EQ(floor_div(Integer(7), Integer(-2)), Integer(-4));
  EXPECT_EQ(gcd(Integer(-12), Integer(18)), Integer(6));
  EXPECT_EQ(lcm(Integer(4), Integer(-6)), Integer(12));
  auto eg = extended_gcd(Integer(240), Integer(46));
  EXPECT_EQ(eg.g, Integer(2));
  EXPECT_EQ(eg.s * Integer(240) + eg.t * Integer(46), eg.g);
  Integer big = Integer::parse("123456789012345678901234567890");
  auto eg2 = extended_gcd(big, Integer(97));
  EXPECT_EQ(eg2.s * big + eg2.t * Integer(97), eg2.g);
  EXPECT_THROW(Integer::parse("12a"), std::invalid_argument);
}

TEST(IntegerTest, MatchesGmpOnRandomChains) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int64_t> d(-(int64_t(1) << 62), int64_t(1) << 62);
  for (int it = 0; it < 2000; ++it) {
    int64_t x = d(rng), y = d(rng), z = d(rng);
    Integer a(static_cast<long long>(x)), b(static_cast<long long>(y)), c(static_cast<long long>(z));
    mpz_class ma(static_cast<long>(x)), mb(static_cast<long>(y)), mc(static_cast<long>(z));
    Integer r = a * b + c;
    mpz_class mr = ma * mb + mc;
    EXPECT_EQ(r.to_mpz(), mr);
    r.sub_mul(a, c);
    mr -= ma * mc;
    EXPECT_EQ(r.to_mpz(), mr);
    EXPECT_EQ(r.is_small(), mr.fits_slong_p());
    EXPECT_EQ(r < a, mr < ma);
  }
}

TEST(SmithTest, SpecExamples) {
  EXPECT_EQ(snf(SparseIntMatrix::identity(3)).diagonal, ints({1, 1, 1}));
  EXPECT_EQ(snf(from_rows({{2, 4}, {6, 8}})).diagonal, ints({2, 4}));
  SmithForm z = snf(SparseIntMatrix(2, 2));
  EXPECT_TRUE(z.diagonal.empty());
  EXPECT_EQ(z.rank, 0u);
  EXPECT_TRUE(snf(SparseIntMatrix(0, 0)).diagonal.empty());
}

TEST(SmithTest, AgreesWithDeterminantalDivisors) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int it = 0; it < 60; ++it) {
    auto m = random_matrix(rng, dim(rng), dim(rng));
    auto want = oracle::invariant_factors(m);
    auto got = snf(to_sparse(m)).diagonal;
    ASSERT_EQ(got.size(), want.size());
    for (size_t i = 0; i < want.size(); ++i) EXPECT_EQ(got[i], Integer(static_cast<long long>(want[i])));
    EXPECT_EQ(snf_dense(to_sparse(m).to_dense()).diagonal, got);
  }
}

TEST(SmithTest, LowRankAndTorsionHeavy) {
  // rank-deficient products with large invariant factors
  std::mt19937_64 rng(11);
  for (int it = 0; it < 30; ++it) {
    auto a = random_matrix(rng, 6, 3);
    auto b = random_matrix(rng, 3, 7);
    std::vector<std::vector<int64_t>> m(6, std::vector<int64_t>(7, 0));
    for (size_t i = 0; i < 6; ++i)
      for (size_t j = 0; j < 7; ++j)
        for (size_t k = 0; k < 3; ++k) m[i][j] += 6 * a[i][k] * b[k][j];
    auto want = oracle::invariant_factors(m);
    auto got = snf(to_sparse(m)).diagonal;
    ASSERT_EQ(got.size(), want.size());
    for (size_t i = 0; i < want.size(); ++i) EXPECT_EQ(got[i], Integer(static_cast<long long>(want[i])));
  }
}

TEST(SmithTest, TransformsReproduceDiagonal) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 20; ++it) {
    auto m = to_sparse(random_matrix(rng, 5, 4));
    SmithForm s = snf(m, true);
    ASSERT_TRUE(s.U && s.V);
    DenseIntMatrix d = *s.U * m.to_dense() * *s.V;
    for (size_t i = 0; i < d.rows(); ++i)
      for (size_t j = 0; j < d.cols(); ++j) {
        Integer want = (i == j && i < s.rank) ? s.diagonal[i] : Integer(0);
        EXPECT_EQ(d(i, j), want);
      }
    EXPECT_TRUE(abs(determinant(*s.U)).is_one());
    EXPECT_TRUE(abs(determinant(*s.V)).is_one());
  }
}

TEST(SmithTest, InvariantUnderTransposeAndSigns) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    auto m = random_matrix(rng, 5, 7);
    auto base = snf(to_sparse(m)).diagonal;
    EXPECT_EQ(snf(to_sparse(m).transpose()).diagonal, base);
    std::shuffle(m.begin(), m.end(), rng);
    for (auto& x : m[0]) x = -x;
    EXPECT_EQ(snf(to_sparse(m)).diagonal, base);
  }
}

TEST(SmithTest, HugeEntries) {
  Integer big = Integer::parse("1000000000000000000000000000057");
  SparseIntMatrix m(2, 2);
  m.set(0, 0, big * Integer(6));
  m.set(1, 1, big * Integer(4));
  auto d = snf(m).diagonal;
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0], big * Integer(2));
  EXPECT_EQ(d[1], big * Integer(12));
}

TEST(SmithTest, InvariantFactorsNormalizes) {
  EXPECT_EQ(invariant_factors(ints({6, 4, 1, -10})), ints({1, 2, 2, 60}));
  EXPECT_EQ(invariant_factors(ints({2, 3})), ints({1, 6}));
}

TEST(KernelTest, SpecExamples) {
  SparseIntMatrix k = kernel_basis(from_rows({{1, 1}}));
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_EQ(abs(k.get(0, 0)), Integer(1));
  EXPECT_EQ(k.get(0, 0) + k.get(1, 0), Integer(0));

  EXPECT_EQ(kernel_basis(from_rows({{2}})).cols(), 0u);

  SparseIntMatrix m = from_rows({{1, 2, 3}, {4, 5, 6}});
  SparseIntMatrix k3 = kernel_basis(m);
  ASSERT_EQ(k3.cols(), 1u);
  EXPECT_TRUE((m * k3).is_zero());
  // saturated: invariant factors of the basis are all ones
  for (const auto& d : snf(k3).diagonal) EXPECT_TRUE(d.is_one());
  Integer s = k3.get(0, 0);
  EXPECT_EQ(k3.get(1, 0), Integer(-2) * s);
  EXPECT_EQ(k3.get(2, 0), s);
}

TEST(KernelTest, RankNullityAndSaturation) {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 25; ++it) {
    auto a = random_matrix(rng, 4, 2);
    auto b = random_matrix(rng, 2, 6);
    std::vector<std::vector<int64_t>> m(4, std::vector<int64_t>(6, 0));
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 6; ++j)
        for (size_t k = 0; k < 2; ++k) m[i][j] += a[i][k] * b[k][j];
    SparseIntMatrix sm = to_sparse(m);
    SparseIntMatrix k = kernel_basis(sm);
    EXPECT_EQ(rank(sm) + k.cols(), sm.cols());
    EXPECT_TRUE((sm * k).is_zero());
    for (const auto& d : snf(k).diagonal) EXPECT_TRUE(d.is_one());
  }
}

TEST(KernelTest, PrimeField) {
  SparseIntMatrix m = from_rows({{1, 1, 0}, {0, 2, 2}});
  auto f2 = CoefficientRing::prime_field(2);
  EXPECT_EQ(rank(m, f2), 1u);
  SparseIntMatrix k = kernel_basis(m, f2);
  ASSERT_EQ(k.cols(), 2u);
  SparseIntMatrix prod = m * k;
  for (const auto& col : prod.columns())
    for (const auto& e : col) EXPECT_TRUE(floor_mod(e.second, Integer(2)).is_zero());
  EXPECT_EQ(rank(m, CoefficientRing::prime_field(3)), 2u);
  EXPECT_THROW(CoefficientRing::prime_field(4), InvalidArgument);
}

TEST(CokernelTest, SpecExamples) {
  auto c1 = cokernel_invariants(from_rows({{2}}));
  EXPECT_EQ(c1.betti, 0u);
  EXPECT_EQ(c1.torsion, ints({2}));
  auto c2 = cokernel_invariants(from_rows({{1, 0}, {0, 3}}));
  EXPECT_EQ(c2.betti, 0u);
  EXPECT_EQ(c2.torsion, ints({3}));
  auto c3 = cokernel_invariants(from_rows({{1, 2, 3}, {4, 5, 6}}).transpose());
  EXPECT_EQ(c3.betti, 1u);
  EXPECT_EQ(c3.torsion, ints({3}));
}

TEST(DenseTest, EchelonSolveAndSaturation) {
  DenseIntMatrix a = DenseIntMatrix::from_rows({ints({2, 4, 6}), ints({1, 1, 1})});
  ColumnEchelon ce = column_echelon(a);
  EXPECT_EQ(ce.rank, 2u);
  EXPECT_EQ(a * ce.V, ce.H);
  EXPECT_EQ(ce.V * ce.Vinv, DenseIntMatrix::identity(3));
  auto x = solve_integer(a, ints({2, 1}));
  ASSERT_TRUE(x);
  EXPECT_EQ(a * *x, ints({2, 1}));
  EXPECT_FALSE(solve_integer(a, ints({1, 0})));
  // saturation of the row span of (2,4,6),(1,1,1) contains (1,2,3)
  DenseIntMatrix sat = saturated_row_basis(a);
  EXPECT_EQ(sat.rows(), 2u);
  EXPECT_EQ(hermite_rows(DenseIntMatrix::from_rows({ints({1, 2, 3}), ints({1, 1, 1})})), sat);
  EXPECT_EQ(determinant(DenseIntMatrix::from_rows({ints({2, 1}), ints({7, 4})})), Integer(1));
  EXPECT_EQ(rank_q(a), 2u);
}

TEST(TripletTest, RoundTrip) {
  SparseIntMatrix m = from_rows({{0, -3}, {5, 0}, {0, 0}});
  m.set(2, 0, Integer::parse("-99999999999999999999999"));
  std::stringstream ss;
  write_triplets(ss, m);
  EXPECT_EQ(read_triplets(ss), m);
  std::stringstream bad("2 2\n0 5 1\n");
  EXPECT_THROW(read_triplets(bad), ParseError);
}
