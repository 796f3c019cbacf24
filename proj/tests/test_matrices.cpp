#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "levelmat/matrix.hpp"
#include "levelmat/parse.hpp"
#include "levelmat/rim.hpp"
#include "levelmat/selftest.hpp"

using namespace levelmat;

namespace {

using QQ = Rationals;

PolyMatrix<QQ> mat(const RingPtr<QQ>& R, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Polynomial<QQ>>> p;
  for (const auto& r : rows) {
    p.emplace_back();
    for (const auto& e : r) p.back().push_back(parse_poly(R, e));
  }
  return PolyMatrix<QQ>::from_rows(R, p);
}

// Sum over permutations with the sign counted by inversions.
template <class F>
Polynomial<F> leibniz(const PolyMatrix<F>& m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  auto total = m.ring()->zero();
  do {
    int inv = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inv;
    auto term = m.ring()->one();
    for (std::size_t i = 0; i < perm.size(); ++i) term = term * m(i, perm[i]);
    total = inv % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST(MatrixMinor, TwoByTwo) {
  auto R = make_ring<QQ>({"a", "b", "c", "d"});
  auto m = mat(R, {{"a", "b"}, {"c", "d"}});
  EXPECT_EQ(minor(m, {0, 1}, {0, 1}), parse_poly(R, "a*d - b*c"));
}

TEST(MatrixMinor, ZeroColumnGivesZero) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto m = mat(R, {{"x", "0", "y"}, {"z", "0", "x"}, {"y", "0", "1"}});
  EXPECT_TRUE(minor(m, {0, 1, 2}, {0, 1, 2}).is_zero());
  EXPECT_TRUE(minor(m, {0, 2}, {1, 2}).is_zero());
}

TEST(MatrixMinor, CuspidalFixedRowsMinor) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto eta = mat(R, {{"y", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}, {"3*x^2", "y", "2*z"}});
  auto p = minor(eta, {1, 2, 3}, {0, 1, 2});
  EXPECT_EQ(p, parse_poly(R, "3*x^2"));
}

TEST(MatrixMinor, BadIndexSetsRejected) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto m = mat(R, {{"x", "y"}, {"z", "x"}});
  EXPECT_THROW(minor(m, {0, 0}, {0, 1}), std::invalid_argument);
  EXPECT_THROW(minor(m, {0, 2}, {0, 1}), std::out_of_range);
  EXPECT_THROW(minor(m, {0}, {0, 1}), std::invalid_argument);
}

TEST(MatrixSignedMinors, IdentityOverLinearRow) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto m = mat(R, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}, {"x", "y", "z"}});
  auto p = signed_maximal_minors(m);
  ASSERT_EQ(p.size(), 4u);
  // Brute-force oracle: p_i = (-1)^i det(M without row i).
  for (std::size_t i = 0; i < 4; ++i) {
    IndexSet rows;
    for (std::size_t r = 0; r < 4; ++r)
      if (r != i) rows.push_back(r);
    auto d = leibniz(m.submatrix(rows, {0, 1, 2}));
    EXPECT_EQ(p[i], i % 2 ? -d : d);
  }
  EXPECT_EQ(p[0], parse_poly(R, "x"));
  EXPECT_EQ(p[1], parse_poly(R, "y"));
  EXPECT_EQ(p[2], parse_poly(R, "z"));
  EXPECT_EQ(p[3], parse_poly(R, "-1"));
  PolyMatrix<QQ> row(R, 1, 4);
  for (std::size_t i = 0; i < 4; ++i) row(0, i) = p[i];
  EXPECT_TRUE((row * m).is_zero());
}

TEST(MatrixSignedMinors, KoszulCase) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto p = signed_maximal_minors(mat(R, {{"x^2"}, {"y*z"}}));
  EXPECT_EQ(p[0], parse_poly(R, "y*z"));
  EXPECT_EQ(p[1], parse_poly(R, "-x^2"));
}

TEST(MatrixSignedMinors, CuspidalMinorsArePartials) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto f = parse_poly(R, "x^3 + y^2*z");
  auto eta = mat(R, {{"y", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}, {"3*x^2", "y", "2*z"}});
  auto p = signed_maximal_minors(eta);
  std::vector<Polynomial<QQ>> partials{f.derivative("x"), f.derivative("y"), f.derivative("z")};
  for (std::size_t i = 0; i < 3; ++i) {
    bool found = false;
    for (const auto& q : partials) found = found || p[i] == q || p[i] == -q;
    EXPECT_TRUE(found) << p[i].to_string();
  }
}

TEST(MatrixSignedMinors, WrongShapeRejected) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  EXPECT_THROW(signed_maximal_minors(mat(R, {{"x", "y"}, {"y", "z"}})), std::invalid_argument);
}

TEST(MatrixCompound, TwoByTwoGivesDeterminant) {
  auto R = make_ring<QQ>({"a", "b", "c", "d"});
  auto c = compound(mat(R, {{"a", "b"}, {"c", "d"}}), 2);
  ASSERT_EQ(c.rows(), 1u);
  ASSERT_EQ(c.cols(), 1u);
  EXPECT_EQ(c(0, 0), parse_poly(R, "a*d - b*c"));
}

TEST(MatrixCompound, IdentityGoesToIdentity) {
  auto R = make_ring<QQ>({"x"});
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t p = 1; p <= n; ++p) {
      auto c = compound(PolyMatrix<QQ>::identity(R, n), p);
      EXPECT_EQ(c, PolyMatrix<QQ>::identity(R, c.rows()));
    }
  EXPECT_EQ(compound(PolyMatrix<QQ>::identity(R, 5), 2).rows(), 10u);
}

TEST(MatrixAdjugate, TwoByTwo) {
  auto R = make_ring<QQ>({"a", "b", "c", "d"});
  EXPECT_EQ(adjugate(mat(R, {{"a", "b"}, {"c", "d"}})), mat(R, {{"d", "-b"}, {"-c", "a"}}));
}

TEST(MatrixAdjugate, IdentityIsFixed) {
  auto R = make_ring<QQ>({"x"});
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(adjugate(PolyMatrix<QQ>::identity(R, n)), PolyMatrix<QQ>::identity(R, n));
}

TEST(MatrixAdjugate, ProductIsDeterminantTimesIdentity) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + t % 3;
    auto m = gen::random_matrix(R, n, n, rng);
    auto I = PolyMatrix<QQ>::identity(R, n).scale(determinant(m));
    ASSERT_EQ(m * adjugate(m), I);
    ASSERT_EQ(adjugate(m) * m, I);
  }
}

TEST(MatrixRank, ZeroMatrix) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  EXPECT_EQ(rank_ff(PolyMatrix<QQ>(R, 3, 4)), 0u);
}

TEST(MatrixRank, KOfLinearRowHasRankTwo) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto K = build_K(mat(R, {{"x", "y", "z"}})).K;
  EXPECT_EQ(rank_symbolic(K), 2u);
  EXPECT_EQ(rank_ff(K), 2u);
  auto P = make_ring<PrimeField>({"x", "y", "z"}, PrimeField{});
  auto Kp = build_K(PolyMatrix<PrimeField>::from_rows(P, {{P->var("x"), P->var("y"), P->var("z")}})).K;
  EXPECT_EQ(rank_ff(Kp), 2u);
}

TEST(MatrixRank, AgreesWithSymbolicElimination) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  std::mt19937_64 rng(22);
  for (int t = 0; t < 40; ++t) {
    auto u = gen::random_matrix(R, 4, 2, rng), v = gen::random_matrix(R, 2, 5, rng);
    auto m = t % 2 ? u * v : gen::random_matrix(R, 4, 5, rng);
    ASSERT_EQ(rank_ff(m), rank_symbolic(m));
  }
}

TEST(MatrixProperties, LaplaceRowsAgreeWithBareissAndLeibniz) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  std::mt19937_64 rng(23);
  for (int t = 0; t < 60; ++t) {
    auto m = gen::random_matrix(R, 4, 4, rng);
    auto ref = leibniz(m);
    for (std::size_t r = 0; r < 4; ++r) ASSERT_EQ(determinant_laplace(m, r), ref);
    ASSERT_EQ(determinant_bareiss(m), ref);
  }
}

TEST(MatrixProperties, CauchyBinetEveryAdmissibleOrder) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int t = 0; t < 40; ++t) {
    auto m = gen::random_matrix(R, dim(rng), dim(rng), rng);
    auto n = gen::random_matrix(R, m.cols(), dim(rng), rng);
    auto mn = m * n;
    for (std::size_t p = 1; p <= std::min({m.rows(), m.cols(), n.cols()}); ++p)
      ASSERT_EQ(compound(mn, p), compound(m, p) * compound(n, p));
  }
}

TEST(MatrixProperties, CauchyBinetSuiteBothFields) {
  EXPECT_TRUE(cauchy_binet_suite(Rationals{}, 31, 20).ok());
  EXPECT_TRUE(cauchy_binet_suite(PrimeField{}, 31, 20).ok());
}

TEST(MatrixProperties, SignedMinorsAnnihilateEveryRandomMatrix) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  std::mt19937_64 rng(25);
  for (int t = 0; t < 40; ++t) {
    std::size_t m = 1 + t % 4;
    auto M = gen::random_matrix(R, m + 1, m, rng);
    auto p = signed_maximal_minors(M);
    PolyMatrix<QQ> row(R, 1, m + 1);
    for (std::size_t i = 0; i <= m; ++i) row(0, i) = p[i];
    ASSERT_TRUE((row * M).is_zero());
  }
}

TEST(MatrixGraded, DegreeViolationsReported) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  GradedMap<QQ> g{mat(R, {{"x^2", "y", "z"}}), {0}, {2, 1, 2}};
  auto bad = g.degree_violations();
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0], std::make_pair(std::size_t(0), std::size_t(2)));
}
