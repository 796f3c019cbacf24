#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "levelmat/corpus.hpp"
#include "levelmat/latent.hpp"
#include "levelmat/level.hpp"
#include "levelmat/selftest.hpp"

using namespace levelmat;

namespace {

using QQ = Rationals;
using FP = PrimeField;

template <class F>
PolyMatrix<F> mat(const RingPtr<F>& R, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Polynomial<F>>> p;
  for (const auto& r : rows) {
    p.emplace_back();
    for (const auto& e : r) p.back().push_back(parse_poly(R, e));
  }
  return PolyMatrix<F>::from_rows(R, p);
}

// Krull dimension of R/I read off the growth of the Hilbert function of the
// leading-term ideal: the number of standard monomials of degree D behaves
// like a polynomial of degree dim - 1 for large D.
int growth_dimension(const std::vector<Monomial>& lms, std::size_t n) {
  auto standard = [&](int D) {
    long long count = 0;
    for (const auto& m : detail::monomials_of_degree(n, D)) {
      bool divisible = false;
      for (const auto& l : lms) {
        bool div = true;
        for (std::size_t i = 0; i < n; ++i) div = div && l[i] <= m[i];
        divisible = divisible || div;
      }
      if (!divisible) ++count;
    }
    return count;
  };
  std::vector<long long> v;
  for (int D = 40; D <= 40 + static_cast<int>(n); ++D) v.push_back(standard(D));
  if (std::all_of(v.begin(), v.end(), [](long long c) { return c == 0; })) return 0;
  int order = 0;
  while (v.size() > 1 && !std::all_of(v.begin(), v.end(), [&](long long c) { return c == v.front(); })) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = v[i + 1] - v[i];
    v.pop_back();
    ++order;
  }
  return order + 1;
}

template <class F>
int oracle_height(const std::vector<Polynomial<F>>& gens) {
  std::vector<Polynomial<F>> nz;
  for (const auto& g : gens)
    if (!g.is_zero()) nz.push_back(g);
  if (nz.empty()) return 0;
  const auto n = nz.front().ring()->nvars();
  return static_cast<int>(n) - growth_dimension(buchberger(nz).leading_monomials(), n);
}

LatentData cusp2() { return {2, 3, {1, 2, 2}, {1}}; }

template <class F>
std::pair<PolyMatrix<F>, PolyMatrix<F>> cusp2_blocks(const RingPtr<F>& R) {
  return {mat(R, {{"y", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}), mat(R, {{"3*x^2", "y", "2*z"}})};
}

bool same_up_to_unit(const std::vector<Polynomial<QQ>>& got, const std::vector<std::string>& want) {
  if (got.size() != want.size()) return false;
  std::vector<bool> used(want.size());
  for (const auto& g : got) {
    bool hit = false;
    for (std::size_t i = 0; i < want.size() && !hit; ++i)
      if (!used[i] && proportional(g, parse_poly(g.ring(), want[i]))) used[i] = hit = true;
    if (!hit) return false;
  }
  return true;
}

std::vector<LatentData> random_valid_latents(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<LatentData> out;
  while (out.size() < count) {
    int d = std::uniform_int_distribution<int>(2, 5)(rng);
    int m = std::uniform_int_distribution<int>(3, 5)(rng);
    LatentData c{d, m, {}, {}};
    std::uniform_int_distribution<int> dv(1, 2 * d), ev(1, d);
    for (int i = 0; i < m; ++i) c.delta.push_back(dv(rng));
    std::sort(c.delta.begin(), c.delta.end());
    for (int i = 0; i + 2 < m; ++i) c.epsilon.push_back(ev(rng));
    if (validate_latent(c).valid()) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST(LatentValidate, TabulatedExamples) {
  EXPECT_TRUE(validate_latent({2, 4, {2, 2, 2, 3}, {1, 1}}).valid());
  EXPECT_TRUE(validate_latent({3, 3, {1, 3, 3}, {1}}).valid());
  auto bad = validate_latent({2, 3, {1, 1, 1}, {1}});
  EXPECT_FALSE(bad.valid());
  EXPECT_TRUE(bad.violates(LatentCondition::delta_sum));
}

TEST(LatentValidate, ShapeAndOrderViolations) {
  EXPECT_TRUE(validate_latent({2, 4, {2, 2, 2}, {1, 1}}).violates(LatentCondition::shape));
  EXPECT_TRUE(validate_latent({2, 3, {2, 1, 2}, {1}}).violates(LatentCondition::monotone));
  EXPECT_TRUE(validate_latent({2, 3, {1, 2, 2}, {0}}).violates(LatentCondition::shape));
  EXPECT_TRUE(validate_latent({3, 3, {2, 3, 5}, {1}}).violates(LatentCondition::delta3_bound));
}

TEST(LatentValidate, NonperfectPairs) {
  EXPECT_TRUE(check_nonperfect_shifts(3, {1, 3, 3}));
  EXPECT_FALSE(check_nonperfect_shifts(3, {1, 2, 3}));
  EXPECT_TRUE(check_nonperfect_shifts(2, {2, 2, 2, 3}));
}

TEST(LatentFromShifts, CuspidalAndCounterexample) {
  auto a = latent_from_shifts(2, {1, 2, 2}, {5});
  ASSERT_TRUE(a.ok()) << a.reason;
  EXPECT_EQ(a.latent->epsilon, std::vector<int>{1});
  auto b = latent_from_shifts(2, {2, 2, 2, 3}, {5, 6});
  ASSERT_TRUE(b.ok()) << b.reason;
  EXPECT_EQ(b.latent->epsilon, (std::vector<int>{1, 1}));
}

TEST(LatentFromShifts, ZeroEpsilonRejected) {
  auto r = latent_from_shifts(2, {1, 2, 2}, {4});
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.reason.empty());
}

TEST(LatentProperties, ValidationIsIdempotentAndOrdered) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 300; ++t) {
    LatentData c{std::uniform_int_distribution<int>(1, 5)(rng), std::uniform_int_distribution<int>(3, 5)(rng), {}, {}};
    for (int i = 0; i < c.m; ++i) c.delta.push_back(std::uniform_int_distribution<int>(0, 8)(rng));
    for (int i = 0; i + 2 < c.m; ++i) c.epsilon.push_back(std::uniform_int_distribution<int>(0, 3)(rng));
    auto r1 = validate_latent(c), r2 = validate_latent(c);
    ASSERT_EQ(r1.violations.size(), r2.violations.size());
    for (std::size_t i = 0; i < r1.violations.size(); ++i) {
      ASSERT_EQ(r1.violations[i].condition, r2.violations[i].condition);
      ASSERT_EQ(r1.violations[i].detail, r2.violations[i].detail);
      if (i > 0) {
        ASSERT_LE(r1.violations[i - 1].condition, r1.violations[i].condition);
      }
    }
  }
}

TEST(LatentProperties, LowerBlockDegreesPositive) {
  for (const auto& c : random_valid_latents(42, 200)) ASSERT_TRUE(lower_block_leading_degrees_positive(c));
}

TEST(LevelShape, CuspidalPasses) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto [A, B] = cusp2_blocks(R);
  auto rep = check_degree_shape(cusp2(), A, B);
  EXPECT_TRUE(rep.ok());
}

TEST(LevelShape, WrongDegreeReportedAtEntry) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto [A, B] = cusp2_blocks(R);
  A(0, 0) = parse_poly(R, "y^2");
  auto rep = check_degree_shape(cusp2(), A, B);
  ASSERT_EQ(rep.failures.size(), 1u);
  EXPECT_EQ(rep.failures[0].block, 'A');
  EXPECT_EQ(rep.failures[0].row, 0u);
  EXPECT_EQ(rep.failures[0].col, 0u);
  EXPECT_EQ(rep.failures[0].expected, 1);
}

TEST(LevelCertify, CuspidalIsLevel) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto [A, B] = cusp2_blocks(R);
  auto eta = certify_level(cusp2(), A, B);
  EXPECT_TRUE(eta.certified());
  EXPECT_EQ(eta.certification.ht_eta, oracle_height(signed_maximal_minors(eta.eta())));
  EXPECT_EQ(eta.certification.ht_B, oracle_height(maximal_minors(B)));
  EXPECT_EQ(oracle_height(signed_maximal_minors(eta.eta())), 2);
  EXPECT_EQ(oracle_height(maximal_minors(B)), 3);
  HeightOptions exact;
  exact.authoritative = true;
  EXPECT_TRUE(certify_level(cusp2(), A, B, exact).certified());
  EXPECT_EQ(certify_level(cusp2(), A, B, exact).certification.field, "QQ");
}

TEST(LevelCertify, ForcedFormatCounterexampleFails) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  LatentData L{2, 4, {2, 2, 2, 3}, {1, 1}};
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto [A, B] = detail::forced_format(R, L, seed);
    auto eta = certify_level(L, A, B);
    EXPECT_TRUE(eta.certification.shape);
    EXPECT_FALSE(eta.certified());
    ASSERT_TRUE(eta.certification.ht_eta.has_value());
    EXPECT_LE(*eta.certification.ht_eta, 1);
    for (const auto& q : signed_maximal_minors(eta.eta())) EXPECT_NO_THROW(divide_exact(q, B(1, 3)));
  }
}

TEST(LevelCertify, ZeroRowInBFails) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  LatentData L{2, 4, {2, 2, 2, 2}, {1, 1}};
  auto good = monomial_level<QQ>(L);
  ASSERT_TRUE(good.certified());
  auto B = good.B;
  for (std::size_t j = 0; j < B.cols(); ++j) B(1, j) = good.ring()->zero();
  auto eta = certify_level(L, good.A, B);
  EXPECT_FALSE(eta.certified());
  EXPECT_EQ(eta.certification.ht_B, 0);
  EXPECT_THROW(require_level(L, good.A, B), LevelError);
}

TEST(LevelMonomial, ThreeByThreeTemplate) {
  auto eta = monomial_level<QQ>({3, 3, {2, 2, 3}, {1}});
  const auto& R = eta.ring();
  EXPECT_TRUE(eta.certified());
  EXPECT_EQ(eta.A, mat(R, {{"x", "0", "0"}, {"y", "x", "0"}, {"0", "y", "1"}}));
  EXPECT_EQ(eta.B, mat(R, {{"x^2", "z^2", "y"}}));
  EXPECT_TRUE(same_up_to_unit(minors_fixing_lower_block(eta), {"x^2*y", "x*(y^2-z^2)", "x^3+y^3-y*z^2"}));
}

TEST(LevelMonomial, InvalidLatentRejectedBeforeConstruction) {
  EXPECT_THROW(monomial_level<QQ>({2, 3, {1, 1, 1}, {1}}), std::invalid_argument);
}

TEST(LevelMonomial, FourColumnInstance) {
  auto eta = monomial_level<QQ>({2, 4, {2, 2, 2, 2}, {1, 1}});
  ASSERT_TRUE(eta.certified());
  auto p = minors_fixing_lower_block(eta);
  EXPECT_EQ(oracle_height(p), 2);
  for (const auto& q : p) EXPECT_EQ(q.degree(), 2);
}

// With m = 3 and delta = (d, d, d) every upper entry has degree 0, so A is
// unimodular and I_3(eta) is the unit ideal: the template is not level there.
bool unimodular_upper_block(const LatentData& c) {
  return c.m == 3 && c.delta[0] == c.d && c.delta[1] == c.d && c.delta[2] == c.d;
}

TEST(LevelMonomial, UnimodularUpperBlockIsNotLevel) {
  auto eta = monomial_level<QQ>({2, 3, {2, 2, 2}, {2}});
  EXPECT_FALSE(eta.certified());
  EXPECT_EQ(eta.certification.ht_B, 3);
  EXPECT_TRUE(ideal_equal(maximal_minors(eta.eta()), {eta.ring()->one()}));
}

TEST(LevelMonomial, EveryAdmissibleValidLatentCertifies) {
  std::size_t tried = 0, unimodular = 0;
  for (const auto& c : random_valid_latents(43, 60)) {
    LevelMatrix<FP> eta;
    try {
      eta = monomial_level<FP>(c);
    } catch (const std::invalid_argument&) {
      continue;  // template precondition on the wrap-around degrees
    }
    ++tried;
    if (unimodular_upper_block(c)) {
      ++unimodular;
      EXPECT_FALSE(eta.certified());
    } else {
      EXPECT_TRUE(eta.certified()) << "d=" << c.d << " m=" << c.m << " " << eta.failure();
    }
  }
  EXPECT_GT(tried - unimodular, 10u);
}

TEST(LevelEmbed, JnsMinorsArePartials) {
  auto run = run_example<QQ>(load_record("jns"), {{"d", 3}}, QQ{});
  ASSERT_TRUE(run.level && run.level->certified());
  const auto& eta = *run.level;
  EXPECT_EQ(eta.A, mat(eta.ring(), {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}}));
  auto p = minors_fixing_lower_block(eta);
  const auto& f = *run.form;
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(proportional(p[i], f.derivative(i)));
}

TEST(LevelEmbed, NodalCertified) {
  auto run = run_example<QQ>(load_record("nodal"), {{"d", 3}}, QQ{});
  ASSERT_TRUE(run.level && run.level->certified());
  EXPECT_TRUE(run.report.find("minors-regenerate-ideal")->passed);
}

TEST(LevelEmbed, DegenerateComplementRejected) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  LatentData L{2, 4, {2, 2, 2, 2}, {1, 1}};
  // Column 4 alone spans the complement of the identity block; x^2 and 0 give height 1.
  auto B = mat(R, {{"z", "y", "x", "x^2"}, {"y", "x", "z", "0"}});
  EXPECT_THROW(embed_identity_level(B, L, 1), LevelError);
  EXPECT_THROW(embed_identity_level(B, L, 3), std::invalid_argument);
}

TEST(LevelMinors, CuspidalArePartialsUpToUnit) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto [A, B] = cusp2_blocks(R);
  auto p = minors_fixing_lower_block(certify_level(cusp2(), A, B));
  EXPECT_TRUE(same_up_to_unit(p, {"2*y*z", "y^2", "3*x^2"}));
}

TEST(LevelMinors, IdentityOverLinearRow) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto eta = certify_level<QQ>({1, 3, {1, 1, 1}, {1}}, PolyMatrix<QQ>::identity(R, 3), mat(R, {{"x", "y", "z"}}));
  auto p = minors_fixing_lower_block(eta);
  EXPECT_TRUE(same_up_to_unit(p, {"x", "y", "z"}));
}

TEST(LevelProperties, CorpusLevelsHaveDegreeDMinorsAndSplitIdentity) {
  auto levels = corpus_levels<FP>(FP{});
  ASSERT_GE(levels.size(), 6u);
  for (const auto& [name, eta] : levels) {
    for (const auto& p : minors_fixing_lower_block(eta)) EXPECT_EQ(p.degree(), eta.latent.d) << name;
    EXPECT_TRUE(minors_split_identity(eta)) << name;
  }
}
