#include <random>

#include <gtest/gtest.h>

#include "levelmat/corpus.hpp"
#include "levelmat/groebner.hpp"
#include "levelmat/parse.hpp"
#include "levelmat/selftest.hpp"

using namespace levelmat;

namespace {

using QQ = Rationals;
using FP = PrimeField;

std::vector<Polynomial<QQ>> polys(const RingPtr<QQ>& R, const std::vector<std::string>& s) {
  std::vector<Polynomial<QQ>> out;
  for (const auto& t : s) out.push_back(parse_poly(R, t));
  return out;
}

RingPtr<QQ> xyz() { return make_ring<QQ>({"x", "y", "z"}); }

// Jacobian generators of every corpus record that has a form, at default parameters.
std::vector<std::pair<std::string, std::vector<Polynomial<QQ>>>> corpus_jacobians() {
  std::vector<std::pair<std::string, std::vector<Polynomial<QQ>>>> out;
  for (const auto& name : list_records()) {
    auto rec = load_record(name);
    if (!rec.data.contains("form") || name == "rty-arrangement") continue;
    auto params = rec.resolve_params({});
    auto R = make_ring<QQ>(rec.data.at("ring").get<std::vector<std::string>>());
    auto f = parse_poly(R, expand_template(rec.data.at("form").get<std::string>(), params));
    out.emplace_back(name, jacobian_ideal(f));
  }
  return out;
}

}  // namespace

TEST(GroebnerBasis, VariablesAreAlreadyABasis) {
  auto R = xyz();
  auto gb = buchberger(polys(R, {"x", "y"}));
  EXPECT_EQ(gb.elements(), polys(R, {"y", "x"}));
}

TEST(GroebnerBasis, TwistedCubicRelation) {
  auto R = xyz();
  auto gb = buchberger(polys(R, {"x^2 - y", "x^3 - z"}));
  // hand elimination: x^3 - z - x (x^2 - y) = x y - z, then x(xy - z) - y(x^2 - y) = y^2 - x z
  auto g1 = parse_poly(R, "x^2 - y"), g2 = parse_poly(R, "x^3 - z");
  auto h1 = g2 - R->var("x") * g1;
  EXPECT_EQ(h1, parse_poly(R, "x*y - z"));
  auto h2 = R->var("x") * h1 - R->var("y") * g1;
  EXPECT_EQ(h2, parse_poly(R, "y^2 - x*z"));
  EXPECT_EQ(gb.elements(), polys(R, {"y^2 - x*z", "x*y - z", "x^2 - y"}));
  // in the ideal without being an element of the reduced basis
  EXPECT_TRUE(gb.contains(parse_poly(R, "y^3 - z^2")));
  EXPECT_FALSE(gb.contains(parse_poly(R, "y^3 - z")));
}

TEST(GroebnerBasis, CuspidalJacobianHasDimensionOne) {
  auto R = xyz();
  auto J = jacobian_ideal(parse_poly(R, "x^3 + y^2*z"));
  auto gb = buchberger(J);
  EXPECT_EQ(dimension_from_leading_monomials(gb.leading_monomials(), 3), 1);
  EXPECT_EQ(dimension(J), 1);
}

TEST(GroebnerBasis, OtherOrders) {
  auto R = xyz();
  auto gens = polys(R, {"x^2 - y", "x^3 - z"});
  for (auto o : {MonomialOrder::lex, MonomialOrder::deglex}) {
    auto gb = buchberger(gens, o);
    EXPECT_TRUE(gb.contains(parse_poly(R, "y^3 - z^2")));
    EXPECT_FALSE(gb.contains(parse_poly(R, "x")));
  }
  EXPECT_EQ(parse_order("degree-then-lex"), MonomialOrder::deglex);
  EXPECT_THROW(parse_order("revlex"), std::invalid_argument);
}

TEST(GroebnerBasis, PairLimitThrows) {
  auto R = xyz();
  GroebnerLimits tight;
  tight.max_pairs = 1;
  EXPECT_THROW(buchberger(jacobian_ideal(parse_poly(R, "x*(x*y*(x+y)+z^3)")), MonomialOrder::degrevlex, tight),
               ResourceLimitExceeded);
}

TEST(GroebnerNormalForm, MembersReduceToZero) {
  auto R = xyz();
  auto gens = polys(R, {"x^2 - y*z", "y^3 - x*z^2", "x*y + z^2"});
  auto gb = buchberger(gens);
  for (const auto& g : gens) EXPECT_TRUE(normal_form(g, gb).is_zero());
}

TEST(GroebnerNormalForm, OneModuloMaximalIdeal) {
  auto R = xyz();
  auto gb = buchberger(polys(R, {"x", "y", "z"}));
  EXPECT_EQ(normal_form(R->one(), gb), R->one());
  EXPECT_FALSE(gb.is_unit());
  EXPECT_TRUE(buchberger(polys(R, {"x", "1 + x"})).is_unit());
}

TEST(GroebnerNormalForm, CuspidalProductsReduceToZero) {
  auto R = xyz();
  // p = (2yz, -y^2, 3x^2) up to sign, Delta ranges over the entries of B = [3x^2, y, 2z]
  auto gb = buchberger(polys(R, {"2*y*z", "y^2", "3*x^2"}));
  auto q = polys(R, {"2*y*z", "-y^2", "3*x^2", "y"});
  for (const auto& delta : polys(R, {"3*x^2", "y", "2*z"}))
    for (const auto& qq : q) EXPECT_TRUE(normal_form(delta * qq, gb).is_zero());
}

TEST(GroebnerIdealEqual, Cases) {
  auto R = xyz();
  EXPECT_TRUE(ideal_equal(polys(R, {"x", "y"}), polys(R, {"x + y", "y"})));
  EXPECT_FALSE(ideal_equal(polys(R, {"x^2"}), polys(R, {"x"})));
  EXPECT_TRUE(ideal_equal(polys(R, {"0"}), polys(R, {"0", "0"})));
  EXPECT_FALSE(ideal_equal(polys(R, {"0"}), polys(R, {"x"})));
}

TEST(GroebnerIdealEqual, CuspidalIdentityA) {
  auto R = xyz();
  auto eta = certify_level<QQ>({2, 3, {1, 2, 2}, {1}},
                               PolyMatrix<QQ>::from_rows(R, {polys(R, {"y", "0", "0"}), polys(R, {"0", "1", "0"}),
                                                             polys(R, {"0", "0", "1"})}),
                               PolyMatrix<QQ>::from_rows(R, {polys(R, {"3*x^2", "y", "2*z"})}));
  auto sides = vasconcelos_identity_a(eta);
  EXPECT_TRUE(ideal_equal(sides.lhs, sides.rhs));
}

TEST(GroebnerHeight, Cases) {
  auto R = xyz();
  EXPECT_EQ(height(polys(R, {"x", "y"})), 2);
  EXPECT_EQ(height(polys(R, {"x", "y", "z"})), 3);
  EXPECT_EQ(height(polys(R, {"3*x^2", "y", "2*z"})), 3);
  EXPECT_EQ(height(polys(R, {"x*y", "x*z"})), 1);
  EXPECT_THROW(height(polys(R, {"x + y^2"})), std::invalid_argument);
}

TEST(GroebnerSyzygy, KoszulPair) {
  auto R = xyz();
  auto S = syzygies(polys(R, {"x", "y"}));
  ASSERT_EQ(S.count(), 1u);
  EXPECT_TRUE((S.matrix(0, 0) == parse_poly(R, "-y") && S.matrix(1, 0) == parse_poly(R, "x")) ||
              (S.matrix(0, 0) == parse_poly(R, "y") && S.matrix(1, 0) == parse_poly(R, "-x")));
  EXPECT_EQ(S.source_shifts, std::vector<int>{2});
}

TEST(GroebnerSyzygy, CuspidalJacobianDegrees) {
  auto R = xyz();
  auto J = jacobian_ideal(parse_poly(R, "x^3 + y^2*z"));
  auto S = syzygies(J);
  std::vector<int> deg;
  for (int s : S.source_shifts) deg.push_back(s - 2);
  std::sort(deg.begin(), deg.end());
  EXPECT_EQ(deg, (std::vector<int>{1, 2, 2}));
}

TEST(GroebnerSyzygy, NearlyFreeSecondSyzygy) {
  auto R = xyz();
  auto J = jacobian_ideal(parse_poly(R, "x*(x*y*(x+y)+z^3)"));
  auto S1 = syzygies(J);
  // the second syzygy module has rank one, generated by a column proportional to psi
  auto S = module_syzygies(GradedMap<QQ>{S1.matrix, S1.target_shifts, S1.source_shifts});
  ASSERT_EQ(S.count(), 1u);
  auto psi = polys(R, {"3/4*z^2", "y^2", "-x-2*y"});
  // rows follow the order of the first syzygies, which is basis dependent
  std::vector<std::size_t> order{0, 1, 2};
  bool found = false;
  do {
    std::optional<mpq_class> ratio;
    bool match = true;
    for (std::size_t i = 0; i < 3 && match; ++i) {
      const auto& a = S.matrix(order[i], 0);
      if (a.is_zero() || a.size() != psi[i].size()) {
        match = false;
        break;
      }
      mpq_class r = a.terms().front().coeff / psi[i].terms().front().coeff;
      match = a == psi[i].scale(r) && (!ratio || *ratio == r);
      ratio = r;
    }
    found = match;
  } while (!found && std::next_permutation(order.begin(), order.end()));
  EXPECT_TRUE(found);
}

TEST(GroebnerSyzygy, NonHomogeneousRejected) {
  auto R = xyz();
  EXPECT_THROW(syzygies(polys(R, {"x + y^2", "y"})), std::invalid_argument);
}

TEST(GroebnerProperties, NormalFormIsWellDefined) {
  auto R = xyz();
  std::mt19937_64 rng(61);
  for (int t = 0; t < 40; ++t) {
    std::vector<Polynomial<QQ>> gens;
    for (int k = 0; k < 3; ++k) {
      std::vector<Term<QQ>> terms;
      for (int j = 0; j < 3; ++j) terms.push_back({gen::random_monomial(R, 2 + k % 2, rng), gen::small_nonzero(R->field(), rng)});
      auto g = Polynomial<QQ>::from_terms(R, terms);
      if (!g.is_zero()) gens.push_back(g);
    }
    if (gens.empty()) continue;
    auto gb = buchberger(gens);
    auto f = gen::random_poly(R, 3, 4, rng), g = gen::random_poly(R, 2, 3, rng), h = gen::random_poly(R, 4, 4, rng);
    ASSERT_EQ(normal_form(f * g + h, gb), normal_form(normal_form(f * g, gb) + normal_form(h, gb), gb));
    for (const auto& x : gens) ASSERT_TRUE(normal_form(x * g, gb).is_zero());
  }
}

TEST(GroebnerProperties, SyzygiesAnnihilateGenerators) {
  auto R = make_ring<FP>({"x", "y", "z"}, FP{});
  std::mt19937_64 rng(62);
  for (int t = 0; t < 25; ++t) {
    int d = 2 + t % 3;
    std::vector<Polynomial<FP>> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(detail::random_form(R, d, rng));
    auto S = syzygies(gens);
    PolyMatrix<FP> row(R, 1, 3);
    for (std::size_t i = 0; i < 3; ++i) row(0, i) = gens[i];
    ASSERT_TRUE((row * S.matrix).is_zero());
    GradedMap<FP> g{S.matrix, S.target_shifts, S.source_shifts};
    ASSERT_TRUE(g.is_graded());
  }
}

TEST(GroebnerProperties, HeightMonotoneUnderInclusion) {
  for (const auto& [name, J] : corpus_jacobians()) {
    int h = height(J);
    auto bigger = J;
    bigger.push_back(J.front().ring()->var("z").pow(static_cast<unsigned>(J.front().degree())));
    EXPECT_LE(h, height(bigger)) << name;
    std::vector<Polynomial<QQ>> smaller(J.begin(), J.begin() + 2);
    EXPECT_LE(height(smaller), h) << name;
  }
}

TEST(GroebnerProperties, RationalAndPrimeHeightsAgreeOnCorpus) {
  HeightOptions exact, reduced;
  exact.authoritative = true;
  for (const auto& [name, J] : corpus_jacobians())
    EXPECT_EQ(certification_height(J, J.front().ring(), exact), certification_height(J, J.front().ring(), reduced))
        << name;
}
