#include <gtest/gtest.h>

#include "levelmat/corpus.hpp"
#include "levelmat/resolution.hpp"
#include "levelmat/selftest.hpp"

using namespace levelmat;

namespace {

using QQ = Rationals;
using FP = PrimeField;
using Shifts = std::vector<std::vector<int>>;

template <class F>
PolyMatrix<F> mat(const RingPtr<F>& R, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Polynomial<F>>> p;
  for (const auto& r : rows) {
    p.emplace_back();
    for (const auto& e : r) p.back().push_back(parse_poly(R, e));
  }
  return PolyMatrix<F>::from_rows(R, p);
}

LevelMatrix<QQ> cusp2() {
  auto R = make_ring<QQ>({"x", "y", "z"});
  return require_level<QQ>({2, 3, {1, 2, 2}, {1}}, mat(R, {{"y", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}),
                           mat(R, {{"3*x^2", "y", "2*z"}}));
}

template <class F>
ExampleRun<F> example(const std::string& name, long long d, const F& field = F{}) {
  ExampleOptions opts;
  opts.round_trip = false;
  return run_example<F>(load_record(name), {{"d", d}}, field, opts);
}

// N(t) as a coefficient list straight from the shifts, with derivatives at 1
// taken by differentiating the coefficient list term by term.
struct PolyT {
  std::vector<long long> c;
  PolyT derivative() const {
    PolyT d;
    for (std::size_t a = 1; a < c.size(); ++a) d.c.push_back(static_cast<long long>(a) * c[a]);
    return d;
  }
  long long at_one() const {
    long long s = 0;
    for (long long v : c) s += v;
    return s;
  }
};

PolyT numerator_oracle(const Shifts& mods) {
  PolyT n;
  for (std::size_t k = 0; k < mods.size(); ++k)
    for (int a : mods[k]) {
      if (n.c.size() <= static_cast<std::size_t>(a)) n.c.resize(a + 1);
      n.c[a] += k % 2 ? -1 : 1;
    }
  return n;
}

}  // namespace

TEST(ResolutionBuild, CuspidalShifts) {
  auto cx = build_resolution(cusp2());
  EXPECT_EQ(cx.modules, (Shifts{{0}, {2, 2, 2}, {3, 4, 4}, {5}}));
  EXPECT_TRUE(verify_complex(cx).ok());
}

TEST(ResolutionBuild, JnsShifts) {
  auto run = example<QQ>("jns", 3);
  ASSERT_TRUE(run.built);
  EXPECT_EQ(run.built->modules, (Shifts{{0}, {3, 3, 3}, {6, 6, 6, 7}, {8, 8}}));
}

TEST(ResolutionBuild, NodalShifts) {
  auto run = example<QQ>("nodal", 3);
  ASSERT_TRUE(run.built);
  // the latent data the matrix actually carries; the displayed F3 would be (8, 8)
  EXPECT_EQ(run.built->modules, (Shifts{{0}, {3, 3, 3}, {5, 6, 6, 6}, {7, 7}}));
  ASSERT_TRUE(run.resolution && run.resolution->ok());
  EXPECT_EQ(run.resolution->complex->modules, run.built->modules);
}

TEST(ResolutionBuild, UncertifiedInputRejected) {
  auto eta = cusp2();
  eta.certification.ht_eta = 1;
  EXPECT_THROW(build_resolution(eta), LevelError);
}

TEST(ResolutionVerify, UnitEntryBreaksMinimality) {
  auto cx = build_resolution(cusp2());
  auto R = cx.maps[0].matrix.ring();
  cx.maps[1].matrix(0, 0) = R->one();
  auto rep = verify_complex(cx);
  EXPECT_FALSE(rep.minimal);
  EXPECT_FALSE(rep.ok());
}

TEST(ResolutionVerify, PerturbedLastMapBreaksComposition) {
  auto cx = build_resolution(cusp2());
  auto R = cx.maps[0].matrix.ring();
  cx.maps[2].matrix(0, 0) += R->var("x").pow(3);
  auto rep = verify_complex(cx);
  EXPECT_FALSE(rep.compositions_zero);
}

TEST(ResolutionAcyclicity, Cuspidal) {
  auto rep = buchsbaum_eisenbud_check(build_resolution(cusp2()));
  EXPECT_TRUE(rep.acyclic());
  EXPECT_EQ(rep.ranks, (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(rep.heights, (std::vector<int>{2, 2, 3}));
}

TEST(ResolutionAcyclicity, Jns) {
  auto run = example<QQ>("jns", 3);
  auto rep = buchsbaum_eisenbud_check(*run.built);
  EXPECT_TRUE(rep.acyclic());
  EXPECT_EQ(rep.heights[1], 2);
}

TEST(ResolutionAcyclicity, LowHeightBFailsLastTest) {
  // B = [x^2, xy, xz] has I_1(B) of height 1; the complex still composes to zero.
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto eta = cusp2();
  GradedComplex<QQ> cx = build_resolution(eta);
  cx.maps[2].matrix = mat(R, {{"x^2"}, {"x*y"}, {"x*z"}});
  auto rep = buchsbaum_eisenbud_check(cx);
  EXPECT_FALSE(rep.acyclic());
  EXPECT_LT(rep.heights[2], 3);
}

TEST(ResolutionHilbert, CuspidalNumerator) {
  Shifts mods{{0}, {2, 2, 2}, {3, 4, 4}, {5}};
  auto h = hilbert_numerator(mods);
  auto oracle = numerator_oracle(mods);
  EXPECT_EQ(h.coeffs, oracle.c);
  EXPECT_EQ(h.coeffs, (std::vector<long long>{1, 0, -3, 1, 2, -1}));
  EXPECT_EQ(h.value, oracle.at_one());
  EXPECT_EQ(h.first, oracle.derivative().at_one());
  EXPECT_EQ(h.second, oracle.derivative().derivative().at_one());
  EXPECT_EQ(h.value, 0);
  EXPECT_EQ(h.first, 0);
  EXPECT_EQ(h.multiplicity, 2);
  EXPECT_EQ(h.codimension, 2);
  EXPECT_EQ(h.to_string(), "1 - 3t^2 + t^3 + 2t^4 - t^5");
}

TEST(ResolutionHilbert, CounterexampleShiftsVanish) {
  auto h = hilbert_numerator(Shifts{{0}, {2, 2, 2}, {4, 4, 4, 5}, {5, 6}});
  EXPECT_EQ(h.value, 0);
  EXPECT_EQ(h.first, 0);
  EXPECT_EQ(h.multiplicity, 0);
}

TEST(ResolutionHilbert, KoszulMultiplicityOne) {
  auto h = hilbert_numerator(Shifts{{0}, {1, 1}, {2}});
  EXPECT_EQ(h.multiplicity, 1);
  EXPECT_EQ(h.codimension, 2);
}

TEST(ResolutionResolve, CuspidalJacobian) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto res = resolve_3generated(jacobian_ideal(parse_poly(R, "x^3 + y^2*z")));
  ASSERT_TRUE(res.ok()) << res.failure;
  EXPECT_EQ(res.complex->modules, (Shifts{{0}, {2, 2, 2}, {3, 4, 4}, {5}}));
  EXPECT_EQ(res.height, 2);
  EXPECT_EQ(res.homological_dimension, 2);
  EXPECT_TRUE(verify_complex(*res.complex).ok());
}

TEST(ResolutionResolve, NearlyFreeJacobian) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto res = resolve_3generated(jacobian_ideal(parse_poly(R, "x*(x*y*(x+y)+z^3)")));
  ASSERT_TRUE(res.ok()) << res.failure;
  EXPECT_EQ(res.complex->modules, (Shifts{{0}, {3, 3, 3}, {5, 5, 6}, {7}}));
}

TEST(ResolutionResolve, PerfectIdealRejected) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto res = resolve_3generated(std::vector<Polynomial<QQ>>{parse_poly(R, "x^2"), parse_poly(R, "y^2"),
                                                            parse_poly(R, "x*y")});
  EXPECT_FALSE(res.ok());
  EXPECT_EQ(res.homological_dimension, 1);
  EXPECT_THROW(resolve_3generated(std::vector<Polynomial<QQ>>{parse_poly(R, "x"), parse_poly(R, "y"),
                                                              parse_poly(R, "x+y")}),
               std::invalid_argument);
}

TEST(ResolutionRecover, CuspidalResolutionRegenerates) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto J = jacobian_ideal(parse_poly(R, "x^3 + y^2*z"));
  auto res = resolve_3generated(J);
  ASSERT_TRUE(res.ok());
  auto back = recover_level_matrix(*res.complex, J);
  EXPECT_TRUE(back.eta.certified());
  EXPECT_TRUE(back.regenerates);
  EXPECT_TRUE(ideal_equal(minors_fixing_lower_block(back.eta), J));
}

TEST(ResolutionRecover, WrongShapeRejected) {
  auto R = make_ring<QQ>({"x", "y", "z"});
  auto res = resolve_3generated(std::vector<Polynomial<QQ>>{parse_poly(R, "x^2"), parse_poly(R, "y^2"),
                                                            parse_poly(R, "x*y")});
  ASSERT_TRUE(res.complex);
  EXPECT_THROW(recover_level_matrix(*res.complex, {}), std::invalid_argument);
}

TEST(ResolutionProperties, RoundTripOnEveryCorpusLevel) {
  std::vector<std::pair<std::string, LevelMatrix<FP>>> levels = corpus_levels<FP>(FP{});
  for (const auto& L : monomial_latents()) levels.emplace_back("monomial", monomial_level<FP>(L));
  auto res = round_trip_suite(levels);
  EXPECT_TRUE(res.ok());
  EXPECT_GE(res.cases, 10u);
}

TEST(ResolutionProperties, VerifiedResolutionsSatisfyShiftIdentities) {
  for (const auto& name : {"cuspidal", "jns", "nodal", "xyzf-fermat", "xyz-special", "nearly-free-counterexample"}) {
    auto rec = load_record(name);
    auto params = rec.resolve_params({});
    auto run = run_example<FP>(rec, params, FP{}, {});
    ASSERT_TRUE(run.resolution && run.resolution->ok()) << name;
    const auto& cx = *run.resolution->complex;
    auto h = hilbert_numerator(cx);
    EXPECT_EQ(h.value, 0) << name;
    EXPECT_EQ(h.first, 0) << name;
    EXPECT_GE(h.multiplicity, 1) << name;
    const auto& L = *run.resolution->latent->latent;
    EXPECT_TRUE(validate_latent(L).valid()) << name;
    EXPECT_LE(L.delta[2], L.d) << name;
    for (std::size_t j = 0; j < L.epsilon.size(); ++j) {
      EXPECT_GE(L.epsilon[j], 1) << name;
      EXPECT_EQ(cx.modules[3][j], L.d + L.delta[j + 2] + L.epsilon[j]) << name;
    }
    EXPECT_TRUE(shift_relation_matches_derivative(L)) << name;
  }
}
