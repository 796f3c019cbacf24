#ifndef LEVELMAT_SELFTEST_HPP
#define LEVELMAT_SELFTEST_HPP

#include <chrono>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "levelmat/level.hpp"
#include "levelmat/matrix.hpp"
#include "levelmat/resolution.hpp"
#include "levelmat/rim.hpp"

namespace levelmat {

/// Outcome of one seeded invariant suite.
struct SuiteResult {
  std::string suite;
  std::string claim;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double seconds = 0;
  std::vector<std::string> notes;  // one entry per failing case

  bool ok() const { return cases > 0 && failures == 0; }
};

namespace gen {

template <class F>
typename F::Elem small_nonzero(const F& k, std::mt19937_64& rng, long long bound = 7) {
  for (;;) {
    auto c = k.random_small(rng, bound);
    if (!k.is_zero(c)) return c;
  }
}

template <class F>
Monomial random_monomial(const RingPtr<F>& ring, int degree, std::mt19937_64& rng) {
  Monomial m;
  std::uniform_int_distribution<std::size_t> pick(0, ring->nvars() - 1);
  for (int e = 0; e < degree; ++e) m = m * Monomial::variable(pick(rng));
  return m;
}

/// Sum of up to `max_terms` terms of degree at most `max_degree`, small coefficients.
template <class F>
Polynomial<F> random_poly(const RingPtr<F>& ring, int max_degree, int max_terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(0, max_terms), deg(0, max_degree);
  std::vector<Term<F>> terms;
  for (int t = nterms(rng); t > 0; --t)
    terms.push_back({random_monomial(ring, deg(rng), rng), small_nonzero(ring->field(), rng)});
  return Polynomial<F>::from_terms(ring, std::move(terms));
}

template <class F>
PolyMatrix<F> random_matrix(const RingPtr<F>& ring, std::size_t r, std::size_t c, std::mt19937_64& rng,
                            int max_degree = 1, int max_terms = 2) {
  PolyMatrix<F> m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_poly(ring, max_degree, max_terms, rng);
  return m;
}

/// u v^t - v u^t for vectors of single-term entries: skew of rank at most 2.
template <class F>
PolyMatrix<F> rank2_skew(const RingPtr<F>& ring, std::size_t n, std::mt19937_64& rng, int max_degree = 2) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  for (;;) {
    std::vector<Polynomial<F>> u, v;
    for (std::size_t i = 0; i < n; ++i) {
      u.push_back(Polynomial<F>::monomial(ring, random_monomial(ring, deg(rng), rng), small_nonzero(ring->field(), rng)));
      v.push_back(Polynomial<F>::monomial(ring, random_monomial(ring, deg(rng), rng), small_nonzero(ring->field(), rng)));
    }
    PolyMatrix<F> m(ring, n, n);
    bool nonzero = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = u[i] * v[j] - v[i] * u[j];
        if (i != j && m(i, j).is_zero()) nonzero = false;
      }
    if (nonzero) return m;
  }
}

}  // namespace gen

namespace detail {

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/// C_p(MN) = C_p(M) C_p(N) on random shapes up to 5 x 5, p = 1..3.
template <class F>
SuiteResult cauchy_binet_suite(const F& field, std::uint64_t seed, std::size_t per_p = 100) {
  detail::Stopwatch clock;
  SuiteResult res{"cauchy-binet (" + field.name() + ")", "compound-multiplicativity", 0, 0, 0, {}};
  auto ring = make_ring<F>({"x", "y", "z"}, field);
  std::mt19937_64 rng(seed);
  for (std::size_t p = 1; p <= 3; ++p) {
    std::uniform_int_distribution<std::size_t> dim(p, 5);
    for (std::size_t t = 0; t < per_p; ++t) {
      auto m = gen::random_matrix(ring, dim(rng), dim(rng), rng);
      auto n = gen::random_matrix(ring, m.cols(), dim(rng), rng);
      ++res.cases;
      if (compound(m * n, p) != compound(m, p) * compound(n, p)) {
        ++res.failures;
        res.notes.push_back("p=" + std::to_string(p) + " case " + std::to_string(t));
      }
    }
  }
  res.seconds = clock.seconds();
  return res;
}

/// Every column of C_2 of a rank-2 skew matrix is a_ij times the vector of all a_kl.
inline SuiteResult rank2_compound_suite(std::uint64_t seed, std::size_t count = 50) {
  detail::Stopwatch clock;
  SuiteResult res{"rank-2 compound", "rank-two-skew-compound", 0, 0, 0, {}};
  auto ring = make_ring<Rationals>({"x", "y", "z"});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(4, 6);
  for (std::size_t t = 0; t < count; ++t) {
    auto m = gen::rank2_skew(ring, size(rng), rng);
    auto rep = verify_rank2_compound(m);
    ++res.cases;
    if (!rep.ok() || rep.rank != 2) {
      ++res.failures;
      res.notes.push_back("case " + std::to_string(t) + (rep.skipped.empty() ? "" : ": " + rep.skipped));
    }
  }
  res.seconds = clock.seconds();
  return res;
}

/// K skew and B K = 0 for the given matrices and `count` random (m-2) x m ones, m <= 6.
template <class F>
SuiteResult k_contract_suite(const F& field, std::uint64_t seed, const std::vector<PolyMatrix<F>>& fixed = {},
                             std::size_t count = 50, KSignRule rule = KSignRule::skew) {
  detail::Stopwatch clock;
  SuiteResult res{"K contract (" + field.name() + ")", "buchsbaum-rim-syzygy", 0, 0, 0, {}};
  auto ring = make_ring<F>({"x", "y", "z"}, field);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(3, 6);
  std::vector<PolyMatrix<F>> all = fixed;
  for (std::size_t t = 0; t < count; ++t) {
    auto m = size(rng);
    all.push_back(gen::random_matrix(ring, m - 2, m, rng));
  }
  for (std::size_t t = 0; t < all.size(); ++t) {
    ++res.cases;
    try {
      auto k = build_K(all[t], rule);
      if (!(k.K + k.K.transpose()).is_zero() || !(all[t] * k.K).is_zero()) throw ContractViolation("unchecked K");
    } catch (const ContractViolation& e) {
      ++res.failures;
      res.notes.push_back("case " + std::to_string(t) + ": " + e.what());
    }
  }
  res.seconds = clock.seconds();
  return res;
}

/// build -> recover for each certified level matrix: the recovered matrix is
/// certified and its fixed-block minors generate the same ideal.
template <class F>
SuiteResult round_trip_suite(const std::vector<std::pair<std::string, LevelMatrix<F>>>& levels,
                             const HeightOptions& opts = {}) {
  detail::Stopwatch clock;
  SuiteResult res{"round trips", "level-resolution-round-trip", 0, 0, 0, {}};
  for (const auto& [label, eta] : levels) {
    ++res.cases;
    auto cx = build_resolution(eta);
    auto p = minors_fixing_lower_block(eta);
    auto back = recover_level_matrix(cx, p, opts);
    bool ok = back.eta.certified() && back.regenerates &&
              ideal_equal(minors_fixing_lower_block(back.eta), p, opts.limits);
    if (!ok) {
      ++res.failures;
      res.notes.push_back(label);
    }
  }
  res.seconds = clock.seconds();
  return res;
}

/// Latent data for which the monomial template is certified level.
inline std::vector<LatentData> monomial_latents() {
  return {{3, 3, {2, 2, 3}, {1}}, {2, 4, {2, 2, 2, 2}, {1, 1}}, {4, 3, {2, 3, 3}, {1}}, {3, 4, {2, 3, 3, 3}, {1, 1}}};
}

}  // namespace levelmat

#endif  // LEVELMAT_SELFTEST_HPP
