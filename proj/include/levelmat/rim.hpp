#ifndef LEVELMAT_RIM_HPP
#define LEVELMAT_RIM_HPP

#include <future>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "levelmat/groebner.hpp"
#include "levelmat/level.hpp"
#include "levelmat/matrix.hpp"

namespace levelmat {

/// Sign rule used to place the complementary minors in K. Only `skew` is
/// correct; `symmetric` (the same sign on both sides of the diagonal) exists
/// so that tests can check the contract catches a sign bug.
enum class KSignRule { skew, symmetric };

/// K for an (m-2) x m matrix B: K[i][j] = (-1)^(i+j) Delta_{i,j} above the
/// diagonal, where Delta_{i,j} is the maximal minor of B without columns i, j.
template <class F>
struct SkewSyzygyMatrix {
  PolyMatrix<F> K;
  PolyMatrix<F> B;
  std::map<std::pair<std::size_t, std::size_t>, Polynomial<F>> delta;  // 0-based i < j

  bool off_diagonal_nonzero() const {
    for (const auto& [ij, d] : delta)
      if (d.is_zero()) return false;
    return true;
  }
};

template <class F>
Polynomial<F> complementary_minor(const PolyMatrix<F>& B, std::size_t i, std::size_t j) {
  IndexSet rows, cols;
  for (std::size_t r = 0; r < B.rows(); ++r) rows.push_back(r);
  for (std::size_t c = 0; c < B.cols(); ++c)
    if (c != i && c != j) cols.push_back(c);
  return determinant(B.submatrix(rows, cols));
}

/// Builds K and checks K + K^t = 0 and B K = 0; a failed check throws
/// ContractViolation.
/// claim: buchsbaum-rim-syzygy
template <class F>
SkewSyzygyMatrix<F> build_K(const PolyMatrix<F>& B, KSignRule rule = KSignRule::skew) {
  const std::size_t m = B.cols();
  if (m < 3 || B.rows() + 2 != m)
    throw std::invalid_argument("build_K needs an (m-2) x m matrix with m >= 3, got " + std::to_string(B.rows()) +
                                " x " + std::to_string(m));
  SkewSyzygyMatrix<F> out{PolyMatrix<F>(B.ring(), m, m), B, {}};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      auto d = complementary_minor(B, i, j);
      out.delta.emplace(std::make_pair(i, j), d);
      auto entry = (i + j) % 2 == 0 ? d : -d;
      out.K(i, j) = entry;
      out.K(j, i) = rule == KSignRule::skew ? -entry : entry;
    }
  if (out.K + out.K.transpose() != PolyMatrix<F>(B.ring(), m, m)) throw ContractViolation("K is not skew-symmetric");
  if (!(B * out.K).is_zero()) throw ContractViolation("B * K != 0");
  return out;
}

struct Rank2CompoundReport {
  bool square = false;
  bool skew = false;
  std::size_t rank = 0;
  bool off_diagonal_nonzero = false;
  std::string skipped;  // why the column checks did not run
  std::vector<std::pair<IndexSet, bool>> columns;

  bool hypotheses() const { return skipped.empty(); }
  bool ok() const {
    if (!hypotheses()) return false;
    for (const auto& c : columns)
      if (!c.second) return false;
    return true;
  }
};

/// For a skew matrix M of rank at most 2 with nonzero off-diagonal entries,
/// checks that the {i,j} column of C_2(M) is a_{ij} times the vector of all
/// a_{kl}, k < l, in lexicographic order.
/// claim: rank-two-skew-compound
template <class F>
Rank2CompoundReport verify_rank2_compound(const PolyMatrix<F>& M, const RankOptions& ropts = {}) {
  Rank2CompoundReport rep;
  rep.square = M.rows() == M.cols() && M.rows() >= 2;
  if (!rep.square) {
    rep.skipped = "not square";
    return rep;
  }
  const std::size_t n = M.rows();
  rep.skew = (M + M.transpose()).is_zero();
  rep.rank = rank_ff(M, ropts);
  rep.off_diagonal_nonzero = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (M(i, j).is_zero()) rep.off_diagonal_nonzero = false;
  if (!rep.skew)
    rep.skipped = "not skew-symmetric";
  else if (rep.rank > 2)
    rep.skipped = "rank > 2";
  else if (!rep.off_diagonal_nonzero)
    rep.skipped = "zero off-diagonal entry";
  if (!rep.hypotheses()) return rep;

  auto pairs = subsets(n, 2);
  auto c2 = compound(M, 2);
  for (std::size_t col = 0; col < pairs.size(); ++col) {
    const auto& ij = pairs[col];
    bool ok = true;
    for (std::size_t row = 0; row < pairs.size() && ok; ++row) {
      const auto& kl = pairs[row];
      ok = c2(row, col) == M(ij[0], ij[1]) * M(kl[0], kl[1]);
    }
    rep.columns.emplace_back(ij, ok);
  }
  return rep;
}

/// Generators of the two sides of I_2(AK) = <p1,p2,p3> I_{m-2}(B).
template <class F>
struct IdentityA {
  std::vector<Polynomial<F>> lhs;  // nonzero 2-minors of A K
  std::vector<Polynomial<F>> rhs;  // nonzero products p_i * Delta
};

/// Also asserts C_2(A K) = C_2(A) C_2(K) exactly.
/// claim: ideal-identities
template <class F>
IdentityA<F> vasconcelos_identity_a(const LevelMatrix<F>& eta) {
  auto k = build_K(eta.B);
  auto ak = eta.A * k.K;
  auto c2 = compound(ak, 2);
  if (c2 != compound(eta.A, 2) * compound(k.K, 2)) throw ContractViolation("C_2(AK) != C_2(A) C_2(K)");
  IdentityA<F> out;
  for (std::size_t i = 0; i < c2.rows(); ++i)
    for (std::size_t j = 0; j < c2.cols(); ++j)
      if (!c2(i, j).is_zero()) out.lhs.push_back(c2(i, j));
  auto p = minors_fixing_lower_block(eta);
  for (const auto& pi : p)
    for (const auto& d : maximal_minors(eta.B)) {
      auto prod = pi * d;
      if (!prod.is_zero()) out.rhs.push_back(std::move(prod));
    }
  return out;
}

template <class F>
bool identity_a_holds(const LevelMatrix<F>& eta, const GroebnerLimits& limits = {}) {
  auto sides = vasconcelos_identity_a(eta);
  return ideal_equal(sides.lhs, sides.rhs, limits);
}

struct ContainmentReport {
  std::size_t checked = 0;
  std::vector<std::pair<std::size_t, std::size_t>> failures;  // (minor of B, minor of eta)
  bool ok() const { return failures.empty(); }
};

/// Checks Delta * q in <p1,p2,p3> for every maximal minor Delta of B and every
/// signed maximal minor q of eta.
/// claim: ideal-identities
template <class F>
ContainmentReport vasconcelos_identity_b(const LevelMatrix<F>& eta, const GroebnerLimits& limits = {}) {
  auto q = signed_maximal_minors(eta.eta());
  std::vector<Polynomial<F>> p(q.begin(), q.begin() + 3), nz;
  for (const auto& g : p)
    if (!g.is_zero()) nz.push_back(g);
  std::optional<GroebnerBasis<F>> gb;
  if (!nz.empty()) gb = buchberger(nz, MonomialOrder::degrevlex, limits);
  auto deltas = maximal_minors(eta.B);
  ContainmentReport rep;
  for (std::size_t a = 0; a < deltas.size(); ++a)
    for (std::size_t b = 0; b < q.size(); ++b) {
      ++rep.checked;
      auto prod = deltas[a] * q[b];
      bool in = gb ? gb->contains(prod) : prod.is_zero();
      if (!in) rep.failures.emplace_back(a, b);
    }
  return rep;
}

/// The three heights whose conditions should hold or fail together:
/// ht I_2(AK) >= 2, ht <p1,p2,p3> = 2, ht I_m(eta) = 2.
struct HeightEquivalence {
  int ht_AK2 = 0;
  int ht_p = 0;
  int ht_eta = 0;

  bool first() const { return ht_AK2 >= 2; }
  bool second() const { return ht_p == 2; }
  bool third() const { return ht_eta == 2; }
  bool consistent() const { return first() == second() && second() == third(); }
};

/// claim: ideal-identities
template <class F>
HeightEquivalence height_equivalences(const LevelMatrix<F>& eta, const HeightOptions& opts = {}) {
  auto k = build_K(eta.B);
  auto ak2 = minors_ideal(eta.A * k.K, 2);
  auto q = signed_maximal_minors(eta.eta());
  std::vector<Polynomial<F>> p(q.begin(), q.begin() + 3);
  const auto& ring = eta.ring();
  HeightEquivalence h;
  if (opts.parallel) {
    auto f1 = std::async(std::launch::async, [&] { return certification_height(ak2, ring, opts); });
    auto f2 = std::async(std::launch::async, [&] { return certification_height(p, ring, opts); });
    h.ht_eta = certification_height(q, ring, opts);
    h.ht_AK2 = f1.get();
    h.ht_p = f2.get();
  } else {
    h.ht_AK2 = certification_height(ak2, ring, opts);
    h.ht_p = certification_height(p, ring, opts);
    h.ht_eta = certification_height(q, ring, opts);
  }
  return h;
}

}  // namespace levelmat

#endif  // LEVELMAT_RIM_HPP
