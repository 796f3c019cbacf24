#ifndef LEVELMAT_LEVEL_HPP
#define LEVELMAT_LEVEL_HPP

#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "levelmat/groebner.hpp"
#include "levelmat/latent.hpp"
#include "levelmat/matrix.hpp"

namespace levelmat {

/// One entry of A or B that breaks the degree rule.
struct ShapeFailure {
  char block;  // 'A' or 'B'
  std::size_t row;
  std::size_t col;
  int expected;  // required degree; -1 when the entry must be zero
  std::string found;
};

struct ShapeReport {
  std::size_t checked = 0;
  std::vector<ShapeFailure> failures;
  bool ok() const { return failures.empty(); }
};

namespace detail {

template <class F>
std::string degree_description(const Polynomial<F>& p) {
  if (p.is_zero()) return "zero";
  auto h = p.homogeneity();
  if (!h.homogeneous) return "not homogeneous";
  return "degree " + std::to_string(*h.degree);
}

template <class F>
void check_entry(ShapeReport& rep, char block, std::size_t i, std::size_t j, const Polynomial<F>& p, int rule,
                 bool zero_when_nonpositive) {
  ++rep.checked;
  bool must_vanish = zero_when_nonpositive ? rule <= 0 : rule < 0;
  if (must_vanish) {
    if (!p.is_zero()) rep.failures.push_back({block, i, j, -1, degree_description(p)});
    return;
  }
  if (!p.is_homogeneous_of(rule)) rep.failures.push_back({block, i, j, rule, degree_description(p)});
}

}  // namespace detail

/// Entry-wise check of the degree rules: A(i,j) has degree d - delta_j (zero
/// when negative), B(i,j) has degree delta_{i+2} - delta_j + epsilon_i (zero
/// when not positive).
/// claim: level-matrix-definition
template <class F>
ShapeReport check_degree_shape(const LatentData& latent, const PolyMatrix<F>& A, const PolyMatrix<F>& B) {
  const auto m = static_cast<std::size_t>(latent.m);
  if (latent.m < 3 || latent.delta.size() != m || latent.epsilon.size() + 2 != m)
    throw std::invalid_argument("latent data has inconsistent lengths");
  if (A.rows() != 3 || A.cols() != m)
    throw std::invalid_argument("A must be 3 x " + std::to_string(m) + ", got " + std::to_string(A.rows()) + " x " +
                                std::to_string(A.cols()));
  if (B.rows() != m - 2 || B.cols() != m)
    throw std::invalid_argument("B must be " + std::to_string(m - 2) + " x " + std::to_string(m) + ", got " +
                                std::to_string(B.rows()) + " x " + std::to_string(B.cols()));
  if (!A.ring()->same_as(*B.ring())) throw RingMismatch("A and B live over different rings");
  ShapeReport rep;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < m; ++j) detail::check_entry(rep, 'A', i, j, A(i, j), latent.a_degree(j), false);
  for (std::size_t i = 0; i + 2 < m; ++i)
    for (std::size_t j = 0; j < m; ++j) detail::check_entry(rep, 'B', i, j, B(i, j), latent.b_degree(i, j), true);
  return rep;
}

/// What has been verified about a candidate level matrix.
struct Certification {
  bool shape = false;
  std::optional<int> ht_eta;  // height of the ideal of maximal minors of eta
  std::optional<int> ht_B;    // height of the ideal of maximal minors of B
  std::string field;          // where the heights were computed

  bool level() const { return shape && ht_eta == 2 && ht_B == 3; }
};

/// eta = [A over B] with its latent data and certification record.
template <class F>
struct LevelMatrix {
  LatentData latent;
  PolyMatrix<F> A;
  PolyMatrix<F> B;
  Certification certification;
  ShapeReport shape;

  const RingPtr<F>& ring() const { return A.ring(); }
  PolyMatrix<F> eta() const { return A.vstack(B); }
  bool certified() const { return certification.level(); }

  /// Human-readable reason when certification failed; empty otherwise.
  std::string failure() const {
    const auto& c = certification;
    if (!c.shape) return "degree shape check failed at " + std::to_string(shape.failures.size()) + " entries";
    std::string why;
    if (c.ht_eta != 2) why += "ht I_m(eta) = " + (c.ht_eta ? std::to_string(*c.ht_eta) : "?") + " (need 2)";
    if (c.ht_B != 3) {
      if (!why.empty()) why += "; ";
      why += "ht I_{m-2}(B) = " + (c.ht_B ? std::to_string(*c.ht_B) : "?") + " (need 3)";
    }
    return why;
  }
};

class LevelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
std::vector<Polynomial<F>> maximal_minors(const PolyMatrix<F>& m) {
  return minors_ideal(m, std::min(m.rows(), m.cols()));
}

/// Runs the shape check and, if it passes, both height computations
/// (concurrently when allowed). Never throws on a mathematical failure; the
/// result's certification record says what held.
/// claim: level-matrix-definition
template <class F>
LevelMatrix<F> certify_level(const LatentData& latent, const PolyMatrix<F>& A, const PolyMatrix<F>& B,
                             const HeightOptions& opts = {}) {
  LevelMatrix<F> out{latent, A, B, {}, check_degree_shape(latent, A, B)};
  out.certification.shape = out.shape.ok();
  out.certification.field = height_field_name(A.ring()->field(), opts);
  if (!out.certification.shape) return out;
  const RingPtr<F>& ring = A.ring();
  auto eta_minors = signed_maximal_minors(out.eta());
  auto b_minors = maximal_minors(B);
  if (opts.parallel) {
    auto f1 = std::async(std::launch::async, [&] { return certification_height(eta_minors, ring, opts); });
    int hb = certification_height(b_minors, ring, opts);
    out.certification.ht_eta = f1.get();
    out.certification.ht_B = hb;
  } else {
    out.certification.ht_eta = certification_height(eta_minors, ring, opts);
    out.certification.ht_B = certification_height(b_minors, ring, opts);
  }
  return out;
}

/// As certify_level, but throws LevelError unless the matrix is level.
template <class F>
LevelMatrix<F> require_level(const LatentData& latent, const PolyMatrix<F>& A, const PolyMatrix<F>& B,
                             const HeightOptions& opts = {}) {
  auto eta = certify_level(latent, A, B, opts);
  if (!eta.certified()) throw LevelError("not a level matrix: " + eta.failure());
  return eta;
}

/// The monomial construction over k[x,y,z]: A bidiagonal in x, y on the first
/// three columns; B banded with z, y, x steps and a wrap-around x in the last
/// row. For m = 3 the single row of B is [x^b11, z^b12, y^b13].
/// claim: monomial-level-matrix
template <class F>
LevelMatrix<F> monomial_level(const LatentData& latent, const F& field = F{}, const HeightOptions& opts = {}) {
  auto report = validate_latent(latent);
  if (!report.valid()) throw std::invalid_argument("invalid latent data");
  const auto m = static_cast<std::size_t>(latent.m);
  for (std::size_t i = 0; i + 3 < m; ++i)
    if (latent.b_degree(i, i + 3) <= 0)
      throw std::invalid_argument("monomial construction needs delta_" + std::to_string(i + 3) + " - delta_" +
                                  std::to_string(i + 4) + " + epsilon_" + std::to_string(i + 1) + " > 0");
  auto ring = make_ring<F>({"x", "y", "z"}, field);
  auto power = [&](std::size_t var, int e, const char* what) {
    if (e < 0) throw std::invalid_argument(std::string("negative exponent in ") + what);
    return Polynomial<F>::monomial(ring, Monomial::variable(var, static_cast<unsigned>(e)), field.one());
  };
  constexpr std::size_t X = 0, Y = 1, Z = 2;
  PolyMatrix<F> A(ring, 3, m), B(ring, m - 2, m);
  A(0, 0) = power(X, latent.a_degree(0), "A");
  A(1, 0) = power(Y, latent.a_degree(0), "A");
  A(1, 1) = power(X, latent.a_degree(1), "A");
  A(2, 1) = power(Y, latent.a_degree(1), "A");
  A(2, 2) = power(X, latent.a_degree(2), "A");
  for (std::size_t i = 0; i + 3 < m; ++i) {
    B(i, i + 1) = power(Z, latent.b_degree(i, i + 1), "B");
    B(i, i + 2) = power(Y, latent.b_degree(i, i + 2), "B");
    B(i, i + 3) = power(X, latent.b_degree(i, i + 3), "B");
  }
  const std::size_t last = m - 3;
  B(last, 0) = power(X, latent.b_degree(last, 0), "B");
  B(last, m - 2) = power(Z, latent.b_degree(last, m - 2), "B");
  B(last, m - 1) = power(Y, latent.b_degree(last, m - 1), "B");
  return certify_level(latent, A, B, opts);
}

/// Level matrix whose upper block is the 3x3 identity in columns u..u+2
/// (1-based u) and zero elsewhere. Requires delta_u = delta_{u+1} =
/// delta_{u+2} = d and checks that the minors of B without those columns
/// have height at least 2 before certifying.
/// claim: identity-block-embedding
template <class F>
LevelMatrix<F> embed_identity_level(const PolyMatrix<F>& B, const LatentData& latent, std::size_t u,
                                    const HeightOptions& opts = {}) {
  const auto m = static_cast<std::size_t>(latent.m);
  if (u < 1 || u + 2 > m) throw std::invalid_argument("identity block position out of range");
  for (std::size_t j = u - 1; j < u + 2; ++j)
    if (latent.delta[j] != latent.d)
      throw std::invalid_argument("identity block needs delta_" + std::to_string(j + 1) + " = d");
  if (B.rows() + 2 != m || B.cols() != m) throw std::invalid_argument("B has the wrong shape for the latent data");
  PolyMatrix<F> A(B.ring(), 3, m);
  for (std::size_t i = 0; i < 3; ++i) A(i, u - 1 + i) = B.ring()->one();

  IndexSet rest, rows;
  for (std::size_t j = 0; j < m; ++j)
    if (j + 1 < u || j + 1 > u + 2) rest.push_back(j);
  for (std::size_t i = 0; i < B.rows(); ++i) rows.push_back(i);
  auto complement = B.submatrix(rows, rest);
  int h = certification_height(minors_ideal(complement, m - 3), B.ring(), opts);
  if (h < 2)
    throw LevelError("minors of B off the identity columns have height " + std::to_string(h) + " < 2");
  return require_level(latent, A, B, opts);
}

/// (p1, p2, p3): the signed maximal minors of eta that keep all rows of B.
/// claim: level-minors-resolution
template <class F>
std::vector<Polynomial<F>> minors_fixing_lower_block(const LevelMatrix<F>& eta) {
  auto p = signed_maximal_minors(eta.eta());
  p.resize(3);
  return p;
}

/// The identity [p1 p2 p3] A = -[p4 .. p_{m+1}] B.
template <class F>
bool minors_split_identity(const LevelMatrix<F>& eta) {
  auto p = signed_maximal_minors(eta.eta());
  const auto& ring = eta.ring();
  PolyMatrix<F> top(ring, 1, 3), bottom(ring, 1, p.size() - 3);
  for (std::size_t i = 0; i < 3; ++i) top(0, i) = p[i];
  for (std::size_t i = 3; i < p.size(); ++i) bottom(0, i - 3) = p[i];
  return top * eta.A == (bottom * eta.B).scale(ring->constant(-1LL));
}

}  // namespace levelmat

#endif  // LEVELMAT_LEVEL_HPP
