#ifndef LEVELMAT_MATRIX_HPP
#define LEVELMAT_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "levelmat/polynomial.hpp"

namespace levelmat {

/// A certified postcondition failed; indicates a bug, never returned silently.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using IndexSet = std::vector<std::size_t>;

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<IndexSet> subsets(std::size_t n, std::size_t k) {
  std::vector<IndexSet> out;
  if (k > n) return out;
  IndexSet cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// Dense matrix of polynomials over one ring.
template <class F>
class PolyMatrix {
 public:
  using Poly = Polynomial<F>;

  PolyMatrix() = default;
  PolyMatrix(RingPtr<F> ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, ring_->zero()) {}

  static PolyMatrix identity(const RingPtr<F>& ring, std::size_t n) {
    PolyMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ring->one();
    return m;
  }

  static PolyMatrix from_rows(const RingPtr<F>& ring, const std::vector<std::vector<Poly>>& rows) {
    if (rows.empty() || rows.front().empty()) throw std::invalid_argument("matrix must have at least one entry");
    PolyMatrix m(ring, rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) {
        rows[i][j].check_ring(ring->zero());
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }

  const RingPtr<F>& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Poly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Poly& p) { return p.is_zero(); });
  }

  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

  PolyMatrix operator*(const PolyMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    PolyMatrix r(ring_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Poly& a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
      }
    return r;
  }

  PolyMatrix operator+(const PolyMatrix& o) const { return zip(o, false); }
  PolyMatrix operator-(const PolyMatrix& o) const { return zip(o, true); }

  PolyMatrix scale(const Poly& c) const {
    PolyMatrix r = *this;
    for (auto& e : r.entries_) e = e * c;
    return r;
  }

  PolyMatrix transpose() const {
    PolyMatrix r(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  PolyMatrix submatrix(const IndexSet& rs, const IndexSet& cs) const {
    PolyMatrix r(ring_, rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) r(i, j) = (*this)(rs[i], cs[j]);
    return r;
  }

  PolyMatrix row_block(std::size_t first, std::size_t count) const {
    IndexSet rs(count), cs(cols_);
    for (std::size_t i = 0; i < count; ++i) rs[i] = first + i;
    for (std::size_t j = 0; j < cols_; ++j) cs[j] = j;
    return submatrix(rs, cs);
  }

  /// Stacks this matrix above o.
  PolyMatrix vstack(const PolyMatrix& o) const {
    if (cols_ != o.cols_) throw std::invalid_argument("vstack column mismatch");
    PolyMatrix r(ring_, rows_ + o.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < o.rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(rows_ + i, j) = o(i, j);
    return r;
  }

  std::vector<Poly> column(std::size_t j) const {
    std::vector<Poly> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  std::vector<Poly> row(std::size_t i) const {
    return std::vector<Poly>(entries_.begin() + i * cols_, entries_.begin() + (i + 1) * cols_);
  }

 private:
  PolyMatrix zip(const PolyMatrix& o, bool subtract) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    PolyMatrix r(ring_, rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
      r.entries_[k] = subtract ? entries_[k] - o.entries_[k] : entries_[k] + o.entries_[k];
    return r;
  }

  RingPtr<F> ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> entries_;
};

/// Matrix with graded bookkeeping: a map of free modules
/// sum R(-source_shifts[j]) -> sum R(-target_shifts[i]) acting on columns.
template <class F>
struct GradedMap {
  PolyMatrix<F> matrix;
  std::vector<int> target_shifts;
  std::vector<int> source_shifts;

  /// Entries (i,j) that are neither zero nor homogeneous of degree b_j - a_i.
  std::vector<std::pair<std::size_t, std::size_t>> degree_violations() const {
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    if (target_shifts.size() != matrix.rows() || source_shifts.size() != matrix.cols()) {
      bad.emplace_back(matrix.rows(), matrix.cols());
      return bad;
    }
    for (std::size_t i = 0; i < matrix.rows(); ++i)
      for (std::size_t j = 0; j < matrix.cols(); ++j)
        if (!matrix(i, j).is_homogeneous_of(source_shifts[j] - target_shifts[i])) bad.emplace_back(i, j);
    return bad;
  }
  bool is_graded() const { return degree_violations().empty(); }
};

namespace detail {

inline void check_index_set(const IndexSet& s, std::size_t bound) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= bound) throw std::out_of_range("matrix index out of range");
    if (i > 0 && s[i] <= s[i - 1]) throw std::invalid_argument("index set must be strictly increasing");
  }
}

}  // namespace detail

/// Determinant by cofactor expansion along row `along`.
template <class F>
Polynomial<F> determinant_laplace(const PolyMatrix<F>& m, std::size_t along = 0) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return m.ring()->one();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  IndexSet rows;
  for (std::size_t i = 0; i < n; ++i)
    if (i != along) rows.push_back(i);
  Polynomial<F> acc = m.ring()->zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (m(along, j).is_zero()) continue;
    IndexSet cols;
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    auto sub = determinant_laplace(m.submatrix(rows, cols), 0);
    auto term = m(along, j) * sub;
    acc = ((along + j) % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

/// Fraction-free Bareiss elimination with row pivoting; every division is exact.
template <class F>
Polynomial<F> determinant_bareiss(PolyMatrix<F> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return m.ring()->one();
  Polynomial<F> prev = m.ring()->one();
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      // pick the shortest nonzero pivot below for cheaper arithmetic
      std::size_t best = n;
      for (std::size_t r = k + 1; r < n; ++r)
        if (!m(r, k).is_zero() && (best == n || m(r, k).size() < m(best, k).size())) best = r;
      if (best == n) return m.ring()->zero();
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(best, c));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        auto num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = prev.is_constant() ? num.scale(prev.field().inv(prev.constant_value()))
                                     : divide_exact(num, prev);
      }
      m(i, k) = m.ring()->zero();
    }
    prev = m(k, k);
  }
  auto det = m(n - 1, n - 1);
  return negate ? -det : det;
}

/// Cofactor expansion up to 4x4, Bareiss above.
template <class F>
Polynomial<F> determinant(const PolyMatrix<F>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  return m.rows() <= 4 ? determinant_laplace(m) : determinant_bareiss(m);
}

/// claim: level-minors-resolution
template <class F>
Polynomial<F> minor(const PolyMatrix<F>& m, const IndexSet& rows, const IndexSet& cols) {
  if (rows.size() != cols.size()) throw std::invalid_argument("minor needs as many rows as columns");
  if (rows.size() > std::min(m.rows(), m.cols())) throw std::invalid_argument("minor larger than the matrix");
  detail::check_index_set(rows, m.rows());
  detail::check_index_set(cols, m.cols());
  return determinant(m.submatrix(rows, cols));
}

/// p_i = (-1)^(i+1) det(M without row i) for an (c+1) x c matrix; the row
/// vector [p_1 .. p_{c+1}] annihilates M, which is checked before returning.
/// claim: level-minors-resolution
template <class F>
std::vector<Polynomial<F>> signed_maximal_minors(const PolyMatrix<F>& m) {
  if (m.rows() != m.cols() + 1) throw std::invalid_argument("signed maximal minors need an (c+1) x c matrix");
  std::vector<Polynomial<F>> p;
  IndexSet cols(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) cols[j] = j;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    IndexSet rows;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != i) rows.push_back(r);
    auto d = determinant(m.submatrix(rows, cols));
    p.push_back(i % 2 == 0 ? d : -d);
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto acc = m.ring()->zero();
    for (std::size_t i = 0; i < m.rows(); ++i) acc += p[i] * m(i, j);
    if (!acc.is_zero()) throw ContractViolation("signed maximal minors do not annihilate the matrix");
  }
  return p;
}

/// p-th compound: all p-minors, row and column index sets in lexicographic order.
/// claim: compound-multiplicativity
template <class F>
PolyMatrix<F> compound(const PolyMatrix<F>& m, std::size_t p) {
  if (p < 1 || p > std::min(m.rows(), m.cols())) throw std::invalid_argument("compound order out of range");
  auto rsets = subsets(m.rows(), p);
  auto csets = subsets(m.cols(), p);
  PolyMatrix<F> c(m.ring(), rsets.size(), csets.size());
  for (std::size_t i = 0; i < rsets.size(); ++i)
    for (std::size_t j = 0; j < csets.size(); ++j) c(i, j) = determinant(m.submatrix(rsets[i], csets[j]));
  return c;
}

/// Nonzero r-minors of m (the generators of I_r(m)).
template <class F>
std::vector<Polynomial<F>> minors_ideal(const PolyMatrix<F>& m, std::size_t r) {
  std::vector<Polynomial<F>> gens;
  if (r == 0) {
    gens.push_back(m.ring()->one());
    return gens;
  }
  if (r > std::min(m.rows(), m.cols())) return gens;
  for (const auto& rs : subsets(m.rows(), r))
    for (const auto& cs : subsets(m.cols(), r)) {
      auto d = determinant(m.submatrix(rs, cs));
      if (!d.is_zero()) gens.push_back(std::move(d));
    }
  return gens;
}

/// Classical adjoint; certifies M * adj(M) = det(M) * I.
/// claim: ideal-identities
template <class F>
PolyMatrix<F> adjugate(const PolyMatrix<F>& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("adjugate of a non-square matrix");
  PolyMatrix<F> adj(m.ring(), n, n);
  if (n == 1) {
    adj(0, 0) = m.ring()->one();
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        IndexSet rs, cs;
        for (std::size_t r = 0; r < n; ++r)
          if (r != j) rs.push_back(r);
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) cs.push_back(c);
        auto d = determinant(m.submatrix(rs, cs));
        adj(i, j) = ((i + j) % 2 == 0) ? d : -d;
      }
  }
  auto det = determinant(m);
  if (m * adj != PolyMatrix<F>::identity(m.ring(), n).scale(det))
    throw ContractViolation("M * adj(M) != det(M) * I");
  return adj;
}

struct RankOptions {
  unsigned trials = 5;
  std::uint64_t seed = 0x5eed;
};

namespace detail {

template <class F>
std::size_t numeric_rank(const F& k, std::vector<std::vector<typename F::Elem>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (!k.is_zero(a[r][c])) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    auto inv = k.inv(a[rank][c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (k.is_zero(a[r][c])) continue;
      auto f = k.mul(a[r][c], inv);
      for (std::size_t j = c; j < cols; ++j) a[r][j] = k.sub(a[r][j], k.mul(f, a[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Rank over the fraction field by fraction-free elimination on the
/// polynomial entries. Deterministic.
template <class F>
std::size_t rank_symbolic(PolyMatrix<F> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rank = 0;
  Polynomial<F> prev = m.ring()->one();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (!m(r, c).is_zero() && (piv == rows || m(r, c).size() < m(piv, c).size())) piv = r;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(rank, j));
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        auto num = m(r, j) * m(rank, c) - m(r, c) * m(rank, j);
        m(r, j) = divide_exact(num, prev);
      }
      m(r, c) = m.ring()->zero();
    }
    prev = m(rank, c);
    ++rank;
  }
  return rank;
}

/// Rank over Frac(R): maximum rank over random nonzero evaluation points; if
/// the trials disagree the symbolic elimination decides.
/// claim: acyclicity-criterion
template <class F>
std::size_t rank_ff(const PolyMatrix<F>& m, const RankOptions& opts = {}) {
  if (m.is_zero()) return 0;
  const F& k = m.ring()->field();
  std::mt19937_64 rng(opts.seed);
  std::size_t best = 0;
  bool disagree = false;
  for (unsigned t = 0; t < std::max(1u, opts.trials); ++t) {
    std::vector<typename F::Elem> point;
    for (std::size_t v = 0; v < m.ring()->nvars(); ++v) point.push_back(k.random_nonzero(rng));
    std::vector<std::vector<typename F::Elem>> a(m.rows(), std::vector<typename F::Elem>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).evaluate(point);
    std::size_t r = detail::numeric_rank(k, std::move(a));
    if (t > 0 && r != best) disagree = true;
    best = std::max(best, r);
  }
  if (disagree) return rank_symbolic(m);
  return best;
}

}  // namespace levelmat

#endif  // LEVELMAT_MATRIX_HPP
