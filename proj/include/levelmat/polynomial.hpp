#ifndef LEVELMAT_POLYNOMIAL_HPP
#define LEVELMAT_POLYNOMIAL_HPP

#include <algorithm>
#include <climits>
#include <cstddef>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "levelmat/field.hpp"
#include "levelmat/monomial.hpp"

namespace levelmat {

/// Operands live in different polynomial rings.
class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Degree reported for the zero polynomial.
inline constexpr int kMinusInfinity = INT_MIN;

template <class F>
class Polynomial;

/// Standard graded polynomial ring k[x_1..x_n] over the field F.
template <class F>
class PolyRing : public std::enable_shared_from_this<PolyRing<F>> {
 public:
  using Field = F;
  using Elem = typename F::Elem;

  PolyRing(std::vector<std::string> vars, F field) : vars_(std::move(vars)), field_(std::move(field)) {
    if (vars_.empty()) throw std::invalid_argument("a polynomial ring needs at least one variable");
    if (vars_.size() > kMaxVariables)
      throw std::invalid_argument("at most " + std::to_string(kMaxVariables) + " variables supported");
    static const std::regex kName("[A-Za-z][A-Za-z0-9_]*");
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (!std::regex_match(vars_[i], kName))
        throw std::invalid_argument("invalid variable name '" + vars_[i] + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (vars_[i] == vars_[j]) throw std::invalid_argument("duplicate variable '" + vars_[i] + "'");
    }
  }

  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& variables() const { return vars_; }
  const F& field() const { return field_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }

  bool same_as(const PolyRing& o) const {
    return this == &o || (vars_ == o.vars_ && field_ == o.field_);
  }

  Polynomial<F> zero() const { return Polynomial<F>(this->shared_from_this()); }
  Polynomial<F> one() const { return constant(field_.one()); }
  Polynomial<F> constant(const Elem& c) const {
    return Polynomial<F>::monomial(this->shared_from_this(), Monomial{}, c);
  }
  Polynomial<F> constant(long long c) const { return constant(field_.from_int(c)); }
  Polynomial<F> constant(int c) const { return constant(static_cast<long long>(c)); }
  Polynomial<F> var(std::size_t i) const {
    if (i >= nvars()) throw std::out_of_range("variable index out of range");
    return Polynomial<F>::monomial(this->shared_from_this(), Monomial::variable(i), field_.one());
  }
  Polynomial<F> var(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw std::invalid_argument("unknown variable '" + name + "'");
    return var(*i);
  }

 private:
  std::vector<std::string> vars_;
  F field_;
};

template <class F>
using RingPtr = std::shared_ptr<const PolyRing<F>>;

template <class F>
RingPtr<F> make_ring(std::vector<std::string> vars, F field = F{}) {
  return std::make_shared<const PolyRing<F>>(std::move(vars), std::move(field));
}

template <class F>
struct Term {
  Monomial mono;
  typename F::Elem coeff;
};

/// Result of a homogeneity query. The zero polynomial is homogeneous of every
/// degree, reported as homogeneous with no degree.
struct Homogeneity {
  bool homogeneous = false;
  std::optional<int> degree;
  bool indeterminate() const { return homogeneous && !degree; }
};

/// Sparse polynomial; terms are kept strictly decreasing in degrevlex with no
/// zero coefficients.
template <class F>
class Polynomial {
 public:
  using Elem = typename F::Elem;
  using TermT = Term<F>;

  Polynomial() = default;
  explicit Polynomial(RingPtr<F> ring) : ring_(std::move(ring)) {}

  static Polynomial monomial(RingPtr<F> ring, const Monomial& m, const Elem& c) {
    Polynomial p(std::move(ring));
    if (!p.field().is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }

  /// Builds a polynomial from arbitrary terms, merging duplicates.
  static Polynomial from_terms(RingPtr<F> ring, std::vector<TermT> terms) {
    Polynomial p(std::move(ring));
    std::sort(terms.begin(), terms.end(),
              [](const TermT& a, const TermT& b) { return compare_degrevlex(a.mono, b.mono) > 0; });
    const F& k = p.field();
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff = k.add(p.terms_.back().coeff, t.coeff);
      } else {
        if (!p.terms_.empty() && k.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && k.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
    return p;
  }

  /// Terms already sorted and nonzero; no checking beyond debug builds.
  static Polynomial from_sorted_terms(RingPtr<F> ring, std::vector<TermT> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const F& field() const { return ring_->field(); }
  const std::vector<TermT>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    if (terms_.empty()) return kMinusInfinity;
    return terms_.front().mono.degree();  // degrevlex is graded
  }

  const TermT& leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.front();
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Elem constant_value() const {
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms_.empty() ? field().zero() : terms_[0].coeff;
  }

  /// claim: homogeneous-forms
  Homogeneity homogeneity() const {
    Homogeneity h;
    if (terms_.empty()) {
      h.homogeneous = true;
      return h;
    }
    int d = terms_.front().mono.degree();
    for (const auto& t : terms_)
      if (t.mono.degree() != d) return h;
    h.homogeneous = true;
    h.degree = d;
    return h;
  }

  /// True when zero or homogeneous of degree e.
  bool is_homogeneous_of(int e) const {
    auto h = homogeneity();
    return h.homogeneous && (!h.degree || *h.degree == e);
  }

  Polynomial operator+(const Polynomial& o) const { return combine(o, false); }
  Polynomial operator-(const Polynomial& o) const { return combine(o, true); }
  Polynomial operator-() const {
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono, field().neg(t.coeff)});
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    check_ring(o);
    if (is_zero() || o.is_zero()) return Polynomial(ring_);
    if (terms_.size() == 1) return o.mul_term(terms_[0].mono, terms_[0].coeff);
    if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coeff);
    const F& k = field();
    std::unordered_map<Monomial, Elem, MonomialHash> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_) {
      for (const auto& b : o.terms_) {
        Monomial m = a.mono * b.mono;
        auto prod = k.mul(a.coeff, b.coeff);
        auto it = acc.find(m);
        if (it == acc.end())
          acc.emplace(m, std::move(prod));
        else
          it->second = k.add(it->second, prod);
      }
    }
    std::vector<TermT> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!k.is_zero(c)) out.push_back({m, std::move(c)});
    std::sort(out.begin(), out.end(),
              [](const TermT& x, const TermT& y) { return compare_degrevlex(x.mono, y.mono) > 0; });
    return from_sorted_terms(ring_, std::move(out));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scale(const Elem& c) const {
    if (field().is_zero(c)) return Polynomial(ring_);
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono, field().mul(t.coeff, c)});
    return r;
  }

  Polynomial mul_term(const Monomial& m, const Elem& c) const {
    if (field().is_zero(c)) return Polynomial(ring_);
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      auto prod = field().mul(t.coeff, c);
      if (!field().is_zero(prod)) r.terms_.push_back({t.mono * m, std::move(prod)});
    }
    return r;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = ring_->one();
    Polynomial base = *this;
    while (k) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return result;
  }

  /// claim: jacobian-ideal
  Polynomial derivative(std::size_t var) const {
    if (var >= ring_->nvars()) throw std::out_of_range("variable index out of range");
    std::vector<TermT> out;
    for (const auto& t : terms_) {
      std::uint32_t e = t.mono[var];
      if (e == 0) continue;
      auto c = field().scale(t.coeff, e);
      if (field().is_zero(c)) continue;  // characteristic divides the exponent
      Monomial m = t.mono;
      m.set(var, e - 1);
      out.push_back({m, c});
    }
    // lowering one exponent can reorder terms, so canonicalize
    return from_terms(ring_, std::move(out));
  }

  Polynomial derivative(const std::string& name) const {
    auto i = ring_->index_of(name);
    if (!i) throw std::invalid_argument("unknown variable '" + name + "'");
    return derivative(*i);
  }

  Elem evaluate(const std::vector<Elem>& point) const {
    const F& k = field();
    Elem acc = k.zero();
    for (const auto& t : terms_) {
      Elem v = t.coeff;
      for (std::size_t i = 0; i < ring_->nvars(); ++i)
        for (std::uint32_t e = 0; e < t.mono[i]; ++e) v = k.mul(v, point[i]);
      acc = k.add(acc, v);
    }
    return acc;
  }

  /// Divides by the leading coefficient.
  Polynomial monic() const {
    if (is_zero()) return *this;
    return scale(field().inv(terms_.front().coeff));
  }

  bool operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].mono != o.terms_[i].mono) return false;
      if (!field().equal(terms_[i].coeff, o.terms_[i].coeff)) return false;
    }
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

  void check_ring(const Polynomial& o) const {
    if (!ring_ || !o.ring_) throw RingMismatch("polynomial without a ring");
    if (ring_ != o.ring_ && !ring_->same_as(*o.ring_))
      throw RingMismatch("polynomials belong to different rings");
  }

 private:
  Polynomial combine(const Polynomial& o, bool subtract) const {
    check_ring(o);
    const F& k = field();
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      int c;
      if (i == terms_.size())
        c = -1;
      else if (j == o.terms_.size())
        c = 1;
      else
        c = compare_degrevlex(terms_[i].mono, o.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        const auto& t = o.terms_[j++];
        r.terms_.push_back({t.mono, subtract ? k.neg(t.coeff) : t.coeff});
      } else {
        auto s = subtract ? k.sub(terms_[i].coeff, o.terms_[j].coeff) : k.add(terms_[i].coeff, o.terms_[j].coeff);
        if (!k.is_zero(s)) r.terms_.push_back({terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr<F> ring_;
  std::vector<TermT> terms_;
};

namespace detail {


template <class F>
std::string monomial_string(const PolyRing<F>& ring, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < ring.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += ring.variables()[i];
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

}  // namespace detail

template <class F>
std::string Polynomial<F>::to_string() const {
  if (terms_.empty()) return "0";
  const F& k = field();
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    bool negative = k.is_negative(t.coeff);
    Elem mag = negative ? k.neg(t.coeff) : t.coeff;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono = detail::monomial_string(*ring_, t.mono);
    if (mono.empty()) {
      out += k.to_string(mag);
    } else if (k.is_one(mag)) {
      out += mono;
    } else {
      out += k.to_string(mag) + "*" + mono;
    }
  }
  return out;
}

/// Raised when an exact division leaves a remainder.
class InexactDivision : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact quotient f / g; throws InexactDivision if g does not divide f.
template <class F>
Polynomial<F> divide_exact(const Polynomial<F>& f, const Polynomial<F>& g) {
  f.check_ring(g);
  if (g.is_zero()) throw DivisionByNonUnit("division by the zero polynomial");
  const F& k = f.field();
  const auto& lt = g.leading_term();
  typename F::Elem lc_inv = k.inv(lt.coeff);
  Polynomial<F> rem = f;
  std::vector<Term<F>> quotient;
  while (!rem.is_zero()) {
    const auto& r = rem.leading_term();
    if (!lt.mono.divides(r.mono)) throw InexactDivision("polynomial division is not exact");
    Monomial q = lt.mono.quotient_of(r.mono);
    auto c = k.mul(r.coeff, lc_inv);
    quotient.push_back({q, c});
    rem = rem - g.mul_term(q, c);
  }
  // quotient terms were produced in decreasing order
  return Polynomial<F>::from_sorted_terms(f.ring(), std::move(quotient));
}

/// Re-expresses a polynomial over a different coefficient field with the
/// same variable names (e.g. reduction of rational coefficients mod p).
template <class To>
Polynomial<To> change_ring(const Polynomial<Rationals>& f, const RingPtr<To>& target) {
  if (f.ring()->variables() != target->variables())
    throw RingMismatch("change_ring requires identical variable lists");
  std::vector<Term<To>> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    auto c = target->field().from_rational(t.coeff);
    if (!target->field().is_zero(c)) out.push_back({t.mono, c});
  }
  return Polynomial<To>::from_sorted_terms(target, std::move(out));
}

template <class To>
Polynomial<To> change_ring(const Polynomial<PrimeField>& f, const RingPtr<To>& target) {
  if constexpr (std::is_same_v<To, PrimeField>) {
    if (f.ring()->variables() != target->variables() || !(f.field() == target->field()))
      throw RingMismatch("change_ring between different prime fields is not supported");
    return Polynomial<PrimeField>::from_sorted_terms(target, f.terms());
  } else {
    throw RingMismatch("cannot lift prime-field coefficients to the rationals");
  }
}

}  // namespace levelmat

#endif  // LEVELMAT_POLYNOMIAL_HPP
