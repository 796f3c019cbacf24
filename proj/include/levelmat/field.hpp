#ifndef LEVELMAT_FIELD_HPP
#define LEVELMAT_FIELD_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace levelmat {

/// Raised when a constant that must be inverted is zero in the field.
class DivisionByNonUnit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The rational numbers with arbitrary precision.
class Rationals {
 public:
  using Elem = mpq_class;
  static constexpr bool kIsPrime = false;

  std::uint32_t characteristic() const { return 0; }
  std::string name() const { return "qq"; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long long v) const { return Elem(mpz_class(std::to_string(v))); }

  Elem from_fraction(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) throw DivisionByNonUnit("division by zero");
    Elem q(num, den);
    q.canonicalize();
    return q;
  }

  /// Coefficients of a rational ring embed as themselves.
  Elem from_rational(const mpq_class& q) const { return q; }

  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw DivisionByNonUnit("inverse of zero");
    return Elem(1) / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return a * inv(b); }

  /// Multiplies by a machine integer (used for exponents in derivatives).
  Elem scale(const Elem& a, long long k) const { return a * from_int(k); }

  bool is_negative(const Elem& a) const { return sgn(a) < 0; }
  std::string to_string(const Elem& a) const { return a.get_str(); }

  /// Uniform nonzero integer in [1, 2^16).
  Elem random_nonzero(std::mt19937_64& rng) const {
    std::uniform_int_distribution<long long> dist(1, (1LL << 16) - 1);
    return from_int(dist(rng));
  }
  /// Uniform integer in [-bound, bound].
  Elem random_small(std::mt19937_64& rng, long long bound) const {
    std::uniform_int_distribution<long long> dist(-bound, bound);
    return from_int(dist(rng));
  }

  bool operator==(const Rationals&) const { return true; }
};

/// GF(p) for an odd prime 2 < p < 2^31, elements stored as canonical residues.
class PrimeField {
 public:
  using Elem = std::uint32_t;
  static constexpr bool kIsPrime = true;
  static constexpr std::uint32_t kDefaultModulus = 32003;

  explicit PrimeField(std::uint32_t p = kDefaultModulus) : p_(p) {
    if (p <= 2 || p >= (1u << 31) || !is_prime(p))
      throw std::invalid_argument("modulus must be a prime with 2 < p < 2^31, got " +
                                  std::to_string(p));
  }

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t modulus() const { return p_; }
  std::string name() const { return "fp"; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }

  Elem from_mpz(const mpz_class& v) const {
    mpz_class r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Elem>(r.get_ui());
  }

  Elem from_fraction(const mpz_class& num, const mpz_class& den) const {
    Elem d = from_mpz(den);
    if (d == 0) throw DivisionByNonUnit("denominator " + den.get_str() + " vanishes mod " +
                                        std::to_string(p_));
    return mul(from_mpz(num), inv(d));
  }

  Elem from_rational(const mpq_class& q) const {
    return from_fraction(q.get_num(), q.get_den());
  }

  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  bool equal(Elem a, Elem b) const { return a == b; }

  Elem add(Elem a, Elem b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Elem>(s >= p_ ? s - p_ : s);
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : static_cast<Elem>(std::uint64_t(a) + p_ - b); }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>((std::uint64_t(a) * b) % p_); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(Elem a) const {
    if (a == 0) throw DivisionByNonUnit("inverse of zero mod " + std::to_string(p_));
    // extended Euclid
    long long t = 0, new_t = 1;
    long long r = p_, new_r = a;
    while (new_r != 0) {
      long long q = r / new_r;
      long long tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Elem>(t);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem scale(Elem a, long long k) const { return mul(a, from_int(k)); }

  /// Residues above p/2 print as negatives, so -1 shows as -1 rather than p-1.
  bool is_negative(Elem a) const { return a > p_ / 2; }
  std::string to_string(Elem a) const { return std::to_string(a); }

  Elem random_nonzero(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint32_t> dist(1, p_ - 1);
    return dist(rng);
  }
  Elem random_small(std::mt19937_64& rng, long long bound) const {
    std::uniform_int_distribution<long long> dist(-bound, bound);
    return from_int(dist(rng));
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  std::uint32_t p_;
};

}  // namespace levelmat

#endif  // LEVELMAT_FIELD_HPP
