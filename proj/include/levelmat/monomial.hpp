#ifndef LEVELMAT_MONOMIAL_HPP
#define LEVELMAT_MONOMIAL_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace levelmat {

inline constexpr std::size_t kMaxVariables = 16;

/// Exponent arithmetic left the representable range.
class ExponentOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Dense exponent vector with a cached total degree. Unused trailing slots are
/// zero, so comparisons never need the ring's variable count.
class Monomial {
 public:
  using Exponent = std::uint16_t;
  static constexpr std::uint32_t kMaxExponent = 0xFFFF;

  Monomial() = default;

  static Monomial variable(std::size_t index, std::uint32_t power = 1) {
    Monomial m;
    m.set(index, power);
    return m;
  }

  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  int degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  void set(std::size_t i, std::uint32_t value) {
    if (i >= kMaxVariables) throw std::out_of_range("variable index out of range");
    if (value > kMaxExponent) throw ExponentOverflow("exponent exceeds 65535");
    degree_ += static_cast<int>(value) - static_cast<int>(exps_[i]);
    exps_[i] = static_cast<Exponent>(value);
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      std::uint32_t s = std::uint32_t(exps_[i]) + o.exps_[i];
      if (s > kMaxExponent) throw ExponentOverflow("exponent overflow in monomial product");
      r.exps_[i] = static_cast<Exponent>(s);
    }
    r.degree_ = degree_ + o.degree_;
    return r;
  }

  Monomial pow(std::uint32_t k) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      std::uint64_t s = std::uint64_t(exps_[i]) * k;
      if (s > kMaxExponent) throw ExponentOverflow("exponent overflow in monomial power");
      r.exps_[i] = static_cast<Exponent>(s);
    }
    r.degree_ = degree_ * static_cast<int>(k);
    return r;
  }

  /// True when this divides o.
  bool divides(const Monomial& o) const {
    if (degree_ > o.degree_) return false;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  /// o / this; caller guarantees divisibility.
  Monomial quotient_of(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      r.exps_[i] = static_cast<Exponent>(o.exps_[i] - exps_[i]);
    r.degree_ = o.degree_ - degree_;
    return r;
  }

  Monomial lcm(const Monomial& o) const {
    Monomial r;
    int deg = 0;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      r.exps_[i] = exps_[i] > o.exps_[i] ? exps_[i] : o.exps_[i];
      deg += r.exps_[i];
    }
    r.degree_ = deg;
    return r;
  }

  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exps_[i] != 0 && o.exps_[i] != 0) return false;
    return true;
  }

  /// Variables occurring with positive exponent, as a bitmask.
  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exps_[i] != 0) s |= 1u << i;
    return s;
  }

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto e : exps_) h = (h ^ e) * 1099511628211ull;
    return h;
  }

 private:
  std::array<Exponent, kMaxVariables> exps_{};
  int degree_ = 0;
};

/// Graded reverse lexicographic comparison: -1, 0, 1.
inline int compare_degrevlex(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = kMaxVariables; i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

inline int compare_lex(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

inline int compare_deglex(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  return compare_lex(a, b);
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace levelmat

#endif  // LEVELMAT_MONOMIAL_HPP
