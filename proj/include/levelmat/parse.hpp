#ifndef LEVELMAT_PARSE_HPP
#define LEVELMAT_PARSE_HPP

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "levelmat/polynomial.hpp"

namespace levelmat {

/// Syntax or semantic error while reading a polynomial, with the 0-based
/// character offset where it was detected.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

// expr   := term (('+' | '-') term)*
// term   := unary (('*' | '/') unary)*
// unary  := ('+' | '-') unary | power
// power  := atom ('^' integer)?
// atom   := integer | identifier | '(' expr ')'
template <class F>
class PolyParser {
 public:
  PolyParser(const RingPtr<F>& ring, std::string_view text) : ring_(ring), text_(text) {}

  Polynomial<F> run() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty input", pos_);
    auto p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial<F> expr() {
    auto acc = term();
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Polynomial<F> term() {
    auto acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        auto den = unary();
        if (!den.is_constant()) throw ParseError("division by a non-constant", at);
        auto c = den.constant_value();
        if (ring_->field().is_zero(c)) throw ParseError("division by a non-unit constant", at);
        acc = acc.scale(ring_->field().inv(c));
      } else {
        return acc;
      }
    }
  }

  Polynomial<F> unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial<F> power() {
    auto base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("expected a nonnegative integer exponent", at);
      auto digits = read_digits();
      if (digits.size() > 9) throw ParseError("exponent too large", at);
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Polynomial<F> atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto digits = read_digits();
      return ring_->constant(ring_->field().from_fraction(mpz_class(digits), mpz_class(1)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) throw ParseError("unknown variable '" + name + "'", start);
      skip_ws();
      if (pos_ < text_.size() && (text_[pos_] == '(' || std::isalnum(static_cast<unsigned char>(text_[pos_]))))
        throw ParseError("implicit multiplication is not allowed", pos_);
      return ring_->var(*idx);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string digits(text_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '('))
      throw ParseError("implicit multiplication is not allowed", pos_);
    return digits;
  }

  const RingPtr<F>& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses text in the polynomial grammar: integer literals, variables of the
/// ring, + - * / ^ and parentheses. Division is only by nonzero constants, so
/// rational literals are written a/b.
template <class F>
Polynomial<F> parse_poly(const RingPtr<F>& ring, std::string_view text) {
  return detail::PolyParser<F>(ring, text).run();
}

}  // namespace levelmat

#endif  // LEVELMAT_PARSE_HPP
