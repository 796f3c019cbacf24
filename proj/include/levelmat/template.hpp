#ifndef LEVELMAT_TEMPLATE_HPP
#define LEVELMAT_TEMPLATE_HPP

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace levelmat {

using Params = std::map<std::string, long long>;

class TemplateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// Exact rational evaluator for the small expressions inside "{...}":
// integers, named parameters, + - * / ^ and parentheses.
class ParamExpr {
 public:
  ParamExpr(std::string_view text, const Params& params) : s_(text), params_(params) {}

  mpq_class run() {
    auto v = sum();
    skip();
    if (pos_ != s_.size()) throw TemplateError("trailing text in '{" + std::string(s_) + "}'");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  mpq_class sum() {
    auto v = product();
    for (;;) {
      if (eat('+'))
        v += product();
      else if (eat('-'))
        v -= product();
      else
        return v;
    }
  }
  mpq_class product() {
    auto v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        auto den = unary();
        if (den == 0) throw TemplateError("division by zero in '{" + std::string(s_) + "}'");
        v /= den;
      } else {
        return v;
      }
    }
  }
  mpq_class unary() {
    if (eat('-')) return -unary();
    return power();
  }
  mpq_class power() {
    auto base = atom();
    if (eat('^')) {
      auto e = unary();
      if (e.get_den() != 1 || e < 0 || e > 64) throw TemplateError("bad exponent in '{" + std::string(s_) + "}'");
      mpq_class r = 1;
      for (long i = 0; i < e.get_num().get_si(); ++i) r *= base;
      return r;
    }
    return base;
  }
  mpq_class atom() {
    skip();
    if (eat('(')) {
      auto v = sum();
      if (!eat(')')) throw TemplateError("missing ')' in '{" + std::string(s_) + "}'");
      return v;
    }
    std::size_t start = pos_;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return mpq_class(mpz_class(std::string(s_.substr(start, pos_ - start))));
    }
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (name.empty()) throw TemplateError("unexpected character in '{" + std::string(s_) + "}'");
    auto it = params_.find(name);
    if (it == params_.end()) throw TemplateError("unknown parameter '" + name + "'");
    return mpq_class(mpz_class(std::to_string(it->second)));
  }

  std::string_view s_;
  const Params& params_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline mpq_class eval_param_expr(std::string_view text, const Params& params) {
  return detail::ParamExpr(text, params).run();
}

/// Replaces every "{expr}" in `text` by its exact value. Nonnegative integers
/// are inserted bare; anything else is parenthesized so it composes with the
/// surrounding polynomial syntax.
inline std::string expand_template(std::string_view text, const Params& params) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') {
      out += text[i];
      continue;
    }
    auto close = text.find('}', i);
    if (close == std::string_view::npos) throw TemplateError("unterminated '{' in '" + std::string(text) + "'");
    mpq_class v = eval_param_expr(text.substr(i + 1, close - i - 1), params);
    if (v.get_den() == 1 && v >= 0)
      out += v.get_str();
    else
      out += "(" + v.get_str() + ")";
    i = close;
  }
  return out;
}

}  // namespace levelmat

#endif  // LEVELMAT_TEMPLATE_HPP
