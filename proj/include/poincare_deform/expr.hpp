#pragma once

// Small infix expression language over exact series values.
//
// Grammar (whitespace-insensitive):
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := ('+' | '-') factor | primary ('^' integer)?
//   primary := integer | name | '(' expr ')'
//
// Names resolve in this order: the reserved literals `i` (imaginary unit),
// `l` (the deformation parameter), `h` (the quantization parameter), then a
// caller-supplied symbol table mapping generator names (and aliases such as
// derived observables) to exact series.  Division requires the divisor to be
// free of generators, which makes `3/4` a rational literal and `1/l` a
// Laurent coefficient while keeping the algebra polynomial in the generators.
//
// Errors throw ExprError carrying the offset into the source string.

#include <cctype>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "poincare_deform/series.hpp"

namespace poincare_deform {

struct ExprError : std::runtime_error {
  std::size_t pos;
  ExprError(const std::string& what, std::size_t at)
      : std::runtime_error(what + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

class ExprParser {
 public:
  ExprParser(std::string_view src, const std::map<std::string, Series>& names)
      : src_(src), names_(&names) {}

  // Parses the whole input; trailing characters are an error.
  Series parse() {
    Series v = parse_sum();
    skip_space();
    if (pos_ != src_.size()) throw ExprError("unexpected trailing input", pos_);
    return v;
  }

 private:
  std::string_view src_;
  const std::map<std::string, Series>* names_;
  std::size_t pos_ = 0;

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Series parse_sum() {
    Series acc = parse_term();
    for (;;) {
      if (consume('+')) {
        acc = acc + parse_term();
      } else if (consume('-')) {
        acc = acc - parse_term();
      } else {
        return acc;
      }
    }
  }

  Series parse_term() {
    Series acc = parse_factor();
    for (;;) {
      if (consume('*')) {
        acc = acc * parse_factor();
      } else if (consume('/')) {
        std::size_t at = pos_;
        acc = divide(acc, parse_factor(), at);
      } else {
        return acc;
      }
    }
  }

  Series parse_factor() {
    if (consume('-')) return -parse_factor();
    if (consume('+')) return parse_factor();
    Series base = parse_primary();
    if (consume('^')) {
      std::size_t at = pos_;
      long long n = parse_integer_literal();
      if (n < 0 || n > 64) throw ExprError("exponent out of range [0, 64]", at);
      Series out = Series::integer(1);
      for (long long k = 0; k < n; ++k) out = out * base;
      return out;
    }
    return base;
  }

  Series parse_primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Series v = parse_sum();
      if (!consume(')')) throw ExprError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Series::integer(parse_integer_literal());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = pos_;
      std::string name = parse_name();
      if (name == "i") return Series::constant(Scalar::i());
      if (name == "l") return Series::constant(Scalar::lambda());
      if (name == "h") return Series::constant(Scalar::hbar());
      auto it = names_->find(name);
      if (it == names_->end()) throw ExprError("unknown symbol '" + name + "'", at);
      return it->second;
    }
    throw ExprError(pos_ < src_.size() ? std::string("unexpected character '") + c + "'"
                                       : std::string("unexpected end of input"),
                    pos_);
  }

  long long parse_integer_literal() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ == start) throw ExprError("expected an integer", start);
    if (pos_ - start > 18) throw ExprError("integer literal too long", start);
    return std::stoll(std::string(src_.substr(start, pos_ - start)));
  }

  std::string parse_name() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  static Series divide(const Series& num, const Series& den, std::size_t at) {
    if (!den.p.is_constant()) {
      throw ExprError("divisor must be free of generators", at);
    }
    Scalar c = den.p.constant_coeff();
    if (c.is_zero()) throw ExprError("division by zero", at);
    return num.scaled(Scalar::one() / c);
  }
};

inline Series parse_expression(std::string_view src, const std::map<std::string, Series>& names) {
  return ExprParser(src, names).parse();
}

}  // namespace poincare_deform
