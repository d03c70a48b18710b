#include "canyon/parse.hpp"

#include "canyon/errors.hpp"

#include <cctype>

namespace canyon {

namespace {

class Parser {
public:
  explicit Parser(const std::string& s) : s_(s) {}

  BiPoly run() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty polynomial", pos_);
    BiPoly p = expr();
    skip();
    if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  BiPoly expr() {
    BiPoly acc;
    bool first = true;
    for (;;) {
      char c = peek();
      bool neg = false;
      if (c == '+' || c == '-') {
        neg = c == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      BiPoly t = term();
      if (neg) acc -= t;
      else acc += t;
      first = false;
    }
    return acc;
  }

  static bool starts_factor(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'z' || c == 'w' || c == 'i' ||
           c == '(';
  }

  BiPoly term() {
    BiPoly acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (c == '/') {
        std::size_t at = ++pos_;
        BiPoly d = factor();
        if (!d.is_constant() || d.is_zero())
          throw ParseError("division only by a nonzero constant", at);
        acc = (GQ::integer(1) / d.coeff(0, 0)) * acc;
      } else if (starts_factor(c)) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  BiPoly factor() {
    BiPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t at = pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("expected non-negative integer exponent", at);
      long e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + (s_[pos_] - '0');
        if (e > 100000) throw ParseError("exponent too large", at);
        ++pos_;
      }
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e'))
        throw ParseError("non-integer exponent", at);
      base = pow(base, static_cast<unsigned>(e));
    }
    return base;
  }

  BiPoly primary() {
    char c = peek();
    std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      BiPoly p = expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return p;
    }
    if (c == 'z') {
      ++pos_;
      return BiPoly::z();
    }
    if (c == 'w') {
      ++pos_;
      return BiPoly::w();
    }
    if (c == 'i') {
      ++pos_;
      return BiPoly::constant(GQ(0, 1));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        digits += s_[pos_++];
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
        throw ParseError("non-rational coefficient literal", at);
      return BiPoly::constant(GQ(Rational(mpz_class(digits, 10))));
    }
    if (c == '\0') throw ParseError("unexpected end of input", at);
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

BiPoly parse_polynomial(const std::string& text) { return Parser(text).run(); }

}  // namespace canyon
