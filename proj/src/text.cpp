#include "divseq/text.hpp"

#include <cctype>

#include "divseq/errors.hpp"

namespace divseq {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int line, int column_offset)
      : text_(text), line_(line), offset_(column_offset) {}

  RationalFunction parse() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty expression");
    RationalFunction value = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    int column = offset_ + static_cast<int>(pos_) + 1;
    throw ParseError(what + " at line " + std::to_string(line_) + ", column " + std::to_string(column), line_,
                     column);
  }

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

  RationalFunction expr() {
    RationalFunction acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RationalFunction term() {
    RationalFunction acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RationalFunction d = unary();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RationalFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (!accept('^')) return base;
    bool negative = accept('-');
    skip_ws();
    std::size_t at = pos_;
    BigInt e = digits();
    if (e > 1000000) {
      pos_ = at;
      fail("exponent too large");
    }
    long n = e.get_si();
    if (negative) {
      if (base.is_zero()) {
        pos_ = at;
        fail("zero raised to a negative power");
      }
      n = -n;
    }
    return pow(base, n);
  }

  BigInt digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  RationalFunction primary() {
    skip_ws();
    if (pos_ == text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 't') {
      ++pos_;
      return RationalFunction(Polynomial::t());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return RationalFunction(Polynomial::constant(BigRational(digits())));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  int line_;
  int offset_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_function(std::string_view text, int line, int column_offset) {
  return Parser(text, line, column_offset).parse();
}

Polynomial parse_polynomial(std::string_view text, int line, int column_offset) {
  RationalFunction f = parse_rational_function(text, line, column_offset);
  if (!f.is_polynomial()) {
    throw ParseError("expected a polynomial, got a proper fraction at line " + std::to_string(line), line,
                     column_offset + 1);
  }
  return f.num();
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const BigRational& c = p.coeff(k);
    if (c == 0) continue;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    BigRational mag = abs(c);
    if (k == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) {
      out += mag.get_str();
      out += "*";
    }
    out += "t";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

std::string to_string(const RationalFunction& f) {
  if (f.is_polynomial()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

}  // namespace divseq
