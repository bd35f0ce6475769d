#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>

#include "crinv/error.hpp"
#include "crinv/poly/polynomial.hpp"

namespace crinv::poly {

namespace detail {

// Recursive descent over
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := primary ('^' INT)*
//   primary:= INT ['/' INT] | DECIMAL | 'i' | 'z'INT | 'Z'INT | 'u'
//           | '|' ('z'|'Z') INT '|' '^' EVEN | 'Re(' expr ')' | 'Im(' expr ')'
//           | '(' expr ')'
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, int n) : text_(text), n_(n) {
    if (n < 1) throw DomainError("dimension must be positive");
  }

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& message) const { throw ParseError(at, message); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }
  bool at_word(std::string_view w) {
    skip_space();
    return text_.substr(pos_, w.size()) == w;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  int small_integer() {
    skip_space();
    std::size_t start = pos_;
    std::string d = digits();
    if (d.empty()) fail("expected an integer");
    if (d.size() > 6) fail_at(start, "integer too large");
    return std::stoi(d);
  }

  Polynomial expr() {
    Polynomial result(n_);
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    Polynomial t = term();
    result = negate ? -t : t;
    while (true) {
      if (accept('+')) result += term();
      else if (accept('-')) result -= term();
      else break;
    }
    return result;
  }

  Polynomial term() {
    Polynomial result = factor();
    while (accept('*')) result *= factor();
    return result;
  }

  Polynomial factor() {
    Polynomial base = primary();
    while (accept('^')) {
      int e = small_integer();
      base = pow(base, e);
    }
    return base;
  }

  int variable_index() {
    std::size_t start = pos_;
    std::string d = digits();
    if (d.empty()) fail("expected a variable index");
    if (d.size() > 6) fail_at(start, "variable index too large");
    int j = std::stoi(d);
    if (j < 1 || j > n_)
      fail_at(start, "variable index " + d + " out of range 1.." + std::to_string(n_));
    return j - 1;
  }

  Polynomial primary() {
    char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      expect(')');
      return inner;
    }
    if (c == '|') return modulus_power();
    if (at_word("Re(")) {
      pos_ += 3;
      Polynomial inner = expr();
      expect(')');
      return real_part(inner);
    }
    if (at_word("Im(")) {
      pos_ += 3;
      Polynomial inner = expr();
      expect(')');
      return imag_part(inner);
    }
    if (c == 'z' || c == 'Z') {
      ++pos_;
      int j = variable_index();
      return c == 'z' ? Polynomial::z(n_, j) : Polynomial::zbar(n_, j);
    }
    if (c == 'u') {
      ++pos_;
      return Polynomial::u(n_);
    }
    if (c == 'i') {
      ++pos_;
      return Polynomial::constant(n_, ExactComplex::imaginary_unit());
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Polynomial number() {
    std::size_t start = pos_;
    std::string whole = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::string frac = digits();
      if (whole.empty() && frac.empty()) fail_at(start, "malformed number");
      return Polynomial::constant(n_, parse_rational(std::string(text_.substr(start, pos_ - start))));
    }
    Rational value = parse_rational(whole);
    // INT '/' INT is a rational literal; any other '/' is not in the grammar.
    std::size_t save = pos_;
    if (accept('/')) {
      skip_space();
      std::string den = digits();
      if (den.empty()) fail("expected an integer denominator");
      den.erase(0, std::min(den.find_first_not_of('0'), den.size() - 1));
      Integer d{den};
      if (d == 0) fail_at(save, "zero denominator");
      value /= Rational(d);
    }
    return Polynomial::constant(n_, value);
  }

  Polynomial modulus_power() {
    std::size_t bar = pos_;
    ++pos_;
    char c = peek();
    if (c != 'z' && c != 'Z') fail("expected a variable inside |...|");
    ++pos_;
    int j = variable_index();
    expect('|');
    if (!accept('^')) fail_at(bar, "modulus must be raised to an even power");
    std::size_t epos = pos_;
    int e = small_integer();
    if (e % 2 != 0) fail_at(epos, "odd power " + std::to_string(e) + " of |z" + std::to_string(j + 1) + "| is not polynomial");
    return pow(Polynomial::z(n_, j) * Polynomial::zbar(n_, j), e / 2);
  }

  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses a defining-equation right-hand side in n complex variables.
inline Polynomial parse_defining_equation(std::string_view text, int n) {
  return detail::ExpressionParser(text, n).parse();
}

}  // namespace crinv::poly
