#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "crinv/error.hpp"

namespace crinv {

// Arbitrary precision rational; always kept in lowest terms with a positive
// denominator by the underlying backend.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p", "p/q", "-p/q" and plain decimals such as "0.25" or "-1.5".
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw DomainError("malformed rational '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  std::string_view body = text;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto strip = [](std::string_view s) {
    while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
    return std::string(s);
  };
  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    Integer d{strip(den)};
    if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer{strip(num)}, d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      return fail();
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    // Leading zeros would make the integer parser read octal.
    std::string joined = std::string(whole) + std::string(frac);
    joined.erase(0, std::min(joined.find_first_not_of('0'), joined.size()));
    Integer digits{joined.empty() ? std::string("0") : joined};
    value = Rational(digits, scale);
  } else {
    if (!all_digits(body)) return fail();
    value = Rational(Integer{strip(body)});
  }
  return negative ? Rational(-value) : value;
}

// Best rational approximation with denominator at most max_den (continued
// fractions). Returns nullopt when the approximation misses by more than tol.
inline std::optional<Rational> rationalize(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rem = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(rem);
    if (std::abs(a) > 1e15) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t p2 = ai * p1 + p0;
    std::int64_t q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = rem - a;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) <= tol * 1e-3 || frac < 1e-15)
      break;
    rem = 1.0 / frac;
  }
  if (q1 == 0) return std::nullopt;
  double approx = static_cast<double>(p1) / static_cast<double>(q1);
  if (std::abs(approx - x) > tol) return std::nullopt;
  return Rational(p1, q1);
}

// Gaussian rational re + i*im.
struct ExactComplex {
  Rational re;
  Rational im;

  ExactComplex() = default;
  ExactComplex(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design of literals
  ExactComplex(int r) : re(r) {}                  // NOLINT
  ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static ExactComplex imaginary_unit() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  ExactComplex conj() const { return {re, -im}; }
  // |x|^2, exact.
  Rational norm() const { return re * re + im * im; }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
    Rational n = b.norm();
    if (n == 0) throw DomainError("division by zero");
    ExactComplex t = a * b.conj();
    return {t.re / n, t.im / n};
  }
  ExactComplex& operator+=(const ExactComplex& b) { return *this = *this + b; }
  ExactComplex& operator-=(const ExactComplex& b) { return *this = *this - b; }
  ExactComplex& operator*=(const ExactComplex& b) { return *this = *this * b; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline ExactComplex pow(const ExactComplex& base, int exponent) {
  ExactComplex result(1);
  ExactComplex b = base;
  int e = exponent;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

inline std::string to_string(const ExactComplex& c) {
  if (c.im == 0) return to_string(c.re);
  if (c.re == 0) return to_string(c.im) + "*i";
  return "(" + to_string(c.re) + (c.im < 0 ? " - " : " + ") + to_string(abs(c.im)) + "*i)";
}

}  // namespace crinv
