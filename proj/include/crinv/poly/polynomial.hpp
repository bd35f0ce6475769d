#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crinv/error.hpp"
#include "crinv/poly/exact.hpp"

namespace crinv::poly {

using crinv::to_string;

// z^alpha zbar^beta u^m in n complex variables.
struct Monomial {
  std::vector<int> alpha;
  std::vector<int> beta;
  int m = 0;

  Monomial() = default;
  explicit Monomial(int n) : alpha(n, 0), beta(n, 0) {}
  Monomial(std::vector<int> a, std::vector<int> b, int u_exp)
      : alpha(std::move(a)), beta(std::move(b)), m(u_exp) {}

  int dimension() const { return static_cast<int>(alpha.size()); }
  int z_degree() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }
  int zbar_degree() const { return std::accumulate(beta.begin(), beta.end(), 0); }
  int total_degree() const { return z_degree() + zbar_degree() + m; }

  // Both a holomorphic and an antiholomorphic factor are present.
  bool is_mixed() const { return z_degree() > 0 && zbar_degree() > 0; }

  Monomial conjugate() const { return {beta, alpha, m}; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic on (total degree, alpha, beta, m).
inline bool operator<(const Monomial& a, const Monomial& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  if (a.beta != b.beta) return a.beta < b.beta;
  return a.m < b.m;
}

// Sparse polynomial in z_1..z_n, their conjugates and u, with Gaussian
// rational coefficients. Zero coefficients are never stored, so equal
// polynomials have identical term maps.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, ExactComplex>;

  explicit Polynomial(int n = 1) : n_(n) {
    if (n < 1) throw DomainError("polynomial dimension must be positive");
  }

  Polynomial(int n, const TermMap& terms) : Polynomial(n) {
    for (const auto& [mono, coeff] : terms) add_term(mono, coeff);
  }

  static Polynomial constant(int n, const ExactComplex& c) {
    Polynomial p(n);
    p.add_term(Monomial(n), c);
    return p;
  }
  // Variables are zero-based here; the text grammar is one-based.
  static Polynomial z(int n, int j) {
    Monomial mono(n);
    mono.alpha.at(j) = 1;
    return monomial(n, mono, 1);
  }
  static Polynomial zbar(int n, int j) {
    Monomial mono(n);
    mono.beta.at(j) = 1;
    return monomial(n, mono, 1);
  }
  static Polynomial u(int n) {
    Monomial mono(n);
    mono.m = 1;
    return monomial(n, mono, 1);
  }
  static Polynomial monomial(int n, const Monomial& mono, const ExactComplex& c) {
    Polynomial p(n);
    p.add_term(mono, c);
    return p;
  }

  int dimension() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  ExactComplex coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? ExactComplex() : it->second;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [mono, _] : terms_) d = std::max(d, mono.total_degree());
    return d;
  }

  bool depends_on_u() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.m > 0; });
  }

  Polynomial conj() const {
    Polynomial r(n_);
    for (const auto& [mono, coeff] : terms_) r.terms_.emplace(mono.conjugate(), coeff.conj());
    return r;
  }

  // Keeps the terms for which pred(monomial) holds.
  template <typename Pred>
  Polynomial filter(Pred pred) const {
    Polynomial r(n_);
    for (const auto& [mono, coeff] : terms_)
      if (pred(mono)) r.terms_.emplace(mono, coeff);
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    a.require_same_dimension(b);
    Polynomial r = a;
    for (const auto& [mono, coeff] : b.terms_) r.add_term(mono, coeff);
    return r;
  }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial r(a.n_);
    for (const auto& [mono, coeff] : a.terms_) r.terms_.emplace(mono, -coeff);
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_same_dimension(b);
    Polynomial r(a.n_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial mono(a.n_);
        for (int j = 0; j < a.n_; ++j) {
          mono.alpha[j] = ma.alpha[j] + mb.alpha[j];
          mono.beta[j] = ma.beta[j] + mb.beta[j];
        }
        mono.m = ma.m + mb.m;
        r.add_term(mono, ca * cb);
      }
    }
    return r;
  }
  friend Polynomial operator*(const ExactComplex& s, const Polynomial& p) {
    Polynomial r(p.n_);
    if (s.is_zero()) return r;
    for (const auto& [mono, coeff] : p.terms_) r.terms_.emplace(mono, s * coeff);
    return r;
  }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  // Partial derivatives with respect to z_j, zbar_j and u.
  Polynomial d_z(int j) const { return differentiate([j](Monomial& m) -> int& { return m.alpha[j]; }); }
  Polynomial d_zbar(int j) const { return differentiate([j](Monomial& m) -> int& { return m.beta[j]; }); }
  Polynomial d_u() const { return differentiate([](Monomial& m) -> int& { return m.m; }); }

  std::complex<double> evaluate(std::span<const std::complex<double>> z, double u_value) const {
    if (static_cast<int>(z.size()) != n_) throw DomainError("evaluation point has wrong dimension");
    std::complex<double> sum = 0.0;
    for (const auto& [mono, coeff] : terms_) {
      std::complex<double> term = coeff.to_complex();
      for (int j = 0; j < n_; ++j) {
        if (mono.alpha[j]) term *= std::pow(z[j], mono.alpha[j]);
        if (mono.beta[j]) term *= std::pow(std::conj(z[j]), mono.beta[j]);
      }
      if (mono.m) term *= std::pow(u_value, mono.m);
      sum += term;
    }
    return sum;
  }

  // Adds c * mono, dropping the entry if it cancels.
  void add_term(const Monomial& mono, const ExactComplex& c) {
    if (mono.dimension() != n_) throw DomainError("monomial dimension mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

 private:
  void require_same_dimension(const Polynomial& b) const {
    if (n_ != b.n_) throw DomainError("polynomial dimension mismatch");
  }

  template <typename Slot>
  Polynomial differentiate(Slot slot) const {
    Polynomial r(n_);
    for (const auto& [mono, coeff] : terms_) {
      Monomial reduced = mono;
      int& e = slot(reduced);
      if (e == 0) continue;
      ExactComplex c = coeff * ExactComplex(e);
      --e;
      r.add_term(reduced, c);
    }
    return r;
  }

  int n_;
  TermMap terms_;
};

inline Polynomial pow(const Polynomial& base, int exponent) {
  if (exponent < 0) throw DomainError("negative polynomial power");
  Polynomial result = Polynomial::constant(base.dimension(), 1);
  Polynomial b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

// Real part and imaginary part of a polynomial viewed as a function.
inline Polynomial real_part(const Polynomial& p) {
  return ExactComplex(Rational(1, 2)) * (p + p.conj());
}
inline Polynomial imag_part(const Polynomial& p) {
  return ExactComplex(Rational(0), Rational(-1, 2)) * (p - p.conj());
}

// coeff(alpha, beta, m) == conj(coeff(beta, alpha, m)) for every term.
inline bool is_real_valued(const Polynomial& p) {
  for (const auto& [mono, coeff] : p.terms()) {
    if (!(p.coefficient(mono.conjugate()) == coeff.conj())) return false;
  }
  return true;
}

// True iff no term mixes z and zbar, i.e. p = 2 Re h for holomorphic h.
// The zero polynomial counts as pluriharmonic.
inline bool is_pluriharmonic(const Polynomial& p) {
  if (p.depends_on_u()) throw PreconditionError("pluriharmonicity test needs a u-free polynomial");
  for (const auto& [mono, _] : p.terms())
    if (mono.is_mixed()) return false;
  return true;
}

// Common total degree in (z, zbar) when every term is u-free and of that
// degree; nullopt otherwise (including the zero polynomial).
inline std::optional<int> homogeneous_degree(const Polynomial& p) {
  std::optional<int> degree;
  for (const auto& [mono, _] : p.terms()) {
    if (mono.m != 0) return std::nullopt;
    int d = mono.total_degree();
    if (degree && *degree != d) return std::nullopt;
    degree = d;
  }
  return degree;
}

inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, coeff] : p.terms()) {
    std::string factors;
    auto append = [&factors](const std::string& var, int e) {
      if (e == 0) return;
      if (!factors.empty()) factors += "*";
      factors += var;
      if (e > 1) factors += "^" + std::to_string(e);
    };
    for (int j = 0; j < p.dimension(); ++j) {
      append("z" + std::to_string(j + 1), mono.alpha[j]);
      append("Z" + std::to_string(j + 1), mono.beta[j]);
    }
    append("u", mono.m);
    std::string c = to_string(coeff);
    bool negative = (coeff.im == 0 && coeff.re < 0) || (coeff.re == 0 && coeff.im < 0);
    if (negative) c = to_string(-coeff);
    std::string term;
    if (factors.empty()) term = c;
    else if (c == "1") term = factors;
    else term = c + "*" + factors;
    if (first) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

}  // namespace crinv::poly
