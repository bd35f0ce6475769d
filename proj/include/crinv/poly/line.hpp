#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <span>
#include <vector>

#include "crinv/poly/polynomial.hpp"

namespace crinv::poly {

using ComplexVector = std::vector<std::complex<double>>;

// a0 |zeta|^m + sum_{even j} |zeta|^(m-j) Re(a_j zeta^j).
struct CircularForm {
  int degree = 0;
  double a0 = 0.0;
  std::map<int, std::complex<double>> a;

  std::complex<double> coefficient(int j) const {
    auto it = a.find(j);
    return it == a.end() ? std::complex<double>() : it->second;
  }

  double evaluate(std::complex<double> zeta) const {
    double r = std::abs(zeta);
    double value = a0 * std::pow(r, degree);
    for (const auto& [j, aj] : a) value += std::pow(r, degree - j) * std::real(aj * std::pow(zeta, j));
    return value;
  }
};

// Precomputed restriction of a real homogeneous polynomial of even degree m
// to complex lines. For each direction c, b_{p,q} is the coefficient of
// zeta^p zetabar^q in P(zeta c); then a0 = b_{m/2,m/2} and
// a_j = 2 b_{(m+j)/2,(m-j)/2}.
class LineRestrictor {
 public:
  explicit LineRestrictor(const Polynomial& p) : n_(p.dimension()) {
    if (!is_real_valued(p)) throw PreconditionError("line restriction needs a real-valued polynomial");
    auto deg = homogeneous_degree(p);
    if (!deg) throw PreconditionError("line restriction needs a u-free homogeneous polynomial");
    if (*deg % 2 != 0)
      throw PreconditionError("line restriction needs even degree; got degree " + std::to_string(*deg));
    m_ = *deg;
    for (const auto& [mono, coeff] : p.terms()) {
      int j = mono.z_degree() - mono.zbar_degree();
      if (j < 0) continue;  // conjugate partners carry no extra information
      terms_[j].push_back({mono.alpha, mono.beta, coeff.to_complex()});
    }
  }

  int degree() const { return m_; }
  int dimension() const { return n_; }

  // 2 b_{(m+j)/2,(m-j)/2} for j > 0, b_{m/2,m/2} for j = 0.
  std::complex<double> coefficient(int j, std::span<const std::complex<double>> c) const {
    if (static_cast<int>(c.size()) != n_) throw DomainError("direction has wrong dimension");
    auto it = terms_.find(j);
    if (it == terms_.end()) return 0.0;
    std::complex<double> b = 0.0;
    for (const auto& t : it->second) {
      std::complex<double> v = t.coeff;
      for (int i = 0; i < n_; ++i) {
        if (t.alpha[i]) v *= std::pow(c[i], t.alpha[i]);
        if (t.beta[i]) v *= std::pow(std::conj(c[i]), t.beta[i]);
      }
      b += v;
    }
    return j == 0 ? b : 2.0 * b;
  }

  double a0(std::span<const std::complex<double>> c) const { return coefficient(0, c).real(); }

  CircularForm restrict(std::span<const std::complex<double>> c) const {
    bool nonzero = false;
    for (auto ci : c) nonzero = nonzero || ci != 0.0;
    if (!nonzero) throw DomainError("line direction must be nonzero");
    CircularForm form;
    form.degree = m_;
    form.a0 = a0(c);
    for (const auto& [j, _] : terms_) {
      if (j == 0) continue;
      auto aj = coefficient(j, c);
      if (aj != 0.0) form.a[j] = aj;
    }
    return form;
  }

 private:
  struct Term {
    std::vector<int> alpha, beta;
    std::complex<double> coeff;
  };
  int n_;
  int m_ = 0;
  std::map<int, std::vector<Term>> terms_;
};

inline CircularForm restrict_to_line(const Polynomial& p, std::span<const std::complex<double>> c) {
  return LineRestrictor(p).restrict(c);
}

}  // namespace crinv::poly
