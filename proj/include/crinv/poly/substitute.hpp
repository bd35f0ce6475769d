#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "crinv/poly/polynomial.hpp"

namespace crinv::poly {

// Images of z_1..z_n (and optionally u) under a polynomial change of
// variables. Unset entries are left unchanged. Conjugate variables are
// replaced by the conjugates of the images.
struct Substitution {
  std::vector<std::optional<Polynomial>> z;
  std::optional<Polynomial> u;

  static Substitution identity(int n) { return Substitution{std::vector<std::optional<Polynomial>>(n), {}}; }

  // z -> A z for a square matrix A given row-major.
  static Substitution linear(int n, const std::vector<std::vector<ExactComplex>>& rows) {
    if (static_cast<int>(rows.size()) != n) throw DomainError("linear map must be n x n");
    Substitution s = identity(n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) throw DomainError("linear map must be n x n");
      Polynomial image(n);
      for (int j = 0; j < n; ++j) image += rows[i][j] * Polynomial::z(n, j);
      s.z[i] = std::move(image);
    }
    return s;
  }
};

namespace detail {

// Memoized powers of one base polynomial.
class PowerCache {
 public:
  explicit PowerCache(Polynomial base) : powers_{Polynomial::constant(base.dimension(), 1), base} {}

  const Polynomial& get(int e) {
    while (static_cast<int>(powers_.size()) <= e) powers_.push_back(powers_.back() * powers_[1]);
    return powers_[e];
  }

 private:
  std::vector<Polynomial> powers_;
};

}  // namespace detail

inline Polynomial substitute(const Polynomial& p, const Substitution& s) {
  const int n = p.dimension();
  if (static_cast<int>(s.z.size()) != n) throw DomainError("substitution has wrong number of z images");
  for (const auto& img : s.z)
    if (img && img->dimension() != n) throw DomainError("substitution image has wrong dimension");
  if (s.u && s.u->dimension() != n) throw DomainError("substitution image has wrong dimension");

  std::vector<detail::PowerCache> zs, zbars;
  zs.reserve(n);
  zbars.reserve(n);
  for (int j = 0; j < n; ++j) {
    Polynomial img = s.z[j] ? *s.z[j] : Polynomial::z(n, j);
    zbars.emplace_back(img.conj());
    zs.emplace_back(std::move(img));
  }
  detail::PowerCache us(s.u ? *s.u : Polynomial::u(n));

  Polynomial result(n);
  for (const auto& [mono, coeff] : p.terms()) {
    Polynomial term = Polynomial::constant(n, coeff);
    for (int j = 0; j < n; ++j) {
      if (mono.alpha[j]) term *= zs[j].get(mono.alpha[j]);
      if (mono.beta[j]) term *= zbars[j].get(mono.beta[j]);
    }
    if (mono.m) term *= us.get(mono.m);
    result += term;
  }
  return result;
}

}  // namespace crinv::poly
