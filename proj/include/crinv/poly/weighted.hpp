#pragma once

#include <map>
#include <span>
#include <vector>

#include "crinv/poly/polynomial.hpp"

namespace crinv::poly {

// Weighted degree of a monomial: u (and w) count one, z_j and zbar_j count
// lambda_j each.
inline Rational weighted_degree(const Monomial& mono, std::span<const Rational> lambdas) {
  if (static_cast<int>(lambdas.size()) != mono.dimension())
    throw DomainError("weight length does not match the number of variables");
  Rational wt = mono.m;
  for (int j = 0; j < mono.dimension(); ++j) wt += (mono.alpha[j] + mono.beta[j]) * lambdas[j];
  return wt;
}

// Splits p into weighted-homogeneous components keyed by weighted degree.
// The components sum back to p.
inline std::map<Rational, Polynomial> weighted_decomposition(const Polynomial& p,
                                                             std::span<const Rational> lambdas) {
  if (static_cast<int>(lambdas.size()) != p.dimension())
    throw DomainError("weight length does not match the polynomial dimension");
  std::map<Rational, Polynomial> parts;
  for (const auto& [mono, coeff] : p.terms()) {
    Rational wt = weighted_degree(mono, lambdas);
    auto it = parts.try_emplace(wt, Polynomial(p.dimension())).first;
    it->second.add_term(mono, coeff);
  }
  return parts;
}

}  // namespace crinv::poly
