#pragma once

#include <string>
#include <vector>

#include "crinv/multitype/weight.hpp"
#include "crinv/poly/weighted.hpp"

namespace crinv::multitype {

using poly::Monomial;
using poly::Polynomial;

struct DistinguishedReport {
  bool distinguished = false;
  std::string reason;
  // u-free part of weighted degree exactly one.
  Polynomial weight1_part{1};
  // Terms of weighted degree below one, and u-dependent terms of degree one.
  std::vector<Monomial> failing_terms;
  // Pure z or pure zbar terms among the failing ones; a holomorphic change of
  // w would remove them.
  std::vector<Monomial> absorbable_terms;
};

// Checks the weight against psi in the given coordinates only.
inline DistinguishedReport is_distinguished(const Weight& w, const Polynomial& psi) {
  DistinguishedReport r;
  r.weight1_part = Polynomial(psi.dimension());
  if (w.size() != psi.dimension()) throw DomainError("weight length does not match the polynomial dimension");
  for (const auto& [mono, coeff] : psi.terms()) {
    Rational wt = poly::weighted_degree(mono, w.lambdas);
    if (wt > 1) continue;
    if (wt == 1 && mono.m == 0) {
      r.weight1_part.add_term(mono, coeff);
      continue;
    }
    r.failing_terms.push_back(mono);
    if (mono.m == 0 && !mono.is_mixed()) r.absorbable_terms.push_back(mono);
  }
  if (!r.failing_terms.empty()) {
    r.reason = std::to_string(r.failing_terms.size()) + " term(s) of weighted degree below one or u-dependent of degree one";
    return r;
  }
  if (r.weight1_part.is_zero()) {
    r.reason = "no terms of weighted degree one";
    return r;
  }
  if (poly::is_pluriharmonic(r.weight1_part)) {
    r.reason = "weighted degree one part is pluriharmonic";
    return r;
  }
  r.distinguished = true;
  return r;
}

}  // namespace crinv::multitype
