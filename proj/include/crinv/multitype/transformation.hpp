#pragma once

#include <string_view>
#include <vector>

#include "crinv/multitype/weight.hpp"
#include "crinv/poly/weighted.hpp"

namespace crinv::multitype {

enum class HomogeneityClass { Homogeneous, Subhomogeneous, Superhomogeneous, None };

inline std::string_view to_string(HomogeneityClass c) {
  switch (c) {
    case HomogeneityClass::Homogeneous: return "homogeneous";
    case HomogeneityClass::Subhomogeneous: return "subhomogeneous";
    case HomogeneityClass::Superhomogeneous: return "superhomogeneous";
    case HomogeneityClass::None: return "none";
  }
  return "none";
}

// Classifies z* = f(z, w), w* = g(z, w). The maps are holomorphic
// polynomials with w in the u slot, weighted one.
inline HomogeneityClass classify_transformation(const std::vector<poly::Polynomial>& f, const poly::Polynomial& g,
                                                const Weight& w) {
  const int n = w.size();
  if (static_cast<int>(f.size()) != n) throw DomainError("need one component f_i per variable");
  bool sub = true, super = true;
  auto visit = [&](const poly::Polynomial& p, const Rational& target) {
    if (p.dimension() != n) throw DomainError("component has wrong dimension");
    for (const auto& [mono, _] : p.terms()) {
      if (mono.zbar_degree() != 0) throw DomainError("transformation components must be holomorphic");
      Rational wt = poly::weighted_degree(mono, w.lambdas);
      if (wt > target) sub = false;
      if (wt < target) super = false;
    }
  };
  for (int i = 0; i < n; ++i) visit(f[i], w.lambdas[i]);
  visit(g, 1);
  if (sub && super) return HomogeneityClass::Homogeneous;
  if (sub) return HomogeneityClass::Subhomogeneous;
  if (super) return HomogeneityClass::Superhomogeneous;
  return HomogeneityClass::None;
}

}  // namespace crinv::multitype
