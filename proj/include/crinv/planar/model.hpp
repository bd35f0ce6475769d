#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "crinv/planar/normalize.hpp"

namespace crinv::planar {

enum class ModelTag { Circular, Tubular, Generic };

inline std::string_view to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::Circular: return "circular";
    case ModelTag::Tubular: return "tubular";
    case ModelTag::Generic: return "generic";
  }
  return "generic";
}

struct ModelClass {
  ModelTag tag = ModelTag::Generic;
  int k = 0;
  int e = 0;
  std::optional<int> d;
};

namespace detail {

inline Rational binomial(int n, int r) {
  Rational b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

// True iff P lies in the orbit of T_k = (1/k)[(z + zbar)^k - 2 Re z^k] under
// a_j -> s a_j e^{i(2j-k)theta}, s > 0. All comparisons are exact:
// consecutive ratios a_{j+1} t_j / (a_j t_{j+1}) must equal one unimodular r
// and some square root w of r must satisfy a_1 w^(k-2) > 0.
inline bool is_tubular_orbit(const std::vector<ExactComplex>& a, int k) {
  if (k < 3) return false;
  for (int j = 1; j < k; ++j)
    if (a[j].is_zero()) return false;
  auto t = [&](int j) { return ExactComplex(binomial(k, j) / k); };
  ExactComplex r = a[2] * t(1) / (a[1] * t(2));
  if (r.norm() != 1) return false;
  for (int j = 2; j + 1 < k; ++j)
    if (!(a[j + 1] * t(j) / (a[j] * t(j + 1)) == r)) return false;
  ExactComplex probe = k % 2 == 0 ? a[1] * pow(r, (k - 2) / 2) : a[1] * a[1] * pow(r, k - 2);
  return probe.im == 0 && probe.re > 0;
}

}  // namespace detail

// Exact leading polynomial of the tubular model T_k.
inline Polynomial tubular_model(int k) {
  Polynomial p(1);
  for (int j = 1; j < k; ++j) p.add_term(Monomial({j}, {k - j}, 0), detail::binomial(k, j) / k);
  return p;
}

// Membership in the S_k / T_k orbits is decided exactly on the source
// coefficients, so the result does not depend on whether the rotation
// bringing P to normal form is representable exactly.
inline ModelClass classify_model(const NormalizedLeading& normalized) {
  const auto& inv = normalized.invariants;
  ModelClass mc{ModelTag::Generic, inv.k, inv.e, inv.d};
  if (2 * inv.e == inv.k) {
    mc.tag = ModelTag::Circular;
  } else if (detail::is_tubular_orbit(leading_coefficients(normalized.source, inv.k), inv.k)) {
    mc.tag = ModelTag::Tubular;
  }
  return mc;
}

struct ModelAutGroup {
  bool three_dimensional = false;
  // Dilations range over R* (k odd) rather than R+ (k even).
  bool signed_dilations = false;
  int d = 1;
  std::string text;
};

inline ModelAutGroup model_aut_description(const ModelClass& mc) {
  ModelAutGroup g;
  if (mc.tag == ModelTag::Circular) {
    g.three_dimensional = true;
    g.text = "3-dimensional: z -> delta*e^(i*theta)*z/(1+mu*w)^(1/" + std::to_string(mc.e) +
             "), w -> delta^" + std::to_string(mc.k) + "*w/(1+mu*w), delta > 0, theta and mu real";
    return g;
  }
  g.d = mc.d.value_or(1);
  g.signed_dilations = mc.k % 2 != 0;
  g.text = std::string(g.signed_dilations ? "R*" : "R+") + " (+) Z_" + std::to_string(g.d) +
           ": z -> delta*e^(i*theta)*z, w -> delta^" + std::to_string(mc.k) + "*w, e^(i*theta) a " +
           std::to_string(g.d) + "-th root of unity";
  return g;
}

}  // namespace crinv::planar
