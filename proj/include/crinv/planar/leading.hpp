#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "crinv/poly/polynomial.hpp"

namespace crinv::planar {

using poly::Monomial;
using poly::Polynomial;

// Psi = P + F with P the homogeneous leading part of degree k.
struct LeadingData {
  int k = 0;
  Polynomial p{1};
  Polynomial f{1};
  // Highest total degree present in the input; invariants read off F are
  // only as reliable as this truncation.
  int truncation_degree = 0;
};

// Coefficient of z^j zbar^(k-j) in P, j = 0..k.
inline std::vector<ExactComplex> leading_coefficients(const Polynomial& p, int k) {
  std::vector<ExactComplex> a(k + 1);
  for (int j = 0; j <= k; ++j) a[j] = p.coefficient(Monomial({j}, {k - j}, 0));
  return a;
}

// Splits a C^2 defining function into its leading homogeneous mixed part and
// the remainder. The input must already be in the pre-normalized shape
// v = P(z, zbar) + o(|z|^k + |u|): no harmonic terms up to degree k and no
// linear u term.
inline LeadingData extract_leading(const Polynomial& psi) {
  if (psi.dimension() != 1) throw PreconditionError("planar invariants need n = 1");
  if (!is_real_valued(psi)) throw PreconditionError("defining function is not real-valued");

  std::optional<int> k;
  for (const auto& [mono, _] : psi.terms())
    if (mono.m == 0 && mono.is_mixed()) k = std::min(k.value_or(mono.total_degree()), mono.total_degree());
  if (!k)
    throw PreconditionError(
        "not in pre-normalized shape: no u-free mixed term, so the point is not of finite type in these coordinates");

  for (const auto& [mono, _] : psi.terms()) {
    if (mono.m == 0 && !mono.is_mixed() && mono.total_degree() <= *k)
      throw PreconditionError("not in pre-normalized shape: harmonic term " +
                              to_string(Polynomial::monomial(1, mono, 1)) + " of degree " +
                              std::to_string(mono.total_degree()) + " <= leading degree " + std::to_string(*k));
    if (mono.m == 1 && mono.z_degree() == 0 && mono.zbar_degree() == 0)
      throw PreconditionError("not in pre-normalized shape: linear u term, so {v = 0} is not tangent");
  }

  LeadingData data;
  data.k = *k;
  data.p = psi.filter([&](const Monomial& m) { return m.m == 0 && m.total_degree() == *k; });
  data.f = psi - data.p;
  data.truncation_degree = psi.total_degree();
  return data;
}

struct PlanarInvariants {
  int k = 0;
  int e = 0;
  std::optional<int> d;
  // Indices m_0 < m_1 < ... < m_s below k/2 with a nonzero coefficient.
  std::vector<int> m_indices;
  // q_i = gcd(k-2m_0..k-2m_i) / gcd(k-2m_0..k-2m_{i+1}), i = 0..s-1.
  std::vector<int> q_chain;
};

// Running gcds g_i = gcd(k - 2m_0, ..., k - 2m_i).
inline std::vector<int> running_gcds(int k, const std::vector<int>& m_indices) {
  std::vector<int> g;
  int acc = 0;
  for (int m : m_indices) {
    acc = std::gcd(acc, k - 2 * m);
    g.push_back(acc);
  }
  return g;
}

inline PlanarInvariants planar_invariants(const Polynomial& p) {
  auto k = poly::homogeneous_degree(p);
  if (!k || p.dimension() != 1) throw PreconditionError("leading polynomial must be homogeneous in z, zbar with n = 1");
  auto a = leading_coefficients(p, *k);
  PlanarInvariants inv;
  inv.k = *k;
  for (int j = 0; j <= *k; ++j) {
    if (!a[j].is_zero()) {
      inv.e = j;
      break;
    }
  }
  if (inv.e == 0) throw PreconditionError("leading polynomial has a harmonic term or is zero");
  for (int j = inv.e; 2 * j < *k; ++j)
    if (!a[j].is_zero()) inv.m_indices.push_back(j);
  if (2 * inv.e < *k) {
    auto g = running_gcds(*k, inv.m_indices);
    inv.d = g.back();
    for (std::size_t i = 0; i + 1 < g.size(); ++i) inv.q_chain.push_back(g[i] / g[i + 1]);
  }
  return inv;
}

}  // namespace crinv::planar
