#pragma once

#include <map>
#include <string>
#include <vector>

#include "crinv/planar/model.hpp"

namespace crinv::planar {

struct NormalFormFailure {
  std::string condition;
  int j = 0;
  int l = 0;
  // Power of u at which the coefficient is nonzero.
  int m = 0;
};

struct NormalFormReport {
  ModelTag branch = ModelTag::Generic;
  std::vector<NormalFormFailure> failures;
  bool passed() const { return failures.empty(); }
};

namespace detail {

// F_{jl}(u) as {m: a_{jlm}}.
inline std::map<std::pair<int, int>, std::map<int, ExactComplex>> split_by_zdegrees(const Polynomial& f) {
  std::map<std::pair<int, int>, std::map<int, ExactComplex>> out;
  for (const auto& [mono, c] : f.terms()) out[{mono.alpha[0], mono.beta[0]}][mono.m] = c;
  return out;
}

}  // namespace detail

// Checks the normal form conditions on F for the branch of mc; every
// F_{jl}(u) is compared coefficient-wise in u.
inline NormalFormReport check_normal_form(const LeadingData& data, const ModelClass& mc) {
  NormalFormReport report;
  report.branch = mc.tag;
  const int k = data.k;
  const int e = mc.e;
  auto fjl = detail::split_by_zdegrees(data.f);

  auto flag = [&](const std::string& cond, int j, int l, const std::map<int, ExactComplex>& coeffs, bool real_only) {
    for (const auto& [m, c] : coeffs) {
      if (real_only ? c.re != 0 : !c.is_zero()) report.failures.push_back({cond, j, l, m});
    }
  };

  for (const auto& [jl, coeffs] : fjl) {
    auto [j, l] = jl;
    switch (mc.tag) {
      case ModelTag::Circular:
        if (l == 0) flag("F_j0 = 0", j, l, coeffs, false);
        else if (j == e && l >= e) flag("F_e,e+j = 0", j, l, coeffs, false);
        else if (j == 2 * e && l == 2 * e) flag("F_2e,2e = 0", j, l, coeffs, false);
        else if (j == 3 * e && l == 3 * e) flag("F_3e,3e = 0", j, l, coeffs, false);
        else if (j == 2 * e && l == 2 * e - 1) flag("F_2e,2e-1 = 0", j, l, coeffs, false);
        break;
      case ModelTag::Tubular:
        if (l == 0 && j >= 1) flag("F_j0 = 0", j, l, coeffs, false);
        else if (l == 1 && j >= k - 1) flag("F_k-1+j,1 = 0", j, l, coeffs, false);
        else if (j == 2 * k - 2 && l == 2) flag("F_2k-2,2 = 0", j, l, coeffs, false);
        if (j == k - 2 && l == 1) flag("Re F_k-2,1 = 0", j, l, coeffs, true);
        if (j == k && l == k - 1) flag("Re F_k,k-1 = 0", j, l, coeffs, true);
        break;
      case ModelTag::Generic:
        if (l == 0 && j >= 1) flag("F_j0 = 0", j, l, coeffs, false);
        else if (l == e && j >= k - e) flag("F_k-e+j,e = 0", j, l, coeffs, false);
        else if (j == 2 * k - 2 * e && l == 2 * e) flag("F_2k-2e,2e = 0", j, l, coeffs, false);
        break;
    }
  }

  if (mc.tag == ModelTag::Generic) {
    auto a = leading_coefficients(data.p, k);
    std::map<int, ExactComplex> pairing;
    for (int j = 1; j <= k - 2; ++j) {
      auto it = fjl.find({j, k - 1 - j});
      if (it == fjl.end()) continue;
      for (const auto& [m, c] : it->second) pairing[m] += c * ExactComplex(j + 1) * a[j + 1].conj();
    }
    for (const auto& [m, c] : pairing)
      if (!c.is_zero()) report.failures.push_back({"(F_k-1, P_z) = 0", 0, k - 1, m});
  }
  return report;
}

}  // namespace crinv::planar
