#pragma once

#include <cstdlib>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include <json.hpp>

#include "crinv/planar/normal_form.hpp"

namespace crinv::planar {

using Triple = std::tuple<int, int, int>;

struct ThetaMu {
  std::set<Triple> theta;
  std::optional<int> mu0;
};

// Theta_1 from the off-diagonal terms of F, Theta_2 from the off-diagonal
// coefficients of the leading polynomial; mu0 is the gcd of |j - l|.
inline ThetaMu theta_mu(const LeadingData& data, const Polynomial& leading) {
  ThetaMu out;
  for (const auto& [mono, _] : data.f.terms())
    if (mono.alpha[0] != mono.beta[0]) out.theta.emplace(mono.alpha[0], mono.beta[0], mono.m);
  auto a = leading_coefficients(leading, data.k);
  for (int j = 0; j <= data.k; ++j)
    if (!a[j].is_zero() && 2 * j != data.k) out.theta.emplace(j, data.k - j, 0);
  int g = 0;
  for (const auto& [j, l, m] : out.theta) g = std::gcd(g, std::abs(j - l));
  if (!out.theta.empty()) out.mu0 = g;
  return out;
}

enum class AutTag { Model, Infinite, Finite, Trivial };

inline std::string_view to_string(AutTag tag) {
  switch (tag) {
    case AutTag::Model: return "model";
    case AutTag::Infinite: return "infinite";
    case AutTag::Finite: return "finite";
    case AutTag::Trivial: return "trivial";
  }
  return "trivial";
}

struct AutClassification {
  AutTag tag = AutTag::Trivial;
  std::string description;
  std::set<Triple> theta;
  std::optional<int> mu0;
};

struct PlanarReport {
  LeadingData leading;
  NormalizedLeading normalized;
  ModelClass model;
  NormalFormReport normal_form;
  AutClassification aut;
  int truncation_degree = 0;
  // F is nonzero but contributes nothing off the diagonal: the conclusion
  // assumes M is not equivalent to the model, which the truncation alone
  // cannot confirm.
  bool model_equivalence_caveat = false;
};

// Full pipeline for a defining function in pre-normalized shape. Throws
// PreconditionError when the normal form conditions fail.
inline PlanarReport analyze_planar(const Polynomial& psi) {
  PlanarReport r;
  r.leading = extract_leading(psi);
  r.normalized = normalize_leading(r.leading.p);
  r.model = classify_model(r.normalized);
  r.normal_form = check_normal_form(r.leading, r.model);
  r.truncation_degree = r.leading.truncation_degree;

  if (r.leading.f.is_zero()) {
    r.aut.tag = AutTag::Model;
    r.aut.description = model_aut_description(r.model).text;
    return r;
  }
  if (!r.normal_form.passed()) {
    const auto& f = r.normal_form.failures.front();
    throw PreconditionError("requires normal coordinates: " + f.condition + " violated at (j, l, m) = (" +
                            std::to_string(f.j) + ", " + std::to_string(f.l) + ", " + std::to_string(f.m) + ")");
  }
  auto tm = theta_mu(r.leading, r.normalized.exact ? *r.normalized.exact : r.leading.p);
  r.aut.theta = tm.theta;
  r.aut.mu0 = tm.mu0;
  bool theta1_empty = true;
  for (const auto& [mono, _] : r.leading.f.terms())
    if (mono.alpha[0] != mono.beta[0]) theta1_empty = false;
  r.model_equivalence_caveat = theta1_empty;

  if (!tm.mu0) {
    r.aut.tag = AutTag::Infinite;
    r.aut.description = "one-parameter rotation group z -> e^(i*theta)*z";
  } else if (*tm.mu0 >= 2) {
    r.aut.tag = AutTag::Finite;
    r.aut.description = "Z_" + std::to_string(*tm.mu0);
  } else {
    r.aut.tag = AutTag::Trivial;
    r.aut.description = "identity only";
  }
  return r;
}

inline AutClassification aut_classification(const Polynomial& psi) { return analyze_planar(psi).aut; }

inline nlohmann::json to_json(const PlanarReport& r) {
  const auto& inv = r.normalized.invariants;
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.normal_form.failures)
    failures.push_back({{"condition", f.condition}, {"j", f.j}, {"l", f.l}, {"m", f.m}});
  nlohmann::json theta = nlohmann::json::array();
  for (const auto& [j, l, m] : r.aut.theta) theta.push_back({j, l, m});
  nlohmann::json out = {
      {"k", inv.k},
      {"e", inv.e},
      {"d", inv.d ? nlohmann::json(*inv.d) : nlohmann::json(nullptr)},
      {"m_indices", inv.m_indices},
      {"q_chain", inv.q_chain},
      {"model", to_string(r.model.tag)},
      {"normal_form", {{"branch", to_string(r.normal_form.branch)}, {"failures", failures}}},
      {"theta", theta},
      {"mu0", r.aut.mu0 ? nlohmann::json(*r.aut.mu0) : nlohmann::json(nullptr)},
      {"aut", to_string(r.aut.tag)},
      {"aut_description", r.aut.description},
      {"truncation_degree", r.truncation_degree},
      {"model_equivalence_caveat", r.model_equivalence_caveat},
  };
  return out;
}

}  // namespace crinv::planar
