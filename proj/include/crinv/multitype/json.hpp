#pragma once

#include <json.hpp>

#include "crinv/multitype/equivalence.hpp"
#include "crinv/multitype/infer.hpp"
#include "crinv/poly/json.hpp"

namespace crinv::multitype {

// Integral entries are numbers, others "p/q" strings, infinite ones "inf".
inline nlohmann::json multitype_entry_json(const std::optional<Rational>& m) {
  if (!m) return "inf";
  if (is_integer(*m)) return numerator(*m).convert_to<long long>();
  return to_string(*m);
}

inline nlohmann::json to_json(const MultitypeResult& r) {
  nlohmann::json weight = nlohmann::json::array(), entries = nlohmann::json::array();
  for (const auto& l : r.weight.lambdas) weight.push_back(to_string(l));
  for (const auto& m : r.m) entries.push_back(multitype_entry_json(m));
  return {{"weight", weight},
          {"multitype", entries},
          {"scope", to_string(r.scope)},
          {"permutation", r.permutation},
          {"certificate",
           {{"witnesses", r.validation.witnesses},
            {"weight1_part", poly::to_json(r.distinguished.weight1_part)},
            {"weight1_part_text", poly::to_string(r.distinguished.weight1_part)}}}};
}

inline nlohmann::json to_json(const LinearEquivalence& e) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < e.L.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < e.L.cols(); ++j) {
      if (e.exact_L) row.push_back(to_string((*e.exact_L)[i][j]));
      else row.push_back({e.L(i, j).real(), e.L(i, j).imag()});
    }
    rows.push_back(row);
  }
  nlohmann::json out = {{"exact", e.exact()}, {"L", rows}};
  if (e.exact_c) out["c"] = to_string(*e.exact_c);
  else out["c"] = e.c;
  if (!e.exact()) out["residual"] = e.residual;
  return out;
}

}  // namespace crinv::multitype
