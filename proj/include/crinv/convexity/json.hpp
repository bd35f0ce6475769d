#pragma once

#include <json.hpp>

#include "crinv/convexity/kn_model.hpp"
#include "crinv/convexity/kn_number.hpp"

namespace crinv::convexity {

inline nlohmann::json to_json(const GammaValue& g) {
  return {{"l", g.l},
          {"k", g.k},
          {"branch", to_string(g.branch)},
          {"exact", exact_text(g)},
          {"value", g.value},
          {"l_equals_k", g.l_equals_k}};
}

// Complex vectors as arrays of [re, im] pairs.
inline nlohmann::json complex_vector_json(const ComplexVector& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : c) out.push_back({x.real(), x.imag()});
  return out;
}

inline nlohmann::json to_json(const KNReport& r) {
  nlohmann::json per_l = nlohmann::json::array();
  for (const auto& e : r.per_l) {
    per_l.push_back({{"l", e.kn.l},
                     {"kappa", e.kn.kappa},
                     {"witness", complex_vector_json(e.kn.witness)},
                     {"gamma", to_json(e.gamma)},
                     {"threshold", e.threshold},
                     {"threshold_kind", 2 * e.kn.l > r.m ? "gamma" : "2gamma"},
                     {"margin", e.margin}});
  }
  nlohmann::json verdict = {{"tag", to_string(r.verdict)}};
  if (r.obstruction) {
    const auto& e = r.per_l[*r.obstruction];
    verdict["l"] = e.kn.l;
    verdict["witness"] = complex_vector_json(e.kn.witness);
  }
  return {{"m", r.m}, {"per_l", per_l}, {"verdict", verdict}};
}

inline nlohmann::json to_json(const std::vector<AxisReport>& axes) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& ax : axes) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : ax.entries) {
      entries.push_back({{"l", e.l},
                         {"a_l", {e.a_l.real(), e.a_l.imag()}},
                         {"ratio", e.ratio},
                         {"gamma", to_json(e.gamma)},
                         {"threshold", e.threshold},
                         {"violated", e.violated}});
    }
    out.push_back({{"axis", ax.axis}, {"a0", ax.a0}, {"entries", entries}});
  }
  return out;
}

inline nlohmann::json to_json(const KNModel& mdl, const ModelConvexity& c) {
  nlohmann::json out = {{"k", mdl.k},    {"l", mdl.l}, {"a", to_string(mdl.a)}, {"gamma", to_json(c.gamma)},
                        {"convex", c.convex}};
  out["convexifiable"] = c.convexifiable ? nlohmann::json(*c.convexifiable) : nlohmann::json(nullptr);
  return out;
}

}  // namespace crinv::convexity
