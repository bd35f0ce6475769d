#pragma once

#include <json.hpp>

#include "crinv/poly/polynomial.hpp"

namespace crinv::poly {

// {"n": int, "terms": [{"alpha": [...], "beta": [...], "m": int, "re": "p/q", "im": "p/q"}]}
inline nlohmann::json to_json(const Polynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mono, coeff] : p.terms()) {
    terms.push_back({{"alpha", mono.alpha},
                     {"beta", mono.beta},
                     {"m", mono.m},
                     {"re", to_string(coeff.re)},
                     {"im", to_string(coeff.im)}});
  }
  return {{"n", p.dimension()}, {"terms", terms}};
}

inline Polynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    int n = j.at("n").get<int>();
    Polynomial p(n);
    for (const auto& t : j.at("terms")) {
      Monomial mono(t.at("alpha").get<std::vector<int>>(), t.at("beta").get<std::vector<int>>(),
                    t.value("m", 0));
      if (mono.dimension() != n || static_cast<int>(mono.beta.size()) != n)
        throw DomainError("term exponent vectors must have length n");
      for (int j2 = 0; j2 < n; ++j2)
        if (mono.alpha[j2] < 0 || mono.beta[j2] < 0) throw DomainError("negative exponent");
      if (mono.m < 0) throw DomainError("negative exponent");
      ExactComplex c(parse_rational(t.value("re", std::string("0"))),
                     parse_rational(t.value("im", std::string("0"))));
      p.add_term(mono, c);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

}  // namespace crinv::poly
