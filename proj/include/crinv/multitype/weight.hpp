#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crinv/poly/exact.hpp"

namespace crinv::multitype {

using crinv::to_string;

struct Weight {
  std::vector<Rational> lambdas;

  int size() const { return static_cast<int>(lambdas.size()); }
  friend bool operator==(const Weight&, const Weight&) = default;
  // Lexicographic order on (lambda_1, ..., lambda_n).
  friend bool operator<(const Weight& a, const Weight& b) { return a.lambdas < b.lambdas; }
};

inline std::string to_string(const Weight& w) {
  std::string s = "(";
  for (int j = 0; j < w.size(); ++j) s += (j ? ", " : "") + to_string(w.lambdas[j]);
  return s + ")";
}

// m_j = 1/lambda_j; nullopt stands for an infinite entry.
inline std::vector<std::optional<Rational>> multitype_entries(const Weight& w) {
  std::vector<std::optional<Rational>> m;
  for (const auto& l : w.lambdas) m.push_back(l > 0 ? std::optional<Rational>(1 / l) : std::nullopt);
  return m;
}

struct WeightValidation {
  bool valid = false;
  std::string reason;
  // witnesses[k] has l_k > 0 and sum l_j lambda_j = 1.
  std::vector<std::vector<int>> witnesses;
};

namespace detail {

// Depth-first search for nonnegative l with sum l_j lambda_j = target over
// the columns with lambda_j > 0, l_j <= floor(target / lambda_j).
inline bool complete_sum(const std::vector<Rational>& lambdas, std::size_t j, const Rational& target,
                         std::vector<int>& l) {
  if (target == 0) return true;
  if (j == lambdas.size()) return false;
  if (l[j] != 0 || lambdas[j] == 0) return complete_sum(lambdas, j + 1, target, l);
  Rational bound = target / lambdas[j];
  int top = static_cast<int>(numerator(bound) / denominator(bound));
  for (int c = top; c >= 0; --c) {
    l[j] = c;
    if (complete_sum(lambdas, j + 1, target - c * lambdas[j], l)) return true;
  }
  l[j] = 0;
  return false;
}

}  // namespace detail

inline WeightValidation validate_weight(const Weight& w) {
  WeightValidation out;
  const auto& lam = w.lambdas;
  if (lam.empty()) {
    out.reason = "empty weight";
    return out;
  }
  for (int j = 0; j < w.size(); ++j) {
    if (lam[j] < 0 || lam[j] > Rational(1, 2)) {
      out.reason = "lambda_" + std::to_string(j + 1) + " outside [0, 1/2]";
      return out;
    }
    if (j > 0 && lam[j] > lam[j - 1]) {
      out.reason = "weights not nonincreasing at position " + std::to_string(j + 1);
      return out;
    }
  }
  for (int k = 0; k < w.size(); ++k) {
    std::vector<int> l(lam.size(), 0);
    bool found = false;
    if (lam[k] == 0) {
      l[k] = 1;
      found = detail::complete_sum(lam, 0, 1, l);
    } else {
      Rational bound = 1 / lam[k];
      int top = static_cast<int>(numerator(bound) / denominator(bound));
      // Largest l_k first, so pure witnesses are preferred.
      for (int c = top; c >= 1 && !found; --c) {
        std::fill(l.begin(), l.end(), 0);
        l[k] = c;
        found = detail::complete_sum(lam, 0, 1 - c * lam[k], l);
      }
    }
    if (!found) {
      out.reason = "no nonnegative integers l with l_" + std::to_string(k + 1) + " > 0 and sum l_j lambda_j = 1";
      out.witnesses.clear();
      return out;
    }
    out.witnesses.push_back(l);
  }
  out.valid = true;
  return out;
}

}  // namespace crinv::multitype
