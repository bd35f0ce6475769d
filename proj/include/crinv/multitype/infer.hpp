#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "crinv/multitype/distinguished.hpp"
#include "crinv/poly/substitute.hpp"

namespace crinv::multitype {

enum class Scope { FixedCoordinates, PermutationSearched };

inline std::string_view to_string(Scope s) {
  return s == Scope::FixedCoordinates ? "fixed_coordinates" : "permutation_searched";
}

struct InferOptions {
  bool permute = false;
  int max_denominator = 1000;
  // Applied to psi before the search, e.g. to absorb pluriharmonic terms.
  std::optional<poly::Substitution> pre_transform;
};

struct MultitypeResult {
  Weight weight;
  std::vector<std::optional<Rational>> m;
  Scope scope = Scope::FixedCoordinates;
  // Variable j of the searched coordinates is z_{permutation[j]} of the input.
  std::vector<int> permutation;
  WeightValidation validation;
  DistinguishedReport distinguished;
};

namespace detail {

struct Hyperplane {
  std::vector<Rational> a;
  Rational b;
};

// Unique solution of the square system, or nullopt when singular.
inline std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

// Vertices of the arrangement formed by the support hyperplanes
// sum (alpha_j + beta_j) lambda_j = 1 of the u-free terms together with the
// box and monotonicity walls.
inline std::set<std::vector<Rational>> candidate_weights(const Polynomial& psi) {
  const int n = psi.dimension();
  std::set<std::vector<Rational>> exponents;
  for (const auto& [mono, _] : psi.terms()) {
    if (mono.m != 0) continue;
    std::vector<Rational> e(n);
    for (int j = 0; j < n; ++j) e[j] = mono.alpha[j] + mono.beta[j];
    exponents.insert(e);
  }
  std::vector<Hyperplane> planes;
  for (const auto& e : exponents) planes.push_back({e, 1});
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> unit(n);
    unit[j] = 1;
    planes.push_back({unit, 0});
    planes.push_back({unit, Rational(1, 2)});
    if (j + 1 < n) {
      std::vector<Rational> diff(n);
      diff[j] = 1;
      diff[j + 1] = -1;
      planes.push_back({diff, 0});
    }
  }

  std::set<std::vector<Rational>> out;
  const int h = static_cast<int>(planes.size());
  if (h < n) return out;
  std::vector<bool> pick(h, false);
  std::fill(pick.begin(), pick.begin() + n, true);
  do {
    std::vector<std::vector<Rational>> m;
    std::vector<Rational> rhs;
    for (int i = 0; i < h; ++i) {
      if (!pick[i]) continue;
      m.push_back(planes[i].a);
      rhs.push_back(planes[i].b);
    }
    auto sol = solve_exact(std::move(m), std::move(rhs));
    if (!sol) continue;
    bool in_box = true;
    for (int j = 0; j < n && in_box; ++j) {
      if ((*sol)[j] < 0 || (*sol)[j] > Rational(1, 2)) in_box = false;
      if (j > 0 && (*sol)[j] > (*sol)[j - 1]) in_box = false;
    }
    if (in_box) out.insert(*sol);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

inline Polynomial permute_variables(const Polynomial& p, const std::vector<int>& perm) {
  const int n = p.dimension();
  Polynomial out(n);
  for (const auto& [mono, c] : p.terms()) {
    Monomial moved{std::vector<int>(n), std::vector<int>(n), mono.m};
    for (int j = 0; j < n; ++j) {
      moved.alpha[j] = mono.alpha[perm[j]];
      moved.beta[j] = mono.beta[perm[j]];
    }
    out.add_term(moved, c);
  }
  return out;
}

// Candidates come out in lexicographic order, so the first one passing both
// checks is the minimum.
inline std::optional<MultitypeResult> infer_fixed(const Polynomial& psi, int max_denominator) {
  for (const auto& lambdas : candidate_weights(psi)) {
    bool small = std::all_of(lambdas.begin(), lambdas.end(),
                             [&](const Rational& l) { return denominator(l) <= max_denominator; });
    if (!small) continue;
    Weight w{lambdas};
    auto dist = is_distinguished(w, psi);
    if (!dist.distinguished) continue;
    auto val = validate_weight(w);
    if (!val.valid) continue;
    MultitypeResult r;
    r.weight = w;
    r.m = multitype_entries(w);
    r.validation = std::move(val);
    r.distinguished = std::move(dist);
    return r;
  }
  return std::nullopt;
}

}  // namespace detail

// Lexicographically smallest valid distinguished weight in the given
// coordinates, or over all orderings of the variables when opts.permute.
inline MultitypeResult infer_multitype(const Polynomial& input, const InferOptions& opts = {}) {
  Polynomial psi = opts.pre_transform ? poly::substitute(input, *opts.pre_transform) : input;
  if (!poly::is_real_valued(psi)) throw PreconditionError("defining function is not real-valued");
  bool has_mixed = false;
  for (const auto& [mono, _] : psi.terms())
    if (mono.m == 0 && mono.is_mixed()) has_mixed = true;
  if (!has_mixed) throw PreconditionError("no u-free mixed term, so no weight can be distinguished");

  const int n = psi.dimension();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<MultitypeResult> best;
  do {
    auto r = detail::infer_fixed(detail::permute_variables(psi, perm), opts.max_denominator);
    if (r && (!best || r->weight < best->weight)) {
      r->permutation = perm;
      best = std::move(r);
    }
  } while (opts.permute && std::next_permutation(perm.begin(), perm.end()));

  if (!best)
    throw Error(ErrorCode::no_solution,
                "no distinguished weight with denominator <= " + std::to_string(opts.max_denominator));
  best->scope = opts.permute ? Scope::PermutationSearched : Scope::FixedCoordinates;
  return *best;
}

}  // namespace crinv::multitype
