#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "crinv/error.hpp"
#include "crinv/poly/exact.hpp"

namespace crinv::convexity {

using crinv::to_string;

enum class GammaBranch { Rational, Radical };

inline std::string_view to_string(GammaBranch b) { return b == GammaBranch::Rational ? "rational" : "radical"; }

// gamma_{lk}: k/(l^2 - k) when l^2 >= 3k - 2, otherwise
// sqrt((4k - l^2 - 4) k^2 / ((4k - 4)(k^2 - l^2))).
struct GammaValue {
  int l = 0;
  int k = 0;
  GammaBranch branch = GammaBranch::Rational;
  double value = 0.0;
  // The value itself on the rational branch, the radicand on the radical one.
  Rational exact;
  // l == k: only the rational formula applies there, and the source of the
  // threshold does not treat this case separately.
  bool l_equals_k = false;

  // value^2 exactly.
  Rational squared() const { return branch == GammaBranch::Rational ? exact * exact : exact; }
};

inline Rational gamma_rational_formula(int l, int k) {
  const int den = l * l - k;
  if (den <= 0) throw DomainError("l^2 <= k: rational gamma formula undefined for l=" + std::to_string(l) +
                                  ", k=" + std::to_string(k));
  return Rational(k, den);
}

inline Rational gamma_radicand(int l, int k) {
  const Rational num = Rational(4 * k - l * l - 4) * k * k;
  const Rational den = Rational(4 * k - 4) * (k * k - l * l);
  if (den == 0) throw DomainError("radical gamma formula undefined: (4k-4)(k^2-l^2) = 0 for l=" + std::to_string(l) +
                                  ", k=" + std::to_string(k));
  return num / den;
}

inline GammaValue gamma(int l, int k) {
  if (l < 2 || l > k) throw DomainError("gamma needs 2 <= l <= k; got l=" + std::to_string(l) + ", k=" + std::to_string(k));
  GammaValue g;
  g.l = l;
  g.k = k;
  g.l_equals_k = l == k;
  if (l * l >= 3 * k - 2) {
    g.branch = GammaBranch::Rational;
    g.exact = gamma_rational_formula(l, k);
    g.value = to_double(g.exact);
  } else {
    g.branch = GammaBranch::Radical;
    g.exact = gamma_radicand(l, k);
    if (g.exact < 0) throw DomainError("negative radicand for l=" + std::to_string(l) + ", k=" + std::to_string(k));
    g.value = std::sqrt(to_double(g.exact));
  }
  return g;
}

// "p/q" on the rational branch, "sqrt(p/q)" on the radical one.
inline std::string exact_text(const GammaValue& g) {
  return g.branch == GammaBranch::Rational ? to_string(g.exact) : "sqrt(" + to_string(g.exact) + ")";
}

}  // namespace crinv::convexity
