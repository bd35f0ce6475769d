#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include "crinv/convexity/gamma.hpp"
#include "crinv/poly/hessian.hpp"

namespace crinv::convexity {

using poly::Monomial;
using poly::Polynomial;

// P = |z|^k + a |z|^(k-l) Re z^l.
struct KNModel {
  int k = 0;
  int l = 0;
  Rational a;
};

namespace detail {

inline void check_model_shape(int k, int l) {
  if (l < 2 || l > k) throw DomainError("model needs 2 <= l <= k");
  if ((k - l) % 2 != 0)
    throw DomainError("k - l must be even for |z|^(k-l) to be a polynomial; got k=" + std::to_string(k) +
                      ", l=" + std::to_string(l));
}

// |z|^(k-l) Re z^l.
inline Polynomial kn_perturbation(int k, int l) {
  const int h = (k - l) / 2;
  Polynomial p(1);
  p.add_term(Monomial({h + l}, {h}, 0), Rational(1, 2));
  p.add_term(Monomial({h}, {h + l}, 0), Rational(1, 2));
  return p;
}

}  // namespace detail

inline Polynomial kn_model_polynomial(const KNModel& mdl) {
  detail::check_model_shape(mdl.k, mdl.l);
  if (mdl.a < 0) throw DomainError("model coefficient a must be nonnegative");
  Polynomial p(1);
  p.add_term(Monomial({mdl.k / 2}, {mdl.k / 2}, 0), 1);
  return p + ExactComplex(mdl.a) * detail::kn_perturbation(mdl.k, mdl.l);
}

struct ModelConvexity {
  bool convex = false;
  // Present when l does not divide k, where convexity and convexifiability
  // agree.
  std::optional<bool> convexifiable;
  GammaValue gamma;
};

// a <= gamma decided exactly: against the rational value, or a^2 against the
// radicand.
inline ModelConvexity model_convexity(const KNModel& mdl) {
  if (mdl.a < 0) throw DomainError("model coefficient a must be nonnegative");
  ModelConvexity out;
  out.gamma = gamma(mdl.l, mdl.k);
  out.convex = out.gamma.branch == GammaBranch::Rational ? mdl.a <= out.gamma.exact : mdl.a * mdl.a <= out.gamma.exact;
  if (mdl.k % mdl.l != 0) out.convexifiable = out.convex;
  return out;
}

struct ThresholdOptions {
  double tol = 1e-6;
  int angles = 720;
  double psd_eps = 1e-12;
  int max_doublings = 40;
};

// Convexity threshold of P^{k,l}_a located by bisection on a, testing the
// 2x2 real Hessian for positive semidefiniteness on an angular grid at radii
// 1/2 and 1. Independent of the closed-form gamma.
inline double numeric_convexity_threshold(int k, int l, const ThresholdOptions& opts = {}) {
  detail::check_model_shape(k, l);
  Polynomial base(1);
  base.add_term(Monomial({k / 2}, {k / 2}, 0), 1);
  poly::RealHessian hb(base), hp(detail::kn_perturbation(k, l));

  std::vector<Eigen::Matrix2d> hb_pts, hp_pts;
  for (double r : {0.5, 1.0}) {
    for (int i = 0; i < opts.angles; ++i) {
      double t = 2 * std::numbers::pi * i / opts.angles;
      std::array<double, 3> pt{r * std::cos(t), r * std::sin(t), 0.0};
      hb_pts.push_back(hb(pt).topLeftCorner<2, 2>());
      hp_pts.push_back(hp(pt).topLeftCorner<2, 2>());
    }
  }
  auto convex_at = [&](double a) {
    for (std::size_t i = 0; i < hb_pts.size(); ++i) {
      Eigen::Matrix2d h = hb_pts[i] + a * hp_pts[i];
      if (h.determinant() < -opts.psd_eps || h.trace() < -opts.psd_eps) return false;
    }
    return true;
  };

  double lo = 0.0, hi = 1.0;
  if (!convex_at(lo)) throw Error(ErrorCode::internal, "base model |z|^k fails the convexity test");
  int doublings = 0;
  while (convex_at(hi)) {
    lo = hi;
    hi *= 2;
    if (++doublings > opts.max_doublings) throw Error(ErrorCode::internal, "convexity threshold search did not terminate");
  }
  for (int iter = 0; iter < 200 && hi - lo > opts.tol; ++iter) {
    double mid = 0.5 * (lo + hi);
    (convex_at(mid) ? lo : hi) = mid;
  }
  if (hi - lo > opts.tol) throw Error(ErrorCode::internal, "bisection did not converge");
  return 0.5 * (lo + hi);
}

}  // namespace crinv::convexity
