#pragma once

#include <boost/multiprecision/integer.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "crinv/planar/leading.hpp"

namespace crinv::planar {

// Rotation angle; over_pi holds theta/pi exactly when it is rational.
struct Angle {
  std::optional<Rational> over_pi;
  double radians = 0.0;
};

// Result of bringing the leading polynomial to the form with a_e = 1 and
// arg a_{m_{i+1}} in [0, 2pi/q_i). The map applied is
//   a_j -> scale * a_j * e^{i(2j-k)theta}
// i.e. a rotation of z combined with a positive rescaling.
struct NormalizedLeading {
  Polynomial source{1};
  PlanarInvariants invariants;
  // a*_j for j = 0..k.
  std::vector<std::complex<double>> coefficients;
  double scale = 1.0;
  std::optional<Rational> exact_scale;
  Angle theta;
  // P* with exact coefficients, present when every rotated coefficient is a
  // Gaussian rational (the rotation factors are fourth roots of unity and
  // |a_e| is rational).
  std::optional<Polynomial> exact;
};

namespace detail {

inline constexpr double kAngleSnap = 1e-12;

// Angle reduced to [0, 2pi), snapping values within kAngleSnap of 2pi to 0.
inline double reduce_angle(double phi) {
  const double two_pi = 2 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi - kAngleSnap) r = 0.0;
  return r;
}

// arg(c)/pi when c lies on an axis or a diagonal, the only rational multiples
// of pi attained by Gaussian rationals.
inline std::optional<Rational> exact_arg_over_pi(const ExactComplex& c) {
  if (c.is_zero()) return std::nullopt;
  const auto& x = c.re;
  const auto& y = c.im;
  if (y == 0) return x > 0 ? Rational(0) : Rational(1);
  if (x == 0) return y > 0 ? Rational(1, 2) : Rational(3, 2);
  if (x == y) return x > 0 ? Rational(1, 4) : Rational(5, 4);
  if (x == -y) return x > 0 ? Rational(7, 4) : Rational(3, 4);
  return std::nullopt;
}

inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  Integer num = numerator(r), den = denominator(r);
  Integer sn = boost::multiprecision::sqrt(num), sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

// e^{i pi x} for x in (1/2)Z, exactly.
inline std::optional<ExactComplex> quarter_turn(const Rational& x) {
  Rational twice = 2 * x;
  if (!is_integer(twice)) return std::nullopt;
  Integer q = numerator(twice) % 4;
  if (q < 0) q += 4;
  switch (q.convert_to<int>()) {
    case 0: return ExactComplex(1);
    case 1: return ExactComplex(0, 1);
    case 2: return ExactComplex(-1);
    default: return ExactComplex(0, -1);
  }
}

}  // namespace detail

struct RotationScaling {
  double scale = 1.0;
  double theta = 0.0;
  // Residual-group steps taken while descending the q-chain: theta is
  // arg(a_e)/(k-2e) + sum 2 pi t_i / g_i.
  std::vector<std::pair<int, int>> steps;
  std::vector<std::complex<double>> coefficients;
};

// Float core of the normalization, shared by the exact entry point and by
// re-normalization of already normalized coefficients.
inline RotationScaling normalize_coefficients(const std::vector<std::complex<double>>& af,
                                              const PlanarInvariants& inv) {
  const int k = inv.k;
  const int e = inv.e;
  RotationScaling out;
  out.scale = 1.0 / std::abs(af[e]);
  if (2 * e < k) {
    out.theta = std::arg(af[e]) / (k - 2 * e);
    const auto& mi = inv.m_indices;
    auto g = running_gcds(k, mi);
    for (std::size_t i = 0; i + 1 < mi.size(); ++i) {
      const int target = mi[i + 1];
      const double sector = 2 * std::numbers::pi / inv.q_chain[i];
      int chosen = -1;
      for (int t = 0; t < g[i]; ++t) {
        double trial = out.theta + 2 * std::numbers::pi * t / g[i];
        double psi = detail::reduce_angle(std::arg(af[target]) + (2 * target - k) * trial);
        if (psi < sector - detail::kAngleSnap || psi == 0.0) {
          chosen = t;
          break;
        }
      }
      if (chosen < 0) throw Error(ErrorCode::internal, "rotation search for the q-chain failed");
      out.theta += 2 * std::numbers::pi * chosen / g[i];
      out.steps.emplace_back(chosen, g[i]);
    }
  }
  out.coefficients.resize(k + 1);
  for (int j = 0; j <= k; ++j) {
    if (af[j] == 0.0) continue;
    out.coefficients[j] = out.scale * af[j] * std::polar(1.0, (2 * j - k) * out.theta);
  }
  out.coefficients[e] = 1.0;
  out.coefficients[k - e] = 1.0;
  return out;
}

inline NormalizedLeading normalize_leading(const Polynomial& p) {
  NormalizedLeading out;
  out.source = p;
  out.invariants = planar_invariants(p);
  const int k = out.invariants.k;
  const int e = out.invariants.e;
  auto a = leading_coefficients(p, k);
  std::vector<std::complex<double>> af(k + 1);
  for (int j = 0; j <= k; ++j) af[j] = a[j].to_complex();

  if (2 * e == k && a[e].re <= 0)
    throw PreconditionError("circular leading coefficient must be positive; apply w -> -w first");

  RotationScaling rs = normalize_coefficients(af, out.invariants);
  out.scale = rs.scale;
  out.coefficients = std::move(rs.coefficients);
  out.theta.radians = rs.theta;
  if (auto r = detail::exact_sqrt(a[e].norm())) out.exact_scale = 1 / *r;

  if (2 * e == k) {
    out.theta.over_pi = Rational(0);
  } else if (auto arg_pi = detail::exact_arg_over_pi(a[e])) {
    // std::arg returns values in (-pi, pi]
    Rational theta_pi = (*arg_pi > 1 ? Rational(*arg_pi - 2) : *arg_pi) / (k - 2 * e);
    for (auto [t, g] : rs.steps) theta_pi += Rational(2 * t, g);
    out.theta.over_pi = theta_pi;
    out.theta.radians = to_double(theta_pi) * std::numbers::pi;
  }

  if (out.exact_scale && out.theta.over_pi) {
    Polynomial exact(1);
    bool ok = true;
    for (int j = 0; j <= k && ok; ++j) {
      if (a[j].is_zero()) continue;
      auto rot = detail::quarter_turn(*out.theta.over_pi * (2 * j - k));
      if (!rot) {
        ok = false;
        break;
      }
      exact.add_term(Monomial({j}, {k - j}, 0), ExactComplex(*out.exact_scale) * a[j] * *rot);
    }
    if (ok) out.exact = std::move(exact);
  }
  return out;
}

// a_e == 1 and arg a_{m_{i+1}} in [0, 2pi/q_i), up to tol at the ends.
inline bool arg_conditions_hold(const std::vector<std::complex<double>>& coefficients, const PlanarInvariants& inv,
                                double tol = 1e-12) {
  if (coefficients[inv.e] != std::complex<double>(1.0, 0.0)) return false;
  for (std::size_t i = 0; i + 1 < inv.m_indices.size(); ++i) {
    double psi = std::arg(coefficients[inv.m_indices[i + 1]]);
    if (psi < 0) psi += 2 * std::numbers::pi;
    double sector = 2 * std::numbers::pi / inv.q_chain[i];
    bool near_zero = psi < tol || psi > 2 * std::numbers::pi - tol;
    if (!(near_zero || psi < sector)) return false;
  }
  return true;
}

}  // namespace crinv::planar
