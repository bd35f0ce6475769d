#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "crinv/multitype/weight.hpp"
#include "crinv/poly/substitute.hpp"
#include "crinv/poly/weighted.hpp"

namespace crinv::multitype {

using poly::Monomial;
using poly::Polynomial;

// z -> L z, with c * P(L z, conj(L z)) = P~(z, zbar).
struct LinearEquivalence {
  Eigen::MatrixXcd L;
  double c = 1.0;
  // Set when L and c are exact and the identity was verified term by term.
  std::optional<std::vector<std::vector<ExactComplex>>> exact_L;
  std::optional<Rational> exact_c;
  // Root-mean-square of the sampled residual for numeric-only results.
  double residual = 0.0;
  bool exact() const { return exact_L.has_value(); }
};

struct EquivalenceOptions {
  int max_denominator = 1000;
  int starts = 24;
  unsigned seed = 12345;
  double accept_residual = 1e-9;
};

namespace detail {

inline void require_weight_one(const Polynomial& p, const Weight& w, const char* name) {
  if (p.depends_on_u()) throw PreconditionError(std::string(name) + " depends on u");
  if (!poly::is_real_valued(p)) throw PreconditionError(std::string(name) + " is not real-valued");
  for (const auto& [mono, _] : p.terms())
    if (poly::weighted_degree(mono, w.lambdas) != 1)
      throw PreconditionError(std::string(name) + " is not Lambda-homogeneous of weight one");
  if (p.is_zero() || poly::is_pluriharmonic(p)) throw PreconditionError(std::string(name) + " is pluriharmonic");
}

inline bool verify_exact(const Polynomial& p, const Polynomial& target, const std::vector<std::vector<ExactComplex>>& L,
                         const Rational& c) {
  Polynomial image = poly::substitute(p, poly::Substitution::linear(p.dimension(), L));
  return ExactComplex(c) * image == target;
}

inline std::optional<ExactComplex> rationalize_complex(std::complex<double> z, int max_den, double tol) {
  auto re = rationalize(z.real(), max_den, tol);
  auto im = rationalize(z.imag(), max_den, tol);
  if (!re || !im) return std::nullopt;
  return ExactComplex(*re, *im);
}

inline std::optional<LinearEquivalence> exact_from_numeric(const Polynomial& p, const Polynomial& target,
                                                           const Eigen::MatrixXcd& L, double c, int max_den) {
  const int n = static_cast<int>(L.rows());
  std::vector<std::vector<ExactComplex>> rows(n, std::vector<ExactComplex>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto e = rationalize_complex(L(i, j), max_den, 1e-7);
      if (!e) return std::nullopt;
      rows[i][j] = *e;
    }
  auto ec = rationalize(c, max_den, 1e-7);
  if (!ec || *ec == 0 || !verify_exact(p, target, rows, *ec)) return std::nullopt;
  LinearEquivalence out;
  out.L = Eigen::MatrixXcd(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.L(i, j) = rows[i][j].to_complex();
  out.c = to_double(*ec);
  out.exact_L = std::move(rows);
  out.exact_c = *ec;
  return out;
}

// Permutations sigma with lambda_{sigma(i)} = lambda_i.
inline std::vector<std::vector<int>> weight_preserving_permutations(const Weight& w) {
  std::vector<std::vector<int>> out;
  std::vector<int> perm(w.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < w.size() && ok; ++i) ok = w.lambdas[perm[i]] == w.lambdas[i];
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// z_i -> d_i z_{sigma(i)} with d_i = r_i * (quarter turn) and c = +-|c|.
// Moduli come from a log-linear least-squares solve, then are rationalized
// and checked exactly.
inline std::optional<LinearEquivalence> search_monomial_maps(const Polynomial& p, const Polynomial& target,
                                                             const Weight& w, const EquivalenceOptions& opts,
                                                             std::optional<LinearEquivalence>& numeric) {
  const int n = p.dimension();
  if (p.size() != target.size()) return std::nullopt;
  const ExactComplex turns[4] = {ExactComplex(1), ExactComplex(0, 1), ExactComplex(-1), ExactComplex(0, -1)};
  const int phase_combos = n <= 4 ? static_cast<int>(std::pow(4, n)) : 1;

  for (const auto& sigma : weight_preserving_permutations(w)) {
    // Ratio rho = coef_target(mapped) / coef_p(mono) for every term.
    std::vector<std::pair<Monomial, ExactComplex>> ratios;
    bool support_ok = true;
    for (const auto& [mono, coeff] : p.terms()) {
      Monomial mapped{std::vector<int>(n), std::vector<int>(n), 0};
      for (int i = 0; i < n; ++i) {
        mapped.alpha[sigma[i]] = mono.alpha[i];
        mapped.beta[sigma[i]] = mono.beta[i];
      }
      ExactComplex t = target.coefficient(mapped);
      if (t.is_zero()) {
        support_ok = false;
        break;
      }
      ratios.emplace_back(mono, t / coeff);
    }
    if (!support_ok) continue;

    for (int combo = 0; combo < phase_combos; ++combo) {
      std::vector<int> q(n);
      for (int i = 0, x = combo; i < n; ++i, x /= 4) q[i] = x % 4;
      for (int sign : {1, -1}) {
        // rho / (sign * phase) must be a positive real for every term.
        Eigen::MatrixXd A(ratios.size(), n);
        Eigen::VectorXd b(ratios.size());
        std::vector<double> mags;
        bool phases_ok = true;
        for (std::size_t t = 0; t < ratios.size() && phases_ok; ++t) {
          const auto& [mono, rho] = ratios[t];
          ExactComplex phase(sign);
          for (int i = 0; i < n; ++i) {
            phase *= pow(turns[q[i]], mono.alpha[i]);
            phase *= pow(turns[q[i]].conj(), mono.beta[i]);
          }
          ExactComplex mag = rho / phase;
          if (mag.im != 0 || mag.re <= 0) {
            phases_ok = false;
            break;
          }
          for (int i = 0; i < n; ++i) A(t, i) = mono.alpha[i] + mono.beta[i];
          mags.push_back(to_double(mag.re));
          b(t) = std::log(mags.back());
        }
        if (!phases_ok) continue;

        // |c| = 1 first, then each |rho| (the choice making that term's
        // variables unscaled).
        std::vector<double> moduli{1.0};
        for (const auto& m : mags)
          if (std::find(moduli.begin(), moduli.end(), m) == moduli.end()) moduli.push_back(m);
        for (double modulus : moduli) {
          Eigen::VectorXd rhs = b.array() - std::log(modulus);
          Eigen::VectorXd x = A.completeOrthogonalDecomposition().solve(rhs);
          if ((A * x - rhs).norm() > 1e-9 * std::max(1.0, rhs.norm())) continue;
          Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n, n);
          for (int i = 0; i < n; ++i) L(i, sigma[i]) = std::exp(x(i)) * turns[q[i]].to_complex();
          double c = sign * modulus;
          if (auto exact = exact_from_numeric(p, target, L, c, opts.max_denominator)) return exact;
          if (!numeric) {
            LinearEquivalence num;
            num.L = L;
            num.c = c;
            numeric = num;
          }
        }
      }
    }
  }
  return std::nullopt;
}

// Least squares over block-diagonal L (blocks of equal weight) and c with
// deterministic restarts; the residual is sampled at fixed points.
class BlockSolver {
 public:
  BlockSolver(const Polynomial& p, const Polynomial& target, const Weight& w, const EquivalenceOptions& opts)
      : p_(p), target_(target), n_(p.dimension()), opts_(opts) {
    for (int i = 0; i < n_; ++i) {
      dz_.push_back(p.d_z(i));
      dzbar_.push_back(p.d_zbar(i));
    }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (w.lambdas[i] == w.lambdas[j]) slots_.emplace_back(i, j);
    std::mt19937 rng(opts.seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    const int params = 2 * static_cast<int>(slots_.size()) + 1;
    const int samples = 2 * params + 8;
    for (int s = 0; s < samples; ++s) {
      std::vector<std::complex<double>> z(n_);
      for (auto& v : z) v = {nd(rng), nd(rng)};
      points_.push_back(z);
      target_values_.push_back(target_.evaluate(z, 0.0).real());
    }
  }

  std::optional<LinearEquivalence> run(std::optional<LinearEquivalence>& numeric) {
    std::mt19937 rng(opts_.seed + 1);
    std::normal_distribution<double> nd(0.0, 1.0);
    const int params = 2 * static_cast<int>(slots_.size()) + 1;
    for (int start = 0; start < opts_.starts; ++start) {
      Eigen::VectorXd x(params);
      for (int k = 0; k < params - 1; ++k) x(k) = nd(rng);
      x(params - 1) = start % 2 == 0 ? 1.0 : -1.0;
      double rms = minimize(x);
      if (rms > opts_.accept_residual) continue;
      Eigen::MatrixXcd L = unpack(x);
      if (std::abs(L.determinant()) < 1e-9) continue;
      if (auto exact = exact_from_numeric(p_, target_, L, x(params - 1), opts_.max_denominator)) return exact;
      if (!numeric) {
        LinearEquivalence num;
        num.L = L;
        num.c = x(params - 1);
        num.residual = rms;
        numeric = num;
      }
    }
    return std::nullopt;
  }

 private:
  Eigen::MatrixXcd unpack(const Eigen::VectorXd& x) const {
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n_, n_);
    for (std::size_t s = 0; s < slots_.size(); ++s) L(slots_[s].first, slots_[s].second) = {x(2 * s), x(2 * s + 1)};
    return L;
  }

  Eigen::VectorXd residuals(const Eigen::VectorXd& x) const {
    Eigen::MatrixXcd L = unpack(x);
    const double c = x(x.size() - 1);
    Eigen::VectorXd r(points_.size());
    std::vector<std::complex<double>> image(n_);
    for (std::size_t s = 0; s < points_.size(); ++s) {
      for (int i = 0; i < n_; ++i) {
        image[i] = 0.0;
        for (int j = 0; j < n_; ++j) image[i] += L(i, j) * points_[s][j];
      }
      r(s) = c * p_.evaluate(image, 0.0).real() - target_values_[s];
    }
    return r;
  }

  // Derivatives of the residual in (Re L_ij, Im L_ij) by the chain rule:
  // d P(Lz) = P_{z_i}(Lz) dL_ij z_j + P_{zbar_i}(Lz) conj(dL_ij z_j).
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    Eigen::MatrixXcd L = unpack(x);
    const double c = x(x.size() - 1);
    Eigen::MatrixXd J(points_.size(), x.size());
    std::vector<std::complex<double>> image(n_), gz(n_), gzb(n_);
    for (std::size_t s = 0; s < points_.size(); ++s) {
      const auto& z = points_[s];
      for (int i = 0; i < n_; ++i) {
        image[i] = 0.0;
        for (int j = 0; j < n_; ++j) image[i] += L(i, j) * z[j];
      }
      for (int i = 0; i < n_; ++i) {
        gz[i] = dz_[i].evaluate(image, 0.0);
        gzb[i] = dzbar_[i].evaluate(image, 0.0);
      }
      for (std::size_t k = 0; k < slots_.size(); ++k) {
        auto [i, j] = slots_[k];
        const std::complex<double> I(0.0, 1.0);
        J(s, 2 * k) = c * (gz[i] * z[j] + gzb[i] * std::conj(z[j])).real();
        J(s, 2 * k + 1) = c * (gz[i] * I * z[j] - gzb[i] * I * std::conj(z[j])).real();
      }
      J(s, x.size() - 1) = p_.evaluate(image, 0.0).real();
    }
    return J;
  }

  // Adapter for Eigen's Levenberg-Marquardt.
  struct Residual {
    using Scalar = double;
    const BlockSolver* solver;
    int n_inputs, n_values;
    int inputs() const { return n_inputs; }
    int values() const { return n_values; }
    int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
      f = solver->residuals(x);
      return 0;
    }
    int df(const Eigen::VectorXd& x, Eigen::MatrixXd& j) const {
      j = solver->jacobian(x);
      return 0;
    }
  };

  double minimize(Eigen::VectorXd& x) const {
    Residual fn{this, static_cast<int>(x.size()), static_cast<int>(points_.size())};
    Eigen::LevenbergMarquardt<Residual, double> lm(fn);
    lm.parameters.maxfev = 2000;
    lm.parameters.xtol = 1e-15;
    lm.parameters.ftol = 1e-15;
    lm.minimize(x);
    return std::sqrt(residuals(x).squaredNorm() / static_cast<double>(points_.size()));
  }

  const Polynomial& p_;
  const Polynomial& target_;
  int n_;
  EquivalenceOptions opts_;
  std::vector<std::pair<int, int>> slots_;
  std::vector<Polynomial> dz_, dzbar_;
  std::vector<std::vector<std::complex<double>>> points_;
  std::vector<double> target_values_;
};

}  // namespace detail

// Searches for z -> L z, w -> c w with c * P(L z) = P~(z). Monomial maps
// (weight-preserving permutations with diagonal scaling) are tried exactly
// first, then block-diagonal L numerically. A numeric-only match is returned
// with exact() false; nullopt means the search found nothing.
inline std::optional<LinearEquivalence> solve_linear_model_equivalence(const Polynomial& p, const Polynomial& target,
                                                                       const Weight& w,
                                                                       const EquivalenceOptions& opts = {}) {
  if (p.dimension() != target.dimension() || w.size() != p.dimension())
    throw DomainError("dimension mismatch between P, P~ and the weight");
  detail::require_weight_one(p, w, "P");
  detail::require_weight_one(target, w, "P~");

  std::optional<LinearEquivalence> numeric;
  if (auto r = detail::search_monomial_maps(p, target, w, opts, numeric)) return r;
  detail::BlockSolver solver(p, target, w, opts);
  if (auto r = solver.run(numeric)) return r;
  return numeric;
}

}  // namespace crinv::multitype
