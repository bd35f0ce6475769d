#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <vector>

#include "crinv/convexity/gamma.hpp"
#include "crinv/poly/line.hpp"

namespace crinv::convexity {

using poly::ComplexVector;

struct AxisEntry {
  int l = 0;
  std::complex<double> a_l;
  double ratio = 0.0;
  GammaValue gamma;
  double threshold = 0.0;
  bool violated = false;
};

struct AxisReport {
  int axis = 0;
  double a0 = 0.0;
  std::vector<AxisEntry> entries;
};

// Restricts P to each coordinate axis and compares |a_l| / a0 against gamma_{lm}
// for l > m/2 and 2 gamma_{lm} for l <= m/2.
inline std::vector<AxisReport> axis_conditions(const poly::Polynomial& p, int m) {
  poly::LineRestrictor restrictor(p);
  if (restrictor.degree() != m)
    throw PreconditionError("leading polynomial has degree " + std::to_string(restrictor.degree()) + ", expected " +
                            std::to_string(m));
  std::vector<AxisReport> out;
  for (int j = 0; j < p.dimension(); ++j) {
    ComplexVector e(p.dimension(), 0.0);
    e[j] = 1.0;
    auto form = restrictor.restrict(e);
    if (form.a0 <= 0)
      throw PreconditionError("restriction to axis " + std::to_string(j + 1) +
                              " has a0 <= 0, so it is not subharmonic with positive circular part");
    AxisReport r{j + 1, form.a0, {}};
    for (const auto& [l, al] : form.a) {
      AxisEntry entry;
      entry.l = l;
      entry.a_l = al;
      entry.ratio = std::abs(al) / form.a0;
      entry.gamma = gamma(l, m);
      entry.threshold = 2 * l > m ? entry.gamma.value : 2 * entry.gamma.value;
      entry.violated = entry.ratio > entry.threshold;
      r.entries.push_back(entry);
    }
    out.push_back(std::move(r));
  }
  return out;
}

struct KNOptions {
  // Points per reduced real dimension; 0 selects 64 (n = 2), 24 (n = 3) or 8.
  int grid = 0;
  int refinements = 8;
  int iterations = 200;
  double tol = 1e-8;
};

inline int default_grid(int n) { return n <= 2 ? 64 : n == 3 ? 24 : 8; }

struct KNResult {
  int l = 0;
  double kappa = 0.0;
  ComplexVector witness;
  double min_a0_on_net = 0.0;
};

namespace detail {

// Unit vector with real nonnegative first entry from hyperspherical angles
// t_1..t_{n-1} followed by phases phi_2..phi_n.
inline ComplexVector direction(const std::vector<double>& params, int n) {
  ComplexVector c(n);
  double tail = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    c[i] = tail * std::cos(params[i]);
    tail *= std::sin(params[i]);
  }
  c[n - 1] = tail;
  for (int i = 1; i < n; ++i) c[i] *= std::polar(1.0, params[n - 2 + i]);
  return c;
}

class KNObjective {
 public:
  KNObjective(const poly::LineRestrictor& r, int l) : r_(r), l_(l) {}

  // |a_l^c| / a0^c, or nullopt where a0^c <= 0.
  std::optional<double> ratio(const ComplexVector& c) const {
    double a0 = r_.a0(c);
    if (!(a0 > 0)) return std::nullopt;
    return std::abs(r_.coefficient(l_, c)) / a0;
  }
  double a0(const ComplexVector& c) const { return r_.a0(c); }
  int dimension() const { return r_.dimension(); }

 private:
  const poly::LineRestrictor& r_;
  int l_;
};

struct NelderMeadContext {
  const KNObjective* objective;
  int n;
};

inline double negated_ratio(const gsl_vector* v, void* params) {
  const auto* ctx = static_cast<const NelderMeadContext*>(params);
  std::vector<double> x(v->size);
  for (std::size_t i = 0; i < v->size; ++i) x[i] = gsl_vector_get(v, i);
  auto r = ctx->objective->ratio(direction(x, ctx->n));
  return r ? -*r : std::numeric_limits<double>::max();
}

// Local maximization of the ratio from start with simplex size step.
inline std::vector<double> refine(const KNObjective& objective, std::vector<double> start, double step,
                                  const KNOptions& opts) {
  const std::size_t dim = start.size();
  NelderMeadContext ctx{&objective, objective.dimension()};
  gsl_multimin_function fn{&negated_ratio, dim, &ctx};
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(dim), gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> ss(gsl_vector_alloc(dim), gsl_vector_free);
  for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(x.get(), i, start[i]);
  gsl_vector_set_all(ss.get(), step);
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> solver(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim), gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), ss.get());
  for (int iter = 0; iter < opts.iterations; ++iter) {
    if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver.get()), opts.tol) == GSL_SUCCESS) break;
  }
  std::vector<double> best(dim);
  for (std::size_t i = 0; i < dim; ++i) best[i] = gsl_vector_get(solver->x, i);
  return best;
}

}  // namespace detail

// Lower estimate of sup_c |a_l^c| / a0^c over directions c, by a grid over the
// sphere modulo phase followed by simplex refinement of the best cells.
inline KNResult kn_number(const poly::Polynomial& p, int l, const KNOptions& opts = {}) {
  poly::LineRestrictor restrictor(p);
  if (l < 2 || l % 2 != 0 || l > restrictor.degree())
    throw DomainError("l must be even with 2 <= l <= degree; got l=" + std::to_string(l));
  const int n = p.dimension();
  detail::KNObjective objective(restrictor, l);
  KNResult out;
  out.l = l;

  if (n == 1) {
    ComplexVector c{1.0};
    out.min_a0_on_net = objective.a0(c);
    auto r = objective.ratio(c);
    if (!r) throw PreconditionError("line-harmonic direction present: a0 <= 0");
    out.kappa = *r;
    out.witness = c;
    return out;
  }

  const int g = opts.grid > 0 ? opts.grid : default_grid(n);
  const int dims = 2 * (n - 1);
  const double t_step = std::numbers::pi / 2 / g, phi_step = 2 * std::numbers::pi / g;
  // Odometer over (t_1..t_{n-1}: g+1 points in [0, pi/2], phi: g points).
  struct Cell {
    double value;
    std::vector<double> params;
  };
  std::vector<Cell> cells;
  std::vector<int> idx(dims, 0);
  out.min_a0_on_net = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<double> params(dims);
    for (int i = 0; i < n - 1; ++i) params[i] = idx[i] * t_step;
    for (int i = n - 1; i < dims; ++i) params[i] = idx[i] * phi_step;
    auto c = detail::direction(params, n);
    double a0 = objective.a0(c);
    out.min_a0_on_net = std::min(out.min_a0_on_net, a0);
    if (a0 <= 0)
      throw PreconditionError("line-harmonic direction present: a0 <= 0 on the sampling net, so P is harmonic "
                              "along some complex line");
    cells.push_back({*objective.ratio(c), std::move(params)});
    int k = dims - 1;
    while (k >= 0 && idx[k] + 1 == (k < n - 1 ? g + 1 : g)) idx[k--] = 0;
    if (k < 0) break;
    ++idx[k];
  }
  // Best cells first; stable so equal values keep grid order.
  const std::size_t top = std::min<std::size_t>(std::max(opts.refinements, 0), cells.size());
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.value > b.value; });

  std::vector<double> best = cells.front().params;
  double best_value = cells.front().value;
  for (std::size_t i = 0; i < top; ++i) {
    auto refined = detail::refine(objective, cells[i].params, std::min(t_step, phi_step), opts);
    auto r = objective.ratio(detail::direction(refined, n));
    if (r && *r > best_value) {
      best_value = *r;
      best = refined;
    }
  }
  out.witness = detail::direction(best, n);
  out.kappa = *objective.ratio(out.witness);
  return out;
}

enum class VerdictTag { Obstructed, Inconclusive };

inline std::string_view to_string(VerdictTag t) { return t == VerdictTag::Obstructed ? "obstructed" : "inconclusive"; }

struct KNEntry {
  KNResult kn;
  GammaValue gamma;
  double threshold = 0.0;
  double margin = 0.0;
};

struct KNReport {
  int m = 0;
  std::vector<KNEntry> per_l;
  VerdictTag verdict = VerdictTag::Inconclusive;
  // Index into per_l of the first violation.
  std::optional<std::size_t> obstruction;
};

// Necessary condition for local convexifiability when every multitype entry
// equals m: any kappa^l above gamma_{lm} (l > m/2) or 2 gamma_{lm} (l <= m/2)
// obstructs. kappa is estimated from below, so an obstruction is sound.
inline KNReport convexifiability_verdict(const poly::Polynomial& p, int m, const KNOptions& opts = {}) {
  if (m < 2 || m % 2 != 0) throw PreconditionError("common multitype entry m must be an even integer >= 2");
  poly::LineRestrictor restrictor(p);
  if (restrictor.degree() != m)
    throw PreconditionError("leading polynomial has degree " + std::to_string(restrictor.degree()) +
                            ", expected the common multitype entry " + std::to_string(m));
  KNReport report;
  report.m = m;
  for (int l = 2; l <= m; l += 2) {
    KNEntry e;
    e.kn = kn_number(p, l, opts);
    e.gamma = gamma(l, m);
    e.threshold = 2 * l > m ? e.gamma.value : 2 * e.gamma.value;
    e.margin = e.kn.kappa - e.threshold;
    report.per_l.push_back(std::move(e));
    if (!report.obstruction && report.per_l.back().margin > opts.tol) {
      report.obstruction = report.per_l.size() - 1;
      report.verdict = VerdictTag::Obstructed;
    }
  }
  return report;
}

}  // namespace crinv::convexity
