#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "crinv/poly/polynomial.hpp"

namespace crinv::poly {

// Second derivatives of a real-valued polynomial as a function of the real
// coordinates (x_1, y_1, ..., x_n, y_n, u). Derivatives are taken
// symbolically: d/dx = d/dz + d/dzbar, d/dy = i (d/dz - d/dzbar).
class RealHessian {
 public:
  explicit RealHessian(const Polynomial& p) : n_(p.dimension()) {
    if (!is_real_valued(p)) throw PreconditionError("real Hessian needs a real-valued polynomial");
    const int dim = 2 * n_ + 1;
    std::vector<Polynomial> first;
    first.reserve(dim);
    for (int v = 0; v < dim; ++v) first.push_back(partial(p, v));
    entries_.assign(dim * dim, Polynomial(n_));
    for (int a = 0; a < dim; ++a) {
      for (int b = a; b < dim; ++b) {
        entries_[a * dim + b] = partial(first[a], b);
        entries_[b * dim + a] = entries_[a * dim + b];
      }
    }
  }

  int size() const { return 2 * n_ + 1; }

  // point = (x_1, y_1, ..., x_n, y_n, u)
  Eigen::MatrixXd operator()(std::span<const double> point) const {
    const int dim = size();
    if (static_cast<int>(point.size()) != dim) throw DomainError("Hessian point has wrong dimension");
    std::vector<std::complex<double>> z(n_);
    for (int j = 0; j < n_; ++j) z[j] = {point[2 * j], point[2 * j + 1]};
    const double u = point[2 * n_];
    Eigen::MatrixXd h(dim, dim);
    for (int a = 0; a < dim; ++a) {
      for (int b = a; b < dim; ++b) {
        h(a, b) = entries_[a * dim + b].evaluate(z, u).real();
        h(b, a) = h(a, b);
      }
    }
    return h;
  }

  const Polynomial& entry(int a, int b) const { return entries_[a * size() + b]; }

 private:
  // Derivative along real coordinate v.
  Polynomial partial(const Polynomial& q, int v) const {
    if (v == 2 * n_) return q.d_u();
    int j = v / 2;
    if (v % 2 == 0) return q.d_z(j) + q.d_zbar(j);
    return ExactComplex::imaginary_unit() * (q.d_z(j) - q.d_zbar(j));
  }

  int n_;
  std::vector<Polynomial> entries_;
};

inline Eigen::MatrixXd real_hessian_eval(const Polynomial& p, std::span<const double> point) {
  return RealHessian(p)(point);
}

}  // namespace crinv::poly
