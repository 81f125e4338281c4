#include "moyal/basis.hpp"

#include <cmath>

#include "moyal/errors.hpp"

namespace moyal {

std::vector<double> laguerre_functions(int alpha, int kmax, double z) {
  if (alpha < 0 || kmax < 0 || z < 0.0) throw DomainError("laguerre_functions: bad arguments");
  std::vector<double> l(kmax + 1, 0.0);
  if (z == 0.0) {
    l[0] = alpha == 0 ? 1.0 : 0.0;
  } else {
    l[0] = std::exp(0.5 * alpha * std::log(z) - 0.5 * z - 0.5 * std::lgamma(alpha + 1.0));
  }
  if (kmax >= 1) l[1] = (1.0 + alpha - z) * l[0] / std::sqrt(1.0 + alpha);
  for (int k = 1; k < kmax; ++k) {
    double a = (2.0 * k + 1.0 + alpha - z) * l[k];
    double b = std::sqrt(static_cast<double>(k) * (k + alpha)) * l[k - 1];
    l[k + 1] = (a - b) / std::sqrt((k + 1.0) * (k + 1.0 + alpha));
  }
  return l;
}

Eigen::MatrixXcd basis_matrix_2d(double x1, double x2, double theta, int trunc) {
  Eigen::MatrixXcd b(trunc, trunc);
  const double z = 2.0 * (x1 * x1 + x2 * x2) / theta;
  const double phi = (x1 == 0.0 && x2 == 0.0) ? 0.0 : std::atan2(x2, x1);
  for (int alpha = 0; alpha < trunc; ++alpha) {
    auto l = laguerre_functions(alpha, trunc - 1 - alpha, z);
    const cplx phase = std::polar(1.0, alpha * phi);
    for (int m = 0; m + alpha < trunc; ++m) {
      cplx v = 2.0 * ((m % 2) ? -1.0 : 1.0) * l[m] * phase;
      b(m, m + alpha) = v;
      b(m + alpha, m) = std::conj(v);
    }
  }
  return b;
}

cplx basis_eval(const MultiIndex& m, const MultiIndex& n, const double* x, const MoyalParams& p) {
  p.validate();
  if (static_cast<int>(m.size()) != p.pairs() || static_cast<int>(n.size()) != p.pairs())
    throw DimensionError("basis_eval: multi-index length does not match dim");
  cplx r = 1.0;
  for (int j = 0; j < p.pairs(); ++j) {
    int hi = std::max(m[j], n[j]) + 1;
    r *= basis_matrix_2d(x[2 * j], x[2 * j + 1], p.theta, hi)(m[j], n[j]);
  }
  return r;
}

cplx eval_field(const Field& f, const double* x) {
  const int n = f.trunc;
  Eigen::MatrixXcd b1 = basis_matrix_2d(x[0], x[1], f.params.theta, n);
  if (f.params.pairs() == 1) return (f.coeffs.array() * b1.array()).sum();
  Eigen::MatrixXcd b2 = basis_matrix_2d(x[2], x[3], f.params.theta, n);
  cplx s = 0.0;
  for (int m1 = 0; m1 < n; ++m1)
    for (int n1 = 0; n1 < n; ++n1) {
      if (b1(m1, n1) == 0.0) continue;
      s += b1(m1, n1) * (f.coeffs.block(m1 * n, n1 * n, n, n).array() * b2.array()).sum();
    }
  return s;
}

}  // namespace moyal
