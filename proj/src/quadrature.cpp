#include "moyal/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "moyal/basis.hpp"
#include "moyal/errors.hpp"

namespace moyal {

namespace {

// Normalized Hermite functions psi_0..psi_{n} at t.
std::vector<double> hermite_functions(int n, double t) {
  std::vector<double> psi(n + 1);
  psi[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * t * t);
  if (n >= 1) psi[1] = std::sqrt(2.0) * t * psi[0];
  for (int k = 1; k < n; ++k)
    psi[k + 1] = std::sqrt(2.0 / (k + 1)) * t * psi[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * psi[k - 1];
  return psi;
}

int default_nodes(const MoyalParams& p, int requested) {
  if (requested > 0) return requested;
  return p.dim == 2 ? 128 : 32;
}

Field project(const PointFunction& f, int trunc, const MoyalParams& p, int nodes) {
  HermiteRule rule = gauss_hermite(nodes);
  const double s = std::sqrt(p.theta);
  const int q = nodes;
  if (p.dim == 2) {
    Eigen::MatrixXcd values(q, q);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        double x[2] = {s * rule.nodes[a], s * rule.nodes[b]};
        values(a, b) = f(x);
      }
    return coeffs_from_samples(values, trunc, p);
  }
  // Per-pair basis matrices at every 2D node pair, weighted.
  std::vector<Eigen::MatrixXcd> pair_basis(q * q);
  std::vector<double> pair_weight(q * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      pair_basis[a * q + b] = basis_matrix_2d(s * rule.nodes[a], s * rule.nodes[b], p.theta, trunc).conjugate();
      pair_weight[a * q + b] = s * s * rule.weights[a] * rule.weights[b];
    }
  Field out = Field::zero(p, trunc);
  const double norm = std::pow(2.0 * M_PI * p.theta, -p.pairs());
  const int n = trunc;
  for (int i = 0; i < q * q; ++i) {
    Eigen::MatrixXcd inner = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < q * q; ++j) {
      double x[4] = {s * rule.nodes[i / q], s * rule.nodes[i % q], s * rule.nodes[j / q],
                     s * rule.nodes[j % q]};
      cplx v = f(x);
      if (v != 0.0) inner += (pair_weight[j] * v) * pair_basis[j];
    }
    const Eigen::MatrixXcd& outer = pair_basis[i];
    for (int m1 = 0; m1 < n; ++m1)
      for (int n1 = 0; n1 < n; ++n1)
        out.coeffs.block(m1 * n, n1 * n, n, n) += (pair_weight[i] * outer(m1, n1)) * inner;
  }
  // f_{nm} = conj(f_{mn}), so the conjugated basis matrix already carries the right index order.
  out.coeffs *= norm;
  return out;
}

}  // namespace

Field coeffs_from_samples(const Eigen::MatrixXcd& values, int trunc, const MoyalParams& p) {
  p.validate();
  if (p.dim != 2) throw DomainError("coeffs_from_samples: dim 2 only");
  if (values.rows() != values.cols() || values.rows() < 1) throw DimensionError("coeffs_from_samples: bad sample grid");
  const int q = static_cast<int>(values.rows());
  HermiteRule rule = gauss_hermite(q);
  const double s = std::sqrt(p.theta);
  Field out = Field::zero(p, trunc);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      double w = p.theta * rule.weights[a] * rule.weights[b];
      out.coeffs += (w * values(a, b)) * basis_matrix_2d(s * rule.nodes[a], s * rule.nodes[b], p.theta, trunc).conjugate();
    }
  out.coeffs /= 2.0 * M_PI * p.theta;
  return out;
}

HermiteRule gauss_hermite(int n) {
  if (n < 1) throw DomainError("gauss_hermite: need at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    jacobi(k, k - 1) = std::sqrt(k / 2.0);
    jacobi(k - 1, k) = std::sqrt(k / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi, Eigen::EigenvaluesOnly);
  HermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = es.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      auto psi = hermite_functions(n, t);
      double d = std::sqrt(2.0 * n) * psi[n - 1] - t * psi[n];
      if (d == 0.0) break;
      t -= psi[n] / d;
    }
    auto psi = hermite_functions(n - 1, t);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += psi[k] * psi[k];
    rule.nodes[i] = t;
    rule.weights[i] = 1.0 / sum;
  }
  return rule;
}

CoefficientResult coeffs_from_function(const PointFunction& f, int trunc, const MoyalParams& p,
                                       const QuadratureOptions& opt) {
  p.validate();
  if (trunc < 1) throw DomainError("trunc must be >= 1");
  const int nodes = default_nodes(p, opt.nodes);
  if (nodes < 4) throw DomainError("coeffs_from_function: too few nodes");
  CoefficientResult r;
  r.field = project(f, trunc, p, nodes);
  Field coarse = project(f, trunc, p, nodes - nodes / 4);
  r.error_estimate = (r.field.coeffs - coarse.coeffs).cwiseAbs().maxCoeff();
  if (!std::isfinite(r.error_estimate) || r.error_estimate > opt.tolerance)
    throw AccuracyError("coeffs_from_function: quadrature estimate " + std::to_string(r.error_estimate) +
                        " above tolerance");
  return r;
}

cplx hermite_integral(const PointFunction& g, const MoyalParams& p, int nodes) {
  p.validate();
  HermiteRule rule = gauss_hermite(nodes);
  const double s = std::sqrt(p.theta);
  cplx total = 0.0;
  std::vector<double> x(p.dim);
  long count = 1;
  for (int d = 0; d < p.dim; ++d) count *= nodes;
  for (long c = 0; c < count; ++c) {
    long r = c;
    double w = 1.0;
    for (int d = p.dim - 1; d >= 0; --d) {
      int i = static_cast<int>(r % nodes);
      r /= nodes;
      x[d] = s * rule.nodes[i];
      w *= s * rule.weights[i];
    }
    total += w * g(x.data());
  }
  return total;
}

}  // namespace moyal
