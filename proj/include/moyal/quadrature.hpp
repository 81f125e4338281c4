#pragma once

#include <functional>
#include <vector>

#include "moyal/field.hpp"

namespace moyal {

// Gauss-Hermite rule with the Gaussian weight folded into the weights:
// int g(t) dt ~ sum_i weights[i] * g(nodes[i]).
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

HermiteRule gauss_hermite(int n);

using PointFunction = std::function<cplx(const double* x)>;

struct QuadratureOptions {
  int nodes = 0;           // per axis; 0 picks 128 for dim 2 and 32 for dim 4
  double tolerance = 1e-8; // on the coefficient difference against a rule with 3/4 of the nodes
};

struct CoefficientResult {
  Field field;
  double error_estimate = 0.0;
};

// phi_{mn} = (2 pi theta)^{-D/2} int f(x) f_{nm}(x) dx on tensor-product Hermite nodes
// scaled by sqrt(theta). The largest node sits near sqrt(2 n theta), far beyond the
// e^{-x^2/theta} < 1e-14 radius for the default sizes.
CoefficientResult coeffs_from_function(const PointFunction& f, int trunc, const MoyalParams& p,
                                       const QuadratureOptions& opt = {});

// Same projection (dim 2) from values sampled at the scaled nodes of gauss_hermite(nodes):
// values(a, b) = f(sqrt(theta) t_a, sqrt(theta) t_b). No error estimate.
Field coeffs_from_samples(const Eigen::MatrixXcd& values, int trunc, const MoyalParams& p);

// Plain tensor-product integral int g(x) dx with the same node layout (dim 2 or 4).
cplx hermite_integral(const PointFunction& g, const MoyalParams& p, int nodes);

}  // namespace moyal
