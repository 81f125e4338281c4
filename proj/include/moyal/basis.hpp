#pragma once

#include <vector>

#include "moyal/field.hpp"

namespace moyal {

// Normalized Laguerre functions sqrt(k!/(k+alpha)!) z^{alpha/2} e^{-z/2} L_k^alpha(z)
// for k = 0..kmax, by three-term recurrence.
std::vector<double> laguerre_functions(int alpha, int kmax, double z);

// Matrix of 2D basis functions f_{mn}(x1, x2), 0 <= m, n < trunc.
Eigen::MatrixXcd basis_matrix_2d(double x1, double x2, double theta, int trunc);

// f_{mn}(x) for one pair of multi-indices; x has dim components.
cplx basis_eval(const MultiIndex& m, const MultiIndex& n, const double* x, const MoyalParams& p);

// sum_{mn} phi_{mn} f_{mn}(x).
cplx eval_field(const Field& f, const double* x);

}  // namespace moyal
