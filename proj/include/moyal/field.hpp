#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace moyal {

using cplx = std::complex<double>;
using MultiIndex = std::vector<int>;

// theta is the deformation parameter (length^2); dim is 2 or 4.
// The noncommutativity matrix is Theta = theta * J on each coordinate pair,
// J = [[0, 1], [-1, 0]], so that [x_1, x_2]_star = i theta.
struct MoyalParams {
  double theta = 1.0;
  int dim = 2;

  int pairs() const { return dim / 2; }
  void validate() const;
  bool operator==(const MoyalParams& o) const { return theta == o.theta && dim == o.dim; }
};

// (Theta^{-1})_{mu nu}, 0-based coordinate indices.
double theta_inverse(int mu, int nu, const MoyalParams& p);

// Truncated matrix-basis coefficients phi_{mn}. For dim 4 the multi-index
// (m1, m2) is flattened row-major: flat = m1 * trunc + m2.
struct Field {
  MoyalParams params;
  int trunc = 1;
  Eigen::MatrixXcd coeffs;

  static Field zero(const MoyalParams& p, int trunc);
  static Field basis(const MoyalParams& p, int trunc, const MultiIndex& m, const MultiIndex& n);
  static Field from_matrix(const MoyalParams& p, int trunc, Eigen::MatrixXcd c);

  int side() const { return static_cast<int>(coeffs.rows()); }
  int flat(const MultiIndex& m) const;
  MultiIndex unflat(int idx) const;
  int degree(int idx) const;  // |m| = sum of components

  cplx& operator()(const MultiIndex& m, const MultiIndex& n) { return coeffs(flat(m), flat(n)); }
  cplx operator()(const MultiIndex& m, const MultiIndex& n) const { return coeffs(flat(m), flat(n)); }

  bool is_hermitian(double tol) const;
};

int field_side(const MoyalParams& p, int trunc);
void require_same_shape(const Field& a, const Field& b);

Field star(const Field& f, const Field& g);
Field commutator(const Field& f, const Field& g);
Field anticommutator(const Field& f, const Field& g);
cplx integral(const Field& f);
Field adjoint(const Field& f);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator-(const Field& a);
Field operator*(cplx s, const Field& a);
Field operator*(const Field& a, cplx s);

// Scalar multiple of the unit, truncated.
Field unit_field(const MoyalParams& p, int trunc, cplx value = 1.0);

// e_k = sum of b_mm over multi-indices whose components are all <= k.
Field approximate_unit(const MoyalParams& p, int trunc, int k);

enum class Coordinate { X, XTilde, XSquared };

// Exact sparse coefficients of x_mu, x~_mu = 2 Theta^{-1}_{mu nu} x_nu, or x^2.
// mu is 0-based and ignored for XSquared.
Field coordinate_field(Coordinate which, int mu, int trunc, const MoyalParams& p);

// Max |a_ij - b_ij| over the interior block: all multi-index components < trunc - margin.
double interior_defect(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const Field& shape,
                       int margin);
std::vector<int> interior_indices(const Field& shape, int margin);

}  // namespace moyal
