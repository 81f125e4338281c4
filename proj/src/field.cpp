#include "moyal/field.hpp"

#include <cmath>
#include <string>

#include "moyal/errors.hpp"

namespace moyal {

void MoyalParams::validate() const {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("theta must be positive");
  if (dim != 2 && dim != 4) throw DomainError("dim must be 2 or 4");
}

double theta_inverse(int mu, int nu, const MoyalParams& p) {
  if (mu / 2 != nu / 2 || mu == nu) return 0.0;
  // Theta^{-1} = (1/theta) [[0, -1], [1, 0]] on each pair.
  return (mu % 2 == 0) ? -1.0 / p.theta : 1.0 / p.theta;
}

int field_side(const MoyalParams& p, int trunc) {
  int s = 1;
  for (int j = 0; j < p.pairs(); ++j) s *= trunc;
  return s;
}

Field Field::zero(const MoyalParams& p, int trunc) {
  p.validate();
  if (trunc < 1) throw DomainError("trunc must be >= 1");
  Field f;
  f.params = p;
  f.trunc = trunc;
  int s = field_side(p, trunc);
  f.coeffs = Eigen::MatrixXcd::Zero(s, s);
  return f;
}

Field Field::basis(const MoyalParams& p, int trunc, const MultiIndex& m, const MultiIndex& n) {
  Field f = zero(p, trunc);
  f(m, n) = 1.0;
  return f;
}

Field Field::from_matrix(const MoyalParams& p, int trunc, Eigen::MatrixXcd c) {
  Field f = zero(p, trunc);
  if (c.rows() != f.side() || c.cols() != f.side())
    throw DimensionError("coefficient matrix has wrong size");
  f.coeffs = std::move(c);
  return f;
}

int Field::flat(const MultiIndex& m) const {
  if (static_cast<int>(m.size()) != params.pairs())
    throw DimensionError("multi-index has wrong length");
  int idx = 0;
  for (int c : m) {
    if (c < 0 || c >= trunc) throw DomainError("multi-index component out of range");
    idx = idx * trunc + c;
  }
  return idx;
}

MultiIndex Field::unflat(int idx) const {
  MultiIndex m(params.pairs());
  for (int j = params.pairs() - 1; j >= 0; --j) {
    m[j] = idx % trunc;
    idx /= trunc;
  }
  return m;
}

int Field::degree(int idx) const {
  int d = 0;
  for (int c : unflat(idx)) d += c;
  return d;
}

bool Field::is_hermitian(double tol) const {
  return (coeffs - coeffs.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void require_same_shape(const Field& a, const Field& b) {
  if (!(a.params == b.params) || a.trunc != b.trunc)
    throw DimensionError("fields differ in theta, dim or trunc");
}

Field star(const Field& f, const Field& g) {
  require_same_shape(f, g);
  Field r = f;
  r.coeffs = f.coeffs * g.coeffs;
  return r;
}

Field commutator(const Field& f, const Field& g) {
  require_same_shape(f, g);
  Field r = f;
  r.coeffs = f.coeffs * g.coeffs - g.coeffs * f.coeffs;
  return r;
}

Field anticommutator(const Field& f, const Field& g) {
  require_same_shape(f, g);
  Field r = f;
  r.coeffs = f.coeffs * g.coeffs + g.coeffs * f.coeffs;
  return r;
}

cplx integral(const Field& f) {
  return std::pow(2.0 * M_PI * f.params.theta, f.params.pairs()) * f.coeffs.trace();
}

Field adjoint(const Field& f) {
  Field r = f;
  r.coeffs = f.coeffs.adjoint();
  return r;
}

Field operator+(const Field& a, const Field& b) {
  require_same_shape(a, b);
  Field r = a;
  r.coeffs += b.coeffs;
  return r;
}

Field operator-(const Field& a, const Field& b) {
  require_same_shape(a, b);
  Field r = a;
  r.coeffs -= b.coeffs;
  return r;
}

Field operator-(const Field& a) {
  Field r = a;
  r.coeffs = -a.coeffs;
  return r;
}

Field operator*(cplx s, const Field& a) {
  Field r = a;
  r.coeffs *= s;
  return r;
}

Field operator*(const Field& a, cplx s) { return s * a; }

Field unit_field(const MoyalParams& p, int trunc, cplx value) {
  Field f = Field::zero(p, trunc);
  f.coeffs.diagonal().setConstant(value);
  return f;
}

Field approximate_unit(const MoyalParams& p, int trunc, int k) {
  Field f = Field::zero(p, trunc);
  for (int i = 0; i < f.side(); ++i) {
    bool inside = true;
    for (int c : f.unflat(i)) inside = inside && c <= k;
    if (inside) f.coeffs(i, i) = 1.0;
  }
  return f;
}

Field coordinate_field(Coordinate which, int mu, int trunc, const MoyalParams& p) {
  Field f = Field::zero(p, trunc);
  const double th = p.theta;
  if (which == Coordinate::XSquared) {
    for (int i = 0; i < f.side(); ++i) f.coeffs(i, i) = th * (2.0 * f.degree(i) + p.pairs());
    return f;
  }
  if (mu < 0 || mu >= p.dim) throw DomainError("coordinate index out of range");
  if (which == Coordinate::XTilde) {
    // x~_mu = 2 Theta^{-1}_{mu nu} x_nu with nu the partner coordinate of the pair.
    int nu = (mu % 2 == 0) ? mu + 1 : mu - 1;
    Field x = coordinate_field(Coordinate::X, nu, trunc, p);
    return cplx(2.0 * theta_inverse(mu, nu, p)) * x;
  }
  const int pair = mu / 2;
  const double s = std::sqrt(th / 2.0);
  for (int i = 0; i < f.side(); ++i) {
    MultiIndex m = f.unflat(i);
    if (m[pair] + 1 >= trunc) continue;
    MultiIndex n = m;
    n[pair] += 1;
    int j = f.flat(n);
    double a = std::sqrt(static_cast<double>(m[pair] + 1));
    if (mu % 2 == 0) {
      f.coeffs(i, j) = s * a;
      f.coeffs(j, i) = s * a;
    } else {
      f.coeffs(i, j) = cplx(0.0, -s * a);
      f.coeffs(j, i) = cplx(0.0, s * a);
    }
  }
  return f;
}

std::vector<int> interior_indices(const Field& shape, int margin) {
  std::vector<int> out;
  for (int i = 0; i < shape.side(); ++i) {
    bool inside = true;
    for (int c : shape.unflat(i)) inside = inside && c < shape.trunc - margin;
    if (inside) out.push_back(i);
  }
  return out;
}

double interior_defect(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const Field& shape,
                       int margin) {
  double worst = 0.0;
  auto idx = interior_indices(shape, margin);
  for (int i : idx)
    for (int j : idx) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

}  // namespace moyal
