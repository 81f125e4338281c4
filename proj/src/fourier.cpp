#include "moyal/fourier.hpp"

#include <cmath>

#include "moyal/basis.hpp"
#include "moyal/errors.hpp"

namespace moyal {

std::vector<double> GridField::axis() const {
  std::vector<double> a(resolution);
  for (int i = 0; i < resolution; ++i) a[i] = coord(i);
  return a;
}

void GridField::validate() const {
  params.validate();
  if (params.dim != 2) throw DomainError("GridField supports dim 2 only");
  if (resolution < 2) throw DomainError("GridField resolution must be >= 2");
  if (!(extent > 0.0)) throw DomainError("GridField extent must be positive");
  if (samples.rows() != resolution || samples.cols() != resolution)
    throw DimensionError("GridField samples have wrong size");
  if (!samples.allFinite()) throw DomainError("GridField samples must be finite");
}

GridField sample_grid(const PointFunction& g, const MoyalParams& p, double extent, int resolution) {
  GridField out;
  out.params = p;
  out.extent = extent;
  out.resolution = resolution;
  out.samples.resize(resolution, resolution);
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j) {
      double x[2] = {out.coord(i), out.coord(j)};
      out.samples(i, j) = g(x);
    }
  out.validate();
  return out;
}

GridField grid_from_field(const Field& f, double extent, int resolution) {
  return sample_grid([&f](const double* x) { return eval_field(f, x); }, f.params, extent, resolution);
}

namespace {

Eigen::VectorXd trapezoid_weights(const GridField& g) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(g.resolution, g.spacing());
  w(0) *= 0.5;
  w(g.resolution - 1) *= 0.5;
  return w;
}

}  // namespace

cplx grid_inner(const GridField& f, const GridField& g) {
  f.validate();
  g.validate();
  if (f.resolution != g.resolution || f.extent != g.extent) throw DimensionError("grids differ");
  Eigen::VectorXd w = trapezoid_weights(f);
  Eigen::MatrixXd ww = w * w.transpose();
  return (f.samples.conjugate().array() * g.samples.array() * ww.array()).sum();
}

Eigen::MatrixXcd symplectic_fourier_at(const GridField& g, const std::vector<double>& k1s,
                                       const std::vector<double>& k2s, const FourierOptions& opt) {
  g.validate();
  if (opt.sign != 1 && opt.sign != -1) throw DomainError("symplectic_fourier: sign must be +1 or -1");
  const int r = g.resolution;
  const double peak = g.samples.cwiseAbs().maxCoeff();
  double edge = 0.0;
  for (int i = 0; i < r; ++i)
    edge = std::max({edge, std::abs(g.samples(0, i)), std::abs(g.samples(r - 1, i)),
                     std::abs(g.samples(i, 0)), std::abs(g.samples(i, r - 1))});
  if (peak > 0.0 && edge > opt.boundary_tolerance * peak)
    throw AccuracyError("symplectic_fourier: field not negligible at the grid boundary");
  double kmax = 0.0;
  for (double k : k1s) kmax = std::max(kmax, std::abs(k));
  for (double k : k2s) kmax = std::max(kmax, std::abs(k));
  const double c = 2.0 / g.params.theta;
  if (c * kmax * g.spacing() >= M_PI)
    throw AccuracyError("symplectic_fourier: grid under-resolves the requested frequencies");

  const Eigen::VectorXd w = trapezoid_weights(g);
  const double cs = c * opt.sign;
  // e^{-i cs (k2 x1 - k1 x2)} factorizes into an x1 factor and an x2 factor.
  Eigen::MatrixXcd along_x1(k2s.size(), r), along_x2(k1s.size(), r);
  for (size_t j = 0; j < k2s.size(); ++j)
    for (int a = 0; a < r; ++a) along_x1(j, a) = w(a) * std::polar(1.0, -cs * k2s[j] * g.coord(a));
  for (size_t i = 0; i < k1s.size(); ++i)
    for (int b = 0; b < r; ++b) along_x2(i, b) = w(b) * std::polar(1.0, cs * k1s[i] * g.coord(b));
  // out(i, j) = sum_{a,b} along_x2(i, b) g(a, b) along_x1(j, a)
  Eigen::MatrixXcd tmp = along_x1 * g.samples;  // (j, b)
  Eigen::MatrixXcd out = along_x2 * tmp.transpose();
  return out / (M_PI * g.params.theta);
}

GridField symplectic_fourier(const GridField& g, const FourierOptions& opt) {
  auto ax = g.axis();
  GridField out = g;
  out.samples = symplectic_fourier_at(g, ax, ax, opt);
  return out;
}

}  // namespace moyal
