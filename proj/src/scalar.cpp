#include "moyal/scalar.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "moyal/basis.hpp"
#include "moyal/errors.hpp"
#include "moyal/fourier.hpp"

namespace moyal {

void ScalarModel::validate() const {
  params.validate();
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (!(omega >= 0.0)) throw DomainError("omega must be non-negative");
}

namespace {

void require_model_shape(const Field& f, const ScalarModel& model) {
  model.validate();
  if (!(f.params == model.params)) throw DimensionError("field and model differ in theta or dim");
}

MultiIndex shifted(MultiIndex m, int j, int by) {
  m[j] += by;
  return m;
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

int total(const MultiIndex& m) {
  int s = 0;
  for (int c : m) s += c;
  return s;
}

}  // namespace

Field apply_kinetic(const Field& f, const ScalarModel& model) {
  require_model_shape(f, model);
  const double th = model.params.theta;
  const double w = model.omega * model.omega;
  const double band = 2.0 * (1.0 - w) / th;
  const int dh = model.params.pairs();
  Field out = Field::zero(f.params, f.trunc);
  for (int i = 0; i < f.side(); ++i) {
    MultiIndex m = f.unflat(i);
    for (int j = 0; j < f.side(); ++j) {
      MultiIndex n = f.unflat(j);
      double diag = 2.0 * (1.0 + w) / th * (total(m) + total(n) + dh) + model.mass_term();
      cplx v = diag * f.coeffs(j, i);
      if (band != 0.0) {
        for (int c = 0; c < dh; ++c) {
          if (m[c] + 1 < f.trunc && n[c] + 1 < f.trunc)
            v -= band * std::sqrt((m[c] + 1.0) * (n[c] + 1.0)) * f(shifted(n, c, 1), shifted(m, c, 1));
          if (m[c] > 0 && n[c] > 0)
            v -= band * std::sqrt(static_cast<double>(m[c]) * n[c]) * f(shifted(n, c, -1), shifted(m, c, -1));
        }
      }
      out.coeffs(i, j) = v;
    }
  }
  return out;
}

Eigen::MatrixXd kinetic_matrix(const ScalarModel& model, int trunc) {
  Field probe = Field::zero(model.params, trunc);
  const int s = probe.side();
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(s * s, s * s);
  for (int k = 0; k < s; ++k)
    for (int l = 0; l < s; ++l) {
      Field e = Field::zero(model.params, trunc);
      e.coeffs(k, l) = 1.0;
      Field col = apply_kinetic(e, model);
      for (int m = 0; m < s; ++m)
        for (int n = 0; n < s; ++n) dense(m * s + n, k * s + l) = col.coeffs(m, n).real();
    }
  return dense;
}

double gw_action(const Field& f, const ScalarModel& model) {
  require_model_shape(f, model);
  if (!f.is_hermitian(1e-12 * std::max(1.0, f.coeffs.cwiseAbs().maxCoeff())))
    throw DomainError("gw_action: field is not Hermitian");
  Field k = apply_kinetic(f, model);
  cplx quad = 0.5 * (f.coeffs.array() * k.coeffs.array()).sum();
  Eigen::MatrixXcd sq = f.coeffs * f.coeffs;
  cplx quartic = model.lambda * (sq * sq).trace();
  return std::pow(2.0 * M_PI * model.params.theta, model.params.pairs()) * (quad + quartic).real();
}

double propagator_matrix(const MultiIndex& m, const MultiIndex& n, const MultiIndex& k, const MultiIndex& l,
                         const ScalarModel& model, const PropagatorOptions& opt) {
  model.validate();
  const int dh = model.params.pairs();
  if (static_cast<int>(m.size()) != dh || static_cast<int>(n.size()) != dh || static_cast<int>(k.size()) != dh ||
      static_cast<int>(l.size()) != dh)
    throw DimensionError("propagator_matrix: multi-index length does not match dim");
  for (int c = 0; c < dh; ++c)
    if (m[c] < 0 || n[c] < 0 || k[c] < 0 || l[c] < 0) throw DomainError("propagator_matrix: negative index");
  const double th = model.params.theta;
  const double om = model.omega;
  const double mu2 = model.mass_term();
  const int dim = model.params.dim;
  if (om == 1.0 && !opt.force_quadrature) {
    if (m != l || n != k) return 0.0;
    double denom = total(m) + total(n) + mu2 * th / 4.0 + dim / 2.0;
    if (!(denom > 0.0)) throw DomainError("propagator_matrix: non-positive mass denominator");
    return th / 4.0 / denom;
  }
  if (!(om > 0.0)) throw DomainError("propagator_matrix: omega must be positive");
  for (int c = 0; c < dh; ++c)
    if (m[c] + k[c] != n[c] + l[c]) return 0.0;
  const double exponent = mu2 * th / (8.0 * om) + dim / 4.0 - 1.0;
  if (!(exponent > -1.0)) throw DomainError("propagator_matrix: alpha integral diverges for this mass");
  const double shift = (1.0 - om) * (1.0 - om) / (4.0 * om);
  const double mix = (1.0 - om * om) / (4.0 * om);

  auto integrand = [&](double alpha, double one_minus_alpha) {
    if (one_minus_alpha <= 0.0) return 0.0;
    const double b = 1.0 + shift * alpha;
    double v = std::pow(one_minus_alpha, exponent) / std::pow(b, dim / 2.0);
    for (int c = 0; c < dh; ++c) {
      double sum = 0.0;
      for (int i = std::max(0, m[c] - n[c]); i <= std::min(m[c], l[c]); ++i) {
        double log_a = 0.5 * (log_binomial(m[c], m[c] - i) + log_binomial(n[c], m[c] - i) +
                              log_binomial(l[c], l[c] - i) + log_binomial(k[c], l[c] - i));
        int pw = m[c] + l[c] - 2 * i;
        double term = std::exp(log_a) * std::pow(one_minus_alpha, 0.5 * (n[c] - m[c] + 2 * i));
        if (pw > 0) term *= std::pow(mix * alpha, pw);
        sum += term;
      }
      v *= sum / std::pow(b, n[c] + l[c]);
    }
    return v;
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  double err = 0.0;
  // The two-argument form hands the distance to the right endpoint to the integrand,
  // which keeps (1 - alpha)^exponent accurate near alpha = 1.
  double value = integrator.integrate(
      [&](double x, double xc) { return integrand(x, x > 0.5 ? xc : 1.0 - x); }, 0.0, 1.0,
      1e-14, &err);
  if (!std::isfinite(value) || err > opt.tolerance * std::max(1.0, std::abs(value)))
    throw AccuracyError("propagator_matrix: alpha quadrature error estimate " + std::to_string(err));
  return th / (8.0 * om) * value;
}

double mehler_kernel(const double* x, const double* y, const ScalarModel& model, double cutoff) {
  model.validate();
  const int dim = model.params.dim;
  const double th = model.params.theta;
  const double om = model.omega;
  if (!(om > 0.0)) throw DomainError("mehler_kernel: omega must be positive");
  if (cutoff < 0.0) throw DomainError("mehler_kernel: cutoff must be non-negative");
  const double om_t = 2.0 * om / th;
  const double mass_rate = model.mass_term() / (2.0 * om_t);
  if (!(mass_rate + dim / 2.0 > 0.0)) throw DomainError("mehler_kernel: integral diverges at large alpha");
  double diff2 = 0.0, sum2 = 0.0;
  for (int c = 0; c < dim; ++c) {
    diff2 += (x[c] - y[c]) * (x[c] - y[c]);
    sum2 += (x[c] + y[c]) * (x[c] + y[c]);
  }
  if (diff2 == 0.0 && cutoff == 0.0)
    throw DomainError("mehler_kernel: coincident points need a positive small-alpha cutoff");
  auto integrand = [&](double alpha) {
    if (alpha <= 0.0) return 0.0;
    double log_sinh = alpha < 20.0 ? std::log(std::sinh(alpha)) : alpha + std::log1p(-std::exp(-2.0 * alpha)) - std::log(2.0);
    double half = 0.5 * alpha;
    double coth = 1.0 / std::tanh(half);
    if (!std::isfinite(coth) || !std::isfinite(log_sinh)) return 0.0;
    double l = -0.5 * dim * log_sinh - mass_rate * alpha - 0.25 * om_t * coth * diff2 -
               0.25 * om_t * std::tanh(half) * sum2;
    return std::exp(l);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0;
  double value = integrator.integrate(
      [&](double t) { return integrand(cutoff + t); }, 0.0, std::numeric_limits<double>::infinity(),
      std::sqrt(std::numeric_limits<double>::epsilon()), &err);
  if (!std::isfinite(value)) throw AccuracyError("mehler_kernel: quadrature failed");
  return th / (4.0 * om) * std::pow(om / (M_PI * th), dim / 2.0) * value;
}

double propagator_resummation(const double* x, const double* y, const ScalarModel& model, int shells) {
  model.validate();
  if (model.params.dim != 2) throw UnsupportedError("propagator_resummation: dim 2 only");
  if (model.omega != 1.0) throw UnsupportedError("propagator_resummation: requires Omega = 1");
  if (shells < 4) throw DomainError("propagator_resummation: need at least 4 shells");
  const double th = model.params.theta;
  Eigen::MatrixXcd bx = basis_matrix_2d(x[0], x[1], th, shells);
  Eigen::MatrixXcd by = basis_matrix_2d(y[0], y[1], th, shells);
  std::vector<double> shell(shells, 0.0);
  for (int a = 0; a < shells; ++a)
    for (int b = 0; a + b < shells; ++b)
      shell[a + b] += propagator_matrix({a}, {b}, {b}, {a}, model) * (bx(a, b) * by(b, a)).real();
  double partial = 0.0, mean = 0.0;
  int count = 0;
  for (int s = 0; s < shells; ++s) {
    partial += shell[s];
    if (2 * s >= shells) {
      mean += partial;
      ++count;
    }
  }
  return mean / count / (2.0 * M_PI * th);
}

Field scalar_eom_residual(const Field& f, const ScalarModel& model) {
  require_model_shape(f, model);
  if (model.omega != 1.0) throw UnsupportedError("scalar_eom_residual: requires Omega = 1");
  const double th = model.params.theta;
  Field out = Field::zero(f.params, f.trunc);
  for (int i = 0; i < f.side(); ++i)
    for (int j = 0; j < f.side(); ++j)
      out.coeffs(i, j) = (4.0 / th * (f.degree(i) + f.degree(j) + model.params.pairs()) - model.mu2) * f.coeffs(i, j);
  out.coeffs += 4.0 * model.lambda * f.coeffs * f.coeffs * f.coeffs;
  return out;
}

Field VacuumScalar::field(int trunc) const {
  Field f = Field::zero(model.params, trunc);
  for (size_t i = 0; i < indices.size(); ++i) {
    bool fits = true;
    for (int c : indices[i]) fits = fits && c < trunc;
    if (fits) f(indices[i], indices[i]) = a[i];
  }
  return f;
}

VacuumScalar scalar_vacuum(const ScalarModel& model, const std::vector<int>& signs) {
  model.validate();
  if (model.omega != 1.0) throw UnsupportedError("scalar_vacuum: requires Omega = 1");
  VacuumScalar v;
  v.model = model;
  const double th = model.params.theta;
  const double level = model.mu2 * th / 4.0 - model.params.pairs();
  v.p = static_cast<int>(std::floor(level / 2.0));
  if (v.p < 0) return v;
  // Enumerate multi-indices with |k| <= p, lexicographic.
  const int dh = model.params.pairs();
  MultiIndex k(dh, 0);
  while (true) {
    if (total(k) <= v.p) {
      double a2 = (level - 2.0 * total(k)) / (model.lambda * th);
      v.indices.push_back(k);
      v.a.push_back(std::sqrt(std::max(0.0, a2)));
    }
    int c = dh - 1;
    while (c >= 0 && ++k[c] > v.p) k[c--] = 0;
    if (c < 0) break;
  }
  if (!signs.empty()) {
    if (signs.size() != v.a.size()) throw DimensionError("scalar_vacuum: one sign per stored index required");
    for (size_t i = 0; i < signs.size(); ++i) {
      if (signs[i] != 1 && signs[i] != -1) throw DomainError("scalar_vacuum: signs must be +1 or -1");
      v.a[i] *= signs[i];
    }
  }
  return v;
}

StabilityReport vacuum_stability(const VacuumScalar& v, int trunc) {
  const ScalarModel& model = v.model;
  model.validate();
  if (model.omega != 1.0) throw UnsupportedError("vacuum_stability: requires Omega = 1");
  const double th = model.params.theta;
  const double lt = model.lambda * th;
  Field shape = Field::zero(model.params, trunc);
  const int s = shape.side();
  StabilityReport r;
  r.heuristic = model.params.dim != 2;
  Eigen::VectorXd a = Eigen::VectorXd::Zero(s);
  for (size_t i = 0; i < v.indices.size(); ++i) {
    bool fits = true;
    for (int c : v.indices[i]) fits = fits && c < trunc;
    if (fits) a(shape.flat(v.indices[i])) = v.a[i];
  }
  r.inverse_propagator.resize(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      double alpha = 4.0 * M_PI * (shape.degree(i) + shape.degree(j) + model.params.pairs()) - model.mu2 * M_PI * th;
      double value = alpha + 4.0 * M_PI * lt * (a(i) * a(i) + a(j) * a(j)) + 4.0 * M_PI * lt * a(i) * a(j);
      r.inverse_propagator(i, j) = value;
      if (v.p >= 0 && shape.degree(i) <= v.p && shape.degree(j) <= 2 * v.p - shape.degree(i) && alpha < 0.0)
        ++r.negative_alpha_at_zero;
    }
  r.min_value = r.inverse_propagator.minCoeff();
  double level = model.mu2 * th / 8.0 - 0.5;
  r.degenerate = level >= 0.0 && std::abs(level - std::round(level)) < 1e-12;
  return r;
}

SigmaSpectrum sigma_quadratic_spectrum(const VacuumScalar& v, int trunc) {
  const ScalarModel& model = v.model;
  model.validate();
  if (model.omega != 1.0) throw UnsupportedError("sigma_quadratic_spectrum: requires Omega = 1");
  const double th = model.params.theta;
  Field shape = Field::zero(model.params, trunc);
  SigmaSpectrum out;
  for (int i = 0; i < shape.side(); ++i) {
    if (shape.degree(i) <= v.p) {
      out.masked.push_back(shape.unflat(i));
      continue;
    }
    for (int j = 0; j < shape.side(); ++j) {
      double c = 2.0 / th * (shape.degree(i) + shape.degree(j) + model.params.pairs() - model.mu2 * th / 4.0);
      out.entries.push_back({shape.unflat(i), shape.unflat(j), c});
    }
  }
  return out;
}

namespace {

// 4th order central differences in the interior, one-sided 2nd order at the edges
// (the field is negligible there by the Fourier boundary check).
Eigen::MatrixXcd derivative(const Eigen::MatrixXcd& s, double h, int axis) {
  const int r = static_cast<int>(s.rows());
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(r, r);
  auto at = [&](int i, int j) { return axis == 0 ? s(i, j) : s(j, i); };
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) {
      cplx v;
      if (i >= 2 && i + 2 < r)
        v = (-at(i + 2, j) + 8.0 * at(i + 1, j) - 8.0 * at(i - 1, j) + at(i - 2, j)) / (12.0 * h);
      else if (i == 0)
        v = (-3.0 * at(0, j) + 4.0 * at(1, j) - at(2, j)) / (2.0 * h);
      else if (i == r - 1)
        v = (3.0 * at(r - 1, j) - 4.0 * at(r - 2, j) + at(r - 3, j)) / (2.0 * h);
      else
        v = (at(i + 1, j) - at(i - 1, j)) / (2.0 * h);
      if (axis == 0)
        d(i, j) = v;
      else
        d(j, i) = v;
    }
  return d;
}

double grid_integral(const GridField& g, const Eigen::MatrixXd& density) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(g.resolution, g.spacing());
  w(0) *= 0.5;
  w(g.resolution - 1) *= 0.5;
  return w.transpose() * density * w;
}

// int 1/2 grad_coeff |d f|^2 + 1/2 pos_coeff x~^2 |f|^2 + 1/2 mass |f|^2 on the grid.
double quadratic_part(const GridField& g, double grad_coeff, double pos_coeff, double mass) {
  const double h = g.spacing();
  Eigen::MatrixXcd d1 = derivative(g.samples, h, 0), d2 = derivative(g.samples, h, 1);
  Eigen::MatrixXd density(g.resolution, g.resolution);
  const double th = g.params.theta;
  for (int i = 0; i < g.resolution; ++i)
    for (int j = 0; j < g.resolution; ++j) {
      double r2 = g.coord(i) * g.coord(i) + g.coord(j) * g.coord(j);
      double xt2 = 4.0 / (th * th) * r2;
      density(i, j) = 0.5 * grad_coeff * (std::norm(d1(i, j)) + std::norm(d2(i, j))) +
                      0.5 * (pos_coeff * xt2 + mass) * std::norm(g.samples(i, j));
    }
  return grid_integral(g, density);
}

}  // namespace

DualityReport ls_duality_check(const PointFunction& phi, const ScalarModel& model, const DualityOptions& opt) {
  model.validate();
  if (model.params.dim != 2) throw DomainError("ls_duality_check: dim 2 only");
  if (model.omega == 0.0) throw DomainError("ls_duality_check: Omega must be non-zero");
  const MoyalParams& p = model.params;
  const double th = p.theta;
  const double w = model.omega * model.omega;
  const double mass = model.mass_term();

  GridField g = sample_grid(phi, p, opt.extent, opt.resolution);
  if (g.samples.imag().cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.samples.cwiseAbs().maxCoeff()))
    throw DomainError("ls_duality_check: field must be real");
  FourierOptions fo;
  fo.sign = opt.fourier_sign;
  GridField gh = symplectic_fourier(g, fo);

  HermiteRule rule = gauss_hermite(opt.nodes);
  std::vector<double> targets(opt.nodes);
  for (int i = 0; i < opt.nodes; ++i) targets[i] = std::sqrt(th) * rule.nodes[i];
  Eigen::MatrixXcd direct_samples(opt.nodes, opt.nodes);
  for (int a = 0; a < opt.nodes; ++a)
    for (int b = 0; b < opt.nodes; ++b) {
      double x[2] = {targets[a], targets[b]};
      direct_samples(a, b) = phi(x);
    }
  Eigen::MatrixXcd dual_samples = symplectic_fourier_at(g, targets, targets, fo);

  Field c = coeffs_from_samples(direct_samples, opt.trunc, p);
  Field c1 = coeffs_from_samples(dual_samples, opt.trunc, p);
  // Coefficients of phi^(-k): b_mn(-x) = (-1)^{m+n} b_mn(x).
  Field c2 = c1;
  for (int i = 0; i < c2.side(); ++i)
    for (int j = 0; j < c2.side(); ++j)
      if ((c2.degree(i) + c2.degree(j)) % 2) c2.coeffs(i, j) = -c2.coeffs(i, j);

  DualityReport r;
  const double vol = 2.0 * M_PI * th;
  r.direct_quadratic = quadratic_part(g, 1.0, w, mass);
  Eigen::MatrixXcd sq = c.coeffs * c.coeffs;
  r.direct_quartic = model.lambda * vol * (sq * sq).trace().real();
  // Omega^2 S[phi^; mu/Omega, lambda/Omega^2, 1/Omega] after expanding the prefactor.
  r.dual_quadratic = quadratic_part(gh, w, 1.0, mass);
  Eigen::MatrixXcd alt = c2.coeffs * c1.coeffs;
  r.dual_quartic = model.lambda * vol * (alt * alt).trace().real();
  r.direct = r.direct_quadratic + r.direct_quartic;
  r.dual = r.dual_quadratic + r.dual_quartic;
  double scale = std::max(std::abs(r.direct), std::abs(r.dual));
  r.defect = scale == 0.0 ? 0.0 : std::abs(r.direct - r.dual) / scale;
  return r;
}

}  // namespace moyal
