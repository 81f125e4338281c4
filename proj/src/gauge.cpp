#include "moyal/gauge.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>

#include "moyal/errors.hpp"

namespace moyal {

void GaugeModel::validate() const {
  params.validate();
  if (!(omega2 >= 0.0 && omega2 <= 1.0)) throw DomainError("Omega^2 must lie in [0, 1]");
  if (!std::isfinite(kappa)) throw DomainError("kappa must be finite");
}

Field CovariantField2D::a1() const { return cplx(1.0 / std::sqrt(2.0)) * (z + adjoint(z)); }

Field CovariantField2D::a2() const { return cplx(0.0, -1.0 / std::sqrt(2.0)) * (z - adjoint(z)); }

CovariantField2D CovariantField2D::from_components(const Field& a1, const Field& a2) {
  return {cplx(1.0 / std::sqrt(2.0)) * (a1 + cplx(0.0, 1.0) * a2)};
}

namespace {

void require_dim2(const Field& f, const GaugeModel& model) {
  model.validate();
  if (model.params.dim != 2) throw DomainError("gauge model: dim 2 required");
  if (!(f.params == model.params)) throw DimensionError("field and model differ in theta or dim");
}

double volume(const MoyalParams& p) { return std::pow(2.0 * M_PI * p.theta, p.pairs()); }

}  // namespace

double gauge_action_2d(const CovariantField2D& f, const GaugeModel& model) {
  require_dim2(f.z, model);
  const double w = model.omega2;
  const Eigen::MatrixXcd& z = f.z.coeffs;
  const Eigen::MatrixXcd zd = z.adjoint();
  const Eigen::MatrixXcd zzd = z * zd;
  cplx tr = (3.0 * w - 1.0) * (z * z * zd * zd).trace() + (1.0 + w) * (zzd * zzd).trace() + 2.0 * model.kappa * zzd.trace();
  return volume(model.params) * tr.real();
}

double gauge_action_commutator_form(const Field& a1, const Field& a2, const GaugeModel& model) {
  require_dim2(a1, model);
  require_same_shape(a1, a2);
  const double w = model.omega2;
  const Eigen::MatrixXcd* a[2] = {&a1.coeffs, &a2.coeffs};
  cplx tr = 0.0;
  for (int mu = 0; mu < 2; ++mu) {
    tr += model.kappa * ((*a[mu]) * (*a[mu])).trace();
    for (int nu = 0; nu < 2; ++nu) {
      Eigen::MatrixXcd c = (*a[mu]) * (*a[nu]) - (*a[nu]) * (*a[mu]);
      Eigen::MatrixXcd ac = (*a[mu]) * (*a[nu]) + (*a[nu]) * (*a[mu]);
      tr += -0.25 * (c * c).trace() + 0.25 * w * (ac * ac).trace();
    }
  }
  return volume(model.params) * tr.real();
}

Field gauge_eom_residual_2d(const CovariantField2D& f, const GaugeModel& model) {
  require_dim2(f.z, model);
  const double w = model.omega2;
  const Eigen::MatrixXcd& z = f.z.coeffs;
  const Eigen::MatrixXcd zd = z.adjoint();
  Field out = f.z;
  out.coeffs = (3.0 * w - 1.0) * (zd * z * z + z * z * zd) + 2.0 * (1.0 + w) * z * zd * z + 2.0 * model.kappa * z;
  return out;
}

const char* branch_name(GaugeBranch b) {
  switch (b) {
    case GaugeBranch::Omega0: return "Omega0";
    case GaugeBranch::LowOmega: return "LowOmega";
    case GaugeBranch::OneThird: return "OneThird";
    case GaugeBranch::MidOmega: return "MidOmega";
    case GaugeBranch::OmegaOne: return "OmegaOne";
    case GaugeBranch::FourD: return "FourD";
  }
  return "unknown";
}

double characteristic_root(double omega2) {
  if (omega2 == 1.0 / 3.0) throw DomainError("characteristic_root: undefined at Omega^2 = 1/3");
  return (1.0 + omega2 + std::sqrt(8.0 * omega2 * (1.0 - omega2))) / (1.0 - 3.0 * omega2);
}

double recurrence_residual_2d(const std::vector<double>& u, double omega2, double kappa) {
  double worst = 0.0;
  const double a = 3.0 * omega2 - 1.0, b = 2.0 * (1.0 + omega2);
  for (size_t m = 0; m + 2 < u.size(); ++m) {
    double lhs = a * (u[m] + u[m + 2]) + b * u[m + 1] + 2.0 * kappa;
    double scale = std::abs(a * u[m]) + std::abs(a * u[m + 2]) + std::abs(b * u[m + 1]) + std::abs(2.0 * kappa);
    worst = std::max(worst, std::abs(lhs) / std::max(1.0, scale));
  }
  return worst;
}

VacuumSequence vacuum_sequence_2d(const GaugeModel& model, double alpha, const SequenceOptions& opt) {
  model.validate();
  if (model.params.dim != 2) throw DomainError("vacuum_sequence_2d: dim 2 required");
  if (opt.m_max < 2) throw DomainError("vacuum_sequence_2d: m_max must be >= 2");
  if (!(alpha >= 0.0)) throw DomainError("vacuum_sequence_2d: alpha must be >= 0");
  const double w = model.omega2, kappa = model.kappa;
  const double third = 1.0 / 3.0;
  VacuumSequence s;
  s.dim = 2;
  s.alpha = alpha;
  s.u.assign(opt.m_max + 1, 0.0);
  s.phases.assign(opt.m_max, 0.0);
  if (w == 0.0) {
    if (kappa != 0.0) throw DomainError("vacuum_sequence_2d: Omega^2 = 0 requires kappa = 0");
    s.branch = GaugeBranch::Omega0;
    for (int m = 0; m <= opt.m_max; ++m) s.u[m] = alpha * m;
  } else if (w < third && std::abs(w - third) > 1e-15) {
    if (alpha != 0.0 && !opt.allow_growing)
      throw DomainError("vacuum_sequence_2d: alpha must be 0 for 0 < Omega^2 < 1/3 (growing solution)");
    s.branch = GaugeBranch::LowOmega;
    const double r = characteristic_root(w);
    const double log_r = std::log1p((4.0 * w + std::sqrt(8.0 * w * (1.0 - w))) / (1.0 - 3.0 * w));
    for (int m = 0; m <= opt.m_max; ++m) {
      double one_minus_inv = -std::expm1(-m * log_r);
      double grow = alpha == 0.0 ? 0.0 : alpha * (std::pow(r, m) - std::pow(r, -m));
      s.u[m] = grow - kappa / (4.0 * w) * one_minus_inv;
    }
  } else if (std::abs(w - third) <= 1e-15) {
    if (kappa > 0.0) throw DomainError("vacuum_sequence_2d: Omega^2 = 1/3 requires kappa <= 0");
    if (alpha != 0.0) throw DomainError("vacuum_sequence_2d: alpha is not a parameter of the Omega^2 = 1/3 branch");
    s.branch = GaugeBranch::OneThird;
    for (int m = 1; m <= opt.m_max; ++m) s.u[m] = -0.75 * kappa;
  } else if (w < 1.0) {
    if (kappa > 0.0) throw DomainError("vacuum_sequence_2d: 1/3 < Omega^2 < 1 requires kappa <= 0");
    if (alpha != 0.0) throw DomainError("vacuum_sequence_2d: alpha is not a parameter of the 1/3 < Omega^2 < 1 branch");
    s.branch = GaugeBranch::MidOmega;
    const double inv_r = 1.0 / characteristic_root(w);
    double power = 1.0;
    for (int m = 0; m <= opt.m_max; ++m) {
      s.u[m] = -kappa / (4.0 * w) * (1.0 - power);
      power *= inv_r;
    }
  } else {
    if (kappa > 0.0) throw DomainError("vacuum_sequence_2d: Omega^2 = 1 requires kappa <= 0");
    if (alpha != 0.0) throw DomainError("vacuum_sequence_2d: alpha is not a parameter of the Omega^2 = 1 branch");
    s.branch = GaugeBranch::OmegaOne;
    for (int m = 0; m <= opt.m_max; ++m) s.u[m] = (m % 2) ? -0.5 * kappa : 0.0;
  }
  double scale = 0.0;
  for (double v : s.u) scale = std::max(scale, std::abs(v));
  for (int m = 0; m <= opt.m_max; ++m)
    if (s.u[m] < -1e-14 * std::max(1.0, scale))
      throw DomainError("vacuum_sequence_2d: u_m < 0 for these parameters (kappa must be <= 0 when Omega != 0)");
  for (double& v : s.u) v = std::max(v, 0.0);
  s.max_recurrence_residual = recurrence_residual_2d(s.u, w, kappa);
  if (s.max_recurrence_residual > opt.recurrence_tolerance)
    throw AccuracyError("vacuum_sequence_2d: closed form fails the recurrence check");
  return s;
}

namespace {

// Gamma(x2 / 2) with the sqrt(pi) factor of half-integers removed.
Rational gamma_half_part(int x2) {
  Rational r = 1;
  if (x2 % 2) {
    int n = (x2 - 1) / 2;  // Gamma(n + 1/2) = sqrt(pi) (2n)! / (4^n n!)
    for (int k = n + 1; k <= 2 * n; ++k) r *= k;
    for (int k = 0; k < n; ++k) r /= 4;
  } else {
    for (int k = 2; k < x2 / 2; ++k) r *= k;
  }
  return r;
}

template <class T>
T neumaier_sum(const std::vector<T>& terms) {
  T sum = 0, comp = 0;
  for (const T& t : terms) {
    T s = sum + t;
    if (std::abs(sum) >= std::abs(t))
      comp += (sum - s) + t;
    else
      comp += (t - s) + sum;
    sum = s;
  }
  return sum + comp;
}

void check_4d_omega(double w) {
  if (w <= 0.0 || w >= 1.0 || std::abs(w - 1.0 / 3.0) < 1e-15)
    throw DomainError("vacuum_sequence_4d: closed form requires Omega^2 in (0, 1) without 1/3");
}

}  // namespace

Rational hyp2f1_terminating(int m, const Rational& z) {
  // a = -(m+1)/2, b = -(m+2)/2, c = -(2m+1)/2, all as rationals.
  const Rational a(-(m + 1), 2), b(-(m + 2), 2), c(-(2 * m + 1), 2);
  Rational term = 1, sum = 1;
  for (int j = 0;; ++j) {
    if (a + j == 0 || b + j == 0) break;
    term *= (a + j) * (b + j) / ((c + j) * (j + 1)) * z;
    sum += term;
  }
  return sum;
}

double hyp2f1_terminating(int m, double z) {
  const double a = -(m + 1) / 2.0, b = -(m + 2) / 2.0, c = -(2.0 * m + 1) / 2.0;
  std::vector<double> terms{1.0};
  double term = 1.0;
  for (int j = 0;; ++j) {
    if (a + j == 0.0 || b + j == 0.0) break;
    term *= (a + j) * (b + j) / ((c + j) * (j + 1)) * z;
    terms.push_back(term);
  }
  return neumaier_sum(terms);
}

std::vector<Rational> vacuum_sequence_4d_exact(const Rational& omega2, const Rational& v1, int m_max) {
  check_4d_omega(static_cast<double>(omega2));
  const Rational& w = omega2;
  const Rational ratio = (1 + w) / (1 - 3 * w);
  const Rational z = (1 - 3 * w) * (1 - 3 * w) / ((1 + w) * (1 + w));
  const Rational pref = (1 + w) * (1 + w) * v1 / (4 * w * (1 - w));
  std::vector<Rational> v(m_max + 1);
  v[0] = 0;
  Rational power = 1;
  for (int m = 0; m + 1 <= m_max; ++m) {
    Rational g = gamma_half_part(3) * gamma_half_part(2 * m + 3) / (gamma_half_part(m + 3) * gamma_half_part(m + 4));
    v[m + 1] = pref * g * power * hyp2f1_terminating(m, z);
    power *= ratio;
  }
  return v;
}

std::vector<Rational> recurrence_4d_exact(const Rational& omega2, const Rational& v1, int m_max) {
  const Rational& w = omega2;
  if (3 * w == 1) throw DomainError("recurrence_4d_exact: leading coefficient vanishes at Omega^2 = 1/3");
  std::vector<Rational> v(m_max + 1);
  v[0] = 0;
  if (m_max >= 1) v[1] = v1;
  for (int m = 0; m + 2 <= m_max; ++m)
    v[m + 2] = -((3 * w - 1) * m * v[m] + (1 + w) * (2 * m + 3) * v[m + 1]) / ((3 * w - 1) * (m + 3));
  return v;
}

VacuumSequence vacuum_sequence_4d(const GaugeModel& model, double v1, int m_max) {
  model.validate();
  if (model.params.dim != 4) throw DomainError("vacuum_sequence_4d: dim 4 required");
  if (model.kappa != 0.0) throw DomainError("vacuum_sequence_4d: closed form requires kappa = 0");
  if (!(v1 >= 0.0)) throw DomainError("vacuum_sequence_4d: v1 must be >= 0");
  if (m_max < 1) throw DomainError("vacuum_sequence_4d: m_max must be >= 1");
  const double w = model.omega2;
  check_4d_omega(w);
  VacuumSequence s;
  s.branch = GaugeBranch::FourD;
  s.dim = 4;
  s.v1 = v1;
  s.u.assign(m_max + 1, 0.0);
  s.phases.assign(m_max, 0.0);
  const double ratio = (1.0 + w) / (1.0 - 3.0 * w);
  const double z = (1.0 - 3.0 * w) * (1.0 - 3.0 * w) / ((1.0 + w) * (1.0 + w));
  const double log_pref = 2.0 * std::log1p(w) - std::log(4.0 * std::sqrt(M_PI) * w * (1.0 - w));
  for (int m = 0; m + 1 <= m_max; ++m) {
    double log_g = std::lgamma(1.5) + std::lgamma(m + 1.5) - std::lgamma(m / 2.0 + 1.5) - std::lgamma(m / 2.0 + 2.0);
    double sign = (ratio < 0.0 && (m % 2)) ? -1.0 : 1.0;
    double f = hyp2f1_terminating(m, z);
    s.u[m + 1] = v1 * sign * f * std::exp(log_pref + log_g + m * std::log(std::abs(ratio)));
    if (s.u[m + 1] < 0.0) s.negative_indices.push_back(m + 1);
  }
  // Exact recurrence on the binary value of w as the oracle.
  std::vector<Rational> exact = recurrence_4d_exact(Rational(w), Rational(v1), m_max);
  double worst = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    double e = static_cast<double>(exact[m]);
    double d = std::abs(s.u[m] - e) / std::max(std::abs(e), std::numeric_limits<double>::min());
    if (e == 0.0 && s.u[m] == 0.0) d = 0.0;
    worst = std::max(worst, d);
  }
  s.max_recurrence_residual = worst;
  if (worst > 1e-10) throw AccuracyError("vacuum_sequence_4d: closed form disagrees with the recurrence");
  return s;
}

std::vector<Field> covariant_fields(const VacuumSequence& seq, const MoyalParams& p, int trunc) {
  p.validate();
  if (p.dim != seq.dim) throw DimensionError("covariant_fields: sequence and params differ in dim");
  auto amplitude = [&](int k) -> cplx {
    if (k + 1 >= static_cast<int>(seq.u.size())) return 0.0;
    double xi = k < static_cast<int>(seq.phases.size()) ? seq.phases[k] : 0.0;
    return std::polar(std::sqrt(std::max(0.0, seq.u[k + 1])), xi);
  };
  const cplx minus_i(0.0, -1.0);
  if (p.dim == 2) {
    Field z = Field::zero(p, trunc);
    for (int m = 0; m + 1 < trunc; ++m) z.coeffs(m, m + 1) = minus_i * amplitude(m);
    return {z};
  }
  Field z1 = Field::zero(p, trunc), z2 = Field::zero(p, trunc);
  for (int m1 = 0; m1 < trunc; ++m1)
    for (int m2 = 0; m2 < trunc; ++m2) {
      cplx a = amplitude(m1 + m2);
      if (m1 + 1 < trunc) z1({m1, m2}, {m1 + 1, m2}) = minus_i * a * std::sqrt(m1 + 1.0);
      if (m2 + 1 < trunc) z2({m1, m2}, {m1, m2 + 1}) = minus_i * a * std::sqrt(m2 + 1.0);
    }
  return {z1, z2};
}

namespace {

double bessel_ratio(int order, double y) {
  // J_order(y) / y^order, with the Taylor series near 0.
  if (y < 1e-3) {
    double y2 = y * y;
    if (order == 1) return 0.5 - y2 / 16.0 + y2 * y2 / 384.0;
    return 0.125 - y2 / 96.0 + y2 * y2 / 3072.0;
  }
  return std::cyl_bessel_j(order, y) / std::pow(y, order);
}

}  // namespace

ProfileValue vacuum_profile_xspace(const VacuumSequence& seq, const MoyalParams& p, const double* x,
                                   const ProfileOptions& opt) {
  p.validate();
  if (p.dim != seq.dim) throw DimensionError("vacuum_profile_xspace: sequence and params differ in dim");
  if (seq.u.size() < 2) throw DomainError("vacuum_profile_xspace: empty sequence");
  const double th = p.theta;
  double r2 = 0.0;
  for (int c = 0; c < p.dim; ++c) r2 += x[c] * x[c];
  const double z = 2.0 * r2 / th;
  const int terms = static_cast<int>(seq.u.size()) - 1;  // a_0 .. a_{terms-1}
  std::vector<double> ccos(terms), csin(terms);
  for (int m = 0; m < terms; ++m) {
    double amp = std::sqrt(std::max(0.0, seq.u[m + 1])) * ((m % 2) ? -1.0 : 1.0);
    if (p.dim == 2) amp /= std::sqrt(m + 1.0);
    double xi = m < static_cast<int>(seq.phases.size()) ? seq.phases[m] : 0.0;
    ccos[m] = amp * std::cos(xi);
    csin[m] = amp * std::sin(xi);
  }
  const bool two = p.dim == 2;
  // Integrand without the coefficient sum: dim 2: 2 t e^{-t} J1(y)/y, dim 4: 4 t^2 e^{-t} J2(y)/y^2,
  // y = 2 sqrt(t z); the remaining series is sum c_m t^m / m!.
  auto kernel = [&](double t) {
    double y = 2.0 * std::sqrt(t * z);
    return two ? 2.0 * t * std::exp(-t) * bessel_ratio(1, y) : 4.0 * t * t * std::exp(-t) * bessel_ratio(2, y);
  };
  auto series = [&](const std::vector<double>& c, double t, double* abs_sum) {
    double power = 1.0, s = 0.0, a = 0.0;
    for (int m = 0; m < terms; ++m) {
      s += c[m] * power;
      a += std::abs(c[m]) * power;
      power *= t / (m + 1);
    }
    if (abs_sum) *abs_sum = a;
    return s;
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double err_cos = 0.0, err_sin = 0.0;
  double icos = GK::integrate([&](double t) { return kernel(t) * series(ccos, t, nullptr); }, 0.0, opt.t_max, 15,
                              1e-13, &err_cos);
  double isin = 0.0;
  bool any_sin = false;
  for (double v : csin) any_sin = any_sin || v != 0.0;
  if (any_sin)
    isin = GK::integrate([&](double t) { return kernel(t) * series(csin, t, nullptr); }, 0.0, opt.t_max, 15, 1e-13,
                         &err_sin);
  // Rounding bound from cancellation in the alternating series.
  double abs_bound = GK::integrate(
      [&](double t) {
        double a1 = 0.0, a2 = 0.0;
        series(ccos, t, &a1);
        series(csin, t, &a2);
        return std::abs(kernel(t)) * (a1 + a2);
      },
      0.0, opt.t_max, 8, 1e-6);
  // Truncation: bound on the last retained term over [0, t_max]; tail: integrand size at t_max.
  const int last = terms - 1;
  double cl = std::abs(ccos[last]) + std::abs(csin[last]);
  double trunc_bound =
      two ? cl * (last + 1) * boost::math::gamma_p(last + 2.0, opt.t_max)
          : cl * 0.5 * (last + 1.0) * (last + 2.0) * boost::math::gamma_p(last + 3.0, opt.t_max);
  double tail = std::abs(kernel(opt.t_max)) *
                (std::abs(series(ccos, opt.t_max, nullptr)) + std::abs(series(csin, opt.t_max, nullptr)));

  const double pref = two ? 2.0 * std::sqrt(th) : 4.0 * std::sqrt(th);
  const double ez = std::exp(0.5 * z);
  ProfileValue out;
  out.cos_coefficient = pref * ez * icos;
  out.sin_coefficient = pref * ez * isin;
  out.error_estimate =
      pref * ez * (err_cos + err_sin + 64.0 * std::numeric_limits<double>::epsilon() * abs_bound + trunc_bound + tail);
  double scale = std::max({1.0, std::abs(out.cos_coefficient), std::abs(out.sin_coefficient)});
  if (!std::isfinite(out.error_estimate) || out.error_estimate > opt.tolerance * scale)
    throw AccuracyError("vacuum_profile_xspace: error estimate " + std::to_string(out.error_estimate) +
                        " above tolerance (lengthen the sequence or shorten t_max)");
  out.field.assign(p.dim, 0.0);
  for (int j = 0; j < p.pairs(); ++j) {
    double x1 = x[2 * j], x2 = x[2 * j + 1];
    out.field[2 * j] = out.cos_coefficient * (2.0 / th) * x2 + out.sin_coefficient * (2.0 / th) * x1;
    out.field[2 * j + 1] = -out.cos_coefficient * (2.0 / th) * x1 + out.sin_coefficient * (2.0 / th) * x2;
  }
  return out;
}

std::vector<CommutativeLimitRow> commutative_limit_check(const std::vector<double>& omegas, double theta, int m_max) {
  std::vector<CommutativeLimitRow> rows;
  for (double om : omegas) {
    if (!(om > 0.0 && om <= 0.1)) throw DomainError("commutative_limit_check: Omega must lie in (0, 0.1]");
    GaugeModel g{{theta, 2}, om * om, -om * std::sqrt(2.0) / theta};
    SequenceOptions opt;
    opt.m_max = m_max;
    VacuumSequence s = vacuum_sequence_2d(g, 0.0, opt);
    double worst = 0.0;
    for (int m = 0; m <= m_max; ++m) worst = std::max(worst, std::abs(s.u[m] - m / theta));
    rows.push_back({om, worst, worst / om});
  }
  return rows;
}

double gauge_hessian_probe(const CovariantField2D& f, const GaugeModel& model, int directions, unsigned seed,
                           double step) {
  require_dim2(f.z, model);
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  const int block = std::max(1, f.z.trunc - 2);
  const double s0 = gauge_action_2d(f, model);
  double lowest = std::numeric_limits<double>::infinity();
  for (int d = 0; d < directions; ++d) {
    Field h1 = Field::zero(f.z.params, f.z.trunc), h2 = h1;
    for (int i = 0; i < block; ++i)
      for (int j = 0; j < block; ++j) {
        h1.coeffs(i, j) = cplx(nd(rng), nd(rng));
        h2.coeffs(i, j) = cplx(nd(rng), nd(rng));
      }
    h1.coeffs = 0.5 * (h1.coeffs + h1.coeffs.adjoint()).eval();
    h2.coeffs = 0.5 * (h2.coeffs + h2.coeffs.adjoint()).eval();
    CovariantField2D dir = CovariantField2D::from_components(h1, h2);
    double norm = dir.z.coeffs.norm();
    dir.z.coeffs /= norm;
    CovariantField2D plus{f.z + cplx(step) * dir.z}, minus{f.z - cplx(step) * dir.z};
    double curv = (gauge_action_2d(plus, model) - 2.0 * s0 + gauge_action_2d(minus, model)) / (step * step);
    lowest = std::min(lowest, curv);
  }
  return lowest;
}

}  // namespace moyal
