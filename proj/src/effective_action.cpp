#include "moyal/effective_action.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "moyal/errors.hpp"

namespace moyal {

namespace {

WPolynomial poly(std::initializer_list<Rational> c) { return WPolynomial(std::vector<Rational>(c)); }

WPolynomial power(const WPolynomial& p, int n) {
  WPolynomial r = poly({1});
  for (int i = 0; i < n; ++i) r *= p;
  return r;
}

const WPolynomial& w_() {
  static const WPolynomial p = poly({0, 1});
  return p;
}
const WPolynomial& plus_() {
  static const WPolynomial p = poly({1, 1});
  return p;
}
const WPolynomial& minus_() {
  static const WPolynomial p = poly({1, -1});
  return p;
}

WPolynomial scaled(const WPolynomial& p, const Rational& s) {
  WPolynomial r = p;
  r *= s;
  return r;
}

bool equal(const WPolynomial& a, const WPolynomial& b) {
  WPolynomial d = a - b;
  for (const Rational& c : d.data())
    if (c != 0) return false;
  return true;
}

}  // namespace

const char* contribution_name(Contribution c) {
  switch (c) {
    case Contribution::T1: return "T1";
    case Contribution::T2p: return "T2'";
    case Contribution::T2pp: return "T2''";
    case Contribution::T3p: return "T3'";
    case Contribution::T3pp: return "T3''";
    case Contribution::T4p: return "T4'";
    case Contribution::T4pp: return "T4''";
    case Contribution::T4ppp: return "T4'''";
  }
  return "?";
}

const char* operator_tag(Operator op) {
  switch (op) {
    case Operator::UtA: return "utA";
    case Operator::A2: return "A2";
    case Operator::U2UtA: return "u2utA";
    case Operator::U2A2: return "u2A2";
    case Operator::UtASquared: return "(utA)2";
    case Operator::ALaplaceA: return "AddA";
    case Operator::DivASquared: return "(dA)2";
    case Operator::UtAAnti: return "utA{A,A}";
    case Operator::DAComm: return "dA[A,A]";
    case Operator::QuarticSym: return "(AA)2-sym";
    case Operator::QuarticAlt: return "(AA)2-alt";
  }
  return "?";
}

const std::vector<Contribution>& all_contributions() {
  static const std::vector<Contribution> v{Contribution::T1,  Contribution::T2p, Contribution::T2pp,
                                           Contribution::T3p, Contribution::T3pp, Contribution::T4p,
                                           Contribution::T4pp, Contribution::T4ppp};
  return v;
}

const std::vector<Operator>& all_operators() {
  static const std::vector<Operator> v{Operator::UtA,        Operator::A2,          Operator::U2UtA,
                                       Operator::U2A2,       Operator::UtASquared,  Operator::ALaplaceA,
                                       Operator::DivASquared, Operator::UtAAnti,    Operator::DAComm,
                                       Operator::QuarticSym, Operator::QuarticAlt};
  return v;
}

std::map<Contribution, ExactSector> exact_divergent_coefficients() {
  const WPolynomial& w = w_();
  const WPolynomial m2 = power(minus_(), 2), m4 = power(minus_(), 4);
  const WPolynomial p1 = plus_(), p2 = power(plus_(), 2), p3 = power(plus_(), 3), p4 = power(plus_(), 4);
  const WPolynomial quad = poly({1, 4, 1});  // 1 + 4w + w^2
  const WPolynomial zero = poly({0});
  std::map<Contribution, ExactSector> t;

  WPolynomial t1_mass = scaled(w * p1, Rational(-1, 4));
  t[Contribution::T1][Operator::UtA] = {t1_mass, t1_mass};
  t[Contribution::T1][Operator::U2UtA] = {zero, scaled(w * w, -1)};

  WPolynomial t2_mass = scaled(m2 * p1, Rational(1, 16));
  t[Contribution::T2p][Operator::A2] = {t2_mass, t2_mass};
  t[Contribution::T2p][Operator::U2A2] = {zero, scaled(w * m2, Rational(1, 4))};
  t[Contribution::T2p][Operator::UtASquared] = {zero, scaled(w * w, Rational(-1, 2))};
  t[Contribution::T2p][Operator::ALaplaceA] = {zero, scaled(m2 * quad, Rational(-1, 96))};
  t[Contribution::T2p][Operator::DivASquared] = {zero, scaled(m4, Rational(-1, 96))};

  WPolynomial t2pp_mass = scaled(p3, Rational(-1, 16));
  t[Contribution::T2pp][Operator::A2] = {t2pp_mass, t2pp_mass};
  t[Contribution::T2pp][Operator::U2A2] = {zero, scaled(w * p2, Rational(-1, 4))};
  t[Contribution::T2pp][Operator::ALaplaceA] = {zero, scaled(w * p2, Rational(1, 16))};

  t[Contribution::T3p][Operator::UtAAnti] = {zero, scaled(w * m2, Rational(1, 8))};
  t[Contribution::T3p][Operator::DAComm] = {zero, scaled(m2 * quad, Rational(1, 48))};
  t[Contribution::T3pp][Operator::UtAAnti] = {zero, scaled(w * p2, Rational(-1, 8))};
  // +i int d A [A, A] is minus the DAComm operator
  t[Contribution::T3pp][Operator::DAComm] = {zero, scaled(w * p2, Rational(-1, 8))};

  // printed as (A_mu A_nu)^2 + 2 (A_mu A_nu)^2; read as alt + 2 sym
  t[Contribution::T4p][Operator::QuarticAlt] = {zero, scaled(m4, Rational(-1, 96))};
  t[Contribution::T4p][Operator::QuarticSym] = {zero, scaled(m4, Rational(-2, 96))};
  t[Contribution::T4pp][Operator::QuarticSym] = {zero, scaled(m2 * p2, Rational(1, 16))};
  t[Contribution::T4ppp][Operator::QuarticSym] = {zero, scaled(p4, Rational(-1, 32))};
  return t;
}

ExactSector exact_gamma_coefficients() {
  const WPolynomial& w = w_();
  const WPolynomial zero = poly({0});
  const WPolynomial a = scaled(w * plus_(), Rational(1, 4));
  const WPolynomial b = scaled(power(minus_(), 4), Rational(-1, 192));
  const WPolynomial c = scaled(w * w, Rational(1, 8));
  ExactSector g;
  // int A.A - u~^2/4 = int u~A + AA
  g[Operator::UtA] = {a, a};
  g[Operator::A2] = {a, a};
  // int F F = int -2 A d^2 A - 2 (dA)^2 - 4i dA[A,A] - [A,A]^2, [A,A]^2 = 2 alt - 2 sym
  // int {A,A}^2 - (u~^2)^2/4 = int 2 u~^2 u~A + 4 (u~A)^2 + 2 u~^2 AA + 2 (dA)^2 + 4 u~A{A,A} + {A,A}^2,
  // {A,A}^2 = 2 alt + 2 sym and u~^2 = 4 u^2 / theta^2
  const WPolynomial bc = b + c;
  g[Operator::ALaplaceA] = {zero, scaled(bc, -2)};
  g[Operator::DivASquared] = {zero, scaled(bc, -2) + scaled(c, 2)};
  g[Operator::DAComm] = {zero, scaled(bc, 4)};
  g[Operator::QuarticAlt] = {zero, scaled(bc, -2) + scaled(c, 2)};
  g[Operator::QuarticSym] = {zero, scaled(bc, 2) + scaled(c, 2)};
  g[Operator::U2UtA] = {zero, scaled(c, 8)};
  g[Operator::U2A2] = {zero, scaled(c, 8)};
  g[Operator::UtASquared] = {zero, scaled(c, 4)};
  g[Operator::UtAAnti] = {zero, scaled(c, 4)};
  return g;
}

double operator_scale(Operator op, double m2, double theta) {
  switch (op) {
    case Operator::UtA:
    case Operator::A2: return m2;
    case Operator::U2UtA:
    case Operator::U2A2: return 1.0 / (theta * theta);
    default: return 1.0;
  }
}

double evaluate(const WPolynomial& p, double w) {
  double r = 0.0;
  const auto& d = p.data();
  for (size_t i = d.size(); i-- > 0;) r = r * w + static_cast<double>(d[i]);
  return r;
}

Rational evaluate(const WPolynomial& p, const Rational& w) {
  Rational r = 0;
  const auto& d = p.data();
  for (size_t i = d.size(); i-- > 0;) r = r * w + d[i];
  return r;
}

namespace {

ExactSector summed_contributions() {
  ExactSector sum;
  for (const auto& [c, sector] : exact_divergent_coefficients())
    for (const auto& [op, coeff] : sector) {
      auto& s = sum[op];
      s.inverse_eps += coeff.inverse_eps;
      s.log_eps += coeff.log_eps;
    }
  return sum;
}

}  // namespace

std::vector<std::string> exact_assembly_failures() {
  ExactSector gamma = exact_gamma_coefficients(), sum = summed_contributions();
  std::vector<std::string> failed;
  for (Operator op : all_operators()) {
    const ExactCoefficient& g = gamma[op];
    const ExactCoefficient& s = sum[op];
    if (!equal(g.inverse_eps, scaled(s.inverse_eps, kGammaSign)) || !equal(g.log_eps, scaled(s.log_eps, kGammaSign)))
      failed.push_back(operator_tag(op));
  }
  return failed;
}

namespace {

void check_omega(double omega) {
  if (!(omega > 0.0 && omega <= 1.0)) throw DomainError("effective action: Omega must lie in (0, 1]");
}

std::pair<double, double> numeric(const ExactCoefficient& c, Operator op, double w, double m2, double theta) {
  // exact in the binary value of w, so vanishing factors give exact zeros
  const Rational wr(w);
  const Rational den = (1 + wr) * (1 + wr) * (1 + wr) * (1 + wr);
  const double inv = static_cast<double>(evaluate(c.inverse_eps, wr) / den);
  const double log = static_cast<double>(evaluate(c.log_eps, wr) / den);
  return {inv / (M_PI * M_PI), log / (M_PI * M_PI) * operator_scale(op, m2, theta)};
}

}  // namespace

DivergenceTable divergent_coefficients(double omega, double m2, double theta) {
  check_omega(omega);
  if (!(theta > 0.0)) throw DomainError("effective action: theta must be positive");
  DivergenceTable t;
  t.omega = omega;
  t.m2 = m2;
  t.theta = theta;
  const double w = omega * omega;
  for (const auto& [c, sector] : exact_divergent_coefficients())
    for (const auto& [op, coeff] : sector) t.entries[c][op] = numeric(coeff, op, w, m2, theta);
  return t;
}

AssemblyReport assemble_gamma_check(const DivergenceTable& table, double tolerance) {
  check_omega(table.omega);
  const double w = table.omega * table.omega;
  ExactSector gamma = exact_gamma_coefficients();
  AssemblyReport rep;
  rep.omega = table.omega;
  for (Operator op : all_operators()) {
    AssemblyRow row{op};
    std::tie(row.gamma_inverse, row.gamma_log) = numeric(gamma[op], op, w, table.m2, table.theta);
    for (const auto& [c, sector] : table.entries) {
      auto it = sector.find(op);
      if (it == sector.end()) continue;
      row.sum_inverse += kGammaSign * it->second.first;
      row.sum_log += kGammaSign * it->second.second;
    }
    row.defect = std::max(std::abs(row.gamma_inverse - row.sum_inverse), std::abs(row.gamma_log - row.sum_log));
    rep.max_defect = std::max(rep.max_defect, row.defect);
    if (!(row.defect <= tolerance)) rep.failed.push_back(operator_tag(op));
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<double> default_tadpole_grid() {
  std::vector<double> eps;
  for (int i = 0; i <= 8; ++i) eps.push_back(std::pow(10.0, -6.0 + 0.25 * i));
  return eps;
}

TadpoleFit tadpole_numeric(double omega, double m2, double theta, const std::vector<double>& eps, double sigma) {
  check_omega(omega);
  if (!(theta > 0.0 && sigma > 0.0)) throw DomainError("tadpole_numeric: theta and sigma must be positive");
  if (eps.size() < 3) throw DomainError("tadpole_numeric: need at least 3 cutoffs");
  double lo = eps.front(), hi = eps.front();
  for (double e : eps) {
    if (!(e >= 1e-6 && e <= 1e-2)) throw DomainError("tadpole_numeric: cutoffs must lie in [1e-6, 1e-2]");
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  if (hi / lo < 100.0 * (1.0 - 1e-12)) throw DomainError("tadpole_numeric: cutoffs must span two decades");

  const double w = omega * omega;
  const double wt = 2.0 * omega / theta;            // Omega~
  const double beta = 2.0 * omega / (theta * (1.0 + w));
  const double pref = -w * w / (M_PI * M_PI * theta * theta * std::pow(1.0 + w, 3));
  const double inv_s2 = 1.0 / (sigma * sigma);
  // int d^4u u~_mu A_mu exp(-beta tanh u^2) = (4/theta^2) int u^2 exp(-lambda u^2) = 8 pi^2 / (theta^2 lambda^3)
  auto integrand = [&](double t) {
    double x = wt * t;
    double s2 = std::sinh(2.0 * x);
    double kernel = 4.0 / (s2 * s2);  // 1/(sinh^2 cosh^2)
    double lambda = inv_s2 + beta * std::tanh(x);
    return std::exp(-t * m2) * kernel * 8.0 * M_PI * M_PI / (theta * theta * lambda * lambda * lambda);
  };
  const double t_hi = 60.0 / wt;
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto in_log = [&](double s) {
    double t = std::exp(s);
    return integrand(t) * t;
  };
  // tail [1e-2, t_hi] once, then each eps adds [eps, 1e-2]
  double tail = GK::integrate(in_log, std::log(1e-2), std::log(t_hi), 20, 1e-14);
  Eigen::MatrixXd design(eps.size(), 3);
  Eigen::VectorXd rhs(eps.size());
  for (size_t i = 0; i < eps.size(); ++i) {
    double head = eps[i] < 1e-2 ? GK::integrate(in_log, std::log(eps[i]), std::log(1e-2), 20, 1e-14) : 0.0;
    rhs(i) = pref * (head + tail);
    design(i, 0) = 1.0 / eps[i];
    design(i, 1) = std::log(eps[i]);
    design(i, 2) = 1.0;
  }
  Eigen::Vector3d colscale = design.colwise().norm().transpose();
  Eigen::MatrixXd scaled_design = design * colscale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled_design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  TadpoleFit fit;
  fit.condition = sv(0) / sv(sv.size() - 1);
  if (!std::isfinite(fit.condition) || fit.condition > 1e10)
    throw AccuracyError("tadpole_numeric: ill-conditioned fit, condition number " + std::to_string(fit.condition));
  Eigen::Vector3d coef = svd.solve(rhs).cwiseQuotient(colscale);
  fit.c_inverse = coef(0);
  fit.c_log = coef(1);
  fit.c_const = coef(2);
  fit.profile_integral = 8.0 * M_PI * M_PI * std::pow(sigma, 6) / (theta * theta);
  const double u2_profile = 24.0 * M_PI * M_PI * std::pow(sigma, 8) / (theta * theta);
  const double a = w / (4.0 * M_PI * M_PI * std::pow(1.0 + w, 3));
  fit.expected_inverse = -a * fit.profile_integral;
  fit.expected_log = -m2 * a * fit.profile_integral - w * w / (M_PI * M_PI * theta * theta * std::pow(1.0 + w, 4)) * u2_profile;
  return fit;
}

double bubble_hu(double t1, double t2) { return 4.0 * (t1 + t2) * (t1 + t2); }

double bubble_z_reduction(double omega, double theta, double t1, double t2) {
  const double q = (1.0 + omega * omega) / (2.0 * omega * theta * (t1 + t2));
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double one = GK::integrate([q](double z) { return std::exp(-q * z * z); }, -std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity(), 15, 1e-14);
  return std::pow(one, 4) / (16.0 * std::pow(t1 + t2, 4));
}

double bubble_z_reduction_closed(double omega, double theta, double t1, double t2) {
  const double w = omega * omega;
  return w * M_PI * M_PI * theta * theta / (4.0 * (1.0 + w) * (1.0 + w) * (t1 + t2) * (t1 + t2));
}

}  // namespace moyal
