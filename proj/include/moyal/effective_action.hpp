#pragma once

#include <boost/math/tools/polynomial.hpp>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "moyal/gauge.hpp"

namespace moyal {

// One-loop diagrams of the complex scalar coupled to an external gauge potential in dim 4.
enum class Contribution { T1, T2p, T2pp, T3p, T3pp, T4p, T4pp, T4ppp };

// Integrated operators, u~ = (2/theta) rotated u:
//   UtA        int u~_mu A_mu              A2          int A_mu A_mu
//   U2UtA      int u^2 u~_mu A_mu          U2A2        int u^2 A_mu A_mu
//   UtASquared int (u~_mu A_mu)^2          ALaplaceA   int A_mu d^2 A_mu
//   DivASquared int (d_mu A_mu)^2          UtAAnti     int u~_mu A_nu {A_mu, A_nu}
//   DAComm     int -i d_mu A_nu [A_mu, A_nu]
//   QuarticSym int A_mu A_mu A_nu A_nu     QuarticAlt  int A_mu A_nu A_mu A_nu   (star products)
enum class Operator {
  UtA, A2, U2UtA, U2A2, UtASquared, ALaplaceA, DivASquared, UtAAnti, DAComm, QuarticSym, QuarticAlt
};

const char* contribution_name(Contribution c);
const char* operator_tag(Operator op);
const std::vector<Contribution>& all_contributions();
const std::vector<Operator>& all_operators();

using WPolynomial = boost::math::tools::polynomial<Rational>;

// Numerators in w = Omega^2 over the common denominator pi^2 (1+w)^4. The log coefficient
// additionally carries operator_scale: m^2 for UtA and A2, theta^-2 for U2UtA and U2A2.
struct ExactCoefficient {
  WPolynomial inverse_eps;
  WPolynomial log_eps;
};

using ExactSector = std::map<Operator, ExactCoefficient>;

std::map<Contribution, ExactSector> exact_divergent_coefficients();

// Gamma(A) = a (int A.A - u~^2/4)(1/eps + m^2 ln eps) + b int F F ln eps
//          + c int (F F + {A,A}^2 - (u~^2)^2/4) ln eps   (covariant A)
// with a = w/(4 pi^2 (1+w)^3), b = -(1-w)^4/(192 pi^2 (1+w)^4), c = w^2/(8 pi^2 (1+w)^4),
// expanded in the operator basis. The field-independent constants are dropped.
ExactSector exact_gamma_coefficients();

// Gamma = kGammaSign * sum of all contributions.
inline constexpr int kGammaSign = -1;

double operator_scale(Operator op, double m2, double theta);

double evaluate(const WPolynomial& p, double w);
Rational evaluate(const WPolynomial& p, const Rational& w);

// Exact polynomial identity Gamma == kGammaSign * sum T, sector by sector; returns the
// tags that fail (empty when the assembly holds for all w).
std::vector<std::string> exact_assembly_failures();

struct DivergenceTable {
  double omega = 0.0, m2 = 0.0, theta = 1.0;
  // (coefficient of 1/eps, coefficient of ln eps) per contribution and operator
  std::map<Contribution, std::map<Operator, std::pair<double, double>>> entries;
};

DivergenceTable divergent_coefficients(double omega, double m2, double theta);

struct AssemblyRow {
  Operator op;
  double gamma_inverse = 0.0, gamma_log = 0.0;
  double sum_inverse = 0.0, sum_log = 0.0;  // kGammaSign * sum over contributions
  double defect = 0.0;
};

struct AssemblyReport {
  double omega = 0.0;
  std::vector<AssemblyRow> rows;
  double max_defect = 0.0;
  std::vector<std::string> failed;
  bool passed() const { return failed.empty(); }
};

AssemblyReport assemble_gamma_check(const DivergenceTable& table, double tolerance = 1e-12);

struct TadpoleFit {
  double c_inverse = 0.0, c_log = 0.0, c_const = 0.0;
  double expected_inverse = 0.0, expected_log = 0.0;
  double condition = 0.0;
  double profile_integral = 0.0;  // int u~_mu A_mu for the test profile
};

// Schwinger-parameter tadpole with lower cutoff eps for A_mu(u) = u~_mu exp(-u^2/sigma^2),
// fitted to c_inverse/eps + c_log ln eps + c_const. The u-integral is done in closed form,
// the t-integral by adaptive Gauss-Kronrod in log t.
TadpoleFit tadpole_numeric(double omega, double m2, double theta, const std::vector<double>& eps,
                           double sigma = 1.0);

std::vector<double> default_tadpole_grid();  // 9 points, 1e-6 .. 1e-4

// Bubble graph of the parametric representation: HU = 4 (t1+t2)^2 and the real quadratic part
// of HV with prefactor 2(1+w)/(Omega theta) (t1+t2).
double bubble_hu(double t1, double t2);
// int d^4z exp(-(1+Omega^2) z^2 / (2 Omega theta (t1+t2))) / (16 (t1+t2)^4), numerically.
double bubble_z_reduction(double omega, double theta, double t1, double t2);
// Closed form of the same: Omega^2 pi^2 theta^2 / (4 (1+Omega^2)^2 (t1+t2)^2).
double bubble_z_reduction_closed(double omega, double theta, double t1, double t2);

}  // namespace moyal
