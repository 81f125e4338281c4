#pragma once

#include <string>
#include <utility>
#include <vector>

#include "moyal/field.hpp"

namespace moyal {

// Element (even, odd) of M + M with product (a,b)(c,d) = (ac + alpha bd, ad + bc).
struct SuperField {
  Field even;
  Field odd;
  double alpha = 0.0;

  static SuperField zero(const MoyalParams& p, int trunc, double alpha);
  static SuperField unit(const MoyalParams& p, int trunc, double alpha);
};

SuperField super_product(const SuperField& p, const SuperField& q);
// ([p0,q0] + alpha{p1,q1}, [p0,q1] + [p1,q0])
SuperField super_bracket(const SuperField& p, const SuperField& q);
SuperField super_adjoint(const SuperField& p);

SuperField operator+(const SuperField& a, const SuperField& b);
SuperField operator-(const SuperField& a, const SuperField& b);
SuperField operator*(cplx s, const SuperField& a);

// Generators of the derivations in D = 2: ad of (0, i), (i xi_mu, 0), (0, i xi_mu), (i eta_{mu nu}, 0)
// with xi_mu = -x~_mu/2 and eta_{mu nu} = xi_mu xi_nu + xi_nu xi_mu.
enum class SuperGenerator { Xi0, Xi1, Eta, Gamma };

struct GeneratorIndex {
  SuperGenerator kind = SuperGenerator::Gamma;
  int mu = 0;
  int nu = 0;

  int parity() const { return kind == SuperGenerator::Gamma || kind == SuperGenerator::Xi1; }
  std::string name() const;
  bool operator==(const GeneratorIndex& o) const { return kind == o.kind && mu == o.mu && nu == o.nu; }
};

// gamma, xi0_mu, xi1_mu, eta_{mu nu} over ordered (mu, nu): 9 entries.
std::vector<GeneratorIndex> super_generators();

// [a_X, a_Y] modulo multiples of the unit, as a combination of generators.
std::vector<std::pair<cplx, GeneratorIndex>> structure_constants(const GeneratorIndex& x, const GeneratorIndex& y,
                                                                 const MoyalParams& p, double alpha);

// Coordinate multipliers built at a padded size so products stay exact on the requested block.
struct SuperContext {
  MoyalParams params;
  int trunc = 0;
  int work = 0;
  double alpha = 0.0;
  Field one;
  Field xi[2];
  Field eta[2][2];

  static SuperContext build(int trunc, double theta, double alpha, int pad = 6);
  SuperField generator(const GeneratorIndex& g) const;  // a_X
  // Brings a trunc-size field to the working size (zero padding).
  Field embed(const Field& f) const;
  double interior(const SuperField& a, const SuperField& b, int margin = 2) const;
};

struct TableRow {
  std::string name;
  double max_defect = 0.0;
  double reconciliation = 1.0;  // factor applied to the listed right-hand side
};

// The ten listed brackets among (0,i), (i xi_mu,0), (0,i xi_mu), (i eta_{mu nu},0), all index values,
// compared with their closed forms on the interior block (margin 2). D = 2, trunc >= 6.
std::vector<TableRow> derivation_table_check(int trunc, double theta, double alpha);

// Connection values on the generators: A_gamma = (0, phi), A_xi0 = (a0, 0), A_xi1 = (0, a1),
// A_eta = (g, 0) with g[mu][nu] symmetric.
struct SuperPotentials {
  Field phi;
  Field a0[2];
  Field a1[2];
  Field g[2][2];

  static SuperPotentials zero(const MoyalParams& p, int trunc);
};

struct CurvatureComponent {
  GeneratorIndex x, y;
  SuperField value;         // closed form, cropped to the input size
  double defect = 0.0;      // |definition - closed form| on the interior block
};

struct CurvatureReport {
  std::vector<CurvatureComponent> components;  // 53 in D = 2
  double max_defect = 0.0;
};

// F_{X,Y} = X(A_Y) - (-1)^{|X||Y|} Y(A_X) - i[A_X, A_Y] - A_{[X,Y]} against the form in
// Phi = phi - 1, A0 - xi, A1 - xi, G - eta. Inputs must be Hermitian.
CurvatureReport graded_curvature(const SuperPotentials& pot, double alpha, int margin = 2);

// Closed-form component for covariant coordinates given as plain matrices, with `one` the unit.
struct CovariantCoordinates {
  Eigen::MatrixXcd one;
  Eigen::MatrixXcd phi;
  Eigen::MatrixXcd a0[2];
  Eigen::MatrixXcd a1[2];
  Eigen::MatrixXcd g[2][2];
};
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> curvature_closed_form(const GeneratorIndex& x, const GeneratorIndex& y,
                                                                    const CovariantCoordinates& c, const MoyalParams& p,
                                                                    double alpha);

// A^g_X = g A_X g* + i g X(g*) with g = (u, 0), u = exp(i h); returns max over all components of
// |F(A^g) - g F(A) g*| on the interior block.
double gauge_covariance_defect(const SuperPotentials& pot, const Field& h, double alpha, int margin = 2);
Eigen::MatrixXcd unitary_from_hermitian(const Eigen::MatrixXcd& h);

struct ActionPattern {
  double assembled = 0.0;
  double expected = 0.0;
  double relative_defect = 0.0;
};

// A0 = A1 = A (two Hermitian N x N matrices), Phi = G = 0: sum over ordered generator pairs of
// tr |F|^2 with weights gamma/sqrt(theta), sqrt(theta) eta, against
// tr[(1+2a) F F + a^2 {A,A}^2 + (8/theta)(2(D+1)(1+a) + a^2) A A] + N (4a^2 - 4a)/theta^2.
ActionPattern super_action_pattern_check(const Eigen::MatrixXcd& a1, const Eigen::MatrixXcd& a2, double theta,
                                         double alpha);

struct SuperCouplings {
  double omega2 = 0.0;
  double kappa = 0.0;
  double mu2 = 0.0;
};

// Omega^2 = a^2/(1+2a), kappa = 8(a^2 + 2(D+1)(1+a))/(theta(1+2a)), mass 4a^2/(theta(1+2a)).
SuperCouplings couplings_from_alpha(double alpha, double theta, int dim = 2);

}  // namespace moyal
