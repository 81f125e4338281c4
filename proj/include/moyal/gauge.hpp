#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "moyal/field.hpp"

namespace moyal {

using Rational = boost::multiprecision::cpp_rational;

// Induced gauge model in covariant coordinates, coupling set to 1. omega2 = Omega^2.
struct GaugeModel {
  MoyalParams params;
  double omega2 = 0.0;
  double kappa = 0.0;

  void validate() const;
};

// Z = (A_1 + i A_2)/sqrt(2) for the covariant coordinates A_mu (dim 2).
struct CovariantField2D {
  Field z;

  Field a1() const;  // (Z + Z^dagger)/sqrt(2)
  Field a2() const;  // (Z - Z^dagger)/(i sqrt(2))
  static CovariantField2D from_components(const Field& a1, const Field& a2);
};

// 2 pi theta tr((3w-1) Z Z Z^+ Z^+ + (1+w) Z Z^+ Z Z^+ + 2 kappa Z Z^+).
double gauge_action_2d(const CovariantField2D& f, const GaugeModel& model);

// int -1/4 [A_mu, A_nu]^2 + w/4 {A_mu, A_nu}^2 + kappa A_mu A_mu, in the matrix basis.
double gauge_action_commutator_form(const Field& a1, const Field& a2, const GaugeModel& model);

// (3w-1)(Z^+ Z Z + Z Z Z^+) + 2(1+w) Z Z^+ Z + 2 kappa Z.
Field gauge_eom_residual_2d(const CovariantField2D& f, const GaugeModel& model);

enum class GaugeBranch { Omega0, LowOmega, OneThird, MidOmega, OmegaOne, FourD };

const char* branch_name(GaugeBranch b);

struct VacuumSequence {
  GaugeBranch branch = GaugeBranch::Omega0;
  int dim = 2;
  std::vector<double> u;       // u_m (dim 2) or v_m (dim 4), index 0..m_max
  std::vector<double> phases;  // xi_m attached to a_m, m = 0..m_max-1
  double alpha = 0.0;          // free scale of the Omega0 and LowOmega branches
  double v1 = 0.0;             // free value of the dim 4 sequence
  double max_recurrence_residual = 0.0;  // relative, see vacuum_sequence_2d
  std::vector<int> negative_indices;     // dim 4 closed-form values below zero
};

struct SequenceOptions {
  int m_max = 50;
  bool allow_growing = false;  // accept alpha != 0 for 0 < Omega^2 < 1/3
  double recurrence_tolerance = 1e-12;
};

// Characteristic root r = (1 + w + sqrt(8 w (1 - w)))/(1 - 3 w), w != 1/3.
double characteristic_root(double omega2);

// Solutions of (3w-1)(u_m + u_{m+2}) + 2(1+w) u_{m+1} + 2 kappa = 0 with u_0 = 0.
// Each returned u is checked against the recurrence with residual
// |lhs| / max(1, sum of |terms|) and against u_m >= 0.
VacuumSequence vacuum_sequence_2d(const GaugeModel& model, double alpha = 0.0, const SequenceOptions& opt = {});

// Max relative residual of the 2D recurrence over m = 0..u.size()-3.
double recurrence_residual_2d(const std::vector<double>& u, double omega2, double kappa);

// Dim 4, kappa = 0: closed form with the terminating 2F1, cross-checked against
// (3w-1)(m v_m + (m+3) v_{m+2}) + (1+w)(2m+3) v_{m+1} + 2 kappa = 0 to relative 1e-10.
// w in {0, 1/3, 1} is rejected (the closed form is singular there).
VacuumSequence vacuum_sequence_4d(const GaugeModel& model, double v1, int m_max);

// Exact versions for rational w and v1.
std::vector<Rational> vacuum_sequence_4d_exact(const Rational& omega2, const Rational& v1, int m_max);
std::vector<Rational> recurrence_4d_exact(const Rational& omega2, const Rational& v1, int m_max);

// Terminating 2F1(-m/2-1/2, -m/2-1; -m-1/2; z), exact and compensated floating point.
Rational hyp2f1_terminating(int m, const Rational& z);
double hyp2f1_terminating(int m, double z);

// Bidiagonal covariant coordinates built from a sequence:
// dim 2: Z_{m,m+1} = -i e^{i xi_m} sqrt(u_{m+1});
// dim 4: (Z_1)_{mn} = -i a_{|m|} sqrt(m_1+1) delta.., (Z_2)_{mn} = -i a_{|m|} sqrt(m_2+1) delta..
std::vector<Field> covariant_fields(const VacuumSequence& seq, const MoyalParams& p, int trunc);

struct ProfileOptions {
  double t_max = 20.0;
  double tolerance = 1e-8;
};

struct ProfileValue {
  std::vector<double> field;  // A_mu(x), mu = 0..dim-1
  double cos_coefficient = 0.0;  // multiplies w_mu below
  double sin_coefficient = 0.0;  // multiplies (2/theta) x_mu
  double error_estimate = 0.0;
};

// A_mu(x) = C_cos(z) w_mu + C_sin(z) (2/theta) x_mu, z = 2 x^2/theta, from the t-integral of the
// finite series in m (J_1 kernel with prefactor 2 sqrt(theta) in dim 2, J_2 kernel with 4 sqrt(theta)
// in dim 4). w_mu is the rotated coordinate
// (2/theta)(x_2, -x_1) per pair, which is -x~_mu in this library's sign convention; with it the
// profile equals the matrix-basis synthesis of covariant_fields. The integral stops at t_max, so it
// represents the untruncated sequence; error_estimate covers the omitted terms and the tail.
ProfileValue vacuum_profile_xspace(const VacuumSequence& seq, const MoyalParams& p, const double* x,
                                   const ProfileOptions& opt = {});

struct CommutativeLimitRow {
  double omega;
  double max_defect;  // max_m |u_m - m/theta|
  double scaled;      // max_defect / omega
};

// kappa = -Omega sqrt(2)/theta on the LowOmega branch, m = 0..m_max.
std::vector<CommutativeLimitRow> commutative_limit_check(const std::vector<double>& omegas, double theta,
                                                         int m_max = 10);

// Smallest second difference of gauge_action_2d along random Hermitian-pair directions
// supported on the leading block. Heuristic minimality probe.
double gauge_hessian_probe(const CovariantField2D& f, const GaugeModel& model, int directions, unsigned seed,
                           double step = 1e-3);

}  // namespace moyal
