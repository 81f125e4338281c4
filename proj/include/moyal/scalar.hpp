#pragma once

#include <vector>

#include "moyal/field.hpp"
#include "moyal/quadrature.hpp"

namespace moyal {

// S = int 1/2 (d phi)^2 + Omega^2/2 x~^2 phi^2 + sign mu2/2 phi^2 + lambda phi*phi*phi*phi,
// sign = +1, or -1 when broken_phase is set.
struct ScalarModel {
  MoyalParams params;
  double omega = 1.0;
  double mu2 = 0.0;
  double lambda = 1.0;
  bool broken_phase = false;

  double mass_term() const { return broken_phase ? -mu2 : mu2; }
  void validate() const;
};

// (Delta phi)_{mn} = sum_{kl} Delta_{mn,kl} phi_{kl}, with diagonal
// (2/theta)(1+Omega^2)(|m|+|n|+D/2) + mass and off-diagonal bands -(2/theta)(1-Omega^2) sqrt(..).
// As a matrix this is the transpose of the coefficients of (-d^2 + Omega^2 x~^2 + mass) phi.
Field apply_kinetic(const Field& f, const ScalarModel& model);

// Dense Delta_{mn,kl} with row index flat(m)*side + flat(n) and column flat(k)*side + flat(l).
Eigen::MatrixXd kinetic_matrix(const ScalarModel& model, int trunc);

// (2 pi theta)^{D/2} (1/2 sum phi_{mn} (Delta phi)_{mn} + lambda tr phi^4). Requires Hermitian phi.
double gw_action(const Field& f, const ScalarModel& model);

struct PropagatorOptions {
  double tolerance = 1e-10;        // relative error bound on the alpha quadrature
  bool force_quadrature = false;   // use the alpha-integral even at Omega = 1
};

// C_{mn,kl}: closed form at Omega = 1, alpha-integral otherwise.
double propagator_matrix(const MultiIndex& m, const MultiIndex& n, const MultiIndex& k, const MultiIndex& l,
                         const ScalarModel& model, const PropagatorOptions& opt = {});

// Configuration-space kernel: alpha-integral over (cutoff, infinity).
double mehler_kernel(const double* x, const double* y, const ScalarModel& model, double cutoff = 0.0);

// (2 pi theta)^{-1} sum_{mn,kl} C_{mn,kl} f_mn(x) f_kl(y) for dim 2, Omega = 1, summed in shells of
// constant m + n and Cesaro-averaged over the partial sums with shells/2 <= m + n < shells.
double propagator_resummation(const double* x, const double* y, const ScalarModel& model, int shells = 600);

// Omega = 1 equation of motion in the broken phase convention:
// (4/theta)(|m|+|n|+D/2) phi - mu2 phi + 4 lambda phi^3.
Field scalar_eom_residual(const Field& f, const ScalarModel& model);

struct VacuumScalar {
  ScalarModel model;
  int p = -1;
  std::vector<MultiIndex> indices;  // all k with |k| <= p
  std::vector<double> a;            // a_k, same order as indices

  Field field(int trunc) const;
};

// Minimum of the broken phase action at Omega = 1. signs (optional, +-1 per stored k)
// overrides the canonical a_k >= 0.
VacuumScalar scalar_vacuum(const ScalarModel& model, const std::vector<int>& signs = {});

struct StabilityReport {
  Eigen::MatrixXd inverse_propagator;  // C^{-1}_{mn} indexed by flat(m), flat(n)
  double min_value = 0.0;
  bool degenerate = false;             // mu2 theta/8 - 1/2 is a non-negative integer
  bool heuristic = false;              // set for dim 4
  int negative_alpha_at_zero = 0;      // entries m <= p, n <= 2p - m with alpha_{mn} < 0
};

StabilityReport vacuum_stability(const VacuumScalar& v, int trunc);

struct SpectrumEntry {
  MultiIndex m, n;
  double coefficient;
};

struct SigmaSpectrum {
  std::vector<SpectrumEntry> entries;  // |m| > p
  std::vector<MultiIndex> masked;      // |m| <= p
};

SigmaSpectrum sigma_quadratic_spectrum(const VacuumScalar& v, int trunc);

struct DualityOptions {
  double extent = 8.0;
  int resolution = 161;
  int trunc = 24;
  int nodes = 64;
  int fourier_sign = 1;
};

struct DualityReport {
  double direct_quadratic = 0.0, direct_quartic = 0.0;
  double dual_quadratic = 0.0, dual_quartic = 0.0;
  double direct = 0.0, dual = 0.0;
  double defect = 0.0;  // |direct - dual| / max(|direct|, tiny); 0 when both vanish
};

// Compares S[phi; mu, lambda, Omega] with Omega^2 S[phi^; mu/Omega, lambda/Omega^2, 1/Omega]
// for a real dim 2 field given pointwise. Quadratic parts on the uniform grid with 4th order
// differences; quartic parts from matrix-basis coefficients of phi and phi^.
DualityReport ls_duality_check(const PointFunction& phi, const ScalarModel& model,
                               const DualityOptions& opt = {});

}  // namespace moyal
