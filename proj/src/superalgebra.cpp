#include "moyal/superalgebra.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "moyal/errors.hpp"

namespace moyal {

namespace {

const cplx I(0.0, 1.0);

void require_alpha(const SuperField& p, const SuperField& q) {
  if (p.alpha != q.alpha) throw DomainError("superfields carry different alpha");
}

}  // namespace

SuperField SuperField::zero(const MoyalParams& p, int trunc, double alpha) {
  return {Field::zero(p, trunc), Field::zero(p, trunc), alpha};
}

SuperField SuperField::unit(const MoyalParams& p, int trunc, double alpha) {
  return {unit_field(p, trunc), Field::zero(p, trunc), alpha};
}

SuperField super_product(const SuperField& p, const SuperField& q) {
  require_alpha(p, q);
  return {star(p.even, q.even) + p.alpha * star(p.odd, q.odd), star(p.even, q.odd) + star(p.odd, q.even), p.alpha};
}

SuperField super_bracket(const SuperField& p, const SuperField& q) {
  require_alpha(p, q);
  return {commutator(p.even, q.even) + p.alpha * anticommutator(p.odd, q.odd),
          commutator(p.even, q.odd) + commutator(p.odd, q.even), p.alpha};
}

SuperField super_adjoint(const SuperField& p) { return {adjoint(p.even), adjoint(p.odd), p.alpha}; }

SuperField operator+(const SuperField& a, const SuperField& b) {
  require_alpha(a, b);
  return {a.even + b.even, a.odd + b.odd, a.alpha};
}

SuperField operator-(const SuperField& a, const SuperField& b) {
  require_alpha(a, b);
  return {a.even - b.even, a.odd - b.odd, a.alpha};
}

SuperField operator*(cplx s, const SuperField& a) { return {s * a.even, s * a.odd, a.alpha}; }

std::string GeneratorIndex::name() const {
  switch (kind) {
    case SuperGenerator::Gamma: return "gamma";
    case SuperGenerator::Xi0: return "xi0_" + std::to_string(mu + 1);
    case SuperGenerator::Xi1: return "xi1_" + std::to_string(mu + 1);
    case SuperGenerator::Eta: return "eta_" + std::to_string(mu + 1) + std::to_string(nu + 1);
  }
  return "?";
}

std::vector<GeneratorIndex> super_generators() {
  std::vector<GeneratorIndex> out{{SuperGenerator::Gamma, 0, 0}};
  for (int mu = 0; mu < 2; ++mu) out.push_back({SuperGenerator::Xi0, mu, 0});
  for (int mu = 0; mu < 2; ++mu) out.push_back({SuperGenerator::Xi1, mu, 0});
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) out.push_back({SuperGenerator::Eta, mu, nu});
  return out;
}

std::vector<std::pair<cplx, GeneratorIndex>> structure_constants(const GeneratorIndex& x, const GeneratorIndex& y,
                                                                 const MoyalParams& p, double alpha) {
  using G = SuperGenerator;
  auto ti = [&](int a, int b) { return theta_inverse(a, b, p); };
  std::vector<std::pair<cplx, GeneratorIndex>> out;
  auto add = [&](cplx c, GeneratorIndex g) {
    if (c != 0.0) out.emplace_back(c, g);
  };
  const G a = x.kind, b = y.kind;
  if ((a == G::Xi1 && b == G::Gamma) || (a == G::Gamma && b == G::Xi1)) {
    add(2.0 * I * alpha, {G::Xi0, a == G::Xi1 ? x.mu : y.mu, 0});
  } else if (a == G::Xi0 && b == G::Xi1) {
    add(ti(x.mu, y.mu), {G::Gamma, 0, 0});
  } else if (a == G::Xi1 && b == G::Xi0) {
    add(-ti(y.mu, x.mu), {G::Gamma, 0, 0});
  } else if (a == G::Xi1 && b == G::Xi1) {
    add(I * alpha, {G::Eta, x.mu, y.mu});
  } else if (a == G::Eta && (b == G::Xi0 || b == G::Xi1)) {
    add(2.0 * ti(x.nu, y.mu), {b, x.mu, 0});
    add(2.0 * ti(x.mu, y.mu), {b, x.nu, 0});
  } else if ((a == G::Xi0 || a == G::Xi1) && b == G::Eta) {
    add(-2.0 * ti(y.nu, x.mu), {a, y.mu, 0});
    add(-2.0 * ti(y.mu, x.mu), {a, y.nu, 0});
  } else if (a == G::Eta && b == G::Eta) {
    const int m = x.mu, n = x.nu, r = y.mu, s = y.nu;
    add(2.0 * ti(m, r), {G::Eta, n, s});
    add(2.0 * ti(m, s), {G::Eta, n, r});
    add(2.0 * ti(n, r), {G::Eta, m, s});
    add(2.0 * ti(n, s), {G::Eta, m, r});
  }
  return out;
}

SuperContext SuperContext::build(int trunc, double theta, double alpha, int pad) {
  if (trunc < 1) throw DomainError("superalgebra: trunc must be >= 1");
  SuperContext c;
  c.params = {theta, 2};
  c.params.validate();
  c.trunc = trunc;
  c.work = trunc + pad;
  c.alpha = alpha;
  c.one = unit_field(c.params, c.work);
  for (int mu = 0; mu < 2; ++mu) c.xi[mu] = -0.5 * coordinate_field(Coordinate::XTilde, mu, c.work, c.params);
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) c.eta[mu][nu] = anticommutator(c.xi[mu], c.xi[nu]);
  return c;
}

SuperField SuperContext::generator(const GeneratorIndex& g) const {
  SuperField s = SuperField::zero(params, work, alpha);
  switch (g.kind) {
    case SuperGenerator::Gamma: s.odd = I * one; break;
    case SuperGenerator::Xi0: s.even = I * xi[g.mu]; break;
    case SuperGenerator::Xi1: s.odd = I * xi[g.mu]; break;
    case SuperGenerator::Eta: s.even = I * eta[g.mu][g.nu]; break;
  }
  return s;
}

Field SuperContext::embed(const Field& f) const {
  if (f.params.dim != 2 || f.params.theta != params.theta) throw DomainError("superalgebra: field parameters differ");
  if (f.trunc > work) throw DimensionError("superalgebra: field larger than the working size");
  Field out = Field::zero(params, work);
  out.coeffs.topLeftCorner(f.side(), f.side()) = f.coeffs;
  return out;
}

double SuperContext::interior(const SuperField& a, const SuperField& b, int margin) const {
  Field shape = Field::zero(params, work);
  const int m = work - trunc + margin;
  return std::max(interior_defect(a.even.coeffs, b.even.coeffs, shape, m),
                  interior_defect(a.odd.coeffs, b.odd.coeffs, shape, m));
}

std::vector<TableRow> derivation_table_check(int trunc, double theta, double alpha) {
  if (trunc < 6) throw DomainError("derivation table: trunc must be >= 6");
  using G = SuperGenerator;
  const SuperContext c = SuperContext::build(trunc, theta, alpha);
  const MoyalParams& p = c.params;
  auto ti = [&](int a, int b) { return theta_inverse(a, b, p); };
  const SuperField zero = SuperField::zero(p, c.work, alpha);
  auto even = [&](const Field& f) { return SuperField{f, zero.odd, alpha}; };
  auto odd = [&](const Field& f) { return SuperField{zero.even, f, alpha}; };
  const SuperField gam = c.generator({G::Gamma, 0, 0});

  // The listed right-hand sides of the eta rows carry i/2; with eta = xi xi + xi xi the brackets
  // are four times that.
  std::vector<TableRow> rows = {
      {"[(0,i),(0,i)] = (-2a,0)", 0.0, 1.0},
      {"[(i xi_m,0),(0,i)] = 0", 0.0, 1.0},
      {"[(0,i xi_m),(0,i)] = (-2a xi_m,0)", 0.0, 1.0},
      {"[(i eta_mn,0),(0,i)] = 0", 0.0, 1.0},
      {"[(i xi_m,0),(i xi_n,0)] = (i Ti_mn,0)", 0.0, 1.0},
      {"[(i xi_m,0),(0,i xi_n)] = (0,i Ti_mn)", 0.0, 1.0},
      {"[(0,i xi_m),(0,i xi_n)] = (-a eta_mn,0)", 0.0, 1.0},
      {"[(i eta_mn,0),(i xi_r,0)] = (i/2 (xi_m Ti_nr + xi_n Ti_mr),0) x4", 0.0, 4.0},
      {"[(i eta_mn,0),(0,i xi_r)] = (0,i/2 (xi_m Ti_nr + xi_n Ti_mr)) x4", 0.0, 4.0},
      {"[(i eta_mn,0),(i eta_rs,0)] = (i/2 (Ti_mr eta_ns + Ti_ms eta_nr + Ti_nr eta_ms + Ti_ns eta_mr),0) x4", 0.0, 4.0},
  };
  auto track = [&](int row, const SuperField& lhs, const SuperField& rhs) {
    rows[row].max_defect = std::max(rows[row].max_defect, c.interior(lhs, rhs));
  };

  track(0, super_bracket(gam, gam), even(-2.0 * alpha * c.one));
  for (int mu = 0; mu < 2; ++mu) {
    track(1, super_bracket(c.generator({G::Xi0, mu, 0}), gam), zero);
    track(2, super_bracket(c.generator({G::Xi1, mu, 0}), gam), even(-2.0 * alpha * c.xi[mu]));
    for (int nu = 0; nu < 2; ++nu) {
      track(3, super_bracket(c.generator({G::Eta, mu, nu}), gam), zero);
      auto x0m = c.generator({G::Xi0, mu, 0}), x0n = c.generator({G::Xi0, nu, 0});
      auto x1m = c.generator({G::Xi1, mu, 0}), x1n = c.generator({G::Xi1, nu, 0});
      track(4, super_bracket(x0m, x0n), even(I * ti(mu, nu) * c.one));
      track(5, super_bracket(x0m, x1n), odd(I * ti(mu, nu) * c.one));
      track(6, super_bracket(x1m, x1n), even(-alpha * c.eta[mu][nu]));
    }
  }
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) {
      auto em = c.generator({G::Eta, m, n});
      for (int r = 0; r < 2; ++r) {
        Field listed = (0.5 * I) * (ti(n, r) * c.xi[m] + ti(m, r) * c.xi[n]);
        track(7, super_bracket(em, c.generator({G::Xi0, r, 0})), even(4.0 * listed));
        track(8, super_bracket(em, c.generator({G::Xi1, r, 0})), odd(4.0 * listed));
        for (int s = 0; s < 2; ++s) {
          Field l10 = (0.5 * I) * (ti(m, r) * c.eta[n][s] + ti(m, s) * c.eta[n][r] + ti(n, r) * c.eta[m][s] +
                                   ti(n, s) * c.eta[m][r]);
          track(9, super_bracket(em, c.generator({G::Eta, r, s})), even(4.0 * l10));
        }
      }
    }
  return rows;
}

SuperPotentials SuperPotentials::zero(const MoyalParams& p, int trunc) {
  SuperPotentials s;
  s.phi = Field::zero(p, trunc);
  for (int mu = 0; mu < 2; ++mu) {
    s.a0[mu] = s.phi;
    s.a1[mu] = s.phi;
    for (int nu = 0; nu < 2; ++nu) s.g[mu][nu] = s.phi;
  }
  return s;
}

namespace {

using G = SuperGenerator;

int rank_of(G k) { return static_cast<int>(k); }

Eigen::MatrixXcd comm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return a * b - b * a; }
Eigen::MatrixXcd acomm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return a * b + b * a; }

// Potentials at working size.
struct WorkPotentials {
  Field phi, a0[2], a1[2], g[2][2];
};

WorkPotentials embed_all(const SuperPotentials& pot, const SuperContext& c) {
  WorkPotentials w;
  w.phi = c.embed(pot.phi);
  for (int mu = 0; mu < 2; ++mu) {
    w.a0[mu] = c.embed(pot.a0[mu]);
    w.a1[mu] = c.embed(pot.a1[mu]);
    for (int nu = 0; nu < 2; ++nu) w.g[mu][nu] = c.embed(pot.g[mu][nu]);
  }
  return w;
}

SuperField potential(const WorkPotentials& w, const GeneratorIndex& x, double alpha) {
  Field z = Field::zero(w.phi.params, w.phi.trunc);
  switch (x.kind) {
    case G::Gamma: return {z, w.phi, alpha};
    case G::Xi0: return {w.a0[x.mu], z, alpha};
    case G::Xi1: return {z, w.a1[x.mu], alpha};
    case G::Eta: return {w.g[x.mu][x.nu], z, alpha};
  }
  return {z, z, alpha};
}

SuperField curvature_by_definition(const GeneratorIndex& x, const GeneratorIndex& y, const WorkPotentials& w,
                                   const SuperContext& c) {
  const double sign = (x.parity() && y.parity()) ? -1.0 : 1.0;
  SuperField ax = potential(w, x, c.alpha), ay = potential(w, y, c.alpha);
  SuperField f = super_bracket(c.generator(x), ay) - sign * super_bracket(c.generator(y), ax) -
                 I * super_bracket(ax, ay);
  for (const auto& [coef, k] : structure_constants(x, y, c.params, c.alpha)) f = f - coef * potential(w, k, c.alpha);
  return f;
}

CovariantCoordinates covariant(const WorkPotentials& w, const SuperContext& c) {
  CovariantCoordinates cc;
  cc.one = c.one.coeffs;
  cc.phi = w.phi.coeffs - c.one.coeffs;
  for (int mu = 0; mu < 2; ++mu) {
    cc.a0[mu] = w.a0[mu].coeffs - c.xi[mu].coeffs;
    cc.a1[mu] = w.a1[mu].coeffs - c.xi[mu].coeffs;
    for (int nu = 0; nu < 2; ++nu) cc.g[mu][nu] = w.g[mu][nu].coeffs - c.eta[mu][nu].coeffs;
  }
  return cc;
}

SuperField as_super(const std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>& m, const SuperContext& c) {
  return {Field::from_matrix(c.params, c.work, m.first), Field::from_matrix(c.params, c.work, m.second), c.alpha};
}

SuperField crop(const SuperField& f, int trunc) {
  return {Field::from_matrix(f.even.params, trunc, f.even.coeffs.topLeftCorner(trunc, trunc)),
          Field::from_matrix(f.odd.params, trunc, f.odd.coeffs.topLeftCorner(trunc, trunc)), f.alpha};
}

// Component pairs of the listed curvature: one ordering per pair of kinds, every index value.
std::vector<std::pair<GeneratorIndex, GeneratorIndex>> curvature_pairs() {
  std::vector<std::pair<GeneratorIndex, GeneratorIndex>> out;
  auto gens = super_generators();
  for (const auto& x : gens)
    for (const auto& y : gens) {
      if (rank_of(x.kind) > rank_of(y.kind)) continue;
      out.emplace_back(x, y);
    }
  return out;
}

void require_hermitian(const Field& f, const char* what) {
  if (f.params.dim != 2) throw DomainError("graded curvature: D = 2 only");
  if (!f.is_hermitian(1e-10)) throw DomainError(std::string("graded curvature: ") + what + " is not Hermitian");
}

void validate_potentials(const SuperPotentials& pot) {
  require_hermitian(pot.phi, "phi");
  for (int mu = 0; mu < 2; ++mu) {
    require_hermitian(pot.a0[mu], "A0");
    require_hermitian(pot.a1[mu], "A1");
    for (int nu = 0; nu < 2; ++nu) {
      require_hermitian(pot.g[mu][nu], "G");
      require_same_shape(pot.phi, pot.g[mu][nu]);
    }
    require_same_shape(pot.phi, pot.a0[mu]);
    require_same_shape(pot.phi, pot.a1[mu]);
  }
  if ((pot.g[0][1].coeffs - pot.g[1][0].coeffs).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("graded curvature: G must be symmetric in its indices");
}

}  // namespace

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> curvature_closed_form(const GeneratorIndex& x, const GeneratorIndex& y,
                                                                    const CovariantCoordinates& c, const MoyalParams& p,
                                                                    double alpha) {
  if (rank_of(x.kind) > rank_of(y.kind)) {
    // F_{Y,X} = -(-1)^{|X||Y|} F_{X,Y}
    auto f = curvature_closed_form(y, x, c, p, alpha);
    const double s = (x.parity() && y.parity()) ? 1.0 : -1.0;
    return {s * f.first, s * f.second};
  }
  auto ti = [&](int a, int b) { return theta_inverse(a, b, p); };
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(c.one.rows(), c.one.cols());
  const cplx ia = I * alpha;
  const int m = x.mu, n = x.nu, r = y.mu, s = y.nu;
  switch (x.kind) {
    case G::Xi0:
      switch (y.kind) {
        case G::Gamma: return {zero, -I * comm(c.a0[m], c.phi)};
        case G::Xi0: return {ti(m, r) * c.one - I * comm(c.a0[m], c.a0[r]), zero};
        case G::Xi1: return {zero, -I * comm(c.a0[m], c.a1[r]) - ti(m, r) * c.phi};
        case G::Eta:
          return {-I * comm(c.a0[m], c.g[r][s]) + 2.0 * ti(r, m) * c.a0[s] + 2.0 * ti(s, m) * c.a0[r], zero};
      }
      break;
    case G::Xi1:
      switch (y.kind) {
        case G::Gamma: return {-ia * acomm(c.a1[m], c.phi) - 2.0 * ia * c.a0[m], zero};
        case G::Xi1: return {-ia * acomm(c.a1[m], c.a1[r]) - ia * c.g[m][r], zero};
        case G::Eta:
          return {zero, -I * comm(c.a1[m], c.g[r][s]) + 2.0 * ti(r, m) * c.a1[s] + 2.0 * ti(s, m) * c.a1[r]};
        default: break;
      }
      break;
    case G::Eta:
      if (y.kind == G::Gamma) return {zero, -I * comm(c.g[m][n], c.phi)};
      if (y.kind == G::Eta)
        return {-I * comm(c.g[m][n], c.g[r][s]) - 2.0 * ti(m, r) * c.g[n][s] - 2.0 * ti(n, r) * c.g[m][s] -
                    2.0 * ti(m, s) * c.g[n][r] - 2.0 * ti(n, s) * c.g[m][r],
                zero};
      break;
    case G::Gamma:
      return {2.0 * ia * c.one - 2.0 * ia * c.phi * c.phi, zero};
  }
  throw DomainError("graded curvature: no closed form for " + x.name() + ", " + y.name());
}

CurvatureReport graded_curvature(const SuperPotentials& pot, double alpha, int margin) {
  validate_potentials(pot);
  const SuperContext c = SuperContext::build(pot.phi.trunc, pot.phi.params.theta, alpha);
  const WorkPotentials w = embed_all(pot, c);
  const CovariantCoordinates cc = covariant(w, c);
  CurvatureReport rep;
  for (const auto& [x, y] : curvature_pairs()) {
    SuperField def = curvature_by_definition(x, y, w, c);
    SuperField closed = as_super(curvature_closed_form(x, y, cc, c.params, alpha), c);
    CurvatureComponent comp{x, y, crop(closed, c.trunc), c.interior(def, closed, margin)};
    rep.max_defect = std::max(rep.max_defect, comp.defect);
    rep.components.push_back(std::move(comp));
  }
  return rep;
}

Eigen::MatrixXcd unitary_from_hermitian(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw AccuracyError("unitary: eigen-decomposition failed");
  Eigen::VectorXcd phases = (I * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double gauge_covariance_defect(const SuperPotentials& pot, const Field& h, double alpha, int margin) {
  validate_potentials(pot);
  require_same_shape(pot.phi, h);
  if (!h.is_hermitian(1e-10)) throw DomainError("gauge covariance: generator is not Hermitian");
  const SuperContext c = SuperContext::build(pot.phi.trunc, pot.phi.params.theta, alpha);
  const WorkPotentials w = embed_all(pot, c);

  const Field u = Field::from_matrix(c.params, c.work, unitary_from_hermitian(c.embed(h).coeffs));
  const Field zero = Field::zero(c.params, c.work);
  const SuperField g{u, zero, alpha}, gstar{adjoint(u), zero, alpha};
  auto conj = [&](const SuperField& f) { return super_product(super_product(g, f), gstar); };

  WorkPotentials wg;
  auto transform = [&](const GeneratorIndex& x) {
    return conj(potential(w, x, alpha)) + I * super_product(g, super_bracket(c.generator(x), gstar));
  };
  wg.phi = transform({G::Gamma, 0, 0}).odd;
  for (int mu = 0; mu < 2; ++mu) {
    wg.a0[mu] = transform({G::Xi0, mu, 0}).even;
    wg.a1[mu] = transform({G::Xi1, mu, 0}).odd;
    for (int nu = 0; nu < 2; ++nu) wg.g[mu][nu] = transform({G::Eta, mu, nu}).even;
  }

  double worst = 0.0;
  for (const auto& [x, y] : curvature_pairs()) {
    SuperField lhs = curvature_by_definition(x, y, wg, c);
    SuperField rhs = conj(curvature_by_definition(x, y, w, c));
    worst = std::max(worst, c.interior(lhs, rhs, margin));
  }
  return worst;
}

ActionPattern super_action_pattern_check(const Eigen::MatrixXcd& a1, const Eigen::MatrixXcd& a2, double theta,
                                         double alpha) {
  if (a1.rows() != a1.cols() || a1.rows() != a2.rows() || a2.rows() != a2.cols())
    throw DimensionError("action pattern: matrices must be square and of equal size");
  if (!a1.isApprox(a1.adjoint()) || !a2.isApprox(a2.adjoint()))
    throw DomainError("action pattern: gauge fields must be Hermitian");
  const MoyalParams p{theta, 2};
  p.validate();
  const long size = a1.rows();
  const Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(size, size);
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(size, size);
  CovariantCoordinates c;
  c.one = one;
  c.phi = zero;
  c.a0[0] = c.a1[0] = a1;
  c.a0[1] = c.a1[1] = a2;
  for (auto& row : c.g)
    for (auto& e : row) e = zero;

  auto weight = [&](const GeneratorIndex& x) {
    if (x.kind == G::Gamma) return 1.0 / std::sqrt(theta);
    if (x.kind == G::Eta) return std::sqrt(theta);
    return 1.0;
  };
  double assembled = 0.0;
  for (const auto& x : super_generators())
    for (const auto& y : super_generators()) {
      auto [f0, f1] = curvature_closed_form(x, y, c, p, alpha);
      const double s = weight(x) * weight(y);
      // even part of (f0, f1)* (f0, f1)
      assembled += s * s * (f0.adjoint() * f0 + alpha * f1.adjoint() * f1).trace().real();
    }

  const Eigen::MatrixXcd* a[2] = {&a1, &a2};
  double expected = 0.0;
  const double mass = (8.0 / theta) * (2.0 * 3.0 * (1.0 + alpha) + alpha * alpha);
  for (int mu = 0; mu < 2; ++mu) {
    expected += mass * (*a[mu] * *a[mu]).trace().real();
    for (int nu = 0; nu < 2; ++nu) {
      Eigen::MatrixXcd f = theta_inverse(mu, nu, p) * one - I * comm(*a[mu], *a[nu]);
      Eigen::MatrixXcd ac = acomm(*a[mu], *a[nu]);
      expected += (1.0 + 2.0 * alpha) * (f * f).trace().real() + alpha * alpha * (ac * ac).trace().real();
    }
  }
  expected += static_cast<double>(size) * (4.0 * alpha * alpha - 4.0 * alpha) / (theta * theta);
  ActionPattern out{assembled, expected, 0.0};
  out.relative_defect = std::abs(assembled - expected) / std::max(1.0, std::abs(expected));
  return out;
}

SuperCouplings couplings_from_alpha(double alpha, double theta, int dim) {
  if (!(theta > 0.0)) throw DomainError("couplings: theta must be positive");
  const double d = 1.0 + 2.0 * alpha;
  if (d == 0.0) throw DomainError("couplings: alpha = -1/2 has no Omega");
  SuperCouplings s;
  s.omega2 = alpha * alpha / d;
  s.kappa = 8.0 * (alpha * alpha + 2.0 * (dim + 1) * (alpha + 1.0)) / (theta * d);
  s.mu2 = 4.0 * alpha * alpha / (theta * d);
  return s;
}

}  // namespace moyal
