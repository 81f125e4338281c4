#include <doctest.h>

#include <cmath>
#include <random>

#include "moyal/basis.hpp"
#include "moyal/errors.hpp"
#include "moyal/quadrature.hpp"
#include "moyal/scalar.hpp"

using namespace moyal;

namespace {

Field random_hermitian(const MoyalParams& p, int trunc, int support, std::mt19937& rng) {
  std::normal_distribution<double> nd(0.0, 0.3);
  Field f = Field::zero(p, trunc);
  for (int i = 0; i < f.side(); ++i)
    for (int j = 0; j < f.side(); ++j) {
      bool ok = true;
      for (int c : f.unflat(i)) ok = ok && c < support;
      for (int c : f.unflat(j)) ok = ok && c < support;
      if (ok) f.coeffs(i, j) = cplx(nd(rng), nd(rng));
    }
  f.coeffs = 0.5 * (f.coeffs + f.coeffs.adjoint()).eval();
  return f;
}

ScalarModel model2(double omega, double mu2, double lambda, bool broken = false, double theta = 1.0) {
  ScalarModel m;
  m.params = {theta, 2};
  m.omega = omega;
  m.mu2 = mu2;
  m.lambda = lambda;
  m.broken_phase = broken;
  return m;
}

}  // namespace

TEST_CASE("kinetic operator") {
  ScalarModel m = model2(1.0, 0.0, 1.0);
  Field b00 = Field::basis(m.params, 4, {0}, {0});
  CHECK((apply_kinetic(b00, m).coeffs - 4.0 * b00.coeffs).norm() < 1e-14);
  ScalarModel g = model2(0.4, 0.9, 1.0, false, 1.3);
  CHECK(apply_kinetic(Field::zero(g.params, 4), g).coeffs.norm() == 0.0);

  for (int dim : {2, 4}) {
    ScalarModel h = g;
    h.params.dim = dim;
    const int n = dim == 2 ? 4 : 3;
    Eigen::MatrixXd dense = kinetic_matrix(h, n);
    CHECK((dense - dense.transpose()).norm() == 0.0);
    std::mt19937 rng(dim);
    Field f = random_hermitian(h.params, n, n, rng);
    Field kf = apply_kinetic(f, h);
    const int s = f.side();
    Eigen::VectorXcd flat(s * s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) flat(i * s + j) = f.coeffs(i, j);
    Eigen::VectorXcd applied = dense.cast<cplx>() * flat;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) CHECK(std::abs(applied(i * s + j) - kf.coeffs(i, j)) < 1e-13);
  }
}

TEST_CASE("kinetic operator agrees with the x-space operator") {
  // coefficients of (-d^2 + Omega^2 x~^2 + mu2) phi are the transpose of Delta phi
  ScalarModel m = model2(0.6, 0.7, 1.0, false, 0.8);
  std::mt19937 rng(9);
  Field f = random_hermitian(m.params, 10, 6, rng);
  Field kf = apply_kinetic(f, m);
  const double h = 1e-3;
  for (double px : {0.1, -0.6}) {
    double pt[2] = {px, 0.35};
    cplx lap = 0.0;
    for (int c = 0; c < 2; ++c) {
      double a[2] = {pt[0], pt[1]}, b[2] = {pt[0], pt[1]};
      a[c] += h;
      b[c] -= h;
      lap += (eval_field(f, a) - 2.0 * eval_field(f, pt) + eval_field(f, b)) / (h * h);
    }
    double xt2 = 4.0 / (m.params.theta * m.params.theta) * (pt[0] * pt[0] + pt[1] * pt[1]);
    cplx expect = -lap + (m.omega * m.omega * xt2 + m.mu2) * eval_field(f, pt);
    Field kt = adjoint(kf);
    kt.coeffs = kf.coeffs.transpose();
    CHECK(std::abs(eval_field(kt, pt) - expect) < 1e-4);
  }
}

TEST_CASE("action") {
  ScalarModel m = model2(0.6, 0.7, 0.8, false, 0.8);
  CHECK(gw_action(Field::zero(m.params, 5), m) == 0.0);
  Field bad = Field::basis(m.params, 5, {0}, {1});
  CHECK_THROWS_AS(gw_action(bad, m), DomainError);

  // x-space oracle: derivatives by differences, quartic via the star product.
  std::mt19937 rng(4);
  Field f = random_hermitian(m.params, 8, 6, rng);
  Field f4 = star(star(f, f), star(f, f));
  const double h = 1e-5;
  const double th = m.params.theta;
  auto density = [&](const double* x) {
    cplx v = eval_field(f, x);
    double grad2 = 0.0;
    for (int c = 0; c < 2; ++c) {
      double a[2] = {x[0], x[1]}, b[2] = {x[0], x[1]};
      a[c] += h;
      b[c] -= h;
      grad2 += std::norm((eval_field(f, a) - eval_field(f, b)) / (2 * h));
    }
    double xt2 = 4.0 / (th * th) * (x[0] * x[0] + x[1] * x[1]);
    return cplx(0.5 * grad2 + 0.5 * (m.omega * m.omega * xt2 + m.mu2) * v.real() * v.real()) +
           m.lambda * eval_field(f4, x);
  };
  double oracle = hermite_integral(density, m.params, 48).real();
  CHECK(std::abs(gw_action(f, m) - oracle) < 1e-6 * std::max(1.0, std::abs(oracle)));
}

TEST_CASE("propagator") {
  ScalarModel m = model2(1.0, 4.0, 1.0);
  CHECK(std::abs(propagator_matrix({0}, {0}, {0}, {0}, m) - 0.125) < 1e-15);
  CHECK(propagator_matrix({0}, {1}, {1}, {1}, m) == 0.0);
  PropagatorOptions forced;
  forced.force_quadrature = true;
  for (auto idx : std::vector<std::array<int, 2>>{{0, 0}, {1, 3}, {4, 2}}) {
    double closed = propagator_matrix({idx[0]}, {idx[1]}, {idx[1]}, {idx[0]}, m);
    double quad = propagator_matrix({idx[0]}, {idx[1]}, {idx[1]}, {idx[0]}, m, forced);
    CHECK(std::abs(closed - quad) < 1e-8 * closed);
  }
  ScalarModel near = model2(1.0 - 1e-9, 4.0, 1.0);
  CHECK(std::abs(propagator_matrix({2}, {1}, {1}, {2}, near) - propagator_matrix({2}, {1}, {1}, {2}, m)) < 1e-8);
  ScalarModel m4 = m;
  m4.params.dim = 4;
  CHECK(std::abs(propagator_matrix({1, 0}, {0, 2}, {0, 2}, {1, 0}, m4) -
                 propagator_matrix({1, 0}, {0, 2}, {0, 2}, {1, 0}, m4, forced)) < 1e-9);
}

TEST_CASE("general propagator inverts the kinetic matrix") {
  ScalarModel m = model2(0.7, 0.5, 1.0, false, 1.2);
  const int n = 30;
  Eigen::MatrixXd dense = kinetic_matrix(m, n);
  Eigen::MatrixXd inv = dense.partialPivLu().inverse();
  // The Omega = 1 closed form fixes sum_pq C_{mn,pq} Delta_{pq,kl} = delta_mk delta_nl.
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < 4; ++k) {
        int l = a + k - b;
        if (l < 0 || l >= 4) continue;
        double c = propagator_matrix({a}, {b}, {k}, {l}, m);
        CHECK(std::abs(c - inv(a * n + b, k * n + l)) < 1e-9);
      }
  CHECK(propagator_matrix({0}, {1}, {0}, {0}, m) == 0.0);
}

TEST_CASE("Mehler kernel") {
  ScalarModel m = model2(1.0, 1.0, 1.0);
  double x[2] = {0.3, 0.1}, y[2] = {-0.5, 0.4};
  CHECK(std::abs(mehler_kernel(x, y, m) - mehler_kernel(y, x, m)) < 1e-15);
  double u[2] = {0.4, -0.2}, v[2] = {-0.4, 0.2}, w[2] = {0.0, 0.447213595499958};
  double z[2] = {0.0, -0.447213595499958};
  CHECK(std::abs(mehler_kernel(u, v, m) - mehler_kernel(w, z, m)) < 1e-12);
  CHECK_THROWS_AS(mehler_kernel(x, x, m), DomainError);
  CHECK(mehler_kernel(x, x, m, 0.01) > mehler_kernel(x, y, m));
  CHECK(std::abs(propagator_resummation(x, y, m) - mehler_kernel(x, y, m)) < 1e-4);
}

TEST_CASE("scalar vacuum") {
  ScalarModel m = model2(1.0, 24.0, 1.0, true);
  VacuumScalar v = scalar_vacuum(m);
  REQUIRE(v.p == 2);
  REQUIRE(v.a.size() == 3);
  CHECK(std::abs(v.a[0] * v.a[0] - 5.0) < 1e-13);
  CHECK(std::abs(v.a[1] * v.a[1] - 3.0) < 1e-13);
  CHECK(std::abs(v.a[2] * v.a[2] - 1.0) < 1e-13);
  Field phi = v.field(8);
  CHECK(scalar_eom_residual(phi, m).coeffs.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(gw_action(phi, m) + 70.0 * M_PI) < 1e-10);
  CHECK(gw_action(phi, m) < 0.0);

  CHECK(scalar_vacuum(model2(1.0, 2.0, 1.0, true)).p == -1);
  VacuumScalar edge = scalar_vacuum(model2(1.0, 12.0, 1.0, true));
  REQUIRE(edge.p == 1);
  CHECK(edge.a[1] == 0.0);

  VacuumScalar flipped = scalar_vacuum(m, {1, -1, 1});
  CHECK(scalar_eom_residual(flipped.field(8), m).coeffs.cwiseAbs().maxCoeff() < 1e-12);

  ScalarModel m4 = m;
  m4.params.dim = 4;
  m4.mu2 = 30.0;
  VacuumScalar v4 = scalar_vacuum(m4);
  CHECK(v4.p == 2);
  CHECK(v4.indices.size() == 6);
  CHECK(scalar_eom_residual(v4.field(4), m4).coeffs.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(gw_action(v4.field(4), m4) < 0.0);

  Field b00 = Field::basis(m.params, 3, {0}, {0});
  Field r = scalar_eom_residual(cplx(0.7) * b00, m);
  CHECK(std::abs(r.coeffs(0, 0) - 0.7 * (4.0 - 24.0 + 4.0 * 0.49)) < 1e-13);
  CHECK_THROWS_AS(scalar_eom_residual(b00, model2(0.5, 24.0, 1.0, true)), UnsupportedError);
}

TEST_CASE("vacuum stability") {
  ScalarModel m = model2(1.0, 24.0, 1.0, true);
  VacuumScalar v = scalar_vacuum(m);
  StabilityReport r = vacuum_stability(v, 10);
  CHECK(r.min_value > 0.0);
  CHECK(!r.degenerate);
  CHECK(r.negative_alpha_at_zero > 0);
  const double mu2t = 24.0;
  CHECK(std::abs(r.inverse_propagator(5, 7) - 4 * M_PI * (12 - 2 * (mu2t / 8 - 0.5))) < 1e-12);
  CHECK(std::abs(r.inverse_propagator(1, 6) - 4 * M_PI * 5) < 1e-12);

  ScalarModel d = model2(1.0, 20.0, 1.0, true);
  StabilityReport rd = vacuum_stability(scalar_vacuum(d), 8);
  CHECK(rd.degenerate);
  CHECK(std::abs(rd.inverse_propagator(2, 2)) < 1e-12);
  CHECK(rd.min_value > -1e-12);
}

TEST_CASE("sigma model spectrum") {
  ScalarModel m = model2(1.0, 24.0, 1.0, true);
  SigmaSpectrum s = sigma_quadratic_spectrum(scalar_vacuum(m), 6);
  CHECK(s.masked.size() == 3);
  bool found = false;
  for (const auto& e : s.entries)
    if (e.m[0] == 3 && e.n[0] == 0) {
      found = true;
      CHECK(std::abs(e.coefficient + 4.0) < 1e-14);
    }
  CHECK(found);
  SigmaSpectrum empty = sigma_quadratic_spectrum(scalar_vacuum(model2(1.0, 2.0, 1.0, true)), 4);
  CHECK(empty.masked.empty());
  CHECK(empty.entries.size() == 16);
}

TEST_CASE("Langmann-Szabo duality") {
  auto zero = [](const double*) { return cplx(0.0); };
  ScalarModel m = model2(1.0, 0.5, 0.3);
  CHECK(ls_duality_check(zero, m).defect == 0.0);
  auto gauss = [](const double* x) { return cplx(std::exp(-(x[0] * x[0] + x[1] * x[1]))); };
  CHECK(ls_duality_check(gauss, m).defect < 1e-4);
  auto shifted = [](const double* x) {
    return cplx(std::exp(-(x[0] - 0.4) * (x[0] - 0.4) - 0.8 * (x[1] + 0.3) * (x[1] + 0.3)));
  };
  for (double om : {0.5, 1.0}) {
    ScalarModel h = model2(om, 0.5, 0.3);
    DualityReport r = ls_duality_check(shifted, h);
    CHECK(r.defect < 1e-3);
    CHECK(std::abs(r.direct_quartic - r.dual_quartic) < 1e-3 * std::abs(r.direct_quartic));
  }
  CHECK_THROWS_AS(ls_duality_check(gauss, model2(0.0, 0.5, 0.3)), DomainError);
}
