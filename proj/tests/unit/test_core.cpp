#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "moyal/basis.hpp"
#include "moyal/errors.hpp"
#include "moyal/field.hpp"
#include "moyal/fourier.hpp"
#include "moyal/io.hpp"
#include "moyal/quadrature.hpp"

using namespace moyal;

namespace {

// Closed factorial form, only trusted for small m + n.
cplx basis_factorial(int m, int n, double x1, double x2, double theta) {
  if (m > n) return std::conj(basis_factorial(n, m, x1, x2, theta));
  const int a = n - m;
  const double r2 = x1 * x1 + x2 * x2;
  const double z = 2.0 * r2 / theta;
  double norm = std::sqrt(std::tgamma(m + 1.0) / std::tgamma(n + 1.0));
  cplx w = std::sqrt(2.0 / theta) * cplx(x1, x2);
  return 2.0 * ((m % 2) ? -1.0 : 1.0) * norm * std::pow(w, a) * std::assoc_laguerre(m, a, z) *
         std::exp(-r2 / theta);
}

Field random_field(const MoyalParams& p, int trunc, std::mt19937& rng, int support = -1) {
  std::normal_distribution<double> nd;
  Field f = Field::zero(p, trunc);
  for (int i = 0; i < f.side(); ++i)
    for (int j = 0; j < f.side(); ++j) {
      if (support >= 0) {
        bool ok = true;
        for (int c : f.unflat(i)) ok = ok && c < support;
        for (int c : f.unflat(j)) ok = ok && c < support;
        if (!ok) continue;
      }
      f.coeffs(i, j) = cplx(nd(rng), nd(rng));
    }
  return f;
}

}  // namespace

TEST_CASE("basis values at reference points") {
  MoyalParams p{1.0, 2};
  double origin[2] = {0.0, 0.0};
  CHECK(std::abs(basis_eval({0}, {0}, origin, p) - 2.0) < 1e-15);
  double unit[2] = {1.0, 0.0};
  CHECK(std::abs(basis_eval({0}, {0}, unit, p) - 2.0 * std::exp(-1.0)) < 1e-15);
  CHECK(std::abs(basis_eval({0}, {1}, unit, p) - 2.0 * std::sqrt(2.0) * std::exp(-1.0)) < 1e-14);
  CHECK(std::abs(basis_eval({0}, {1}, unit, p).real() - 1.04053) < 1e-5);
}

TEST_CASE("Laguerre recurrence matches factorial form") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (double theta : {0.5, 1.0, 2.3}) {
    for (int trial = 0; trial < 10; ++trial) {
      double x1 = u(rng), x2 = u(rng);
      Eigen::MatrixXcd b = basis_matrix_2d(x1, x2, theta, 11);
      for (int m = 0; m <= 10; ++m)
        for (int n = 0; m + n <= 20 && n <= 10; ++n)
          CHECK(std::abs(b(m, n) - basis_factorial(m, n, x1, x2, theta)) < 1e-12);
    }
  }
}

TEST_CASE("Laguerre recurrence stays bounded at large index") {
  Eigen::MatrixXcd b = basis_matrix_2d(3.0, -4.0, 1.0, 64);
  CHECK(b.allFinite());
  CHECK(b.cwiseAbs().maxCoeff() <= 2.0 + 1e-12);
}

TEST_CASE("basis parity and dim 4 tensor product") {
  MoyalParams p2{1.3, 2}, p4{1.3, 4};
  double x[4] = {0.3, -0.7, 1.1, 0.2};
  double mx[2] = {-0.3, 0.7};
  for (int m = 0; m < 5; ++m)
    for (int n = 0; n < 5; ++n) {
      cplx v = basis_eval({m}, {n}, x, p2);
      cplx w = basis_eval({m}, {n}, mx, p2);
      CHECK(std::abs(w - (((m + n) % 2) ? -v : v)) < 1e-13);
    }
  cplx t = basis_eval({1, 2}, {3, 0}, x, p4);
  CHECK(std::abs(t - basis_eval({1}, {3}, x, p2) * basis_eval({2}, {0}, x + 2, p2)) < 1e-14);
}

TEST_CASE("star product, integral and adjoint in the matrix basis") {
  MoyalParams p{1.0, 2};
  Field b01 = Field::basis(p, 4, {0}, {1});
  Field b12 = Field::basis(p, 4, {1}, {2});
  Field b02 = Field::basis(p, 4, {0}, {2});
  Field b00 = Field::basis(p, 4, {0}, {0});
  CHECK((star(b01, b12).coeffs - b02.coeffs).norm() == 0.0);
  CHECK(star(b01, b00).coeffs.norm() == 0.0);
  CHECK(std::abs(integral(b00) - 2.0 * M_PI) < 1e-15);
  CHECK(std::abs(integral(b01)) == 0.0);
  CHECK((adjoint(b01).coeffs - Field::basis(p, 4, {1}, {0}).coeffs).norm() == 0.0);
  CHECK_THROWS_AS(star(b01, Field::basis(p, 5, {0}, {1})), DimensionError);
  CHECK_THROWS_AS(star(b01, Field::basis(MoyalParams{2.0, 2}, 4, {0}, {1})), DimensionError);

  std::mt19937 rng(3);
  Field f = random_field(p, 8, rng), g = random_field(p, 8, rng);
  CHECK((adjoint(star(f, g)).coeffs - star(adjoint(g), adjoint(f)).coeffs).norm() < 1e-12);

  MoyalParams p4{0.7, 4};
  Field h = random_field(p4, 3, rng, 2);
  Field e1 = approximate_unit(p4, 3, 1);
  CHECK((star(e1, h).coeffs - h.coeffs).norm() == 0.0);
  CHECK(std::abs(integral(Field::basis(p4, 3, {1, 0}, {1, 0})) - std::pow(2 * M_PI * 0.7, 2)) < 1e-12);
}

TEST_CASE("coordinate fields") {
  MoyalParams p{1.0, 2};
  Field x2sq = coordinate_field(Coordinate::XSquared, 0, 6, p);
  CHECK(x2sq.coeffs(0, 0) == cplx(1.0));
  CHECK(std::abs(coordinate_field(Coordinate::X, 0, 6, p).coeffs(0, 1) - std::sqrt(0.5)) < 1e-15);

  MoyalParams q{1.7, 2};
  Field x1 = coordinate_field(Coordinate::X, 0, 10, q);
  Field x2 = coordinate_field(Coordinate::X, 1, 10, q);
  Field comm = commutator(x1, x2);
  Field expect = unit_field(q, 10, cplx(0.0, q.theta));
  CHECK(interior_defect(comm.coeffs, expect.coeffs, comm, 1) < 1e-13);
  Field sq = star(x1, x1) + star(x2, x2);
  CHECK(interior_defect(sq.coeffs, coordinate_field(Coordinate::XSquared, 0, 10, q).coeffs, sq, 1) < 1e-13);
}

TEST_CASE("linear star product agrees with x-space Moyal formula") {
  // x_mu * g = x_mu g + (i/2) Theta_{mu nu} d_nu g, exact for linear x_mu.
  MoyalParams p{0.8, 2};
  std::mt19937 rng(11);
  Field g = random_field(p, 8, rng, 5);
  const double h = 1e-4;
  for (int mu = 0; mu < 2; ++mu) {
    Field xg = star(coordinate_field(Coordinate::X, mu, 8, p), g);
    for (double px : {0.2, -0.5}) {
      double pt[2] = {px, 0.3};
      int nu = 1 - mu;
      double theta_mu_nu = (mu == 0) ? p.theta : -p.theta;
      double a[2] = {pt[0], pt[1]}, b[2] = {pt[0], pt[1]};
      a[nu] += h;
      b[nu] -= h;
      cplx dg = (eval_field(g, a) - eval_field(g, b)) / (2 * h);
      cplx expect = pt[mu] * eval_field(g, pt) + cplx(0, 0.5) * theta_mu_nu * dg;
      CHECK(std::abs(eval_field(xg, pt) - expect) < 1e-6);
    }
  }
}

TEST_CASE("x-tilde commutator is 2i times the derivative") {
  MoyalParams p{1.0, 2};
  std::mt19937 rng(5);
  Field f = random_field(p, 10, rng, 8);
  const double h = 1e-5;
  for (int mu = 0; mu < 2; ++mu) {
    Field c = commutator(coordinate_field(Coordinate::XTilde, mu, 10, p), f);
    for (double px : {0.0, 0.4, -1.1}) {
      double pt[2] = {px, 0.7 - px};
      double a[2] = {pt[0], pt[1]}, b[2] = {pt[0], pt[1]};
      a[mu] += h;
      b[mu] -= h;
      cplx df = (eval_field(f, a) - eval_field(f, b)) / (2 * h);
      CHECK(std::abs(eval_field(c, pt) - cplx(0, 2) * df) < 1e-6);
    }
  }
  Field b00 = Field::basis(p, 6, {0}, {0});
  Field c = commutator(coordinate_field(Coordinate::XTilde, 0, 6, p), b00);
  double pt[2] = {0.3, 0.2};
  double a[2] = {0.3 + 1e-4, 0.2}, b[2] = {0.3 - 1e-4, 0.2};
  cplx d = (eval_field(b00, a) - eval_field(b00, b)) / 2e-4;
  CHECK(std::abs(eval_field(c, pt) - cplx(0, 2) * d) < 1e-6);
}

TEST_CASE("Gauss-Hermite rule") {
  HermiteRule r = gauss_hermite(20);
  double s0 = 0, s4 = 0;
  for (size_t i = 0; i < r.nodes.size(); ++i) {
    double e = std::exp(-r.nodes[i] * r.nodes[i]);
    s0 += r.weights[i] * e;
    s4 += r.weights[i] * e * std::pow(r.nodes[i], 4);
  }
  CHECK(std::abs(s0 - std::sqrt(M_PI)) < 1e-13);
  CHECK(std::abs(s4 - 0.75 * std::sqrt(M_PI)) < 1e-13);
  HermiteRule big = gauss_hermite(128);
  CHECK(big.nodes.back() > 15.0);
}

TEST_CASE("coefficients from functions") {
  MoyalParams p{1.0, 2};
  auto gauss2 = [](const double* x) { return cplx(2.0 * std::exp(-(x[0] * x[0] + x[1] * x[1]))); };
  auto r = coeffs_from_function(gauss2, 6, p);
  Field expect = Field::basis(p, 6, {0}, {0});
  CHECK((r.field.coeffs - expect.coeffs).cwiseAbs().maxCoeff() < 1e-12);

  MoyalParams q{2.5, 2};
  auto gauss1 = [&](const double* x) { return cplx(std::exp(-(x[0] * x[0] + x[1] * x[1]) / q.theta)); };
  auto r1 = coeffs_from_function(gauss1, 5, q);
  CHECK(std::abs(r1.field.coeffs(0, 0) - 0.5) < 1e-12);
  CHECK(r1.field.coeffs.cwiseAbs().sum() - 0.5 < 1e-11);

  auto b23 = [&](const double* x) { return basis_eval({2}, {3}, x, q); };
  auto r2 = coeffs_from_function(b23, 6, q);
  Field e23 = Field::basis(q, 6, {2}, {3});
  CHECK((r2.field.coeffs - e23.coeffs).cwiseAbs().maxCoeff() < 1e-10);

  auto bump = [](const double* x) {
    return cplx(std::exp(-0.8 * (x[0] - 0.3) * (x[0] - 0.3) - 1.2 * x[1] * x[1]) * (1.0 + 0.5 * x[0] * x[1]));
  };
  auto r3 = coeffs_from_function(bump, 30, p);
  for (double px : {0.0, 0.5, -0.7}) {
    double pt[2] = {px, 0.25};
    CHECK(std::abs(eval_field(r3.field, pt) - bump(pt)) < 1e-6);
  }

  auto step = [](const double* x) { return cplx(x[0] > 0.1 ? 1.0 : 0.0); };
  CHECK_THROWS_AS(coeffs_from_function(step, 4, p), AccuracyError);
}

TEST_CASE("coefficients from functions in dim 4") {
  MoyalParams p{0.9, 4};
  auto f = [&](const double* x) { return basis_eval({1, 0}, {0, 2}, x, p); };
  auto r = coeffs_from_function(f, 3, p);
  Field e = Field::basis(p, 3, {1, 0}, {0, 2});
  CHECK((r.field.coeffs - e.coeffs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("symplectic Fourier transform") {
  MoyalParams p{1.0, 2};
  auto gauss = [](const double* x) { return cplx(std::exp(-(x[0] * x[0] + x[1] * x[1]))); };
  GridField g = sample_grid(gauss, p, 7.0, 121);
  GridField gh = symplectic_fourier(g);
  double worst = 0.0;
  for (int i = 0; i < g.resolution; ++i)
    for (int j = 0; j < g.resolution; ++j) worst = std::max(worst, std::abs(gh.samples(i, j) - g.samples(i, j)));
  CHECK(worst < 1e-10);

  auto shifted = [](const double* x) {
    return cplx(1.0, 0.3 * x[0]) * std::exp(-(x[0] - 0.6) * (x[0] - 0.6) - 1.5 * (x[1] + 0.2) * (x[1] + 0.2));
  };
  GridField s = sample_grid(shifted, p, 7.0, 121);
  GridField sh = symplectic_fourier(s);
  CHECK(std::abs(grid_inner(s, g) - grid_inner(sh, gh)) < 1e-9);
  GridField back = symplectic_fourier(sh);
  CHECK((back.samples - s.samples).cwiseAbs().maxCoeff() < 1e-9);
  GridField flipped = symplectic_fourier(sh, FourierOptions{-1});
  Eigen::MatrixXcd reversed = s.samples.colwise().reverse().rowwise().reverse();
  CHECK((flipped.samples - reversed).cwiseAbs().maxCoeff() < 1e-9);

  CHECK_THROWS_AS(symplectic_fourier(sample_grid(gauss, p, 7.0, 30)), AccuracyError);
  CHECK_THROWS_AS(symplectic_fourier(sample_grid(gauss, p, 2.0, 60)), AccuracyError);
}

TEST_CASE("serialization round trips") {
  MoyalParams p{1.5, 4};
  std::mt19937 rng(1);
  Field f = random_field(p, 3, rng);
  Field back = field_from_json(field_to_json(f));
  CHECK(back.trunc == 3);
  CHECK(back.params == p);
  CHECK((back.coeffs - f.coeffs).norm() == 0.0);
  CHECK_THROWS_AS(field_from_json("{\"theta\":1,\"dim\":2,\"trunc\":2,\"coeffs\":[[1,0]]}"), DimensionError);

  MoyalParams q{1.0, 2};
  GridField g = sample_grid([](const double* x) { return cplx(x[0], x[1]); }, q, 1.0, 4);
  std::stringstream ss;
  write_grid_csv(ss, g);
  CHECK(ss.str().rfind("x1,x2,re,im\n", 0) == 0);
  GridField h = read_grid_csv(ss, q);
  CHECK((h.samples - g.samples).norm() == 0.0);
  CHECK(h.extent == 1.0);
}
