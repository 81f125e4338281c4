#include "suite.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <random>

#include "moyal/basis.hpp"
#include "moyal/effective_action.hpp"
#include "moyal/errors.hpp"
#include "moyal/field.hpp"
#include "moyal/gauge.hpp"
#include "moyal/graded.hpp"
#include "moyal/quadrature.hpp"
#include "moyal/ribbon.hpp"
#include "moyal/scalar.hpp"
#include "moyal/superalgebra.hpp"

namespace acceptance {

using namespace moyal;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string sci(double v) { return fmt::format("{:.2e}", v); }

// Gaussian-integer entries keep every product and sum exact in double precision.
Field integer_field(const MoyalParams& p, int trunc, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  Field f = Field::zero(p, trunc);
  for (int i = 0; i < f.side(); ++i)
    for (int j = 0; j < f.side(); ++j) f.coeffs(i, j) = cplx(d(rng), d(rng));
  return f;
}

Outcome matrix_basis_algebra(std::mt19937& rng) {
  Outcome o;
  const MoyalParams p{1.0, 2};
  Field b01 = Field::basis(p, 4, {0}, {1}), b12 = Field::basis(p, 4, {1}, {2}), b02 = Field::basis(p, 4, {0}, {2});
  o.require(star(b01, b12).coeffs == b02.coeffs, "b01*b12 = b02");
  const double i00 = integral(Field::basis(p, 4, {0}, {0})).real();
  o.require(std::abs(i00 - 2.0 * M_PI) <= 1e-15, "integral(b00) = 2 pi theta");
  double assoc = 0.0, tracial = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Field f = integer_field(p, 16, rng), g = integer_field(p, 16, rng), h = integer_field(p, 16, rng);
    assoc = std::max(assoc, (star(star(f, g), h).coeffs - star(f, star(g, h)).coeffs).cwiseAbs().maxCoeff());
    tracial = std::max(tracial, std::abs(integral(star(f, g)) - integral(star(g, f))));
  }
  o.require(assoc == 0.0, "associativity exact");
  o.require(tracial == 0.0, "tracial property exact");
  o.note(fmt::format("assoc defect {}, trace defect {}", assoc, tracial));
  return o;
}

Outcome quadrature_orthogonality() {
  Outcome o;
  const double theta = 1.0;
  const int trunc = 5, nodes = 96;
  HermiteRule rule = gauss_hermite(nodes);
  const double s = std::sqrt(theta);
  // gram(m*5+n, k*5+l) = (2 pi theta)^{-1} int f_mn f_kl
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(trunc * trunc, trunc * trunc);
  for (int a = 0; a < nodes; ++a)
    for (int b = 0; b < nodes; ++b) {
      Eigen::MatrixXcd f = basis_matrix_2d(s * rule.nodes[a], s * rule.nodes[b], theta, trunc);
      Eigen::Map<Eigen::VectorXcd> v(f.data(), f.size());  // column-major: index n*5+m
      gram.noalias() += (s * s * rule.weights[a] * rule.weights[b]) * (v * v.transpose());
    }
  gram /= 2.0 * M_PI * theta;
  double worst = 0.0;
  for (int m = 0; m < trunc; ++m)
    for (int n = 0; n < trunc; ++n)
      for (int k = 0; k < trunc; ++k)
        for (int l = 0; l < trunc; ++l) {
          const double expect = (m == l && n == k) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(gram(n * trunc + m, l * trunc + k) - expect));
        }
  o.require(worst < 1e-6, "orthogonality to 1e-6");
  o.note("max defect " + sci(worst));
  return o;
}

Outcome scalar_vacuum_check() {
  Outcome o;
  ScalarModel m;
  m.params = {1.0, 2};
  m.omega = 1.0;
  m.mu2 = 24.0;
  m.lambda = 1.0;
  m.broken_phase = true;
  VacuumScalar v = scalar_vacuum(m);
  o.require(v.p == 2, "p = 2");
  const double squares[3] = {5.0, 3.0, 1.0};
  bool amps = v.a.size() == 3;
  for (size_t k = 0; amps && k < 3; ++k) amps = std::abs(v.a[k] * v.a[k] - squares[k]) < 1e-12;
  o.require(amps, "a^2 = (5, 3, 1)");
  Field phi = v.field(10);
  const double res = interior_defect(scalar_eom_residual(phi, m).coeffs, Eigen::MatrixXcd::Zero(10, 10), phi, 2);
  o.require(res < 1e-12, "EOM residual < 1e-12");
  const double action = gw_action(phi, m);
  o.require(std::abs(action + 70.0 * M_PI) < 1e-8, "S = -70 pi");
  StabilityReport st = vacuum_stability(v, 12);
  o.require(st.min_value > 0.0, "C^-1 > 0");
  o.require(st.negative_alpha_at_zero > 0, "negative alpha at phi = 0");
  o.note(fmt::format("p={} S+70pi={} eom={} minC^-1={:.3f} negative alpha entries={}", v.p, sci(action + 70.0 * M_PI),
                     sci(res), st.min_value, st.negative_alpha_at_zero));
  return o;
}

Outcome gauge_2d_branches() {
  Outcome o;
  struct Point {
    GaugeBranch branch;
    double w, kappa, alpha;
  };
  const std::vector<Point> points = {
      {GaugeBranch::Omega0, 0.0, 0.0, 0.5},       {GaugeBranch::Omega0, 0.0, 0.0, 1.0},
      {GaugeBranch::Omega0, 0.0, 0.0, 2.5},       {GaugeBranch::LowOmega, 0.05, -0.5, 0.0},
      {GaugeBranch::LowOmega, 0.2, -1.0, 0.0},    {GaugeBranch::LowOmega, 0.3, -2.0, 0.0},
      {GaugeBranch::OneThird, 1.0 / 3.0, -0.5, 0.0}, {GaugeBranch::OneThird, 1.0 / 3.0, -4.0 / 3.0, 0.0},
      {GaugeBranch::OneThird, 1.0 / 3.0, -3.0, 0.0}, {GaugeBranch::MidOmega, 0.4, -1.0, 0.0},
      {GaugeBranch::MidOmega, 0.6, -1.2, 0.0},    {GaugeBranch::MidOmega, 0.9, -3.0, 0.0},
      {GaugeBranch::OmegaOne, 1.0, -0.5, 0.0},    {GaugeBranch::OmegaOne, 1.0, -2.0, 0.0},
      {GaugeBranch::OmegaOne, 1.0, -5.0, 0.0},
  };
  double worst_rec = 0.0, worst_field = 0.0;
  const int trunc = 40;
  for (const auto& pt : points) {
    GaugeModel g{{1.0, 2}, pt.w, pt.kappa};
    VacuumSequence s = vacuum_sequence_2d(g, pt.alpha);
    o.require(s.branch == pt.branch, std::string("branch ") + branch_name(pt.branch));
    o.require(s.u.size() >= 51, "sequence up to m = 50");
    // termwise check, computed here from the recurrence itself
    for (int m = 0; m + 2 <= 50; ++m) {
      const double lhs = (3 * pt.w - 1) * (s.u[m] + s.u[m + 2]) + 2 * (1 + pt.w) * s.u[m + 1] + 2 * pt.kappa;
      const double scale = std::max(1.0, std::abs((3 * pt.w - 1) * s.u[m]) + std::abs((3 * pt.w - 1) * s.u[m + 2]) +
                                             std::abs(2 * (1 + pt.w) * s.u[m + 1]) + std::abs(2 * pt.kappa));
      worst_rec = std::max(worst_rec, std::abs(lhs) / scale);
    }
    CovariantField2D f{covariant_fields(s, g.params, trunc)[0]};
    Field r = gauge_eom_residual_2d(f, g);
    worst_field = std::max(worst_field, interior_defect(r.coeffs, Eigen::MatrixXcd::Zero(trunc, trunc), r, 2));
  }
  o.require(worst_rec < 1e-12, "recurrence termwise < 1e-12");
  o.require(worst_field < 1e-12, "bidiagonal field residual < 1e-12");
  o.note(fmt::format("15 points, recurrence {}, field residual {}", sci(worst_rec), sci(worst_field)));
  return o;
}

Outcome gauge_4d() {
  Outcome o;
  double worst = 0.0;
  for (double w : {0.05, 0.15, 0.25}) {
    VacuumSequence s = vacuum_sequence_4d({{1.0, 4}, w, 0.0}, 1.0, 30);
    // iterate the recurrence here with kappa = 0
    std::vector<double> v(31, 0.0);
    v[1] = 1.0;
    for (int m = 0; m + 2 <= 30; ++m)
      v[m + 2] = -((3 * w - 1) * m * v[m] + (1 + w) * (2 * m + 3) * v[m + 1]) / ((3 * w - 1) * (m + 3));
    for (int m = 1; m <= 30; ++m) worst = std::max(worst, std::abs(s.u[m] - v[m]) / std::abs(v[m]));
  }
  o.require(worst < 1e-10, "closed form = recurrence to 1e-10");
  bool exact = true;
  for (Rational w : {Rational(1, 20), Rational(3, 20), Rational(1, 4)}) {
    auto v = vacuum_sequence_4d_exact(w, 1, 4);
    exact = exact && v[2] / v[1] == (1 + w) / (1 - 3 * w);
  }
  o.require(exact, "v2/v1 = (1+w)/(1-3w) exactly");
  o.note("max relative defect " + sci(worst));
  return o;
}

Outcome commutative_limit() {
  Outcome o;
  auto rows = commutative_limit_check({1e-2, 1e-3, 1e-4}, 1.0, 10);
  double hi = 0.0;
  for (const auto& r : rows) hi = std::max(hi, r.scaled);
  // leading term sqrt(2) m^2 / theta at m = 10
  o.require(rows.size() == 3 && hi <= 150.0, "bounded by 150");
  o.note(fmt::format("defect/Omega = {:.4f}, {:.4f}, {:.4f}", rows[0].scaled, rows[1].scaled, rows[2].scaled));
  return o;
}

Outcome effective_action() {
  Outcome o;
  double worst = 0.0;
  for (double omega : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    AssemblyReport rep = assemble_gamma_check(divergent_coefficients(omega, 1.0, 1.0));
    worst = std::max(worst, rep.max_defect);
    o.require(rep.passed(), fmt::format("assembly at Omega = {}", omega));
  }
  o.require(worst < 1e-12, "sector defects < 1e-12");
  const double omega = 0.5, w = omega * omega, theta = 1.0, sigma = 1.0;
  TadpoleFit fit = tadpole_numeric(omega, 1.0, theta, default_tadpole_grid(), sigma);
  // int u~_mu A_mu d^4u = (4/theta^2) 2 pi^2 int r^5 e^{-r^2/sigma^2} dr = 8 pi^2 sigma^6 / theta^2
  const double profile = 8.0 * M_PI * M_PI * std::pow(sigma, 6) / (theta * theta);
  const double expected = -w / (4.0 * M_PI * M_PI * std::pow(1.0 + w, 3)) * profile;
  const double rel = std::abs(fit.c_inverse / expected - 1.0);
  o.require(rel < 1e-2, "tadpole 1/eps within 1%");
  o.note(fmt::format("max sector defect {}, tadpole relative error {}", sci(worst), sci(rel)));
  return o;
}

int faces_by_permutation(const RibbonGraph& g) {
  std::vector<int> next(g.half_edges());
  for (const auto& v : g.vertices)
    for (size_t i = 0; i < v.size(); ++i) next[v[i]] = v[(i + 1) % v.size()];
  std::vector<char> seen(g.half_edges(), 0);
  int cycles = 0;
  for (int s = 0; s < g.half_edges(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (int e = s; !seen[e];) {
      seen[e] = 1;
      int n = next[e];
      e = g.partner[n] >= 0 ? g.partner[n] : n;
    }
  }
  return cycles;
}

Outcome ribbon(std::mt19937& rng) {
  Outcome o;
  auto five = [](const RibbonGraph& g) {
    Topology t = topology(g);
    Degrees d = degrees(g, 4);
    return std::vector<int>{t.faces, t.broken_faces, t.genus, d.commutative, d.noncommutative};
  };
  o.require(five(bubble_graph()) == std::vector<int>{2, 1, 0, 0, 0}, "bubble (2,1,0,0,0)");
  o.require(five(nonplanar_tadpole_graph()) == std::vector<int>{2, 2, 0, 2, -2}, "tadpole (2,2,0,2,-2)");
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    RibbonGraph g = random_ribbon_graph(n, rng);
    Topology t = topology(g);
    if (n - g.internal_lines() + t.faces != 2 - 2 * t.genus || t.faces != faces_by_permutation(g) || t.genus < 0) ++bad;
  }
  o.require(bad == 0, "Euler consistency on 200 graphs");
  o.note(fmt::format("{} inconsistent random graphs", bad));
  return o;
}

Outcome eps_graded() {
  Outcome o;
  o.require(cf_validate(super_sign_factor()).valid, "Z2 sign factor");
  o.require(!cf_validate(super_sign_factor()).proper, "Z2 sign factor non-proper");
  FactorReport cross = cf_validate(z2z2_cross_factor());
  o.require(cross.valid && cross.proper, "Z2xZ2 cross factor");
  o.require(cf_validate(z2z2_diagonal_factor()).valid, "Z2xZ2 diagonal factor");

  CrossedProduct cl = crossed_product(clifford_factor_set(2));
  auto e0 = cl.basis({0, 0}), g1 = cl.basis({1, 0}), g2 = cl.basis({0, 1});
  o.require(cl.multiply(g1, g1) == e0 && cl.multiply(g2, g2) == e0 && cl.multiply(g1, g2) == -cl.multiply(g2, g1),
            "Clifford relations");

  const Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2, 2);
  auto is_unit_only = [](const std::vector<HomogeneousMatrix>& z, int d) {
    return z.size() == 1 && z[0].matrix.isApprox(Eigen::MatrixXcd::Identity(d, d), 1e-14);
  };
  o.require(is_unit_only(center_basis(elementary_algebra(super_sign_factor(), {{0}, {1}})), 2),
            "elementary Z2 center");
  o.require(is_unit_only(center_basis(elementary_algebra(z2z2_cross_factor(), {{0, 0}, {1, 0}, {0, 1}, {1, 1}})), 4),
            "elementary Z2xZ2 center");

  GradedMatrixAlgebra nat = pauli_algebra(z2z2_cross_factor());
  o.require(natural_factor(nat).gen_table == z2z2_cross_factor().gen_table, "eps_sigma of the Pauli grading");
  o.require(center_basis(nat).size() == 4, "center = M2 for eps_sigma");

  GradedMatrixAlgebra sw = pauli_algebra(z2z2_diagonal_factor());
  auto z = center_basis(sw);
  o.require(z.size() == 2 && z[0].matrix.isApprox(id2) && z[1].matrix.isApprox(Eigen::MatrixXcd(pauli(3))),
            "center = span{1, tau3}");
  // Der = span{ad tau1, ad tau2}: one derivation each in degrees (1,0), (0,1), none elsewhere
  std::vector<size_t> dims;
  for (const auto& d : sw.degrees()) dims.push_back(derivation_space(sw, d).size());
  o.require(dims == std::vector<size_t>{0, 1, 1, 0}, "derivation dimensions");
  const bool ad1 = check_derivation(adjoint_map(pauli(1), sw), {1, 0}, sw).ok &&
                   check_derivation(adjoint_map(pauli(2), sw), {0, 1}, sw).ok;
  o.require(ad1, "ad tau1, ad tau2 are derivations");
  o.note(fmt::format("Pauli swapped: center dim {}, Der dims by degree {},{},{},{}", z.size(), dims[0], dims[1], dims[2],
                     dims[3]));
  return o;
}

Outcome superalgebra(std::mt19937& rng) {
  Outcome o;
  const MoyalParams p{1.0, 2};
  const int trunc = 12;
  double table = 0.0, curv = 0.0, cov = 0.0;
  auto herm = [&](double scale) {
    std::normal_distribution<double> d;
    Eigen::MatrixXcd m(trunc, trunc);
    for (int i = 0; i < trunc; ++i)
      for (int j = 0; j < trunc; ++j) m(i, j) = cplx(d(rng), d(rng));
    return Field::from_matrix(p, trunc, scale * 0.5 * (m + m.adjoint()));
  };
  for (double alpha : {0.5, 1.0}) {
    for (const auto& row : derivation_table_check(trunc, 1.0, alpha)) table = std::max(table, row.max_defect);
    SuperPotentials pot;
    pot.phi = herm(0.3);
    for (int mu = 0; mu < 2; ++mu) {
      pot.a0[mu] = herm(0.3);
      pot.a1[mu] = herm(0.3);
    }
    pot.g[0][0] = herm(0.3);
    pot.g[1][1] = herm(0.3);
    pot.g[0][1] = pot.g[1][0] = herm(0.3);
    CurvatureReport rep = graded_curvature(pot, alpha);
    o.require(rep.components.size() == 53, "53 curvature components");
    curv = std::max(curv, rep.max_defect);
    cov = std::max(cov, gauge_covariance_defect(pot, herm(0.5), alpha));
  }
  o.require(table < 1e-8, "bracket table < 1e-8");
  o.require(curv < 1e-8, "curvature closed forms < 1e-8");
  o.require(cov < 1e-8, "gauge covariance < 1e-8");
  o.note(fmt::format("table {}, curvature {}, covariance {} (eta rows compared at 4x the listed i/2)", sci(table),
                     sci(curv), sci(cov)));
  return o;
}

Outcome mehler_oracle() {
  Outcome o;
  ScalarModel m;
  m.params = {1.0, 2};
  m.omega = 1.0;
  m.mu2 = 1.0;
  m.lambda = 1.0;
  const double pairs[10][4] = {{0.3, 0.1, -0.5, 0.4},  {0.0, 0.0, 0.8, 0.0},  {1.0, -0.5, -0.3, 0.6},
                               {0.5, 0.5, -0.5, -0.5}, {0.2, -0.9, 0.7, 0.3}, {-1.0, 0.2, 0.1, -0.6},
                               {0.6, 0.0, 0.0, 0.6},   {1.2, 0.4, 0.2, -0.2}, {-0.4, -0.7, 0.9, 0.5},
                               {0.1, 1.1, -0.6, 0.0}};
  double worst = 0.0;
  for (const auto& q : pairs) {
    const double x[2] = {q[0], q[1]}, y[2] = {q[2], q[3]};
    worst = std::max(worst, std::abs(propagator_resummation(x, y, m) - mehler_kernel(x, y, m)));
  }
  o.require(worst < 1e-4, "resummation = Mehler kernel to 1e-4");
  o.note("max defect " + sci(worst));
  return o;
}

Outcome ls_duality() {
  Outcome o;
  auto gauss = [](const double* x) {
    return cplx(std::exp(-(x[0] - 0.4) * (x[0] - 0.4) - 0.8 * (x[1] + 0.3) * (x[1] + 0.3)));
  };
  double worst = 0.0;
  for (double omega : {0.5, 1.0}) {
    ScalarModel m;
    m.params = {1.0, 2};
    m.omega = omega;
    m.mu2 = 0.5;
    m.lambda = 0.3;
    worst = std::max(worst, ls_duality_check(gauss, m).defect);
  }
  o.require(worst < 1e-3, "duality defect < 1e-3");
  o.note("max defect " + sci(worst));
  return o;
}

}  // namespace

std::vector<CriterionResult> run_all(unsigned seed, const Reporter& report) {
  std::mt19937 rng(seed);
  struct Spec {
    int id;
    const char* title;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Spec> specs = {
      {1, "matrix-basis algebra", 1.0, [&] { return matrix_basis_algebra(rng); }},
      {2, "quadrature orthogonality", 10.0, [] { return quadrature_orthogonality(); }},
      {3, "scalar vacuum", 1.0, [] { return scalar_vacuum_check(); }},
      {4, "gauge 2D branches", 1.0, [] { return gauge_2d_branches(); }},
      {5, "gauge 4D closed form", 1.0, [] { return gauge_4d(); }},
      {6, "commutative limit", 1.0, [] { return commutative_limit(); }},
      {7, "effective-action assembly", 30.0, [] { return effective_action(); }},
      {8, "ribbon graphs", 1.0, [&] { return ribbon(rng); }},
      {9, "eps-graded algebras", 5.0, [] { return eps_graded(); }},
      {10, "superalgebra", 30.0, [&] { return superalgebra(rng); }},
      {11, "Mehler oracle", 60.0, [] { return mehler_oracle(); }},
      {12, "LS duality", 60.0, [] { return ls_duality(); }},
  };
  std::vector<CriterionResult> out;
  for (const auto& s : specs) {
    CriterionResult r{s.id, s.title, false, "", 0.0, s.limit};
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = s.run();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > r.limit) {
      r.passed = false;
      r.detail += fmt::format("; FAILED runtime over {} s", r.limit);
    }
    if (report) report(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  return fmt::format("{} {:>2} {:<26} ({:.2f} s / {:g} s)  {}", r.passed ? "PASS" : "FAIL", r.id, r.title, r.seconds,
                     r.limit, r.detail);
}

}  // namespace acceptance
