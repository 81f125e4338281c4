#include "moyal/graded.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "moyal/errors.hpp"

namespace moyal {

// ---- group ----

bool GradingGroup::finite() const {
  return std::all_of(orders.begin(), orders.end(), [](int m) { return m > 0; });
}

long GradingGroup::size() const {
  if (!finite()) throw DomainError("grading group " + name() + " is infinite");
  long n = 1;
  for (int m : orders) n *= m;
  return n;
}

GroupElement GradingGroup::reduce(GroupElement a) const {
  if (a.size() != orders.size()) throw DimensionError("group element " + format_element(a) + " has wrong rank");
  for (size_t r = 0; r < a.size(); ++r)
    if (orders[r] > 0) a[r] = ((a[r] % orders[r]) + orders[r]) % orders[r];
  return a;
}

GroupElement GradingGroup::add(const GroupElement& a, const GroupElement& b) const {
  GroupElement c(a);
  for (size_t r = 0; r < c.size() && r < b.size(); ++r) c[r] += b[r];
  return reduce(c);
}

GroupElement GradingGroup::sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }

GroupElement GradingGroup::neg(const GroupElement& a) const {
  GroupElement c(a);
  for (auto& v : c) v = -v;
  return reduce(c);
}

GroupElement GradingGroup::generator(int r) const {
  GroupElement e = zero();
  e.at(r) = 1;
  return reduce(e);
}

long GradingGroup::index(const GroupElement& a) const {
  GroupElement b = reduce(a);
  long idx = 0;
  for (size_t r = 0; r < b.size(); ++r) {
    if (orders[r] <= 0) throw DomainError("index: infinite cyclic factor");
    idx = idx * orders[r] + b[r];
  }
  return idx;
}

GroupElement GradingGroup::element(long idx) const {
  GroupElement a = zero();
  for (int r = rank() - 1; r >= 0; --r) {
    if (orders[r] <= 0) throw DomainError("element: infinite cyclic factor");
    a[r] = idx % orders[r];
    idx /= orders[r];
  }
  return a;
}

std::vector<GroupElement> GradingGroup::elements() const {
  std::vector<GroupElement> out;
  for (long i = 0; i < size(); ++i) out.push_back(element(i));
  return out;
}

GradingGroup GradingGroup::parse(const std::string& text) {
  GradingGroup g;
  if (text == "1" || text == "0" || text == "trivial") return g;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, 'x')) {
    if (tok.empty() || tok[0] != 'Z') throw DomainError("group: cannot parse '" + text + "' (expected e.g. Z2xZ2)");
    std::string digits = tok.substr(1);
    if (digits.empty()) {
      g.orders.push_back(0);
      continue;
    }
    if (!std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw DomainError("group: bad factor '" + tok + "'");
    int m = std::stoi(digits);
    if (m < 1) throw DomainError("group: cyclic order must be >= 1");
    g.orders.push_back(m);
  }
  return g;
}

std::string GradingGroup::name() const {
  if (orders.empty()) return "1";
  std::string s;
  for (size_t r = 0; r < orders.size(); ++r) {
    if (r) s += "x";
    s += "Z" + (orders[r] > 0 ? std::to_string(orders[r]) : std::string());
  }
  return s;
}

std::string format_element(const GroupElement& a) {
  std::string s = "(";
  for (size_t r = 0; r < a.size(); ++r) s += (r ? "," : "") + std::to_string(a[r]);
  return s + ")";
}

// ---- phases ----

Phase Phase::from_turns(long num, long den) {
  if (den == 0) throw DomainError("phase: zero denominator");
  boost::rational<long> t(num, den);
  long n = t.numerator() % t.denominator();
  if (n < 0) n += t.denominator();
  return {boost::rational<long>(n, t.denominator())};
}

Phase Phase::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "1" || s == "+1") return one();
  if (s == "-1") return minus_one();
  if (s == "i" || s == "+i") return from_turns(1, 4);
  if (s == "-i") return from_turns(3, 4);
  if (s.rfind("zeta(", 0) == 0 && s.back() == ')') {
    std::string body = s.substr(5, s.size() - 6);
    auto slash = body.find('/');
    try {
      if (slash == std::string::npos) return from_turns(std::stol(body), 1);
      return from_turns(std::stol(body.substr(0, slash)), std::stol(body.substr(slash + 1)));
    } catch (const std::logic_error&) {
    }
  }
  throw DomainError("phase: cannot parse '" + raw + "' (use 1, -1, i, -i or zeta(p/q))");
}

Phase Phase::operator*(const Phase& o) const {
  boost::rational<long> t = turns + o.turns;
  return from_turns(t.numerator(), t.denominator());
}

Phase Phase::inverse() const { return from_turns(-turns.numerator(), turns.denominator()); }

Phase Phase::pow(long k) const { return from_turns(turns.numerator() * k, turns.denominator()); }

cplx Phase::value() const {
  if (turns.numerator() == 0) return 1.0;
  if (turns == boost::rational<long>(1, 2)) return -1.0;
  if (turns == boost::rational<long>(1, 4)) return cplx(0.0, 1.0);
  if (turns == boost::rational<long>(3, 4)) return cplx(0.0, -1.0);
  return std::polar(1.0, 2.0 * M_PI * boost::rational_cast<double>(turns));
}

std::string Phase::str() const {
  if (turns.numerator() == 0) return "1";
  if (turns == boost::rational<long>(1, 2)) return "-1";
  if (turns == boost::rational<long>(1, 4)) return "i";
  if (turns == boost::rational<long>(3, 4)) return "-i";
  return "zeta(" + std::to_string(turns.numerator()) + "/" + std::to_string(turns.denominator()) + ")";
}

namespace {

// Closest root of unity of order <= 720 to z, AccuracyError if none within 1e-9.
Phase phase_from_complex(cplx z) {
  if (std::abs(std::abs(z) - 1.0) > 1e-9) throw AccuracyError("phase: value is not of unit modulus");
  double t = std::arg(z) / (2.0 * M_PI);
  for (long den = 1; den <= 720; ++den) {
    double num = std::round(t * den);
    if (std::abs(t * den - num) < 1e-9) return Phase::from_turns(static_cast<long>(num), den);
  }
  throw AccuracyError("phase: value is not a root of unity of small order");
}

}  // namespace

// ---- commutation factors ----

Phase CommutationFactor::operator()(const GroupElement& a, const GroupElement& b) const {
  GroupElement x = group.reduce(a), y = group.reduce(b);
  Phase out;
  for (int r = 0; r < group.rank(); ++r)
    for (int s = 0; s < group.rank(); ++s)
      if (x[r] && y[s]) out = out * gen_table[r][s].pow(x[r] * y[s]);
  return out;
}

bool CommutationFactor::proper() const {
  for (int r = 0; r < group.rank(); ++r)
    if (!gen_table[r][r].is_one()) return false;
  return true;
}

CommutationFactor CommutationFactor::from_generators(const GradingGroup& g, std::vector<std::vector<Phase>> table) {
  if (static_cast<int>(table.size()) != g.rank()) throw DimensionError("commutation factor: table rank mismatch");
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != g.rank()) throw DimensionError("commutation factor: table is not square");
  return {g, std::move(table)};
}

CommutationFactor CommutationFactor::from_function(const GradingGroup& g,
                                                   const std::function<Phase(int, int)>& on_generators) {
  std::vector<std::vector<Phase>> t(g.rank(), std::vector<Phase>(g.rank()));
  for (int r = 0; r < g.rank(); ++r)
    for (int s = 0; s < g.rank(); ++s) t[r][s] = on_generators(r, s);
  return from_generators(g, std::move(t));
}

CommutationFactor super_sign_factor() { return {GradingGroup{{2}}, {{Phase::minus_one()}}}; }

CommutationFactor z2z2_cross_factor() {
  return {GradingGroup{{2, 2}}, {{Phase::one(), Phase::minus_one()}, {Phase::minus_one(), Phase::one()}}};
}

CommutationFactor z2z2_diagonal_factor() {
  return {GradingGroup{{2, 2}}, {{Phase::minus_one(), Phase::one()}, {Phase::one(), Phase::minus_one()}}};
}

FactorReport cf_validate(const CommutationFactor& cf, unsigned seed, int samples) {
  FactorReport rep;
  const GradingGroup& g = cf.group;
  auto violate = [&](std::string msg) {
    rep.valid = false;
    if (rep.violations.size() < 20) rep.violations.push_back(std::move(msg));
  };
  if (static_cast<int>(cf.gen_table.size()) != g.rank()) {
    violate("table rank differs from group rank");
    return rep;
  }
  for (int r = 0; r < g.rank(); ++r) {
    Phase d = cf.gen_table[r][r];
    std::string where = "eps(e" + std::to_string(r + 1) + ",e" + std::to_string(r + 1) + ") = " + d.str();
    if (d != Phase::one() && d != Phase::minus_one()) violate(where + " is not +-1");
    if (g.orders[r] > 0 && g.orders[r] % 2 == 1 && !d.is_one()) violate(where + " but the order is odd");
    for (int s = 0; s < g.rank(); ++s) {
      Phase e = cf.gen_table[r][s];
      std::string pair = "e" + std::to_string(r + 1) + ",e" + std::to_string(s + 1);
      if (!(e * cf.gen_table[s][r]).is_one()) violate("eps(" + pair + ") eps(reversed) != 1");
      int mrs = std::gcd(g.orders[r], g.orders[s]);
      if (mrs > 0 && !e.pow(mrs).is_one())
        violate("eps(" + pair + ")^" + std::to_string(mrs) + " = " + e.pow(mrs).str() + " != 1");
    }
  }

  auto check = [&](const GroupElement& i, const GroupElement& j, const GroupElement& k) {
    ++rep.checked_triples;
    if (!(cf(i, j) * cf(j, i)).is_one())
      violate("eps(i,j) eps(j,i) != 1 at i=" + format_element(i) + " j=" + format_element(j));
    if (cf(i, g.add(j, k)) != cf(i, j) * cf(i, k))
      violate("eps(i,j+k) != eps(i,j) eps(i,k) at " + format_element(i) + format_element(j) + format_element(k));
    if (cf(g.add(i, j), k) != cf(i, k) * cf(j, k))
      violate("eps(i+j,k) != eps(i,k) eps(j,k) at " + format_element(i) + format_element(j) + format_element(k));
    if (!cf(i, i).is_one()) rep.proper = false;
  };
  if (g.finite() && g.size() <= 64) {
    auto el = g.elements();
    for (const auto& i : el)
      for (const auto& j : el)
        for (const auto& k : el) check(i, j, k);
  } else {
    std::mt19937 rng(seed);
    auto draw = [&]() {
      GroupElement a = g.zero();
      for (int r = 0; r < g.rank(); ++r) {
        int hi = g.orders[r] > 0 ? g.orders[r] - 1 : 4;
        int lo = g.orders[r] > 0 ? 0 : -4;
        a[r] = std::uniform_int_distribution<int>(lo, hi)(rng);
      }
      return a;
    };
    for (int n = 0; n < samples; ++n) {
      GroupElement i = draw(), j = draw(), k = draw();
      check(i, j, k);
    }
  }
  if (!cf.proper()) rep.proper = false;
  return rep;
}

// ---- factor sets ----

Phase FactorSet::operator()(const GroupElement& a, const GroupElement& b) const {
  const long n = group.size();
  return table[group.index(a) * n + group.index(b)];
}

FactorSet FactorSet::from_function(const GradingGroup& g,
                                   const std::function<Phase(const GroupElement&, const GroupElement&)>& f) {
  FactorSet s{g, {}};
  auto el = g.elements();
  s.table.reserve(el.size() * el.size());
  for (const auto& a : el)
    for (const auto& b : el) s.table.push_back(f(a, b));
  return s;
}

FactorSet clifford_factor_set(int n, const std::vector<int>& eta) {
  if (n < 1 || n > 6) throw DomainError("clifford factor set: need 1 <= n <= 6");
  if (!eta.empty() && static_cast<int>(eta.size()) != n) throw DimensionError("clifford factor set: eta has wrong length");
  for (int e : eta)
    if (e != 1 && e != -1) throw DomainError("clifford factor set: eta entries must be +-1");
  GradingGroup g{std::vector<int>(n, 2)};
  return FactorSet::from_function(g, [&](const GroupElement& i, const GroupElement& j) {
    long odd = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) odd += i[p] * j[q];
    for (int p = 0; p < n && !eta.empty(); ++p)
      if (eta[p] < 0) odd += i[p] * j[p];
    return odd % 2 ? Phase::minus_one() : Phase::one();
  });
}

FactorReport validate_factor_set(const FactorSet& sigma) {
  FactorReport rep;
  const GradingGroup& g = sigma.group;
  if (g.size() > 64) throw DomainError("factor set check limited to groups of order <= 64");
  if (static_cast<long>(sigma.table.size()) != g.size() * g.size()) throw DimensionError("factor set table size");
  auto el = g.elements();
  for (const auto& i : el)
    for (const auto& j : el)
      for (const auto& k : el) {
        ++rep.checked_triples;
        if (sigma(i, g.add(j, k)) * sigma(j, k) != sigma(i, j) * sigma(g.add(i, j), k)) {
          rep.valid = false;
          if (rep.violations.size() < 20)
            rep.violations.push_back("cocycle fails at " + format_element(i) + format_element(j) + format_element(k));
        }
      }
  return rep;
}

CommutationFactor eps_from_sigma(const FactorSet& sigma) {
  FactorReport rep = validate_factor_set(sigma);
  if (!rep.valid) throw DomainError("eps_from_sigma: not a factor set (" + rep.violations.front() + ")");
  const GradingGroup& g = sigma.group;
  CommutationFactor cf = CommutationFactor::from_function(
      g, [&](int r, int s) { return sigma(g.generator(r), g.generator(s)) * sigma(g.generator(s), g.generator(r)).inverse(); });
  for (const auto& i : g.elements())
    for (const auto& j : g.elements())
      if (cf(i, j) != sigma(i, j) * sigma(j, i).inverse())
        throw AccuracyError("eps_from_sigma: eps_sigma is not bimultiplicative at " + format_element(i) + format_element(j));
  return cf;
}

FactorSet sigma_from_eps(const CommutationFactor& eps) {
  if (!eps.group.finite()) throw DomainError("sigma_from_eps: group must be finite");
  FactorReport rep = cf_validate(eps);
  if (!rep.valid) throw DomainError("sigma_from_eps: not a commutation factor (" + rep.violations.front() + ")");
  if (!eps.proper()) throw DomainError("sigma_from_eps: commutation factor is not proper");
  const int k = eps.group.rank();
  return FactorSet::from_function(eps.group, [&](const GroupElement& i, const GroupElement& j) {
    Phase p;
    for (int r = 0; r < k; ++r)
      for (int s = r + 1; s < k; ++s) p = p * eps.gen_table[r][s].pow(i[r] * j[s]);
    return p;
  });
}

Eigen::VectorXcd CrossedProduct::multiply(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const {
  const GradingGroup& grp = sigma.group;
  const long n = grp.size();
  if (f.size() != n || g.size() != n) throw DimensionError("crossed product: coordinate length");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  auto el = grp.elements();
  for (long i = 0; i < n; ++i) {
    if (f(i) == 0.0) continue;
    for (long j = 0; j < n; ++j)
      if (g(j) != 0.0) out(grp.index(grp.add(el[i], el[j]))) += sigma(el[i], el[j]).value() * f(i) * g(j);
  }
  return out;
}

Eigen::VectorXcd CrossedProduct::basis(const GroupElement& k) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dimension());
  v(sigma.group.index(k)) = 1.0;
  return v;
}

CrossedProduct crossed_product(const FactorSet& sigma) {
  FactorReport rep = validate_factor_set(sigma);
  if (!rep.valid) throw DomainError("crossed product is not associative: " + rep.violations.front());
  return {sigma};
}

// ---- graded matrix algebras ----

namespace {

Eigen::VectorXcd vec(const Eigen::MatrixXcd& a) { return Eigen::Map<const Eigen::VectorXcd>(a.data(), a.size()); }

Eigen::MatrixXcd unit_matrix(int d, int i, int j) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

void build_basis_inverse(GradedMatrixAlgebra& alg) {
  auto b = alg.basis();
  const int n = alg.size * alg.size;
  Eigen::MatrixXcd m(n, n);
  for (int k = 0; k < n; ++k) m.col(k) = vec(b[k].matrix);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  if (!lu.isInvertible()) throw DomainError("graded algebra: homogeneous basis is not a basis");
  alg.basis_inverse = lu.inverse();
}

int support_index(const GradedMatrixAlgebra& alg, const GroupElement& a) {
  GroupElement r = alg.factor.group.reduce(a);
  for (size_t k = 0; k < alg.fine_basis.size(); ++k)
    if (alg.fine_basis[k].degree == r) return static_cast<int>(k);
  return -1;
}

std::string basis_label(const GradedMatrixAlgebra& alg, int k) {
  if (alg.kind == GradingKind::Elementary)
    return "E" + std::to_string(k / alg.size + 1) + std::to_string(k % alg.size + 1);
  return "e" + format_element(alg.fine_basis[k].degree);
}

// Null space of the stacked system, via the Hermitian normal matrix; rows of the result
// are reduced to echelon form so the basis is canonical.
std::vector<Eigen::VectorXcd> null_space(const Eigen::MatrixXcd& normal) {
  const int n = static_cast<int>(normal.rows());
  std::vector<Eigen::VectorXcd> out;
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(normal);
  const double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<int> zero;
  for (int k = 0; k < n; ++k)
    if (std::abs(es.eigenvalues()(k)) < 1e-10 * top) zero.push_back(k);
  if (zero.empty()) return out;
  Eigen::MatrixXcd rows(zero.size(), n);
  for (size_t z = 0; z < zero.size(); ++z) rows.row(z) = es.eigenvectors().col(zero[z]).transpose();
  // reduced row echelon form
  int lead = 0;
  for (int r = 0; r < rows.rows() && lead < n; ++r, ++lead) {
    int best = r;
    for (;;) {
      best = r;
      for (int i = r; i < rows.rows(); ++i)
        if (std::abs(rows(i, lead)) > std::abs(rows(best, lead))) best = i;
      if (std::abs(rows(best, lead)) > 1e-9) break;
      if (++lead >= n) break;
    }
    if (lead >= n) break;
    rows.row(r).swap(rows.row(best));
    rows.row(r) /= rows(r, lead);
    for (int i = 0; i < rows.rows(); ++i)
      if (i != r) rows.row(i) -= rows(i, lead) * rows.row(r);
  }
  for (int r = 0; r < rows.rows(); ++r) {
    Eigen::VectorXcd v = rows.row(r).transpose();
    for (auto& c : v) {
      if (std::abs(c.real()) < 1e-12) c.real(0.0);
      if (std::abs(c.imag()) < 1e-12) c.imag(0.0);
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<HomogeneousMatrix> GradedMatrixAlgebra::basis() const {
  if (kind == GradingKind::Fine) return fine_basis;
  std::vector<HomogeneousMatrix> out;
  const GradingGroup& g = factor.group;
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) out.push_back({g.sub(phi[i], phi[j]), unit_matrix(size, i, j)});
  return out;
}

Eigen::VectorXcd GradedMatrixAlgebra::coordinates(const Eigen::MatrixXcd& a) const {
  if (a.rows() != size || a.cols() != size) throw DimensionError("graded algebra: matrix size mismatch");
  return basis_inverse * vec(a);
}

std::vector<GroupElement> GradedMatrixAlgebra::degrees() const {
  std::vector<GroupElement> out;
  for (const auto& b : basis())
    if (std::find(out.begin(), out.end(), b.degree) == out.end()) out.push_back(b.degree);
  return out;
}

std::vector<HomogeneousMatrix> GradedMatrixAlgebra::components(const Eigen::MatrixXcd& a) const {
  auto b = basis();
  Eigen::VectorXcd c = coordinates(a);
  std::vector<HomogeneousMatrix> out;
  for (const auto& d : degrees()) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
    for (size_t k = 0; k < b.size(); ++k)
      if (b[k].degree == d) m += c(k) * b[k].matrix;
    out.push_back({d, m});
  }
  return out;
}

GradedMatrixAlgebra elementary_algebra(const CommutationFactor& eps, const std::vector<GroupElement>& phi) {
  if (phi.empty()) throw DomainError("elementary grading: empty degree map");
  if (phi.size() > 16) throw DomainError("elementary grading: D <= 16");
  GradedMatrixAlgebra alg;
  alg.size = static_cast<int>(phi.size());
  alg.factor = eps;
  alg.kind = GradingKind::Elementary;
  for (const auto& p : phi) alg.phi.push_back(eps.group.reduce(p));
  build_basis_inverse(alg);
  return alg;
}

GradedMatrixAlgebra fine_algebra(const CommutationFactor& eps, std::vector<HomogeneousMatrix> basis) {
  if (basis.empty()) throw DomainError("fine grading: empty basis");
  const int d = static_cast<int>(basis.front().matrix.rows());
  if (static_cast<int>(basis.size()) != d * d) throw DimensionError("fine grading: need D^2 basis matrices");
  GradedMatrixAlgebra alg;
  alg.size = d;
  alg.factor = eps;
  alg.kind = GradingKind::Fine;
  const GradingGroup& g = eps.group;
  for (auto& b : basis) {
    if (b.matrix.rows() != d || b.matrix.cols() != d) throw DimensionError("fine grading: basis matrix shape");
    b.degree = g.reduce(b.degree);
    for (const auto& o : alg.fine_basis)
      if (o.degree == b.degree) throw DomainError("fine grading: degree " + format_element(b.degree) + " used twice");
    alg.fine_basis.push_back(b);
  }
  const int n = d * d;
  alg.fine_sigma.assign(n, std::vector<cplx>(n, 0.0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      GroupElement s = g.add(alg.fine_basis[a].degree, alg.fine_basis[b].degree);
      int c = support_index(alg, s);
      if (c < 0) throw DomainError("fine grading: support is not closed under addition at " + format_element(s));
      const Eigen::MatrixXcd prod = alg.fine_basis[a].matrix * alg.fine_basis[b].matrix;
      const Eigen::MatrixXcd& e = alg.fine_basis[c].matrix;
      cplx sig = (e.adjoint() * prod).trace() / (e.adjoint() * e).trace();
      if ((prod - sig * e).norm() > 1e-12 * std::max(1.0, prod.norm()) || std::abs(sig) < 1e-12)
        throw DomainError("fine grading: e_a e_b is not a nonzero multiple of e_{a+b} at " +
                          format_element(alg.fine_basis[a].degree) + format_element(alg.fine_basis[b].degree));
      alg.fine_sigma[a][b] = sig;
    }
  build_basis_inverse(alg);
  return alg;
}

Eigen::Matrix2cd pauli(int k) {
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw DomainError("pauli: index must be 0..3");
  }
  return m;
}

GradedMatrixAlgebra pauli_algebra(const CommutationFactor& eps) {
  if (eps.group.orders != std::vector<int>{2, 2}) throw DomainError("pauli algebra: grading group must be Z2xZ2");
  return fine_algebra(eps, {{{0, 0}, pauli(0)}, {{1, 0}, pauli(1)}, {{0, 1}, pauli(2)}, {{1, 1}, pauli(3)}});
}

CommutationFactor natural_factor(const GradedMatrixAlgebra& alg) {
  if (alg.kind != GradingKind::Fine) throw UnsupportedError("natural_factor: fine gradings only");
  const GradingGroup& g = alg.factor.group;
  if (!g.finite() || static_cast<long>(alg.fine_basis.size()) != g.size())
    throw UnsupportedError("natural_factor: support must be the whole grading group");
  return CommutationFactor::from_function(g, [&](int r, int s) {
    int a = support_index(alg, g.generator(r)), b = support_index(alg, g.generator(s));
    return phase_from_complex(alg.fine_sigma[a][b] / alg.fine_sigma[b][a]);
  });
}

std::vector<GroupElement> commuting_degrees(const GradedMatrixAlgebra& alg) {
  if (alg.kind != GradingKind::Fine) throw UnsupportedError("commuting_degrees: fine gradings only");
  std::vector<GroupElement> out;
  const int n = static_cast<int>(alg.fine_basis.size());
  for (int a = 0; a < n; ++a) {
    bool all = true;
    for (int b = 0; b < n && all; ++b) {
      cplx natural = alg.fine_sigma[a][b] / alg.fine_sigma[b][a];
      all = std::abs(alg.factor.value(alg.fine_basis[a].degree, alg.fine_basis[b].degree) - natural) < 1e-12;
    }
    if (all) out.push_back(alg.fine_basis[a].degree);
  }
  return out;
}

Eigen::MatrixXcd eps_bracket(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const GradedMatrixAlgebra& alg) {
  auto ca = alg.components(a), cb = alg.components(b);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(alg.size, alg.size);
  for (const auto& x : ca) {
    if (x.matrix.isZero(0.0)) continue;
    for (const auto& y : cb) {
      if (y.matrix.isZero(0.0)) continue;
      out += x.matrix * y.matrix - alg.factor.value(x.degree, y.degree) * (y.matrix * x.matrix);
    }
  }
  return out;
}

cplx eps_trace(const Eigen::MatrixXcd& a, const GradedMatrixAlgebra& alg) {
  if (alg.kind != GradingKind::Elementary) throw UnsupportedError("eps_trace: elementary gradings only");
  if (a.rows() != alg.size || a.cols() != alg.size) throw DimensionError("eps_trace: matrix size mismatch");
  cplx t = 0.0;
  for (int i = 0; i < alg.size; ++i) t += alg.factor.value(alg.phi[i], alg.phi[i]) * a(i, i);
  return t;
}

std::vector<HomogeneousMatrix> center_basis(const GradedMatrixAlgebra& alg) {
  if (alg.size > 16) throw DomainError("center_basis: D <= 16");
  auto b = alg.basis();
  std::vector<HomogeneousMatrix> out;
  for (const auto& deg : alg.degrees()) {
    std::vector<int> cols;
    for (size_t k = 0; k < b.size(); ++k)
      if (b[k].degree == deg) cols.push_back(static_cast<int>(k));
    const int n = static_cast<int>(cols.size());
    Eigen::MatrixXcd normal = Eigen::MatrixXcd::Zero(n, n);
    // [e_k, b]_eps for homogeneous e_k of degree deg: one block of rows per basis element b
    for (const auto& y : b) {
      Eigen::MatrixXcd block(alg.size * alg.size, n);
      const cplx e = alg.factor.value(deg, y.degree);
      for (int c = 0; c < n; ++c) {
        const Eigen::MatrixXcd& x = b[cols[c]].matrix;
        block.col(c) = vec(x * y.matrix - e * (y.matrix * x));
      }
      normal += block.adjoint() * block;
    }
    for (const auto& v : null_space(normal)) {
      Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(alg.size, alg.size);
      for (int c = 0; c < n; ++c) z += v(c) * b[cols[c]].matrix;
      Eigen::Index r, s;
      z.cwiseAbs().maxCoeff(&r, &s);
      z /= z(r, s);
      out.push_back({deg, z});
    }
  }
  return out;
}

LinearMap adjoint_map(const Eigen::MatrixXcd& m, const GradedMatrixAlgebra& alg) {
  return [m, alg](const Eigen::MatrixXcd& b) { return eps_bracket(m, b, alg); };
}

DerivationCheck check_derivation(const LinearMap& x, const GroupElement& degree, const GradedMatrixAlgebra& alg,
                                 double tol) {
  DerivationCheck out;
  const GroupElement deg = alg.factor.group.reduce(degree);
  auto b = alg.basis();
  std::vector<Eigen::MatrixXcd> img;
  double scale = 1.0;
  for (const auto& e : b) {
    img.push_back(x(e.matrix));
    scale = std::max(scale, img.back().cwiseAbs().maxCoeff());
  }
  auto fail = [&](double defect, std::string what) {
    if (defect > out.defect) out.defect = defect;
    if (out.ok) {
      out.ok = false;
      out.witness = std::move(what);
    }
  };
  for (size_t k = 0; k < b.size(); ++k) {
    GroupElement target = alg.factor.group.add(b[k].degree, deg);
    for (const auto& c : alg.components(img[k])) {
      double stray = c.matrix.cwiseAbs().maxCoeff();
      if (c.degree != target && stray > tol * scale)
        fail(stray, "X(" + basis_label(alg, static_cast<int>(k)) + ") has a component of degree " + format_element(c.degree));
    }
  }
  for (size_t k = 0; k < b.size(); ++k)
    for (size_t m = 0; m < b.size(); ++m) {
      const Eigen::MatrixXcd prod = b[k].matrix * b[m].matrix;
      if (prod.isZero(0.0) && img[k].isZero(0.0) && img[m].isZero(0.0)) continue;
      Eigen::MatrixXcd lhs = x(prod);
      Eigen::MatrixXcd rhs = img[k] * b[m].matrix + alg.factor.value(deg, b[k].degree) * (b[k].matrix * img[m]);
      double d = (lhs - rhs).cwiseAbs().maxCoeff();
      out.defect = std::max(out.defect, d);
      if (d > tol * scale)
        fail(d, "Leibniz rule fails on (" + basis_label(alg, static_cast<int>(k)) + ", " +
                    basis_label(alg, static_cast<int>(m)) + ")");
    }
  return out;
}

LinearMap map_from_coordinates(const Eigen::MatrixXcd& t, const GradedMatrixAlgebra& alg) {
  return [t, alg](const Eigen::MatrixXcd& a) {
    Eigen::VectorXcd c = t * alg.coordinates(a);
    auto b = alg.basis();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(alg.size, alg.size);
    for (size_t k = 0; k < b.size(); ++k) out += c(k) * b[k].matrix;
    return out;
  };
}

Eigen::MatrixXcd coordinates_of_map(const LinearMap& x, const GradedMatrixAlgebra& alg) {
  auto b = alg.basis();
  const int n = static_cast<int>(b.size());
  Eigen::MatrixXcd t(n, n);
  for (int k = 0; k < n; ++k) t.col(k) = alg.coordinates(x(b[k].matrix));
  return t;
}

std::vector<Eigen::MatrixXcd> derivation_space(const GradedMatrixAlgebra& alg, const GroupElement& degree) {
  if (alg.size > 4) throw DomainError("derivation_space: D <= 4");
  const GradingGroup& g = alg.factor.group;
  const GroupElement deg = g.reduce(degree);
  auto b = alg.basis();
  const int n = static_cast<int>(b.size());
  // unknown t(k -> l) allowed when |b_l| = |b_k| + deg
  std::vector<std::vector<int>> var(n, std::vector<int>(n, -1));
  int nv = 0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      if (b[l].degree == g.add(b[k].degree, deg)) var[k][l] = nv++;
  if (nv == 0) return {};
  std::vector<std::vector<Eigen::VectorXcd>> prod(n, std::vector<Eigen::VectorXcd>(n));
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m) prod[k][m] = alg.coordinates(b[k].matrix * b[m].matrix);

  Eigen::MatrixXcd normal = Eigen::MatrixXcd::Zero(nv, nv);
  Eigen::MatrixXcd rows(n, nv);
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m) {
      // coordinates of X(b_k b_m) - X(b_k) b_m - eps(deg, |b_k|) b_k X(b_m)
      rows.setZero();
      const cplx e = alg.factor.value(deg, b[k].degree);
      for (int p = 0; p < n; ++p) {
        cplx c = prod[k][m](p);
        if (c == 0.0) continue;
        for (int l = 0; l < n; ++l)
          if (var[p][l] >= 0) rows(l, var[p][l]) += c;
      }
      for (int l = 0; l < n; ++l) {
        if (var[k][l] >= 0) rows.col(var[k][l]) -= prod[l][m];
        if (var[m][l] >= 0) rows.col(var[m][l]) -= e * prod[k][l];
      }
      normal += rows.adjoint() * rows;
    }
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& v : null_space(normal)) {
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        if (var[k][l] >= 0) t(l, k) = v(var[k][l]);
    out.push_back(t);
  }
  return out;
}

Eigen::MatrixXcd inner_generator(const LinearMap& x, const GroupElement& degree, const GradedMatrixAlgebra& alg) {
  DerivationCheck chk = check_derivation(x, degree, alg);
  if (!chk.ok) throw DomainError("inner_generator: not an eps-derivation of degree " + format_element(degree) + ": " + chk.witness);
  const GroupElement deg = alg.factor.group.reduce(degree);
  const int d = alg.size;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  if (alg.kind == GradingKind::Elementary) {
    for (int k = 0; k < d; ++k) m += x(unit_matrix(d, k, 0)) * unit_matrix(d, 0, k);
  } else {
    int s = support_index(alg, deg);
    if (s < 0) throw DomainError("inner_generator: degree outside the support");
    const Eigen::MatrixXcd& e = alg.fine_basis[s].matrix;
    cplx num = 0.0;
    double den = 0.0;
    for (const auto& y : alg.basis()) {
      Eigen::MatrixXcd ad = eps_bracket(e, y.matrix, alg);
      num += (ad.adjoint() * x(y.matrix)).trace();
      den += ad.squaredNorm();
    }
    if (den > 0.0) m = (num / den) * e;
  }
  double scale = 1.0, worst = 0.0;
  for (const auto& y : alg.basis()) {
    Eigen::MatrixXcd target = x(y.matrix);
    scale = std::max(scale, target.cwiseAbs().maxCoeff());
    worst = std::max(worst, (eps_bracket(m, y.matrix, alg) - target).cwiseAbs().maxCoeff());
  }
  if (worst > 1e-10 * scale) {
    if (alg.kind == GradingKind::Fine) throw DomainError("inner_generator: derivation is outer");
    throw AccuracyError("inner_generator: ad_M differs from X by " + std::to_string(worst));
  }
  return m;
}

std::vector<cplx> fine_coordinates(const LinearMap& x, const GroupElement& degree, const GradedMatrixAlgebra& alg) {
  if (alg.kind != GradingKind::Fine) throw UnsupportedError("fine_coordinates: fine gradings only");
  const GradingGroup& g = alg.factor.group;
  const int s = support_index(alg, degree);
  if (s < 0) throw DomainError("fine_coordinates: degree outside the support");
  std::vector<cplx> out;
  for (size_t a = 0; a < alg.fine_basis.size(); ++a) {
    int t = support_index(alg, g.add(alg.fine_basis[a].degree, degree));
    const Eigen::MatrixXcd& e = alg.fine_basis[t].matrix;
    cplx coef = (e.adjoint() * x(alg.fine_basis[a].matrix)).trace() / (e.adjoint() * e).trace();
    out.push_back(coef / alg.fine_sigma[s][a]);
  }
  return out;
}

FineDerivationClass classify_fine_derivation(const GradedMatrixAlgebra& alg, const GroupElement& degree,
                                             const std::vector<cplx>& x, double tol) {
  if (alg.kind != GradingKind::Fine) throw UnsupportedError("classify_fine_derivation: fine gradings only");
  const int n = static_cast<int>(alg.fine_basis.size());
  if (n > 16) throw DomainError("classify_fine_derivation: support limited to 16 elements");
  if (static_cast<int>(x.size()) != n) throw DimensionError("classify_fine_derivation: one coordinate per support element");
  const GradingGroup& g = alg.factor.group;
  const int s = support_index(alg, degree);
  if (s < 0) throw DomainError("classify_fine_derivation: degree outside the support");
  std::vector<cplx> ratio(n);
  bool commuting = true;
  for (int a = 0; a < n; ++a) {
    cplx natural = alg.fine_sigma[s][a] / alg.fine_sigma[a][s];
    ratio[a] = alg.factor.value(alg.fine_basis[s].degree, alg.fine_basis[a].degree) / natural;
    commuting = commuting && std::abs(ratio[a] - 1.0) < 1e-12;
  }
  double scale = 1.0;
  for (cplx v : x) scale = std::max(scale, std::abs(v));
  FineDerivationClass out;
  out.derivation = true;
  for (int a = 0; a < n && out.derivation; ++a)
    for (int b = 0; b < n && out.derivation; ++b) {
      int c = support_index(alg, g.add(alg.fine_basis[a].degree, alg.fine_basis[b].degree));
      out.derivation = std::abs(x[c] - x[a] - ratio[a] * x[b]) <= tol * scale;
    }
  if (!out.derivation) return out;
  bool zero = std::all_of(x.begin(), x.end(), [&](cplx v) { return std::abs(v) <= tol * scale; });
  if (commuting) {
    out.outer = !zero;
    out.inner = zero;
    return out;
  }
  int pivot = 0;
  for (int a = 0; a < n; ++a)
    if (std::abs(1.0 - ratio[a]) > std::abs(1.0 - ratio[pivot])) pivot = a;
  out.lambda = x[pivot] / (1.0 - ratio[pivot]);
  out.inner = true;
  for (int a = 0; a < n; ++a)
    if (std::abs(x[a] - out.lambda * (1.0 - ratio[a])) > tol * scale) out.inner = false;
  return out;
}

}  // namespace moyal
