#pragma once

#include <Eigen/Dense>
#include <boost/rational.hpp>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace moyal {

using cplx = std::complex<double>;
using GroupElement = std::vector<long>;

// Finitely generated abelian group Z_{m_1} x ... x Z_{m_k}; order 0 means Z.
struct GradingGroup {
  std::vector<int> orders;

  int rank() const { return static_cast<int>(orders.size()); }
  bool finite() const;
  long size() const;  // DomainError for infinite groups

  GroupElement reduce(GroupElement a) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement zero() const { return GroupElement(orders.size(), 0); }
  GroupElement generator(int r) const;

  // Mixed-radix enumeration, finite groups only.
  long index(const GroupElement& a) const;
  GroupElement element(long idx) const;
  std::vector<GroupElement> elements() const;

  // "Z2xZ2", "Z3", "Z", "Z2xZ"
  static GradingGroup parse(const std::string& text);
  std::string name() const;
};

std::string format_element(const GroupElement& a);

// Root of unity exp(2 pi i turns), turns kept in [0, 1). Multiplication adds turns.
struct Phase {
  boost::rational<long> turns{0};

  static Phase one() { return {}; }
  static Phase minus_one() { return {boost::rational<long>(1, 2)}; }
  static Phase from_turns(long num, long den);
  // "1", "-1", "i", "-i", "zeta(p/q)"
  static Phase parse(const std::string& text);

  Phase operator*(const Phase& o) const;
  Phase inverse() const;
  Phase pow(long k) const;
  bool is_one() const { return turns.numerator() == 0; }
  bool operator==(const Phase& o) const { return turns == o.turns; }
  bool operator!=(const Phase& o) const { return !(*this == o); }
  cplx value() const;
  std::string str() const;
};

// Commutation factor given by its values on generator pairs, extended bimultiplicatively.
struct CommutationFactor {
  GradingGroup group;
  std::vector<std::vector<Phase>> gen_table;

  Phase operator()(const GroupElement& a, const GroupElement& b) const;
  cplx value(const GroupElement& a, const GroupElement& b) const { return (*this)(a, b).value(); }
  Phase signature(const GroupElement& a) const { return (*this)(a, a); }
  bool proper() const;

  static CommutationFactor from_generators(const GradingGroup& g, std::vector<std::vector<Phase>> table);
  static CommutationFactor from_function(const GradingGroup& g,
                                         const std::function<Phase(int, int)>& on_generators);
};

// (-1)^{ij} on Z2.
CommutationFactor super_sign_factor();
// (-1)^{i1 j2 + i2 j1} on Z2 x Z2.
CommutationFactor z2z2_cross_factor();
// (-1)^{i1 j1 + i2 j2} on Z2 x Z2.
CommutationFactor z2z2_diagonal_factor();

struct FactorReport {
  bool valid = true;
  bool proper = true;
  long checked_triples = 0;
  std::vector<std::string> violations;
};

// Generator constraints (odd order => eps(e,e) = 1, eps(e,e) = +-1, eps(e_r,e_s)^{gcd} = 1)
// and the three axioms on element triples: all of them when |group| <= 64, otherwise
// `samples` random triples drawn with `seed` (components of Z factors in [-4, 4]).
FactorReport cf_validate(const CommutationFactor& cf, unsigned seed = 1, int samples = 1000);

// Factor set on a finite group, tabulated over element pairs.
struct FactorSet {
  GradingGroup group;
  std::vector<Phase> table;  // index(a) * size + index(b)

  Phase operator()(const GroupElement& a, const GroupElement& b) const;
  static FactorSet from_function(const GradingGroup& g,
                                 const std::function<Phase(const GroupElement&, const GroupElement&)>& f);
};

// (-1)^{sum_{p<q} i_p j_q} times prod_p eta_p^{i_p j_p} on (Z2)^n; eta empty means all +1.
FactorSet clifford_factor_set(int n, const std::vector<int>& eta = {});

// Checks sigma(i,j+k) sigma(j,k) = sigma(i,j) sigma(i+j,k) on every triple.
FactorReport validate_factor_set(const FactorSet& sigma);

// eps_sigma(i,j) = sigma(i,j) sigma(j,i)^{-1}. DomainError if sigma is not a factor set.
CommutationFactor eps_from_sigma(const FactorSet& sigma);
// sigma(i,j) = prod_{r<s} eps(e_r,e_s)^{lambda_r mu_s}. DomainError unless eps is proper and
// the group is finite.
FactorSet sigma_from_eps(const CommutationFactor& eps);

// Crossed product K x_sigma Gamma: e_i e_j = sigma(i,j) e_{i+j}.
struct CrossedProduct {
  FactorSet sigma;

  long dimension() const { return sigma.group.size(); }
  // Product of two elements given by their coordinates on (e_k).
  Eigen::VectorXcd multiply(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const;
  Eigen::VectorXcd basis(const GroupElement& k) const;
};

// Associativity is verified on all basis triples (|group| <= 64); failure -> DomainError.
CrossedProduct crossed_product(const FactorSet& sigma);

// ---- graded matrix algebras ----

struct HomogeneousMatrix {
  GroupElement degree;
  Eigen::MatrixXcd matrix;
};

enum class GradingKind { Elementary, Fine };

struct GradedMatrixAlgebra {
  int size = 0;
  CommutationFactor factor;
  GradingKind kind = GradingKind::Elementary;
  std::vector<GroupElement> phi;              // elementary: degree map on 1..D
  std::vector<HomogeneousMatrix> fine_basis;  // fine: one basis matrix per support element
  std::vector<std::vector<cplx>> fine_sigma;  // fine: e_a e_b = sigma(a,b) e_{a+b}
  Eigen::MatrixXcd basis_inverse;             // vec(A) -> coordinates on basis()

  // Homogeneous basis: E_ij (row-major) for elementary, e_alpha for fine.
  std::vector<HomogeneousMatrix> basis() const;
  // Decomposition of A into homogeneous components (only non-empty degrees).
  std::vector<HomogeneousMatrix> components(const Eigen::MatrixXcd& a) const;
  // Coordinates of A on basis().
  Eigen::VectorXcd coordinates(const Eigen::MatrixXcd& a) const;
  std::vector<GroupElement> degrees() const;  // distinct degrees of basis(), first-seen order
};

GradedMatrixAlgebra elementary_algebra(const CommutationFactor& eps, const std::vector<GroupElement>& phi);
// The basis must be invertible elements indexed by a subgroup; sigma is read off the products
// (DomainError when a product leaves the basis lines).
GradedMatrixAlgebra fine_algebra(const CommutationFactor& eps, std::vector<HomogeneousMatrix> basis);
// M_2 with 1, tau_1, tau_2, tau_3 in degrees (0,0), (1,0), (0,1), (1,1).
GradedMatrixAlgebra pauli_algebra(const CommutationFactor& eps);
Eigen::Matrix2cd pauli(int k);  // k = 0 is the unit

// eps_sigma of a fine grading, computed from the structure constants.
CommutationFactor natural_factor(const GradedMatrixAlgebra& alg);

// Degrees a of the support with eps(a, b) = eps_sigma(a, b) for every b.
std::vector<GroupElement> commuting_degrees(const GradedMatrixAlgebra& alg);

Eigen::MatrixXcd eps_bracket(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const GradedMatrixAlgebra& alg);
// sum_i eps(phi(i), phi(i)) a_ii; elementary gradings only.
cplx eps_trace(const Eigen::MatrixXcd& a, const GradedMatrixAlgebra& alg);

// Homogeneous elements z with [z, b]_eps = 0 for every basis element b; D <= 16.
// Each returned matrix is scaled so its largest entry is 1.
std::vector<HomogeneousMatrix> center_basis(const GradedMatrixAlgebra& alg);

using LinearMap = std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>;

// b -> [m, b]_eps
LinearMap adjoint_map(const Eigen::MatrixXcd& m, const GradedMatrixAlgebra& alg);

struct DerivationCheck {
  bool ok = true;
  double defect = 0.0;
  std::string witness;  // first failing basis pair or degree violation
};

// X(ab) = X(a) b + eps(|X|, |a|) a X(b) on all basis pairs, and X(A^a) in A^{a+|X|}.
DerivationCheck check_derivation(const LinearMap& x, const GroupElement& degree, const GradedMatrixAlgebra& alg,
                                 double tol = 1e-10);

// Basis of the homogeneous eps-derivations of the given degree, each as the D^2 x D^2 matrix
// acting on basis coordinates. D <= 4.
std::vector<Eigen::MatrixXcd> derivation_space(const GradedMatrixAlgebra& alg, const GroupElement& degree);
LinearMap map_from_coordinates(const Eigen::MatrixXcd& t, const GradedMatrixAlgebra& alg);
Eigen::MatrixXcd coordinates_of_map(const LinearMap& x, const GradedMatrixAlgebra& alg);

// M with [M, .]_eps = X. Elementary: M = sum_k X(E_k0) E_0k. Fine: least squares on A^{|X|}.
// DomainError (with the witness pair) if X is not an eps-derivation of that degree;
// AccuracyError if the reconstructed adjoint differs from X.
Eigen::MatrixXcd inner_generator(const LinearMap& x, const GroupElement& degree, const GradedMatrixAlgebra& alg);

// Fine gradings: coordinates X(e_a) = sigma(|X|, a) x_a e_{a+|X|} over the support.
struct FineDerivationClass {
  bool derivation = false;  // x_{a+b} = x_a + (eps/eps_sigma)(|X|, a) x_b
  bool inner = false;       // x_a proportional to 1 - (eps/eps_sigma)(|X|, a)
  bool outer = false;       // |X| commuting degree: x is a group morphism
  cplx lambda = 0.0;        // inner case: X = lambda ad_{e_|X|}
};
FineDerivationClass classify_fine_derivation(const GradedMatrixAlgebra& alg, const GroupElement& degree,
                                             const std::vector<cplx>& x, double tol = 1e-12);
std::vector<cplx> fine_coordinates(const LinearMap& x, const GroupElement& degree, const GradedMatrixAlgebra& alg);

}  // namespace moyal
