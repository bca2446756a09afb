#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ecw/form.hpp"

namespace ecw {

/// Small dense matrix over Q(i); used for formal (matrix-level) Lie theory.
class GMatrix {
 public:
  GMatrix() = default;
  GMatrix(int n) : n_(n), a_(n * n) {}
  static GMatrix identity(int n);

  int dim() const { return n_; }
  GaussianRational& at(int r, int c) { return a_[r * n_ + c]; }
  const GaussianRational& at(int r, int c) const { return a_[r * n_ + c]; }

  GMatrix operator+(const GMatrix& o) const;
  GMatrix operator-(const GMatrix& o) const;
  GMatrix operator*(const GMatrix& o) const;
  GMatrix operator*(const GaussianRational& c) const;
  GMatrix inverse() const;  // Gauss-Jordan, throws on singular input
  GaussianRational trace() const;
  friend bool operator==(const GMatrix& a, const GMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

 private:
  int n_ = 0;
  std::vector<GaussianRational> a_;
};

/// Lie algebra with exact structure constants and, optionally, a matrix
/// realization of the basis. Antisymmetry and the Jacobi identity are
/// validated at construction.
struct LieAlgebraModel {
  std::string name;
  std::vector<std::string> basis;
  std::vector<std::string> dual_basis;
  // structure[k][i][j]: [X_i, X_j] = sum_k structure[k][i][j] X_k
  std::vector<std::vector<std::vector<GaussianRational>>> structure;
  std::vector<GMatrix> matrices;  // empty when there is no matrix model

  int dim() const { return static_cast<int>(basis.size()); }
  bool is_abelian() const;
  void validate() const;
};
using AlgebraPtr = std::shared_ptr<const LieAlgebraModel>;

AlgebraPtr abelian_algebra(const std::string& name, int rank);
/// Derives structure constants from exact matrix commutators.
AlgebraPtr algebra_from_matrices(const std::string& name, std::vector<std::string> basis_names,
                                 std::vector<GMatrix> matrices);

struct AlgElement {
  AlgebraPtr alg;
  std::vector<GaussianRational> coords;

  static AlgElement basis(AlgebraPtr a, int i);
  bool is_zero() const;
  friend bool operator==(const AlgElement& a, const AlgElement& b) {
    return a.coords == b.coords;
  }
};

AlgElement bracket(const AlgElement& x, const AlgElement& y);
/// Adjoint action of a numeric group element on a matrix-model algebra;
/// the identity on abelian models.
AlgElement Ad(const GMatrix& g, const AlgElement& x);

/// Lie-algebra-valued differential form: one component per basis element.
struct AlgebraValuedForm {
  AlgebraPtr alg;
  ChartPtr chart;
  std::vector<Form> comps;

  static AlgebraValuedForm zero(AlgebraPtr a, ChartPtr c);
  AlgebraValuedForm operator+(const AlgebraValuedForm& o) const;
  AlgebraValuedForm operator-(const AlgebraValuedForm& o) const;
  AlgebraValuedForm operator*(const Scalar& s) const;
  friend bool operator==(const AlgebraValuedForm& a, const AlgebraValuedForm& b) {
    return a.comps == b.comps;
  }
  bool is_zero() const;
};

AlgebraValuedForm alg_d(const AlgebraValuedForm& a);
AlgebraValuedForm alg_contract(const VectorField& X, const AlgebraValuedForm& a);
AlgebraValuedForm alg_pullback(const Substitution& sub, const AlgebraValuedForm& a);
/// [A, B]: wedge on forms combined with the Lie bracket on values.
AlgebraValuedForm bracket_wedge(const AlgebraValuedForm& a, const AlgebraValuedForm& b);

/// Compact torus of the given rank; the group chart of one copy is a block
/// of unit variables, one per rank.
struct TorusGroupModel {
  std::string name;
  int rank = 1;
  AlgebraPtr algebra;

  /// Component of the Maurer-Cartan form for dual index j on the copy of the
  /// group occupying the given unit variables: -i u_j^{-1} du_j.
  Form maurer_cartan_component(const ChartPtr& chart, const std::vector<int>& group_vars,
                               int j) const;
};
using TorusPtr = std::shared_ptr<const TorusGroupModel>;

TorusPtr make_torus(const std::string& name, int rank);

/// Smooth left torus action on a chart, stored as the pullback substitution
/// a* : space -> group x space. Fundamental vector fields are derived by
/// differentiating the one-parameter substitutions at the identity, and the
/// substitution identities (unit element, associativity) are validated.
struct ActionModel {
  std::string name;
  TorusPtr group;
  ChartPtr space;
  ChartPtr product;                // [group vars][space block]
  std::vector<int> group_vars;     // product indices of the group copy
  std::vector<int> space_map;      // space var -> product var
  std::unique_ptr<Substitution> act;   // a*: space -> product
  std::unique_ptr<Substitution> proj;  // pr*: space -> product
  std::vector<VectorField> fundamental;  // per basis element, on space
  GenMask group_gen_mask = 0;

  /// R_g-invariance: pullback along the action with the group differentials
  /// frozen equals the plain projection pullback.
  bool is_invariant(const Form& on_space) const;

  /// Images of the space variables under the action instantiated on another
  /// chart: group copy at group_map, space copy at space_var_map.
  std::vector<Scalar> action_images_on(const ChartPtr& target, const std::vector<int>& group_map,
                                       const std::vector<int>& space_var_map) const;
};
using ActionPtr = std::shared_ptr<const ActionModel>;

/// space_images: for each space variable, its image on the product chart
/// (group block first, then the space block).
ActionPtr make_action(const std::string& name, TorusPtr group, ChartPtr space,
                      const std::function<std::vector<Scalar>(const ChartPtr& product,
                                                              const std::vector<int>& group_vars,
                                                              const std::vector<int>& space_map)>&
                          space_images);

VectorField fundamental_vf(const ActionModel& action, const AlgElement& x);

/// Invariant symmetric polynomial, either explicit coefficients on the dual
/// of an abelian algebra or a trace power on a matrix model. tau_power > 0
/// divides the evaluation by tau^tau_power (Chern normalization).
struct InvariantPolynomial {
  std::string name;
  AlgebraPtr alg;
  int degree = 1;
  enum Kind { SymPoly, TracePower } kind = SymPoly;
  std::map<std::vector<int>, GaussianRational> coeffs;  // sorted dual multisets
  int tau_power = 0;

  void validate() const;  // permutation symmetry + infinitesimal invariance
};

/// Multilinear graded evaluation P(A_1, ..., A_q) by polarization.
Form evaluate_inv_poly(const InvariantPolynomial& P, const std::vector<AlgebraValuedForm>& args);
/// Scalar-level evaluation on algebra elements (test/validation path).
GaussianRational evaluate_inv_poly_elements(const InvariantPolynomial& P,
                                            const std::vector<AlgElement>& args);

}  // namespace ecw
