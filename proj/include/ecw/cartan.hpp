#pragma once

#include "ecw/lie.hpp"

namespace ecw {

/// Sorted multiset of dual-basis indices; the key of one symmetric monomial.
using SymMonomial = std::vector<int>;

SymMonomial sym_mono_mul(const SymMonomial& a, const SymMonomial& b);

/// Polynomial map from the group's Lie algebra to forms on the space:
/// an element of S(g^v) (x) Omega(M), keyed by symmetric monomials.
struct EquivariantForm {
  ActionPtr action;
  std::map<SymMonomial, Form> comps;

  static EquivariantForm zero(ActionPtr a) { return {std::move(a), {}}; }
  static EquivariantForm from_form(ActionPtr a, Form f);

  void add(const SymMonomial& mono, const Form& f);
  bool is_zero() const { return comps.empty(); }

  EquivariantForm operator+(const EquivariantForm& o) const;
  EquivariantForm operator-(const EquivariantForm& o) const;
  friend bool operator==(const EquivariantForm& a, const EquivariantForm& b) {
    return a.comps == b.comps;
  }

  /// omega(X_i): sum of the components whose monomial only mentions i.
  Form eval_at_basis(int i) const;

  /// 2 * polynomial degree + form degree, when homogeneous; -1 otherwise.
  int total_degree() const;
  bool is_homogeneous() const { return total_degree() >= 0 || is_zero(); }

  std::string str() const;
};

/// d_C omega(X) = d(omega(X)) + i(X#) omega(X).
EquivariantForm cartan_d(const EquivariantForm& w);

/// (d_C d_C omega)(X_i); equals the Lie derivative of omega(X_i) along X_i#.
Form cartan_d_defect(const EquivariantForm& w, int basis_index);

/// (w1 ^ w2)(X) = w1(X) ^ w2(X): componentwise wedge with symmetric
/// monomial convolution.
EquivariantForm wedge_equivariant(const EquivariantForm& a, const EquivariantForm& b);

/// For torus actions the coadjoint action is trivial, so equivariance is
/// invariance of every component under the action pullback.
bool check_equivariance(const EquivariantForm& w);

}  // namespace ecw
