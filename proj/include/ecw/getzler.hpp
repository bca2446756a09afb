#pragma once

#include "ecw/cartan.hpp"
#include "ecw/simplicial.hpp"
#include <random>

namespace ecw {

/// Cochain of the bar-type resolution: a polynomial map from the symmetry
/// algebra to forms on the space, depending on p group arguments. Stored as
/// forms on the level chart with zero form-degree along every group copy
/// (function dependence on the group coordinates is allowed).
struct GetzlerCochain {
  SpacePtr space;
  int level = 0;
  std::map<SymMonomial, Form> comps;

  static GetzlerCochain zero(SpacePtr s, int level) { return {std::move(s), level, {}}; }
  void add(const SymMonomial& mono, const Form& f);
  bool is_zero() const { return comps.empty(); }
  void validate() const;  // no group-generator terms

  GetzlerCochain operator+(const GetzlerCochain& o) const;
  GetzlerCochain operator-(const GetzlerCochain& o) const;
  friend bool operator==(const GetzlerCochain& a, const GetzlerCochain& b) {
    return a.level == b.level && a.comps == b.comps;
  }
};

/// Finite sum of cochains across levels.
struct GetzlerElement {
  SpacePtr space;
  std::map<int, GetzlerCochain> levels;

  static GetzlerElement of(const GetzlerCochain& c);
  void add(const GetzlerCochain& c);
  bool is_zero() const;
  friend bool operator==(const GetzlerElement& a, const GetzlerElement& b) {
    return a.levels == b.levels;
  }
};

/// Bar differential: the alternating face pullbacks with the group-degree
/// part dropped (the last face acts through the group action on the value).
GetzlerCochain dbar(const GetzlerCochain& f);

/// Integration over the group in the first slot; keeps the zero-weight part
/// of the first copy's Laurent dependence and shifts the remaining slots.
GetzlerCochain group_average(const GetzlerCochain& f);

/// Slot-insertion differential: alternating derivatives of exp(tX) inserted
/// between the group arguments; raises the polynomial degree.
GetzlerCochain iota_bar(const GetzlerCochain& f);

/// d + i(X#) acting on the value forms (the Cartan part, without its level
/// sign); d differentiates only in the space directions.
GetzlerCochain cartan_part(const GetzlerCochain& f);

/// Lie derivative along the fundamental fields, raising the polynomial
/// degree by one (the operator L with d-bar iota-bar + iota-bar d-bar = -L).
GetzlerCochain lie_part(const GetzlerCochain& f);

/// d_G = dbar + iota_bar + (-1)^p (d + iota) on the total complex.
GetzlerElement getzler_total_d(const GetzlerElement& x);

/// The shuffle quasi-isomorphism from the simplicial de Rham complex; the
/// component at level k contracts the complementary copies with the left
/// invariant extension of insertion_sign * X and restricts the rest to the
/// identity. insertion_sign = -1 is the convention that satisfies all three
/// chain identities (a hook for the deliberate-defect test).
std::vector<GetzlerCochain> J_map(const SimplicialDeRhamElement& x, int insertion_sign = -1);

/// Level-0 part of J applied to a list of de Rham elements, assembled as an
/// equivariant form on the underlying space.
EquivariantForm pr0_J(const std::vector<SimplicialDeRhamElement>& elements,
                      int insertion_sign = -1);

struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;
  void fail(std::string what) {
    ok = false;
    failures.push_back(std::move(what));
  }
  std::string summary() const;
};

/// The three chain-map identities of the shuffle map on one element.
CheckReport chain_map_check(const SimplicialDeRhamElement& x, int insertion_sign = -1);

/// pr0(J(int_Delta omega_P(Theta))) == P(curvature + moment map), exact.
CheckReport classform_check(const InvariantPolynomial& P, const Connection& conn, int p_max);

/// pr0 J int_Delta is an algebra homomorphism on a pair of Dupont forms.
CheckReport algebra_hom_check(const DupontForm& w1, const DupontForm& w2,
                              const ActionPtr& action);

/// Universal finite-truncation inverse: pr0 J int_Delta applied to the
/// characteristic form of the bar-nerve connection recovers P.
CheckReport universal_inverse_check(const TorusPtr& torus, const InvariantPolynomial& P,
                                    int p_max);

/// Random cochain with mixed polynomial degrees; group dependence enters
/// through Laurent coefficients only.
GetzlerCochain random_cochain(const SpacePtr& space, int level, std::mt19937_64& rng);

/// Leveled JSON: an array with one canonical form entry per simplicial level.
std::string dupont_to_json(const DupontForm& w);
DupontForm dupont_from_json(const SpacePtr& space, const std::string& text);
/// Cochain lists serialize level by level, components keyed by sorted
/// dual-symbol strings.
std::string cochains_to_json(const std::vector<GetzlerCochain>& cs);

}  // namespace ecw
