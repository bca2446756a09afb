#pragma once

#include "ecw/cartan.hpp"

namespace ecw {

/// Equivariant principal torus bundle in chart form. The structure group K
/// acts on the total chart from the right, the symmetry group G from the
/// left; the two substitutions commute (validated). Base data is optional:
/// the sphere bundle keeps everything upstairs and checks base-level claims
/// as equalities of pullback images.
struct PrincipalBundleModel {
  std::string name;
  ChartPtr total;
  TorusPtr structure;  // K
  ActionPtr k_action;  // K on the total chart
  ActionPtr g_action;  // G on the total chart (trivial allowed)

  ChartPtr base;                                // may be null
  std::unique_ptr<Substitution> projection;     // base -> total (pi^*)
  std::unique_ptr<Substitution> section;        // total -> base (s^*, a global frame)
  ActionPtr g_action_base;                      // may be null
  int g_fiber_weight = 0;  // G twists the frame fiber by this character weight

  void validate() const;  // projection equivariance, commuting actions
};
using BundlePtr = std::shared_ptr<const PrincipalBundleModel>;

struct Connection {
  std::string name;
  BundlePtr bundle;
  AlgebraValuedForm comp;  // k-valued 1-form on the total chart
  bool g_invariant = false;
};

/// Vertical fundamental field of the K-action for basis index j.
VectorField vertical_field(const PrincipalBundleModel& b, int j);

/// Vertical normalization and K-invariance; sets/validates G-invariance.
void verify_connection(Connection& conn);

/// Omega = d theta + 1/2 [theta, theta]; for tori this is just d theta, the
/// bracket term is kept for the record and vanishes.
AlgebraValuedForm curvature(const Connection& conn);

/// mu(X_j) = i(X_j#) theta: k-valued function on the total chart.
AlgebraValuedForm moment_map(const Connection& conn, int g_basis);

/// P(Omega + mu) in the Cartan model, represented upstairs on the total
/// chart and flagged basic. Verifies basicness and d_C-closedness exactly.
EquivariantForm equivariant_char_form(const InvariantPolynomial& P, const Connection& conn);

/// Integral over the convex path theta_t = (1-t) theta0 + t theta1 of the
/// equivariant characteristic form; satisfies
/// d_C(transgression) = P(Omega1 + mu1) - P(Omega0 + mu0).
EquivariantForm transgression(const InvariantPolynomial& P, const Connection& theta0,
                              const Connection& theta1);

/// Line bundle in a fixed frame: nabla = d + A with A a C-valued 1-form on
/// the base; K acts on the fiber with weight k_weight, G twists the frame
/// coefficients by the character of weight g_twist.
struct LineBundleModel {
  std::string name;
  ChartPtr base;
  Form A;
  ActionPtr g_action;
  int k_weight = 1;
  int g_twist = 0;
};

/// mu_nabla(X_j) phi = nabla_{X#} phi + L^E_X phi, computed from the two
/// operational summands; the result is phi times a section-independent
/// scalar (the 1x1 endomorphism).
Scalar vb_moment_map(const LineBundleModel& L, int g_basis, const Scalar& phi);

struct ComparisonReport {
  bool ok = true;
  std::string detail;
  void fail(const std::string& what);
};

/// Checks d theta + theta ^ theta = R_nabla and mu_theta = mu_nabla under
/// the frame identification given by the bundle's section.
ComparisonReport compare_pb_vb(const Connection& conn, const LineBundleModel& L);

/// Derivative of a scalar along a vector field.
Scalar vf_apply_scalar(const VectorField& X, const Scalar& s);

/// Extends the bundle by an interval coordinate "s" (used by transgression).
struct IntervalExtension {
  BundlePtr bundle;          // the extended bundle
  std::vector<int> var_map;  // total var -> extended var
};
IntervalExtension extend_by_interval(const BundlePtr& b);

}  // namespace ecw
