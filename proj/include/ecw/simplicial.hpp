#pragma once

#include "ecw/bundle.hpp"

namespace ecw {

/// One simplicial level in chart form, with the index bookkeeping needed to
/// move data between the space chart and the level chart.
struct LevelChart {
  ChartPtr chart;
  std::vector<std::vector<int>> group_blocks;  // per group copy, its unit vars
  std::vector<int> space_vars;                 // space var -> level var
  std::vector<int> space_gens;                 // space gen -> level gen
  std::vector<int> simplex_vars;               // t1..tp (empty on plain levels)
  GenMask group_gens = 0;                      // all du over the group copies
  GenMask simplex_gens = 0;                    // all dt
};

/// Simplicial manifold in chart form, truncated at p_max. Two shapes:
///   ActionSpace: levels G^p x M of a torus action (M = pt gives the nerve)
///   NerveBar:    levels K^{p+1} with deleting faces and the diagonal action
/// Face and degeneracy pullbacks are substitutions between level charts and
/// the simplicial relations are validated on construction.
class SimplicialSpace {
 public:
  enum Kind { ActionSpace, NerveBar };

  static std::shared_ptr<const SimplicialSpace> make_action_space(ActionPtr action, int p_max);
  static std::shared_ptr<const SimplicialSpace> make_nerve_bar(TorusPtr torus, int p_max);

  Kind kind() const { return kind_; }
  int p_max() const { return p_max_; }
  const ActionPtr& action() const { return action_; }
  const TorusPtr& group() const { return group_; }

  /// Number of group copies at level p (p for ActionSpace, p+1 for NerveBar).
  int copies(int p) const { return kind_ == ActionSpace ? p : p + 1; }
  /// Number of faces at level p is level_faces(p) = p + 1 always
  /// (indices 0..p).

  const LevelChart& level(int p) const { return levels_.at(p); }
  const LevelChart& dupont(int p) const { return dupont_.at(p); }
  const LevelChart& mixed(int p) const { return mixed_.at(p); }

  /// Pullback along the face map d_i : M_p -> M_{p-1}; a substitution with
  /// source level(p-1) and target level(p).
  const Substitution& face(int p, int i) const { return faces_.at(p - 1).at(i); }
  /// Pullback along s_i : M_p -> M_{p+1}; source level(p+1), target level(p).
  const Substitution& degeneracy(int p, int i) const { return degeneracies_.at(p).at(i); }

  /// (coface x id)^*: source dupont(p), target mixed(p).
  const Substitution& coface(int p, int i) const { return cofaces_.at(p - 1).at(i); }
  /// (id x face_i)^*: source dupont(p-1), target mixed(p).
  const Substitution& face_ext(int p, int i) const { return face_exts_.at(p - 1).at(i); }

  /// t0 = 1 - sum t_i on the dupont chart of level p.
  Scalar t0(int p) const;
  Scalar t(int p, int i) const;  // t_i, 1 <= i <= p

  /// Pullback along (t, g_1..g_p, x) -> g_{i+1} ... g_p x (ActionSpace) or
  /// the i-th projection K^{p+1} -> K (NerveBar), landing on dupont(p).
  /// Source is the space chart (ActionSpace) or the group chart block; for
  /// NerveBar the result is reported through mc_pullback below instead.
  Substitution vertex_map(int p, int i) const;

  /// Maurer-Cartan component of basis j pulled to the i-th copy at dupont
  /// level p (NerveBar only).
  Form mc_component(int p, int copy, int j) const;

  /// Structure-group invariance of a form on the dupont chart of level p:
  /// the diagonal right translation for the bar nerve, the given K-action on
  /// the space block for action spaces.
  bool is_k_invariant(int p, const Form& on_dupont, const ActionPtr& k_action = nullptr) const;
  /// K-vertical fundamental field at dupont level p for basis j.
  VectorField k_vertical(int p, int j, const ActionPtr& k_action = nullptr) const;

 private:
  SimplicialSpace() = default;
  void build_levels();
  void validate_relations() const;

  Kind kind_ = ActionSpace;
  int p_max_ = 0;
  ActionPtr action_;  // ActionSpace only
  TorusPtr group_;
  std::vector<LevelChart> levels_;
  std::vector<LevelChart> dupont_;
  std::vector<LevelChart> mixed_;  // index p >= 1
  std::vector<std::vector<Substitution>> faces_;
  std::vector<std::vector<Substitution>> degeneracies_;
  std::vector<std::vector<Substitution>> cofaces_;
  std::vector<std::vector<Substitution>> face_exts_;
};
using SpacePtr = std::shared_ptr<const SimplicialSpace>;

/// Form at one simplicial level of the de Rham double complex.
struct SimplicialDeRhamElement {
  SpacePtr space;
  int level = 0;
  Form form;  // on space->level(level).chart
};

/// Element of the total complex: finitely many levels at once.
struct TotalDeRhamElement {
  SpacePtr space;
  std::map<int, Form> levels;
  void add(int level, const Form& f);
  bool is_zero() const;
};

/// del = alternating sum of face pullbacks; raises the level by one.
SimplicialDeRhamElement simplicial_del(const SimplicialDeRhamElement& x);

/// (d + (-1)^q del) applied twice; zero iff the double complex closes.
TotalDeRhamElement double_complex_defect(const SimplicialDeRhamElement& x);
TotalDeRhamElement total_differential(const TotalDeRhamElement& x);

/// Compatible family of forms on Delta^p x M_p.
struct DupontForm {
  SpacePtr space;
  std::vector<Form> levels;  // on dupont(p)

  bool is_zero() const;
  DupontForm operator+(const DupontForm& o) const;
  DupontForm operator*(const GaussianRational& c) const;
};

DupontForm dupont_d(const DupontForm& w);
DupontForm dupont_wedge(const DupontForm& a, const DupontForm& b);
/// Face compatibility of Dupont's definition, checked exactly levelwise.
bool dupont_compatible(const DupontForm& w);

struct DupontAlgForm {
  SpacePtr space;
  AlgebraPtr alg;
  std::vector<AlgebraValuedForm> levels;
  bool compatible() const;
};

/// Fiber integration over the simplices with positive orientation on
/// dt1 ^ ... ^ dtp; level p lands in form degree n - p.
std::vector<SimplicialDeRhamElement> simplex_integrate(const DupontForm& w);

/// Dirichlet integral of a monomial coefficient over the standard simplex.
Rational simplex_monomial_integral(int p, const std::vector<int>& exponents);

/// The prism family sum_i t_i m_i^* alpha; Dupont-compatible for any alpha.
DupontForm dupont_prism(const SpacePtr& space, const Form& alpha_on_space);

/// Simplicial connection Theta^(p) = sum_i t_i theta_i built from a
/// G-invariant connection on the bundle; space must be the simplicial space
/// of the G-action on the bundle's total chart.
DupontAlgForm simplicial_connection(const SpacePtr& space, const Connection& conn);

/// The universal connection sum_i t_i pr_i^* theta_0 on the bar nerve.
DupontAlgForm universal_connection(const SpacePtr& nerve_bar);

/// Levelwise curvature d Theta + 1/2 [Theta, Theta] on the dupont charts.
DupontAlgForm dupont_curvature(const DupontAlgForm& theta);

/// Levelwise P(curvature^q) with basicness verified against the structure
/// group translation and the K-vertical fields.
DupontForm dupont_char_form(const InvariantPolynomial& P, const DupontAlgForm& theta,
                            const ActionPtr& k_action = nullptr, bool verify_basic = true);

}  // namespace ecw
