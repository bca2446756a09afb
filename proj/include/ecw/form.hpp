#pragma once

#include <map>
#include <string>
#include <vector>

#include "ecw/scalar.hpp"

namespace ecw {

class Substitution;

/// Graded-commutative differential form on a chart: a finite sum of
/// Scalar-coefficient wedge monomials over the chart's coframe, stored with
/// strictly increasing generator indices and no zero coefficients.
class Form {
 public:
  Form() = default;
  explicit Form(ChartPtr chart) : chart_(std::move(chart)) {}

  static Form zero(ChartPtr chart) { return Form(std::move(chart)); }
  static Form from_scalar(Scalar s);
  static Form generator(ChartPtr chart, const std::string& gen_name);
  static Form term(Scalar coeff, GenMask mask);

  const ChartPtr& chart() const { return chart_; }
  const std::map<GenMask, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Largest wedge length among the terms; -1 for the zero form.
  int max_degree() const;
  bool is_homogeneous(int degree) const;
  Form degree_part(int degree) const;

  Form operator-() const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Scalar& s);
  Form& operator*=(const GaussianRational& c);

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const Scalar& s) { return a *= s; }
  friend Form operator*(const Scalar& s, Form a) { return a *= s; }
  friend Form operator*(Form a, const GaussianRational& c) { return a *= c; }
  friend Form operator*(const GaussianRational& c, Form a) { return a *= c; }

  friend bool operator==(const Form& a, const Form& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  /// Drops every term whose mask meets the given generator set.
  Form drop_generators(GenMask gens) const;
  /// Keeps only terms whose mask is disjoint from the given set.
  bool has_generators(GenMask gens) const;

  std::string str() const;

  void add_term(const Scalar& coeff, GenMask mask);  // normalizing insert

 private:
  ChartPtr chart_;
  std::map<GenMask, Scalar> terms_;
};

/// Vector field given by its pairings with the chart coframe:
/// coefficient(g) = <V, e_g>.
struct VectorField {
  ChartPtr chart;
  std::map<int, Scalar> coeffs;

  static VectorField zero(ChartPtr c) { return VectorField{std::move(c), {}}; }
  void add(int gen, const Scalar& s);
  VectorField& operator+=(const VectorField& o);
  VectorField operator*(const Scalar& s) const;
  bool is_zero() const;
  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.coeffs == b.coeffs;
  }
};

/// Sign of merging two disjoint ascending wedge monomials a, b into one.
int wedge_sign(GenMask a, GenMask b);

Form wedge(const Form& a, const Form& b);
Form exterior_d(const Form& a);
Form contract(const VectorField& X, const Form& a);
Form lie_derivative(const VectorField& X, const Form& a);

/// Commutator of vector fields (used by the bracket-compatibility checks).
VectorField vf_bracket(const VectorField& a, const VectorField& b);

/// Exterior derivative restricted to the listed variables: only the terms
/// of d that differentiate in those directions (split of d on a product).
Form exterior_d_along(const Form& a, const std::vector<int>& vars);

/// Fiber integration over a parameter on [0, 1]: extracts the d<t>
/// component, antidifferentiates in t and takes the boundary values.
/// The result carries neither t nor d<t>.
Form integrate_param(const Form& a, const std::string& t_name);

/// Substitution of target-chart scalars for source-chart variables, with the
/// induced action on the coframe derived from the frame recovery table.
class Substitution {
 public:
  /// images[v] = image of source variable v. Validates that rules map to
  /// zero, unit/formal variables get invertible monomials, and the induced
  /// coframe images are consistent with d of the variable images.
  Substitution(ChartPtr source, ChartPtr target, std::vector<Scalar> images);

  /// Renaming injection: source variable i maps to target variable var_map[i].
  static Substitution renaming(ChartPtr source, ChartPtr target, const std::vector<int>& var_map);

  const ChartPtr& source() const { return source_; }
  const ChartPtr& target() const { return target_; }
  const Scalar& image(int v) const { return images_[v]; }
  const Form& gen_image(int g) const { return gen_images_[g]; }

  Scalar apply(const Scalar& s) const;
  Form apply(const Form& f) const;

  /// Pullback composition: (other after *this) as manifold maps, i.e. the
  /// substitution whose scalar action is  s |-> other.apply(this->apply(s)).
  Substitution then(const Substitution& other) const;

 private:
  Substitution() = default;
  ChartPtr source_;
  ChartPtr target_;
  std::vector<Scalar> images_;
  std::vector<Form> gen_images_;
};

inline Form pullback(const Substitution& sub, const Form& f) { return sub.apply(f); }

}  // namespace ecw
