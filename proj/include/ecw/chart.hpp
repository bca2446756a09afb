#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ecw/gaussian.hpp"

namespace ecw {

class ChartModel;
class Scalar;
class Form;
using ChartPtr = std::shared_ptr<const ChartModel>;

/// Exponent vector over the chart's variables (parallel to variable order).
using ExpVec = std::vector<int>;

/// Strictly increasing set of generator indices packed as a bitmask.
using GenMask = std::uint32_t;

enum class VarKind {
  Ordinary,        // exponents in N
  Unit,            // torus coordinate, Laurent exponents, conj = inverse
  FormalConstant,  // invertible transcendental symbol, Laurent exponents, d = 0
};

struct Variable {
  std::string name;
  VarKind kind = VarKind::Ordinary;
  int conj = -1;  // index of the conjugate variable; self for real/invariant ones
};

/// One oriented rewrite rule lhs -> rhs on the coordinate ring.
/// lhs is a pure monomial; every rhs monomial is strictly smaller in the
/// chart's monomial order, which makes reduction terminate.
struct RewriteRule {
  ExpVec lhs;
  std::vector<std::pair<ExpVec, GaussianRational>> rhs;
};

/// Coordinate model of a space: a coordinate ring with oriented rewrite
/// rules plus a global coframe for its 1-forms.
///
/// Flat charts have one generator d<v> per non-constant variable. Charts of
/// embedded spaces (the 3-sphere) instead carry an abstract coframe e_k with
///   dv        = sum_k M[v][k] e_k          (differential table)
///   d e_k     = given 2-form               (structure equations)
///   e_k       = sum_v N[k][v] dv           (frame recovery table)
/// N is what makes pullbacks computable: any substitution determined on
/// variables extends to the coframe through N. Both tables are validated
/// against each other and d^2 = 0 is checked at construction.
class ChartModel : public std::enable_shared_from_this<ChartModel> {
 public:
  const std::string& name() const { return name_; }
  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_gens() const { return static_cast<int>(gen_names_.size()); }
  const Variable& var(int i) const { return vars_[i]; }
  const std::string& gen_name(int g) const { return gen_names_[g]; }
  const std::vector<RewriteRule>& rules() const { return rules_; }

  int var_index(const std::string& name) const;                // -1 if absent
  int gen_index(const std::string& name) const;                // -1 if absent
  int generator_of_var(int v) const { return gen_of_var_[v]; }  // -1 if none

  /// Differential of variable v expressed in the coframe.
  const Form& d_of_var(int v) const;
  /// Structure equation d(e_g).
  const Form& d_of_gen(int g) const;
  /// Frame recovery row: e_g = sum_v N[g][v] dv (pairs of var index, Scalar).
  const std::vector<std::pair<int, Scalar>>& frame_from_dv(int g) const;

  bool same_as(const ChartModel& o) const { return this == &o; }

  /// Reduce an exponent-vector/coefficient map by the rewrite rules.
  void reduce_terms(std::map<ExpVec, GaussianRational>& terms) const;

  /// True if the monomial order (graded lex, last variable strongest)
  /// ranks a strictly below b.
  bool monomial_less(const ExpVec& a, const ExpVec& b) const;

  ~ChartModel();

 private:
  friend class ChartBuilder;
  ChartModel() = default;

  std::string name_;
  std::vector<Variable> vars_;
  std::vector<std::string> gen_names_;
  std::vector<int> gen_of_var_;  // per variable, -1 for formal constants / frame charts
  std::vector<RewriteRule> rules_;

  // Coframe tables; filled by the builder, owned through unique_ptr to keep
  // Form incomplete here.
  std::vector<std::unique_ptr<Form>> d_var_;
  std::vector<std::unique_ptr<Form>> d_gen_;
  std::vector<std::vector<std::pair<int, Scalar>>> frame_rows_;
};

/// Assembles charts; product charts are built by appending blocks.
class ChartBuilder {
 public:
  explicit ChartBuilder(std::string name) : name_(std::move(name)) {}

  /// Adds a flat variable with generator d<name>. Returns the variable index.
  int add_ordinary(const std::string& name);
  int add_unit(const std::string& name);
  int add_formal(const std::string& name);
  /// Adds a variable without a generator of its own (frame charts fill in
  /// its differential later via set_d_var).
  int add_frame_variable(const std::string& name);
  /// Adds an abstract coframe generator.
  int add_frame_generator(const std::string& name);

  void set_conjugate_pair(int a, int b);

  /// dv = the given expansion over already-declared generators.
  void set_d_var(int var, std::vector<std::pair<int, std::vector<std::pair<ExpVec, GaussianRational>>>> expansion);
  /// d(e_g) = sum of (genmask, scalar terms).
  void set_d_gen(int gen, std::vector<std::pair<GenMask, std::vector<std::pair<ExpVec, GaussianRational>>>> expansion);
  /// e_g = sum_v N[g][v] dv.
  void set_frame_row(int gen, std::vector<std::pair<int, std::vector<std::pair<ExpVec, GaussianRational>>>> row);

  void add_rule(ExpVec lhs, std::vector<std::pair<ExpVec, GaussianRational>> rhs);

  /// Copies all variables, generators, rules and tables of `block`,
  /// renaming nothing; fails on name clashes. Returns the variable offset.
  int append_chart(const ChartModel& block);

  /// Validates the tables (rule orientation, N * M consistency, d^2 = 0)
  /// and freezes the chart.
  ChartPtr build();

 private:
  std::string name_;
  std::vector<Variable> vars_;
  std::vector<std::string> gen_names_;
  std::vector<int> gen_of_var_;
  std::vector<RewriteRule> rules_;
  struct RawForm {
    std::vector<std::pair<GenMask, std::vector<std::pair<ExpVec, GaussianRational>>>> terms;
  };
  std::map<int, RawForm> d_var_override_;
  std::map<int, RawForm> d_gen_override_;
  std::map<int, std::vector<std::pair<int, std::vector<std::pair<ExpVec, GaussianRational>>>>> frame_override_;
};

}  // namespace ecw
