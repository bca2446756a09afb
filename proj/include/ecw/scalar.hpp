#pragma once

#include <map>
#include <string>

#include "ecw/chart.hpp"

namespace ecw {

/// Element of the chart's coordinate ring: an exact Laurent polynomial over
/// Q(i), kept fully reduced by the chart's rewrite rules. Exponents of
/// Ordinary variables stay in N; Unit and FormalConstant exponents range
/// over Z.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(ChartPtr chart) : chart_(std::move(chart)) {}

  static Scalar zero(ChartPtr chart) { return Scalar(std::move(chart)); }
  static Scalar constant(ChartPtr chart, GaussianRational c);
  static Scalar one(ChartPtr chart) { return constant(std::move(chart), GaussianRational(1)); }
  static Scalar variable(ChartPtr chart, const std::string& name, int power = 1);
  static Scalar monomial(ChartPtr chart, ExpVec e, GaussianRational c);

  const ChartPtr& chart() const { return chart_; }
  const std::map<ExpVec, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// The coefficient of the constant monomial.
  GaussianRational constant_term() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator*=(const GaussianRational& c);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator*(Scalar a, const GaussianRational& c) { return a *= c; }
  friend Scalar operator*(const GaussianRational& c, Scalar a) { return a *= c; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) {
    return a.terms_ < b.terms_;
  }

  /// n may be negative only for a single invertible term.
  Scalar pow(int n) const;
  /// Multiplicative inverse; requires a single term with invertible content.
  Scalar inverse() const;
  bool is_invertible_monomial() const;

  /// Partial derivative with respect to variable v (coefficientwise d/dv).
  Scalar derivative(int v) const;

  /// Substitutes exponent vectors through var_map into the target chart.
  Scalar transport(const ChartPtr& target, const std::vector<int>& var_map) const;

  std::string str() const;

 private:
  void insert_term(const ExpVec& e, const GaussianRational& c);
  void normalize();

  ChartPtr chart_;
  std::map<ExpVec, GaussianRational> terms_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace ecw
