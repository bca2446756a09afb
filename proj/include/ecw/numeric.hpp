#pragma once

#include <complex>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "ecw/form.hpp"

namespace ecw {

/// Floating-point evaluation lives only here, as the independent oracle the
/// symbolic engine is tested against. A NumericModel parametrizes the
/// chart's solution set; values and parameter-derivatives of every chart
/// variable are analytic in the parameters.
struct NumericModel {
  int num_params = 0;
  std::function<std::complex<double>(int var, const std::vector<double>&)> value;
  std::function<std::complex<double>(int var, int param, const std::vector<double>&)> dvalue;
  std::function<std::vector<double>(std::mt19937_64&)> sample;
};

/// Antisymmetric tensor over parameter directions, indexed by subsets.
using NumericForm = std::map<std::uint32_t, std::complex<double>>;

std::complex<double> eval_scalar(const Scalar& s, const NumericModel& m,
                                 const std::vector<double>& params);

/// Pullback of the form to parameter space at the given point.
NumericForm eval_form(const Form& f, const NumericModel& m, const std::vector<double>& params);

double numeric_form_distance(const NumericForm& a, const NumericForm& b);
double numeric_form_norm(const NumericForm& a);

/// max over components of |eval(exterior_d f) - finite-difference d of f|
/// relative to the larger of the two norms (absolute when both are tiny).
double finite_difference_d_error(const Form& f, const NumericModel& m,
                                 const std::vector<double>& params, double h = 1e-5);

/// Relative distance between two forms evaluated at a random point.
double numeric_equality_error(const Form& a, const Form& b, const NumericModel& m,
                              const std::vector<double>& params);

}  // namespace ecw
