#pragma once

#include <random>

#include "ecw/form.hpp"

namespace ecw {

/// Deterministic generators used by the property suites and tests.

GaussianRational random_coeff(std::mt19937_64& rng);
Scalar random_scalar(const ChartPtr& chart, std::mt19937_64& rng, int max_terms = 3,
                     int exp_bound = 2);
/// Homogeneous random form of the given wedge degree.
Form random_form(const ChartPtr& chart, std::mt19937_64& rng, int degree, int max_terms = 3);
/// Mixed-degree random form up to the chart's top degree.
Form random_form_mixed(const ChartPtr& chart, std::mt19937_64& rng, int max_terms = 4);

/// Seed for a named sub-suite derived from a master seed; keeps suites
/// independent of execution order.
std::uint64_t derive_seed(std::uint64_t master, const std::string& label);

}  // namespace ecw
