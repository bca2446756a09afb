#pragma once

#include <string>

#include "ecw/form.hpp"

namespace ecw {

/// Canonical JSON shapes:
///   Scalar -> [[expvec, [num_re, den_re, num_im, den_im]], ...]
///   Form   -> [[scalar, [generator names]], ...]
/// Term order follows the canonical in-memory order, so equal values
/// serialize to identical bytes.
std::string scalar_to_json(const Scalar& s);
std::string form_to_json(const Form& f);

Scalar scalar_from_json(const ChartPtr& chart, const std::string& text);
Form form_from_json(const ChartPtr& chart, const std::string& text);

/// LaTeX rendering with \wedge between generators.
std::string form_to_latex(const Form& f);

}  // namespace ecw
