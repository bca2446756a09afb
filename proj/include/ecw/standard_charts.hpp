#pragma once

#include "ecw/form.hpp"
#include "ecw/numeric.hpp"

namespace ecw {

/// Shared chart constructors. Every top-level chart carries the formal
/// invertible constant tau (standing for 2*pi*i) as its last variable.

/// R^2 with real coordinates x, y.
ChartPtr make_plane_chart();
/// R^1 with coordinate x.
ChartPtr make_line_chart();
/// C with the conjugate pair z, zc.
ChartPtr make_cplane_chart();
/// A single point (only tau lives here).
ChartPtr make_point_chart();

/// The unit 3-sphere in C^2 with coordinates z1, z1c, z2, z2c subject to
/// z2*z2c -> 1 - z1*z1c, carrying the global coframe
///   a  = z1c dz1 + z2c dz2      (the standard contact/connection form)
///   b  = z1 dz2  - z2 dz1
///   bc = z1c dz2c - z2c dz1c
/// with structure equations da = -b^bc, db = 2 a^b, dbc = -2 a^bc.
ChartPtr make_s3_chart();

/// How a block of variables is realized numerically.
struct NumericBlock {
  enum Kind { Real, UnitCircle, ConjPair, Sphere3, Tau, SimplexCoord } kind;
  int first_var = 0;  // chart index of the block's first variable
};

/// Builds the sampling model for a chart assembled from the given blocks.
NumericModel make_numeric_model(const ChartPtr& chart, std::vector<NumericBlock> blocks);

/// Infers the block structure by variable names/kinds for registered charts
/// (x/y/t* -> Real or SimplexCoord, units -> UnitCircle, z pairs -> ConjPair,
/// z1..z2c with a rule -> Sphere3, tau -> Tau).
NumericModel infer_numeric_model(const ChartPtr& chart);

}  // namespace ecw
