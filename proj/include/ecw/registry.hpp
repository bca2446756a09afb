#pragma once

#include "ecw/bundle.hpp"
#include "ecw/standard_charts.hpp"

namespace ecw {

/// Named catalogue of charts, algebras, group models, actions, invariant
/// polynomials, bundles and connections used by the suites and the CLI.
/// Everything is validated eagerly at construction.
class Registry {
 public:
  static const Registry& instance();

  ChartPtr chart(const std::string& name) const;
  AlgebraPtr algebra(const std::string& name) const;
  TorusPtr torus(const std::string& name) const;
  ActionPtr action(const std::string& name) const;
  const InvariantPolynomial& polynomial(const std::string& name) const;
  BundlePtr bundle(const std::string& name) const;
  /// The bundle's registered connection of the given name ("std" is the
  /// primary one used by the CLI).
  const Connection& connection(const std::string& bundle_name, const std::string& conn_name) const;
  const LineBundleModel& line_bundle(const std::string& name) const;

  std::vector<std::string> chart_names() const;
  std::vector<std::string> algebra_names() const;
  std::vector<std::string> action_names() const;
  std::vector<std::string> polynomial_names() const;
  std::vector<std::string> bundle_names() const;
  std::vector<std::string> connection_names(const std::string& bundle_name) const;
  std::vector<std::string> line_bundle_names() const;

 private:
  Registry();
  std::map<std::string, ChartPtr> charts_;
  std::map<std::string, AlgebraPtr> algebras_;
  std::map<std::string, TorusPtr> tori_;
  std::map<std::string, ActionPtr> actions_;
  std::map<std::string, InvariantPolynomial> polynomials_;
  std::map<std::string, BundlePtr> bundles_;
  std::map<std::string, std::map<std::string, Connection>> connections_;
  std::map<std::string, LineBundleModel> line_bundles_;
};

}  // namespace ecw
