#include "ecw/random_gen.hpp"

#include <bit>

namespace ecw {

GaussianRational random_coeff(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 2);
  GaussianRational c(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
  if (c.is_zero()) c = GaussianRational(1);
  return c;
}

Scalar random_scalar(const ChartPtr& chart, std::mt19937_64& rng, int max_terms, int exp_bound) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> nat(0, exp_bound);
  std::uniform_int_distribution<int> laurent(-exp_bound, exp_bound);
  Scalar s(chart);
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    ExpVec e(chart->num_vars(), 0);
    for (int v = 0; v < chart->num_vars(); ++v) {
      switch (chart->var(v).kind) {
        case VarKind::Ordinary: e[v] = nat(rng); break;
        case VarKind::Unit: e[v] = laurent(rng); break;
        case VarKind::FormalConstant: e[v] = 0; break;
      }
    }
    s += Scalar::monomial(chart, std::move(e), random_coeff(rng));
  }
  return s;
}

Form random_form(const ChartPtr& chart, std::mt19937_64& rng, int degree, int max_terms) {
  const int ng = chart->num_gens();
  if (degree > ng) return Form::zero(chart);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> pick(0, ng - 1);
  Form f(chart);
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    GenMask mask = 0;
    while (std::popcount(mask) < degree) mask |= GenMask(1) << pick(rng);
    f.add_term(random_scalar(chart, rng), mask);
  }
  return f;
}

Form random_form_mixed(const ChartPtr& chart, std::mt19937_64& rng, int max_terms) {
  std::uniform_int_distribution<int> deg(0, std::min(3, chart->num_gens()));
  Form f(chart);
  int n = std::uniform_int_distribution<int>(1, max_terms)(rng);
  for (int t = 0; t < n; ++t) f += random_form(chart, rng, deg(rng), 1);
  return f;
}

std::uint64_t derive_seed(std::uint64_t master, const std::string& label) {
  std::uint64_t h = 1469598103934665603ull ^ master;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace ecw
