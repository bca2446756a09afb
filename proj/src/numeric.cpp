#include "ecw/numeric.hpp"

#include <bit>
#include <cmath>

namespace ecw {

namespace {
using cplx = std::complex<double>;

// sign of e_set ^ dp_j (append on the right): counts indices above j
int subset_append_sign(std::uint32_t set, int j) {
  std::uint32_t higher = set & ~((std::uint32_t(2) << j) - 1);
  return std::popcount(higher) % 2 == 0 ? 1 : -1;
}

// sign of dp_j ^ e_set (insert on the left): counts indices below j
int subset_prepend_sign(std::uint32_t set, int j) {
  std::uint32_t lower = set & ((std::uint32_t(1) << j) - 1);
  return std::popcount(lower) % 2 == 0 ? 1 : -1;
}
}  // namespace

cplx eval_scalar(const Scalar& s, const NumericModel& m, const std::vector<double>& params) {
  cplx total = 0.0;
  for (const auto& [e, c] : s.terms()) {
    cplx term(c.re().to_double(), c.im().to_double());
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      cplx val = m.value(static_cast<int>(v), params);
      term *= std::pow(val, e[v]);
    }
    total += term;
  }
  return total;
}

NumericForm eval_form(const Form& f, const NumericModel& m, const std::vector<double>& params) {
  const ChartPtr& chart = f.chart();
  // numeric coframe: e_g as a covector over parameter directions
  std::vector<std::vector<cplx>> gen_vec(chart->num_gens(),
                                         std::vector<cplx>(m.num_params, 0.0));
  for (int g = 0; g < chart->num_gens(); ++g) {
    for (const auto& [v, coeff] : chart->frame_from_dv(g)) {
      cplx c = eval_scalar(coeff, m, params);
      for (int j = 0; j < m.num_params; ++j) gen_vec[g][j] += c * m.dvalue(v, j, params);
    }
  }
  NumericForm out;
  for (const auto& [mask, coeff] : f.terms()) {
    NumericForm partial{{0u, eval_scalar(coeff, m, params)}};
    for (int g = 0; g < 32; ++g) {
      if (!(mask & (GenMask(1) << g))) continue;
      NumericForm next;
      for (const auto& [set, val] : partial) {
        for (int j = 0; j < m.num_params; ++j) {
          if (set & (std::uint32_t(1) << j)) continue;
          cplx contrib = val * gen_vec[g][j] * double(subset_append_sign(set, j));
          next[set | (std::uint32_t(1) << j)] += contrib;
        }
      }
      partial = std::move(next);
    }
    for (const auto& [set, val] : partial) out[set] += val;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (std::abs(it->second) == 0.0)
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

double numeric_form_norm(const NumericForm& a) {
  double n = 0.0;
  for (const auto& [s, v] : a) n = std::max(n, std::abs(v));
  return n;
}

double numeric_form_distance(const NumericForm& a, const NumericForm& b) {
  double d = 0.0;
  for (const auto& [s, v] : a) {
    auto it = b.find(s);
    d = std::max(d, std::abs(v - (it == b.end() ? cplx(0.0) : it->second)));
  }
  for (const auto& [s, v] : b) {
    if (a.find(s) == a.end()) d = std::max(d, std::abs(v));
  }
  return d;
}

double finite_difference_d_error(const Form& f, const NumericModel& m,
                                 const std::vector<double>& params, double h) {
  NumericForm sym = eval_form(exterior_d(f), m, params);
  // central differences of the pulled-back components
  auto components_at = [&](const std::vector<double>& p) { return eval_form(f, m, p); };
  NumericForm fd;
  for (int j = 0; j < m.num_params; ++j) {
    std::vector<double> up = params, dn = params;
    up[j] += h;
    dn[j] -= h;
    NumericForm plus = components_at(up);
    NumericForm minus = components_at(dn);
    NumericForm deriv;
    for (const auto& [s, v] : plus) deriv[s] += v / (2 * h);
    for (const auto& [s, v] : minus) deriv[s] -= v / (2 * h);
    for (const auto& [s, v] : deriv) {
      if (s & (std::uint32_t(1) << j)) continue;
      fd[s | (std::uint32_t(1) << j)] += v * double(subset_prepend_sign(s, j));
    }
  }
  double scale = std::max(numeric_form_norm(sym), numeric_form_norm(fd));
  double dist = numeric_form_distance(sym, fd);
  if (scale < 1e-9) return dist;
  return dist / scale;
}

double numeric_equality_error(const Form& a, const Form& b, const NumericModel& m,
                              const std::vector<double>& params) {
  NumericForm na = eval_form(a, m, params);
  NumericForm nb = eval_form(b, m, params);
  double scale = std::max(numeric_form_norm(na), numeric_form_norm(nb));
  double dist = numeric_form_distance(na, nb);
  if (scale < 1e-9) return dist;
  return dist / scale;
}

}  // namespace ecw
