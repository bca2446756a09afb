#include "ecw/json_io.hpp"

#include <sstream>

#include "json.hpp"

namespace ecw {

using nlohmann::json;

namespace {

json scalar_to_json_value(const Scalar& s) {
  json arr = json::array();
  for (const auto& [e, c] : s.terms()) {
    json term = json::array();
    term.push_back(e);
    term.push_back({c.re().num(), c.re().den(), c.im().num(), c.im().den()});
    arr.push_back(term);
  }
  return arr;
}

Scalar scalar_from_json_value(const ChartPtr& chart, const json& arr) {
  Scalar s(chart);
  for (const auto& term : arr) {
    ExpVec e = term.at(0).get<ExpVec>();
    const auto& c = term.at(1);
    GaussianRational g(Rational(c.at(0).get<long long>(), c.at(1).get<long long>()),
                       Rational(c.at(2).get<long long>(), c.at(3).get<long long>()));
    s += Scalar::monomial(chart, std::move(e), g);
  }
  return s;
}

}  // namespace

std::string scalar_to_json(const Scalar& s) { return scalar_to_json_value(s).dump(); }

std::string form_to_json(const Form& f) {
  json arr = json::array();
  for (const auto& [mask, coeff] : f.terms()) {
    json gens = json::array();
    for (int g = 0; g < 32; ++g)
      if (mask & (GenMask(1) << g)) gens.push_back(f.chart()->gen_name(g));
    arr.push_back(json::array({scalar_to_json_value(coeff), gens}));
  }
  return arr.dump();
}

Scalar scalar_from_json(const ChartPtr& chart, const std::string& text) {
  return scalar_from_json_value(chart, json::parse(text));
}

Form form_from_json(const ChartPtr& chart, const std::string& text) {
  json arr = json::parse(text);
  Form f(chart);
  for (const auto& term : arr) {
    Scalar coeff = scalar_from_json_value(chart, term.at(0));
    GenMask mask = 0;
    for (const auto& name : term.at(1)) {
      int g = chart->gen_index(name.get<std::string>());
      if (g < 0) throw std::invalid_argument("unknown generator in JSON form");
      mask |= GenMask(1) << g;
    }
    f.add_term(coeff, mask);
  }
  return f;
}

namespace {

std::string latex_name(const std::string& n) {
  // dz1c -> d\bar{z}_1 style touch-ups; keeps plain names otherwise
  std::string base = n;
  bool differential = base.size() > 1 && base[0] == 'd';
  if (differential) base = base.substr(1);
  bool conj = base.size() > 1 && base.back() == 'c' && base != "c";
  if (conj) base = base.substr(0, base.size() - 1);
  std::string sub;
  while (!base.empty() && isdigit(static_cast<unsigned char>(base.back()))) {
    sub.insert(sub.begin(), base.back());
    base.pop_back();
  }
  if (base == "tau") base = "\\tau";
  std::string out = conj ? "\\bar{" + base + "}" : base;
  if (!sub.empty()) out += "_{" + sub + "}";
  if (differential) out = "d" + out;
  return out;
}

std::string scalar_to_latex(const Scalar& s) {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    std::string mono;
    for (int v = 0; v < s.chart()->num_vars(); ++v) {
      if (e[v] == 0) continue;
      mono += latex_name(s.chart()->var(v).name);
      if (e[v] != 1) mono += "^{" + std::to_string(e[v]) + "}";
      mono += " ";
    }
    if (!first) os << " + ";
    first = false;
    std::string cs = c.str();
    if (mono.empty())
      os << cs;
    else if (c.is_one())
      os << mono;
    else if (cs == "-1")
      os << "-" << mono;
    else
      os << cs << " " << mono;
  }
  return os.str();
}

}  // namespace

std::string form_to_latex(const Form& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mask, coeff] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    std::string gens;
    for (int g = 0; g < 32; ++g) {
      if (mask & (GenMask(1) << g)) {
        if (!gens.empty()) gens += " \\wedge ";
        gens += latex_name(f.chart()->gen_name(g));
      }
    }
    if (gens.empty()) {
      os << scalar_to_latex(coeff);
    } else if (coeff.is_constant() && coeff.constant_term().is_one()) {
      os << gens;
    } else {
      os << "\\left(" << scalar_to_latex(coeff) << "\\right) " << gens;
    }
  }
  return os.str();
}

}  // namespace ecw
