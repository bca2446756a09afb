#include "ecw/chart.hpp"

#include <algorithm>
#include <numeric>

#include "ecw/form.hpp"
#include "ecw/scalar.hpp"

namespace ecw {

ChartModel::~ChartModel() = default;

int ChartModel::var_index(const std::string& name) const {
  for (int i = 0; i < num_vars(); ++i)
    if (vars_[i].name == name) return i;
  return -1;
}

int ChartModel::gen_index(const std::string& name) const {
  for (int i = 0; i < num_gens(); ++i)
    if (gen_names_[i] == name) return i;
  return -1;
}

const Form& ChartModel::d_of_var(int v) const { return *d_var_[v]; }
const Form& ChartModel::d_of_gen(int g) const { return *d_gen_[g]; }
const std::vector<std::pair<int, Scalar>>& ChartModel::frame_from_dv(int g) const {
  return frame_rows_[g];
}

bool ChartModel::monomial_less(const ExpVec& a, const ExpVec& b) const {
  long da = 0, db = 0;
  for (int e : a) da += e > 0 ? e : -e;
  for (int e : b) db += e > 0 ? e : -e;
  if (da != db) return da < db;
  // graded lex with the last declared variable most significant
  for (int i = num_vars() - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

void ChartModel::reduce_terms(std::map<ExpVec, GaussianRational>& terms) const {
  if (rules_.empty()) return;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = terms.begin(); it != terms.end(); ++it) {
      const ExpVec& mono = it->first;
      for (const RewriteRule& rule : rules_) {
        bool divisible = true;
        for (int v = 0; v < num_vars(); ++v) {
          if (rule.lhs[v] > 0 && mono[v] < rule.lhs[v]) {
            divisible = false;
            break;
          }
        }
        if (!divisible) continue;
        GaussianRational coeff = it->second;
        ExpVec cofactor = mono;
        for (int v = 0; v < num_vars(); ++v) cofactor[v] -= rule.lhs[v];
        terms.erase(it);
        for (const auto& [rm, rc] : rule.rhs) {
          ExpVec e = cofactor;
          for (int v = 0; v < num_vars(); ++v) e[v] += rm[v];
          GaussianRational c = coeff * rc;
          auto [pos, fresh] = terms.emplace(e, c);
          if (!fresh) {
            pos->second += c;
            if (pos->second.is_zero()) terms.erase(pos);
          } else if (pos->second.is_zero()) {
            terms.erase(pos);
          }
        }
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
}

int ChartBuilder::add_ordinary(const std::string& name) {
  int v = static_cast<int>(vars_.size());
  vars_.push_back({name, VarKind::Ordinary, v});
  gen_names_.push_back("d" + name);
  gen_of_var_.push_back(static_cast<int>(gen_names_.size()) - 1);
  return v;
}

int ChartBuilder::add_unit(const std::string& name) {
  int v = static_cast<int>(vars_.size());
  vars_.push_back({name, VarKind::Unit, v});
  gen_names_.push_back("d" + name);
  gen_of_var_.push_back(static_cast<int>(gen_names_.size()) - 1);
  return v;
}

int ChartBuilder::add_formal(const std::string& name) {
  int v = static_cast<int>(vars_.size());
  vars_.push_back({name, VarKind::FormalConstant, v});
  gen_of_var_.push_back(-1);
  return v;
}

int ChartBuilder::add_frame_variable(const std::string& name) {
  int v = static_cast<int>(vars_.size());
  vars_.push_back({name, VarKind::Ordinary, v});
  gen_of_var_.push_back(-1);
  return v;
}

int ChartBuilder::add_frame_generator(const std::string& name) {
  gen_names_.push_back(name);
  return static_cast<int>(gen_names_.size()) - 1;
}

void ChartBuilder::set_conjugate_pair(int a, int b) {
  vars_[a].conj = b;
  vars_[b].conj = a;
}

void ChartBuilder::set_d_var(
    int var, std::vector<std::pair<int, std::vector<std::pair<ExpVec, GaussianRational>>>> expansion) {
  RawForm rf;
  for (auto& [gen, terms] : expansion) rf.terms.push_back({GenMask(1) << gen, std::move(terms)});
  d_var_override_[var] = std::move(rf);
}

void ChartBuilder::set_d_gen(
    int gen, std::vector<std::pair<GenMask, std::vector<std::pair<ExpVec, GaussianRational>>>> expansion) {
  d_gen_override_[gen] = RawForm{std::move(expansion)};
}

void ChartBuilder::set_frame_row(
    int gen, std::vector<std::pair<int, std::vector<std::pair<ExpVec, GaussianRational>>>> row) {
  frame_override_[gen] = std::move(row);
}

void ChartBuilder::add_rule(ExpVec lhs, std::vector<std::pair<ExpVec, GaussianRational>> rhs) {
  rules_.push_back(RewriteRule{std::move(lhs), std::move(rhs)});
}

int ChartBuilder::append_chart(const ChartModel& block) {
  int voff = static_cast<int>(vars_.size());
  int goff = static_cast<int>(gen_names_.size());
  for (int i = 0; i < block.num_vars(); ++i) {
    const Variable& bv = block.var(i);
    for (const Variable& existing : vars_) {
      if (existing.name == bv.name)
        throw std::invalid_argument("variable name clash in chart product: " + bv.name);
    }
    vars_.push_back({bv.name, bv.kind, bv.conj + voff});
    gen_of_var_.push_back(-1);  // fixed below
  }
  for (int g = 0; g < block.num_gens(); ++g) gen_names_.push_back(block.gen_name(g));
  for (int i = 0; i < block.num_vars(); ++i) {
    int bg = block.generator_of_var(i);
    gen_of_var_[voff + i] = bg < 0 ? -1 : bg + goff;
  }
  auto shift_terms = [&](const Scalar& s) {
    std::vector<std::pair<ExpVec, GaussianRational>> out;
    for (const auto& [e, c] : s.terms()) {
      ExpVec full(vars_.size(), 0);
      for (int v = 0; v < block.num_vars(); ++v) full[voff + v] = e[v];
      out.push_back({std::move(full), c});
    }
    return out;
  };
  for (const RewriteRule& r : block.rules()) {
    ExpVec lhs(vars_.size(), 0);
    for (int v = 0; v < block.num_vars(); ++v) lhs[voff + v] = r.lhs[v];
    std::vector<std::pair<ExpVec, GaussianRational>> rhs;
    for (const auto& [m, c] : r.rhs) {
      ExpVec e(vars_.size(), 0);
      for (int v = 0; v < block.num_vars(); ++v) e[voff + v] = m[v];
      rhs.push_back({std::move(e), c});
    }
    rules_.push_back(RewriteRule{std::move(lhs), std::move(rhs)});
  }
  auto shift_form = [&](const Form& f) {
    RawForm rf;
    for (const auto& [mask, coeff] : f.terms()) {
      GenMask shifted = 0;
      for (int g = 0; g < 32; ++g)
        if (mask & (GenMask(1) << g)) shifted |= GenMask(1) << (g + goff);
      rf.terms.push_back({shifted, shift_terms(coeff)});
    }
    return rf;
  };
  for (int v = 0; v < block.num_vars(); ++v) {
    if (block.var(v).kind == VarKind::FormalConstant) continue;
    const Form& dv = block.d_of_var(v);
    bool plain = block.generator_of_var(v) >= 0;
    if (!plain) d_var_override_[voff + v] = shift_form(dv);
  }
  for (int g = 0; g < block.num_gens(); ++g) {
    const Form& dg = block.d_of_gen(g);
    if (!dg.is_zero()) d_gen_override_[g + goff] = shift_form(dg);
    const auto& row = block.frame_from_dv(g);
    bool trivial = row.size() == 1 && block.generator_of_var(row[0].first) == g;
    if (trivial) {
      const Scalar& c = row[0].second;
      trivial = c.is_constant() && c.constant_term().is_one();
    }
    if (!trivial) {
      std::vector<std::pair<int, std::vector<std::pair<ExpVec, GaussianRational>>>> shifted_row;
      for (const auto& [v, s] : row) shifted_row.push_back({v + voff, shift_terms(s)});
      frame_override_[g + goff] = std::move(shifted_row);
    }
  }
  return voff;
}

ChartPtr ChartBuilder::build() {
  if (gen_names_.size() > 32)
    throw std::invalid_argument("chart exceeds 32 generators");
  // blocks appended before later variables store shorter exponent vectors;
  // pad everything to the final arity
  auto pad = [n = vars_.size()](ExpVec& e) {
    if (e.size() < n) e.resize(n, 0);
  };
  for (RewriteRule& r : rules_) {
    pad(r.lhs);
    for (auto& [m, c] : r.rhs) pad(m);
  }
  for (auto& [v, rf] : d_var_override_)
    for (auto& [mask, terms] : rf.terms)
      for (auto& [m, c] : terms) pad(m);
  for (auto& [g, rf] : d_gen_override_)
    for (auto& [mask, terms] : rf.terms)
      for (auto& [m, c] : terms) pad(m);
  for (auto& [g, row] : frame_override_)
    for (auto& [v, terms] : row)
      for (auto& [m, c] : terms) pad(m);
  auto chart = std::shared_ptr<ChartModel>(new ChartModel());
  chart->name_ = name_;
  chart->vars_ = vars_;
  chart->gen_names_ = gen_names_;
  chart->gen_of_var_ = gen_of_var_;
  chart->rules_ = rules_;
  const int nv = chart->num_vars();
  const int ng = chart->num_gens();

  // Rule sanity: lhs a pure monomial (N exponents) strictly above every rhs
  // monomial in the chart order.
  for (const RewriteRule& r : chart->rules_) {
    if (static_cast<int>(r.lhs.size()) != nv)
      throw std::invalid_argument("rule arity mismatch");
    for (int e : r.lhs)
      if (e < 0) throw std::invalid_argument("rule lhs must be a monomial");
    for (const auto& [m, c] : r.rhs) {
      (void)c;
      if (!chart->monomial_less(m, r.lhs))
        throw std::invalid_argument("rewrite rule does not decrease the monomial order");
    }
  }

  ChartPtr cp = chart;
  auto raw_to_form = [&](const RawForm& rf) {
    Form f(cp);
    for (const auto& [mask, terms] : rf.terms) {
      Scalar s(cp);
      for (const auto& [e, c] : terms) s += Scalar::monomial(cp, e, c);
      f.add_term(s, mask);
    }
    return f;
  };

  chart->d_var_.resize(nv);
  for (int v = 0; v < nv; ++v) {
    auto it = d_var_override_.find(v);
    if (it != d_var_override_.end()) {
      chart->d_var_[v] = std::make_unique<Form>(raw_to_form(it->second));
    } else if (chart->gen_of_var_[v] >= 0) {
      chart->d_var_[v] = std::make_unique<Form>(
          Form::generator(cp, chart->gen_names_[chart->gen_of_var_[v]]));
    } else {
      chart->d_var_[v] = std::make_unique<Form>(Form::zero(cp));
      if (chart->vars_[v].kind != VarKind::FormalConstant)
        throw std::invalid_argument("frame variable without differential table: " + chart->vars_[v].name);
    }
  }
  chart->d_gen_.resize(ng);
  for (int g = 0; g < ng; ++g) {
    auto it = d_gen_override_.find(g);
    chart->d_gen_[g] = std::make_unique<Form>(
        it != d_gen_override_.end() ? raw_to_form(it->second) : Form::zero(cp));
  }
  chart->frame_rows_.resize(ng);
  for (int g = 0; g < ng; ++g) {
    auto it = frame_override_.find(g);
    if (it != frame_override_.end()) {
      for (const auto& [v, terms] : it->second) {
        Scalar s(cp);
        for (const auto& [e, c] : terms) s += Scalar::monomial(cp, e, c);
        chart->frame_rows_[g].push_back({v, std::move(s)});
      }
    } else {
      // plain generator: e_g = d(its variable)
      int owner = -1;
      for (int v = 0; v < nv; ++v)
        if (chart->gen_of_var_[v] == g) owner = v;
      if (owner < 0)
        throw std::invalid_argument("frame generator without recovery row: " + chart->gen_names_[g]);
      chart->frame_rows_[g].push_back({owner, Scalar::one(cp)});
    }
  }

  // Consistency: sum_v N[g][v] * dv == e_g for every generator.
  for (int g = 0; g < ng; ++g) {
    Form lhs(cp);
    for (const auto& [v, s] : chart->frame_rows_[g]) lhs += s * chart->d_of_var(v);
    if (lhs != Form::generator(cp, chart->gen_names_[g]))
      throw std::invalid_argument("frame recovery row inconsistent for " + chart->gen_names_[g]);
  }
  // d^2 = 0 on variables and generators.
  for (int v = 0; v < nv; ++v) {
    if (!exterior_d(chart->d_of_var(v)).is_zero())
      throw std::invalid_argument("d^2 != 0 on variable " + chart->vars_[v].name);
  }
  for (int g = 0; g < ng; ++g) {
    if (!exterior_d(chart->d_of_gen(g)).is_zero())
      throw std::invalid_argument("d^2 != 0 on generator " + chart->gen_names_[g]);
  }
  return cp;
}

}  // namespace ecw
