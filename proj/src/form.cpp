#include "ecw/form.hpp"

#include <bit>
#include <ostream>
#include <sstream>

namespace ecw {

namespace {
int popcount(GenMask m) { return std::popcount(m); }
}  // namespace

int wedge_sign(GenMask a, GenMask b) {
  // parity of #{(i, j) : i in a, j in b, i > j}
  int inversions = 0;
  for (int j = 0; j < 32; ++j) {
    if (b & (GenMask(1) << j)) {
      GenMask higher = a & ~((GenMask(2) << j) - 1);
      inversions += popcount(higher);
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

Form Form::from_scalar(Scalar s) {
  Form f(s.chart());
  if (!s.is_zero()) f.terms_.emplace(GenMask(0), std::move(s));
  return f;
}

Form Form::generator(ChartPtr chart, const std::string& gen_name) {
  int g = chart->gen_index(gen_name);
  if (g < 0) throw std::invalid_argument("unknown generator " + gen_name + " in chart " + chart->name());
  Form f(chart);
  f.terms_.emplace(GenMask(1) << g, Scalar::one(chart));
  return f;
}

Form Form::term(Scalar coeff, GenMask mask) {
  Form f(coeff.chart());
  f.add_term(coeff, mask);
  return f;
}

void Form::add_term(const Scalar& coeff, GenMask mask) {
  if (coeff.is_zero()) return;
  if (chart_ == nullptr) chart_ = coeff.chart();
  auto [it, fresh] = terms_.emplace(mask, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int Form::max_degree() const {
  int d = -1;
  for (const auto& [mask, s] : terms_) d = std::max(d, popcount(mask));
  return d;
}

bool Form::is_homogeneous(int degree) const {
  for (const auto& [mask, s] : terms_)
    if (popcount(mask) != degree) return false;
  return true;
}

Form Form::degree_part(int degree) const {
  Form f(chart_);
  for (const auto& [mask, s] : terms_)
    if (popcount(mask) == degree) f.terms_.emplace(mask, s);
  return f;
}

Form Form::operator-() const {
  Form f(chart_);
  for (const auto& [mask, s] : terms_) f.terms_.emplace(mask, -s);
  return f;
}

Form& Form::operator+=(const Form& o) {
  if (o.is_zero()) return *this;
  if (chart_ == nullptr) chart_ = o.chart_;
  if (!chart_->same_as(*o.chart_)) throw std::invalid_argument("chart mismatch in form sum");
  for (const auto& [mask, s] : o.terms_) add_term(s, mask);
  return *this;
}

Form& Form::operator-=(const Form& o) { return *this += -o; }

Form& Form::operator*=(const Scalar& s) {
  std::map<GenMask, Scalar> out;
  for (const auto& [mask, c] : terms_) {
    Scalar p = c * s;
    if (!p.is_zero()) out.emplace(mask, std::move(p));
  }
  terms_ = std::move(out);
  return *this;
}

Form& Form::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [mask, s] : terms_) s *= c;
  return *this;
}

Form Form::drop_generators(GenMask gens) const {
  Form f(chart_);
  for (const auto& [mask, s] : terms_)
    if ((mask & gens) == 0) f.terms_.emplace(mask, s);
  return f;
}

bool Form::has_generators(GenMask gens) const {
  for (const auto& [mask, s] : terms_)
    if (mask & gens) return true;
  return false;
}

Form wedge(const Form& a, const Form& b) {
  if (a.chart() && b.chart() && !a.chart()->same_as(*b.chart()))
    throw std::invalid_argument("chart mismatch in wedge");
  Form out(a.chart() ? a.chart() : b.chart());
  for (const auto& [ma, sa] : a.terms()) {
    for (const auto& [mb, sb] : b.terms()) {
      if (ma & mb) continue;
      Scalar c = sa * sb;
      if (wedge_sign(ma, mb) < 0) c *= GaussianRational(-1);
      out.add_term(c, ma | mb);
    }
  }
  return out;
}

Form exterior_d(const Form& a) {
  const ChartPtr& chart = a.chart();
  Form out(chart);
  for (const auto& [mask, coeff] : a.terms()) {
    // d(coefficient) ^ e_mask
    for (int v = 0; v < chart->num_vars(); ++v) {
      Scalar dv = coeff.derivative(v);
      if (dv.is_zero()) continue;
      const Form& dvar = chart->d_of_var(v);
      if (dvar.is_zero()) continue;
      Form piece = dv * dvar;
      out += wedge(piece, Form::term(Scalar::one(chart), mask));
    }
    // coefficient * d(e_mask) via Leibniz across the wedge monomial
    int position = 0;
    for (int g = 0; g < 32; ++g) {
      if (!(mask & (GenMask(1) << g))) continue;
      const Form& dg = chart->d_of_gen(g);
      if (!dg.is_zero()) {
        GenMask rest = mask & ~(GenMask(1) << g);
        // e_mask = sign * e_g ^ e_rest with sign = (-1)^position
        Form piece = wedge(dg, Form::term(Scalar::one(chart), rest));
        Scalar c = coeff;
        if (position % 2 == 1) c *= GaussianRational(-1);
        out += c * piece;
      }
      ++position;
    }
  }
  return out;
}

Form exterior_d_along(const Form& a, const std::vector<int>& vars) {
  const ChartPtr& chart = a.chart();
  Form out(chart);
  for (const auto& [mask, coeff] : a.terms()) {
    for (int v : vars) {
      Scalar dv = coeff.derivative(v);
      if (dv.is_zero()) continue;
      const Form& dvar = chart->d_of_var(v);
      if (dvar.is_zero()) continue;
      out += wedge(dv * dvar, Form::term(Scalar::one(chart), mask));
    }
  }
  // Structure terms belong to the block owning the generator; every chart we
  // split this way has flat blocks only, so requiring d_of_gen = 0 for the
  // listed variables' generators keeps the split honest.
  for (int v : vars) {
    int g = chart->generator_of_var(v);
    if (g >= 0 && !chart->d_of_gen(g).is_zero())
      throw std::invalid_argument("exterior_d_along on a non-flat block");
  }
  return out;
}

void VectorField::add(int gen, const Scalar& s) {
  if (chart && (gen < 0 || gen >= chart->num_gens()))
    throw std::invalid_argument("vector field references a foreign generator");
  if (s.is_zero()) return;
  auto [it, fresh] = coeffs.emplace(gen, s);
  if (!fresh) {
    it->second += s;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (const auto& [g, s] : o.coeffs) add(g, s);
  return *this;
}

VectorField VectorField::operator*(const Scalar& s) const {
  VectorField out{chart, {}};
  for (const auto& [g, c] : coeffs) out.add(g, c * s);
  return out;
}

bool VectorField::is_zero() const { return coeffs.empty(); }

Form contract(const VectorField& X, const Form& a) {
  if (X.chart && a.chart() && !X.chart->same_as(*a.chart()))
    throw std::invalid_argument("chart mismatch in contraction");
  Form out(a.chart());
  for (const auto& [mask, coeff] : a.terms()) {
    int position = 0;
    for (int g = 0; g < 32; ++g) {
      if (!(mask & (GenMask(1) << g))) continue;
      auto it = X.coeffs.find(g);
      if (it != X.coeffs.end()) {
        Scalar c = coeff * it->second;
        if (position % 2 == 1) c *= GaussianRational(-1);
        out.add_term(c, mask & ~(GenMask(1) << g));
      }
      ++position;
    }
  }
  return out;
}

Form lie_derivative(const VectorField& X, const Form& a) {
  return contract(X, exterior_d(a)) + exterior_d(contract(X, a));
}

VectorField vf_bracket(const VectorField& a, const VectorField& b) {
  // [a,b](f) = a(b(f)) - b(a(f)); on a flat chart the frame coefficients are
  // per-variable and the usual coordinate formula applies.
  const ChartPtr& chart = a.chart;
  auto apply = [&](const VectorField& X, const Scalar& s) {
    Scalar out(chart);
    for (const auto& [g, c] : X.coeffs) {
      // frame coefficient pairs with dv of the generator's variable
      int v = -1;
      for (int i = 0; i < chart->num_vars(); ++i)
        if (chart->generator_of_var(i) == g) v = i;
      if (v < 0) throw std::invalid_argument("vf_bracket needs a flat chart");
      out += c * s.derivative(v);
    }
    return out;
  };
  VectorField out{chart, {}};
  for (int g = 0; g < chart->num_gens(); ++g) {
    int v = -1;
    for (int i = 0; i < chart->num_vars(); ++i)
      if (chart->generator_of_var(i) == g) v = i;
    if (v < 0) continue;
    Scalar av(chart), bv(chart);
    if (auto it = a.coeffs.find(g); it != a.coeffs.end()) av = it->second;
    if (auto it = b.coeffs.find(g); it != b.coeffs.end()) bv = it->second;
    out.add(g, apply(a, bv) - apply(b, av));
  }
  return out;
}

Form integrate_param(const Form& a, const std::string& t_name) {
  const ChartPtr& chart = a.chart();
  int tv = chart->var_index(t_name);
  if (tv < 0) throw std::invalid_argument("unknown parameter " + t_name);
  if (chart->var(tv).kind != VarKind::Ordinary)
    throw std::invalid_argument("non-polynomial dependence on parameter " + t_name);
  int tg = chart->generator_of_var(tv);
  if (tg < 0) throw std::invalid_argument("parameter without generator: " + t_name);
  GenMask tbit = GenMask(1) << tg;
  Form out(chart);
  for (const auto& [mask, coeff] : a.terms()) {
    if (!(mask & tbit)) continue;  // fiber integration kills dt-free terms
    GenMask rest = mask & ~tbit;
    // e_mask = sign * dt ^ e_rest, sign = (-1)^{#gens below tg in rest}
    int below = popcount(rest & (tbit - 1));
    // integrate t^n over [0,1] -> 1/(n+1); result must not mention t
    Scalar integrated(chart);
    for (const auto& [e, c] : coeff.terms()) {
      int n = e[tv];
      ExpVec reste = e;
      reste[tv] = 0;
      integrated += Scalar::monomial(chart, reste, c * GaussianRational(Rational(1, n + 1)));
    }
    if (below % 2 == 1) integrated *= GaussianRational(-1);
    out.add_term(integrated, rest);
  }
  return out;
}

std::string Form::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mask, s] : terms_) {
    if (!first) os << " + ";
    first = false;
    std::string gens;
    for (int g = 0; g < 32; ++g) {
      if (mask & (GenMask(1) << g)) {
        if (!gens.empty()) gens += "∧";
        gens += chart_->gen_name(g);
      }
    }
    if (gens.empty()) {
      os << s.str();
    } else if (s.is_constant() && s.constant_term().is_one()) {
      os << gens;
    } else if (s.terms().size() == 1) {
      std::string cs = s.str();
      if (cs == "-1")
        os << "-" << gens;
      else
        os << cs << "*" << gens;
    } else {
      os << "(" << s.str() << ")*" << gens;
    }
  }
  return os.str();
}

Substitution::Substitution(ChartPtr source, ChartPtr target, std::vector<Scalar> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_->num_vars())
    throw std::invalid_argument("substitution image count mismatch");
  for (int v = 0; v < source_->num_vars(); ++v) {
    if (!images_[v].chart()->same_as(*target_))
      throw std::invalid_argument("substitution image on wrong chart");
    VarKind kind = source_->var(v).kind;
    if (kind == VarKind::Unit || kind == VarKind::FormalConstant) {
      if (!images_[v].is_invertible_monomial())
        throw std::invalid_argument("unit variable " + source_->var(v).name +
                                    " must map to an invertible monomial");
    }
  }
  // relations must map to zero
  for (const RewriteRule& rule : source_->rules()) {
    Scalar lhs = apply(Scalar::monomial(source_, rule.lhs, GaussianRational(1)));
    Scalar rhs(target_);
    for (const auto& [m, c] : rule.rhs) rhs += apply(Scalar::monomial(source_, m, c));
    if (lhs != rhs) throw std::invalid_argument("substitution violates a chart relation");
  }
  // coframe images via the frame recovery table
  gen_images_.reserve(source_->num_gens());
  for (int g = 0; g < source_->num_gens(); ++g) {
    Form img(target_);
    for (const auto& [v, coeff] : source_->frame_from_dv(g)) {
      img += apply(coeff) * exterior_d(Form::from_scalar(images_[v]));
    }
    gen_images_.push_back(std::move(img));
  }
  // frame consistency: the derived coframe images must reproduce d(image(v))
  for (int v = 0; v < source_->num_vars(); ++v) {
    const Form& dv = source_->d_of_var(v);
    Form lhs(target_);
    for (const auto& [mask, coeff] : dv.terms()) {
      Form piece = Form::from_scalar(apply(coeff));
      for (int g = 0; g < 32; ++g)
        if (mask & (GenMask(1) << g)) piece = wedge(piece, gen_images_[g]);
      lhs += piece;
    }
    if (lhs != exterior_d(Form::from_scalar(images_[v])))
      throw std::invalid_argument("substitution breaks the coframe structure at " +
                                  source_->var(v).name);
  }
}

Substitution Substitution::renaming(ChartPtr source, ChartPtr target,
                                    const std::vector<int>& var_map) {
  std::vector<Scalar> images;
  images.reserve(source->num_vars());
  for (int v = 0; v < source->num_vars(); ++v) {
    ExpVec e(target->num_vars(), 0);
    if (var_map[v] < 0) throw std::invalid_argument("renaming misses a variable");
    e[var_map[v]] = 1;
    images.push_back(Scalar::monomial(target, std::move(e), GaussianRational(1)));
  }
  return Substitution(std::move(source), std::move(target), std::move(images));
}

Scalar Substitution::apply(const Scalar& s) const {
  Scalar out(target_);
  for (const auto& [e, c] : s.terms()) {
    Scalar term = Scalar::constant(target_, c);
    for (int v = 0; v < source_->num_vars(); ++v) {
      if (e[v] != 0) term *= images_[v].pow(e[v]);
    }
    out += term;
  }
  return out;
}

Form Substitution::apply(const Form& f) const {
  if (!f.chart()->same_as(*source_))
    throw std::invalid_argument("pullback of a form from the wrong chart");
  Form out(target_);
  for (const auto& [mask, coeff] : f.terms()) {
    Form piece = Form::from_scalar(apply(coeff));
    for (int g = 0; g < 32 && !piece.is_zero(); ++g) {
      if (mask & (GenMask(1) << g)) piece = wedge(piece, gen_images_[g]);
    }
    out += piece;
  }
  return out;
}

Substitution Substitution::then(const Substitution& other) const {
  if (!target_->same_as(*other.source_))
    throw std::invalid_argument("substitution composition chart mismatch");
  std::vector<Scalar> images;
  images.reserve(source_->num_vars());
  for (int v = 0; v < source_->num_vars(); ++v) images.push_back(other.apply(images_[v]));
  return Substitution(source_, other.target_, std::move(images));
}

}  // namespace ecw
