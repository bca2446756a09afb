#include "ecw/scalar.hpp"

#include <ostream>
#include <sstream>

namespace ecw {

namespace {
void check_exponents(const ChartModel& chart, const ExpVec& e) {
  for (int v = 0; v < chart.num_vars(); ++v) {
    if (e[v] < 0 && chart.var(v).kind == VarKind::Ordinary)
      throw std::invalid_argument("negative exponent on ordinary variable " + chart.var(v).name);
  }
}
}  // namespace

Scalar Scalar::constant(ChartPtr chart, GaussianRational c) {
  Scalar s(std::move(chart));
  if (!c.is_zero()) s.terms_.emplace(ExpVec(s.chart_->num_vars(), 0), c);
  return s;
}

Scalar Scalar::variable(ChartPtr chart, const std::string& name, int power) {
  int v = chart->var_index(name);
  if (v < 0) throw std::invalid_argument("unknown variable " + name + " in chart " + chart->name());
  ExpVec e(chart->num_vars(), 0);
  e[v] = power;
  return monomial(std::move(chart), std::move(e), GaussianRational(1));
}

Scalar Scalar::monomial(ChartPtr chart, ExpVec e, GaussianRational c) {
  Scalar s(std::move(chart));
  if (static_cast<int>(e.size()) != s.chart_->num_vars())
    throw std::invalid_argument("exponent vector arity mismatch");
  check_exponents(*s.chart_, e);
  if (!c.is_zero()) s.terms_.emplace(std::move(e), c);
  s.normalize();
  return s;
}

bool Scalar::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const ExpVec& e = terms_.begin()->first;
  for (int x : e)
    if (x != 0) return false;
  return true;
}

GaussianRational Scalar::constant_term() const {
  ExpVec zero(chart_->num_vars(), 0);
  auto it = terms_.find(zero);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void Scalar::insert_term(const ExpVec& e, const GaussianRational& c) {
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Scalar::normalize() {
  chart_->reduce_terms(terms_);
  for (const auto& [e, c] : terms_) check_exponents(*chart_, e);
}

Scalar Scalar::operator-() const {
  Scalar r(chart_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (chart_ == nullptr) chart_ = o.chart_;
  if (!chart_->same_as(*o.chart_)) throw std::invalid_argument("chart mismatch in scalar sum");
  for (const auto& [e, c] : o.terms_) insert_term(e, c);
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (chart_ == nullptr) chart_ = o.chart_;
  if (!chart_->same_as(*o.chart_)) throw std::invalid_argument("chart mismatch in scalar product");
  std::map<ExpVec, GaussianRational> out;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      ExpVec e = ea;
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      GaussianRational c = ca * cb;
      auto [it, fresh] = out.emplace(std::move(e), c);
      if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  terms_ = std::move(out);
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

bool Scalar::is_invertible_monomial() const {
  if (terms_.size() != 1) return false;
  const ExpVec& e = terms_.begin()->first;
  for (int v = 0; v < chart_->num_vars(); ++v) {
    if (e[v] != 0 && chart_->var(v).kind == VarKind::Ordinary) return false;
  }
  return true;
}

Scalar Scalar::inverse() const {
  if (!is_invertible_monomial())
    throw std::invalid_argument("scalar is not an invertible monomial");
  const auto& [e, c] = *terms_.begin();
  ExpVec inv = e;
  for (int& x : inv) x = -x;
  return monomial(chart_, std::move(inv), c.inverse());
}

Scalar Scalar::pow(int n) const {
  if (n == 0) return one(chart_);
  if (n < 0) return inverse().pow(-n);
  Scalar r = one(chart_);
  for (int k = 0; k < n; ++k) r *= *this;
  return r;
}

Scalar Scalar::derivative(int v) const {
  Scalar r(chart_);
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    ExpVec d = e;
    d[v] -= 1;
    r.insert_term(d, c * GaussianRational(e[v]));
  }
  r.normalize();
  return r;
}

Scalar Scalar::transport(const ChartPtr& target, const std::vector<int>& var_map) const {
  Scalar r(target);
  for (const auto& [e, c] : terms_) {
    ExpVec t(target->num_vars(), 0);
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] != 0) {
        if (var_map[v] < 0) throw std::invalid_argument("transport misses variable");
        t[var_map[v]] += e[v];
      }
    }
    r.insert_term(t, c);
  }
  r.normalize();
  return r;
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (int v = 0; v < chart_->num_vars(); ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += chart_->var(v).name;
      if (e[v] != 1) mono += "^" + std::to_string(e[v]);
    }
    std::string cs = c.str();
    if (!first) os << " + ";
    first = false;
    if (mono.empty()) {
      os << cs;
    } else if (c.is_one()) {
      os << mono;
    } else if (cs == "-1") {
      os << "-" << mono;
    } else {
      os << cs << "*" << mono;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace ecw
