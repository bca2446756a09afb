#include "ecw/cartan.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace ecw {

SymMonomial sym_mono_mul(const SymMonomial& a, const SymMonomial& b) {
  SymMonomial out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

EquivariantForm EquivariantForm::from_form(ActionPtr a, Form f) {
  EquivariantForm w{std::move(a), {}};
  w.add({}, f);
  return w;
}

void EquivariantForm::add(const SymMonomial& mono, const Form& f) {
  if (f.is_zero()) return;
  auto [it, fresh] = comps.emplace(mono, f);
  if (!fresh) {
    it->second += f;
    if (it->second.is_zero()) comps.erase(it);
  }
}

EquivariantForm EquivariantForm::operator+(const EquivariantForm& o) const {
  EquivariantForm r = *this;
  for (const auto& [m, f] : o.comps) r.add(m, f);
  return r;
}

EquivariantForm EquivariantForm::operator-(const EquivariantForm& o) const {
  EquivariantForm r = *this;
  for (const auto& [m, f] : o.comps) r.add(m, -f);
  return r;
}

Form EquivariantForm::eval_at_basis(int i) const {
  Form out(action->space);
  for (const auto& [mono, f] : comps) {
    bool pure = std::all_of(mono.begin(), mono.end(), [&](int j) { return j == i; });
    if (pure) out += f;
  }
  return out;
}

int EquivariantForm::total_degree() const {
  std::set<int> degrees;
  for (const auto& [mono, f] : comps) {
    for (const auto& [mask, s] : f.terms()) {
      (void)s;
      degrees.insert(2 * static_cast<int>(mono.size()) + std::popcount(mask));
    }
  }
  if (degrees.empty()) return 0;
  return degrees.size() == 1 ? *degrees.begin() : -1;
}

std::string EquivariantForm::str() const {
  if (comps.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, f] : comps) {
    if (!first) os << " + ";
    first = false;
    std::string key;
    for (int j : mono) {
      if (!key.empty()) key += "*";
      key += action->group->algebra->dual_basis[j];
    }
    if (key.empty())
      os << f.str();
    else
      os << key << "*(" << f.str() << ")";
  }
  return os.str();
}

EquivariantForm cartan_d(const EquivariantForm& w) {
  EquivariantForm out = EquivariantForm::zero(w.action);
  const int rank = w.action->group->rank;
  for (const auto& [mono, f] : w.comps) {
    out.add(mono, exterior_d(f));
    for (int j = 0; j < rank; ++j) {
      Form c = contract(w.action->fundamental[j], f);
      if (!c.is_zero()) out.add(sym_mono_mul(mono, {j}), c);
    }
  }
  return out;
}

Form cartan_d_defect(const EquivariantForm& w, int basis_index) {
  return cartan_d(cartan_d(w)).eval_at_basis(basis_index);
}

EquivariantForm wedge_equivariant(const EquivariantForm& a, const EquivariantForm& b) {
  if (a.action != b.action) throw std::invalid_argument("action mismatch in equivariant wedge");
  EquivariantForm out = EquivariantForm::zero(a.action);
  for (const auto& [ma, fa] : a.comps)
    for (const auto& [mb, fb] : b.comps) out.add(sym_mono_mul(ma, mb), wedge(fa, fb));
  return out;
}

bool check_equivariance(const EquivariantForm& w) {
  for (const auto& [mono, f] : w.comps) {
    (void)mono;
    if (!w.action->is_invariant(f)) return false;
  }
  return true;
}

}  // namespace ecw
