#include "ecw/getzler.hpp"

#include <algorithm>
#include <sstream>

#include "ecw/json_io.hpp"
#include "ecw/random_gen.hpp"

namespace ecw {

namespace {

GetzlerCochain scaled(const GetzlerCochain& f, const GaussianRational& c) {
  GetzlerCochain out = GetzlerCochain::zero(f.space, f.level);
  for (const auto& [mono, form] : f.comps) out.add(mono, form * c);
  return out;
}

std::vector<int> space_vars_of(const SpacePtr& s, int level) {
  return s->level(level).space_vars;
}

std::vector<int> group_vars_of(const SpacePtr& s, int level) {
  std::vector<int> out;
  for (const auto& block : s->level(level).group_blocks)
    out.insert(out.end(), block.begin(), block.end());
  return out;
}

/// fundamental field of basis j transported to the level chart
VectorField fundamental_on_level(const SpacePtr& s, int level, int j) {
  const LevelChart& lc = s->level(level);
  const ActionPtr& a = s->action();
  VectorField out = VectorField::zero(lc.chart);
  std::vector<int> vm(a->space->num_vars());
  for (int v = 0; v < a->space->num_vars(); ++v) vm[v] = lc.space_vars[v];
  for (const auto& [g, coeff] : a->fundamental[j].coeffs)
    out.add(lc.space_gens[g], coeff.transport(lc.chart, vm));
  return out;
}

Form d_space(const SpacePtr& s, int level, const Form& f) {
  return exterior_d_along(f, space_vars_of(s, level));
}

Form d_group(const SpacePtr& s, int level, const Form& f) {
  return exterior_d_along(f, group_vars_of(s, level));
}

/// left-invariant tangent insertion at the given copy and basis direction
VectorField insertion_field(const SpacePtr& s, int level, int copy, int beta) {
  const LevelChart& lc = s->level(level);
  int v = lc.group_blocks[copy][beta];
  VectorField out = VectorField::zero(lc.chart);
  out.add(lc.chart->generator_of_var(v),
          Scalar::variable(lc.chart, lc.chart->var(v).name) * GaussianRational::i());
  return out;
}

}  // namespace

void GetzlerCochain::add(const SymMonomial& mono, const Form& f) {
  if (f.is_zero()) return;
  auto [it, fresh] = comps.emplace(mono, f);
  if (!fresh) {
    it->second += f;
    if (it->second.is_zero()) comps.erase(it);
  }
}

GetzlerCochain GetzlerCochain::operator+(const GetzlerCochain& o) const {
  GetzlerCochain r = *this;
  for (const auto& [m, f] : o.comps) r.add(m, f);
  return r;
}

GetzlerCochain GetzlerCochain::operator-(const GetzlerCochain& o) const {
  GetzlerCochain r = *this;
  for (const auto& [m, f] : o.comps) r.add(m, -f);
  return r;
}

void GetzlerCochain::validate() const {
  GenMask group = space->level(level).group_gens;
  for (const auto& [mono, f] : comps) {
    (void)mono;
    if (f.has_generators(group))
      throw std::invalid_argument("cochain has form degree along a group copy");
  }
}

GetzlerElement GetzlerElement::of(const GetzlerCochain& c) {
  GetzlerElement e{c.space, {}};
  e.add(c);
  return e;
}

void GetzlerElement::add(const GetzlerCochain& c) {
  if (c.is_zero()) return;
  auto it = levels.find(c.level);
  if (it == levels.end()) {
    levels.emplace(c.level, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) levels.erase(c.level);
  }
}

bool GetzlerElement::is_zero() const { return levels.empty(); }

GetzlerCochain dbar(const GetzlerCochain& f) {
  const int p1 = f.level + 1;
  if (p1 > f.space->p_max()) throw std::invalid_argument("level overflow in dbar");
  GenMask group = f.space->level(p1).group_gens;
  GetzlerCochain out = GetzlerCochain::zero(f.space, p1);
  for (const auto& [mono, form] : f.comps) {
    Form acc(f.space->level(p1).chart);
    for (int i = 0; i <= p1; ++i) {
      Form piece = f.space->face(p1, i).apply(form).drop_generators(group);
      if (i % 2 == 1) piece = -piece;
      acc += piece;
    }
    out.add(mono, acc);
  }
  return out;
}

GetzlerCochain group_average(const GetzlerCochain& f) {
  if (f.level < 1) throw std::invalid_argument("group average needs level >= 1");
  const LevelChart& src = f.space->level(f.level);
  const LevelChart& dst = f.space->level(f.level - 1);
  std::vector<int> vm(src.chart->num_vars(), -1);
  const int copies = static_cast<int>(src.group_blocks.size());
  for (int c = 1; c < copies; ++c)
    for (size_t r = 0; r < src.group_blocks[c].size(); ++r)
      vm[src.group_blocks[c][r]] = dst.group_blocks[c - 1][r];
  for (size_t v = 0; v < src.space_vars.size(); ++v)
    vm[src.space_vars[v]] = dst.space_vars[v];
  int tau = src.chart->var_index("tau");
  if (tau >= 0 && vm[tau] < 0) vm[tau] = dst.chart->var_index("tau");

  GetzlerCochain out = GetzlerCochain::zero(f.space, f.level - 1);
  for (const auto& [mono, form] : f.comps) {
    Form acc(dst.chart);
    for (const auto& [mask, coeff] : form.terms()) {
      Scalar kept(src.chart);
      for (const auto& [e, c] : coeff.terms()) {
        bool zero_weight = true;
        for (int v : src.group_blocks[0]) zero_weight &= (e[v] == 0);
        if (zero_weight) kept += Scalar::monomial(src.chart, e, c);
      }
      if (kept.is_zero()) continue;
      GenMask mapped = 0;
      for (int g = 0; g < 32; ++g) {
        if (!(mask & (GenMask(1) << g))) continue;
        int dg = dst.chart->gen_index(src.chart->gen_name(g));
        if (dg < 0) throw std::logic_error("generator lost in group average");
        mapped |= GenMask(1) << dg;
      }
      acc.add_term(kept.transport(dst.chart, vm), mapped);
    }
    out.add(mono, acc);
  }
  return out;
}

GetzlerCochain iota_bar(const GetzlerCochain& f) {
  if (f.level < 1) return GetzlerCochain::zero(f.space, 0);
  const int p = f.level;
  const LevelChart& src = f.space->level(p);
  const LevelChart& dst = f.space->level(p - 1);
  const int rank = f.space->group()->rank;
  GetzlerCochain out = GetzlerCochain::zero(f.space, p - 1);

  for (int slot = 0; slot <= p - 1; ++slot) {
    // f's copy slot+1 hosts exp(tX); other copies shift around it
    std::vector<int> vm(src.chart->num_vars(), -1);
    for (int c = 0; c < p; ++c) {
      if (c == slot) continue;  // zeroed below
      int target = c < slot ? c : c - 1;
      for (int r = 0; r < rank; ++r) vm[src.group_blocks[c][r]] = dst.group_blocks[target][r];
    }
    for (int r = 0; r < rank; ++r) vm[src.group_blocks[slot][r]] = 0;  // placeholder
    for (size_t v = 0; v < src.space_vars.size(); ++v)
      vm[src.space_vars[v]] = dst.space_vars[v];
    int tau = src.chart->var_index("tau");
    if (tau >= 0) vm[tau] = dst.chart->var_index("tau");

    for (const auto& [mono, form] : f.comps) {
      for (const auto& [mask, coeff] : form.terms()) {
        GenMask mapped = 0;
        for (int g = 0; g < 32; ++g) {
          if (!(mask & (GenMask(1) << g))) continue;
          int dg = dst.chart->gen_index(src.chart->gen_name(g));
          if (dg < 0) throw std::logic_error("generator lost in iota_bar");
          mapped |= GenMask(1) << dg;
        }
        for (const auto& [e, c] : coeff.terms()) {
          for (int beta = 0; beta < rank; ++beta) {
            int w = e[src.group_blocks[slot][beta]];
            if (w == 0) continue;
            ExpVec flat = e;
            for (int r = 0; r < rank; ++r) flat[src.group_blocks[slot][r]] = 0;
            ExpVec mapped_exp(dst.chart->num_vars(), 0);
            for (size_t v = 0; v < flat.size(); ++v) {
              if (flat[v] != 0) mapped_exp[vm[v]] += flat[v];
            }
            GaussianRational weight = c * GaussianRational::i() * GaussianRational(w);
            if (slot % 2 == 1) weight = -weight;
            Form piece(dst.chart);
            piece.add_term(Scalar::monomial(dst.chart, mapped_exp, weight), mapped);
            out.add(sym_mono_mul(mono, {beta}), piece);
          }
        }
      }
    }
  }
  return out;
}

namespace {

GetzlerCochain iota_part(const GetzlerCochain& f) {
  GetzlerCochain out = GetzlerCochain::zero(f.space, f.level);
  const int rank = f.space->group()->rank;
  for (const auto& [mono, form] : f.comps) {
    for (int j = 0; j < rank; ++j) {
      Form c = contract(fundamental_on_level(f.space, f.level, j), form);
      out.add(sym_mono_mul(mono, {j}), c);
    }
  }
  return out;
}

GetzlerCochain d_part(const GetzlerCochain& f) {
  GetzlerCochain out = GetzlerCochain::zero(f.space, f.level);
  for (const auto& [mono, form] : f.comps)
    out.add(mono, d_space(f.space, f.level, form));
  return out;
}

}  // namespace

GetzlerCochain cartan_part(const GetzlerCochain& f) { return d_part(f) + iota_part(f); }

GetzlerCochain lie_part(const GetzlerCochain& f) {
  GetzlerCochain out = GetzlerCochain::zero(f.space, f.level);
  const int rank = f.space->group()->rank;
  for (const auto& [mono, form] : f.comps) {
    for (int j = 0; j < rank; ++j) {
      VectorField v = fundamental_on_level(f.space, f.level, j);
      Form lie = contract(v, d_space(f.space, f.level, form)) +
                 d_space(f.space, f.level, contract(v, form));
      out.add(sym_mono_mul(mono, {j}), lie);
    }
  }
  return out;
}

GetzlerElement getzler_total_d(const GetzlerElement& x) {
  GetzlerElement out{x.space, {}};
  for (const auto& [p, f] : x.levels) {
    out.add(dbar(f));
    if (p >= 1) out.add(iota_bar(f));
    GetzlerCochain c = cartan_part(f);
    if (p % 2 == 1) c = scaled(c, GaussianRational(-1));
    out.add(c);
  }
  return out;
}

std::vector<GetzlerCochain> J_map(const SimplicialDeRhamElement& x, int insertion_sign) {
  const SpacePtr& s = x.space;
  const int p = x.level;
  const int rank = s->group()->rank;
  std::vector<GetzlerCochain> out;
  for (int k = 0; k <= p; ++k) out.push_back(GetzlerCochain::zero(s, k));

  for (int k = 0; k <= p; ++k) {
    const LevelChart& dst = s->level(k);
    GenMask dst_group = dst.group_gens;
    // shuffles: ascending k-subsets A of {1..p} name the uncontracted copies
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i;  // 0-based copies
    auto advance = [&]() {
      int i = k - 1;
      while (i >= 0 && subset[i] == p - k + i) --i;
      if (i < 0) return false;
      ++subset[i];
      for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
      return true;
    };
    bool more = k <= p;
    while (more) {
      std::vector<int> complement;
      {
        std::vector<bool> used(p, false);
        for (int a : subset) used[a] = true;
        for (int c = 0; c < p; ++c)
          if (!used[c]) complement.push_back(c);
      }
      // sgn of the shuffle (A asc | complement asc)
      long inversions = 0;
      for (size_t m = 0; m < subset.size(); ++m) inversions += subset[m] - static_cast<int>(m);
      int sgn = inversions % 2 == 0 ? 1 : -1;

      // the i_pi substitution: selected copy subset[m] -> target copy m,
      // complement copies -> identity element
      std::vector<Scalar> images(s->level(p).chart->num_vars(),
                                 Scalar::zero(dst.chart));
      const LevelChart& src = s->level(p);
      for (int v = 0; v < src.chart->num_vars(); ++v)
        images[v] = Scalar::one(dst.chart);  // overwritten except for dropped copies
      for (size_t m = 0; m < subset.size(); ++m)
        for (int r = 0; r < rank; ++r)
          images[src.group_blocks[subset[m]][r]] = Scalar::variable(
              dst.chart, dst.chart->var(dst.group_blocks[m][r]).name);
      for (int c : complement)
        for (int r = 0; r < rank; ++r)
          images[src.group_blocks[c][r]] = Scalar::one(dst.chart);
      for (size_t v = 0; v < src.space_vars.size(); ++v)
        images[src.space_vars[v]] =
            Scalar::variable(dst.chart, dst.chart->var(dst.space_vars[v]).name);
      int tau = src.chart->var_index("tau");
      if (tau >= 0) images[tau] = Scalar::variable(dst.chart, "tau");
      Substitution i_pi(src.chart, dst.chart, images);

      // multilinear expansion of the contractions over basis directions
      std::vector<int> betas(complement.size(), 0);
      auto next_beta = [&]() {
        for (size_t i = 0; i < betas.size(); ++i) {
          if (++betas[i] < rank) return true;
          betas[i] = 0;
        }
        return false;
      };
      bool more_beta = true;
      while (more_beta) {
        Form contracted = x.form;
        // iota_{pi(k+1)} ... iota_{pi(p)} omega: rightmost applied first
        for (int m = static_cast<int>(complement.size()) - 1; m >= 0; --m) {
          VectorField v = insertion_field(s, p, complement[m], betas[m]);
          contracted = contract(v, contracted);
          if (insertion_sign < 0) contracted = -contracted;
        }
        if (!contracted.is_zero()) {
          Form restricted = i_pi.apply(contracted).drop_generators(dst_group);
          if (sgn < 0) restricted = -restricted;
          SymMonomial mono(betas.begin(), betas.end());
          std::sort(mono.begin(), mono.end());
          out[k].add(mono, restricted);
        }
        more_beta = !betas.empty() && next_beta();
        if (betas.empty()) more_beta = false;
      }
      more = k > 0 && advance();
      if (k == 0) more = false;
    }
  }
  for (auto& c : out) c.validate();
  return out;
}

EquivariantForm pr0_J(const std::vector<SimplicialDeRhamElement>& elements, int insertion_sign) {
  if (elements.empty()) throw std::invalid_argument("pr0 of nothing");
  const SpacePtr& s = elements.front().space;
  EquivariantForm out = EquivariantForm::zero(s->action());
  for (const SimplicialDeRhamElement& el : elements) {
    std::vector<GetzlerCochain> j = J_map(el, insertion_sign);
    for (const auto& [mono, f] : j[0].comps) out.add(mono, f);
  }
  return out;
}

GetzlerCochain random_cochain(const SpacePtr& space, int level, std::mt19937_64& rng) {
  const LevelChart& lc = space->level(level);
  GetzlerCochain out = GetzlerCochain::zero(space, level);
  std::uniform_int_distribution<int> npoly(0, 2);
  std::uniform_int_distribution<int> pick(0, space->group()->rank - 1);
  int nmono = 1 + static_cast<int>(rng() % 2);
  for (int m = 0; m < nmono; ++m) {
    SymMonomial mono;
    int deg = npoly(rng);
    for (int d = 0; d < deg; ++d) mono.push_back(pick(rng));
    std::sort(mono.begin(), mono.end());
    Form f = random_form_mixed(lc.chart, rng, 2).drop_generators(lc.group_gens);
    out.add(mono, f);
  }
  return out;
}

std::string dupont_to_json(const DupontForm& w) {
  std::ostringstream os;
  os << "[";
  for (size_t p = 0; p < w.levels.size(); ++p) {
    if (p) os << ",";
    os << form_to_json(w.levels[p]);
  }
  os << "]";
  return os.str();
}

DupontForm dupont_from_json(const SpacePtr& space, const std::string& text) {
  DupontForm w{space, {}};
  // the payload is a JSON array of form arrays; split at the top level
  size_t depth = 0, start = 0;
  std::vector<std::string> chunks;
  for (size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '[') {
      if (depth == 1) start = i;
      ++depth;
    } else if (ch == ']') {
      --depth;
      if (depth == 1) chunks.push_back(text.substr(start, i - start + 1));
    }
  }
  if (chunks.size() != static_cast<size_t>(space->p_max() + 1))
    throw std::invalid_argument("level count mismatch in Dupont JSON");
  for (int p = 0; p <= space->p_max(); ++p)
    w.levels.push_back(form_from_json(space->dupont(p).chart, chunks[p]));
  return w;
}

std::string cochains_to_json(const std::vector<GetzlerCochain>& cs) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < cs.size(); ++i) {
    if (i) os << ",";
    os << "{\"level\":" << cs[i].level << ",\"components\":{";
    bool first = true;
    const auto& duals = cs[i].space->group()->algebra->dual_basis;
    for (const auto& [mono, f] : cs[i].comps) {
      if (!first) os << ",";
      first = false;
      std::string key;
      for (int j : mono) {
        if (!key.empty()) key += "*";
        key += duals[j];
      }
      os << "\"" << key << "\":" << form_to_json(f);
    }
    os << "}}";
  }
  os << "]";
  return os.str();
}

std::string CheckReport::summary() const {
  if (ok) return "ok";
  std::ostringstream os;
  for (size_t i = 0; i < failures.size(); ++i) {
    if (i) os << "; ";
    os << failures[i];
  }
  return os.str();
}

CheckReport chain_map_check(const SimplicialDeRhamElement& x, int insertion_sign) {
  CheckReport report;
  const SpacePtr& s = x.space;
  const int p = x.level;
  if (p + 1 > s->p_max()) throw std::invalid_argument("chain check needs one level of room");
  std::vector<GetzlerCochain> jx = J_map(x, insertion_sign);

  // identity 1: J(del x) = (dbar + (-1)^k iota) J(x), with k the level of
  // the cochain the contraction acts on (the sign that makes the identity
  // hold; the other reading fails already on du ^ dz at level one)
  {
    std::vector<GetzlerCochain> lhs = J_map(simplicial_del(x), insertion_sign);
    for (int k = 0; k <= p + 1; ++k) {
      GetzlerCochain rhs = GetzlerCochain::zero(s, k);
      if (k >= 1) rhs = rhs + dbar(jx[k - 1]);
      if (k <= p) {
        GetzlerCochain io = iota_part(jx[k]);
        if (k % 2 == 1) io = scaled(io, GaussianRational(-1));
        rhs = rhs + io;
      }
      if (!(lhs[k] == rhs))
        report.fail("boundary identity fails at output level " + std::to_string(k));
    }
  }
  // identity 2: J((-1)^p d_M x) = (-1)^k d J(x) at output level k
  {
    Form dm = d_space(s, p, x.form);
    std::vector<GetzlerCochain> lhs = J_map(SimplicialDeRhamElement{s, p, dm}, insertion_sign);
    for (int k = 0; k <= p; ++k) {
      GetzlerCochain rhs = d_part(jx[k]);
      if ((p + k) % 2 == 1) rhs = scaled(rhs, GaussianRational(-1));
      if (!(lhs[k] == rhs))
        report.fail("space differential identity fails at output level " + std::to_string(k));
    }
  }
  // identity 3: J((-1)^p d_G x) = iota_bar J(x) at output levels k <= p-1
  {
    Form dg = d_group(s, p, x.form);
    std::vector<GetzlerCochain> lhs = J_map(SimplicialDeRhamElement{s, p, dg}, insertion_sign);
    for (int k = 0; k + 1 <= p; ++k) {
      GetzlerCochain l = lhs[k];
      if (p % 2 == 1) l = scaled(l, GaussianRational(-1));
      GetzlerCochain rhs = iota_bar(jx[k + 1]);
      if (!(l == rhs))
        report.fail("group differential identity fails at output level " + std::to_string(k));
    }
  }
  return report;
}

CheckReport classform_check(const InvariantPolynomial& P, const Connection& conn, int p_max) {
  if (p_max < P.degree)
    throw std::invalid_argument("truncation insufficient for the polynomial degree");
  CheckReport report;
  SpacePtr s = SimplicialSpace::make_action_space(conn.bundle->g_action, p_max);
  DupontAlgForm theta = simplicial_connection(s, conn);
  if (!theta.compatible()) report.fail("simplicial connection incompatible");
  DupontForm w = dupont_char_form(P, theta, conn.bundle->k_action);
  if (!dupont_compatible(w)) report.fail("characteristic form incompatible");
  EquivariantForm lhs = pr0_J(simplex_integrate(w));
  EquivariantForm rhs = equivariant_char_form(P, conn);
  if (!(lhs == rhs)) {
    EquivariantForm diff = lhs - rhs;
    report.fail("pipelines disagree; difference = " + diff.str());
  }
  return report;
}

CheckReport algebra_hom_check(const DupontForm& w1, const DupontForm& w2, const ActionPtr&) {
  CheckReport report;
  EquivariantForm lhs = pr0_J(simplex_integrate(dupont_wedge(w1, w2)));
  EquivariantForm rhs =
      wedge_equivariant(pr0_J(simplex_integrate(w1)), pr0_J(simplex_integrate(w2)));
  if (!(lhs == rhs)) report.fail("product is not respected: " + (lhs - rhs).str());
  return report;
}

CheckReport universal_inverse_check(const TorusPtr& torus, const InvariantPolynomial& P,
                                    int p_max) {
  if (p_max < P.degree)
    throw std::invalid_argument("truncation insufficient for the polynomial degree");
  CheckReport report;
  const int rank = torus->rank;

  SpacePtr nb = SimplicialSpace::make_nerve_bar(torus, p_max);
  ChartBuilder ptb("point-" + torus->name);
  ptb.add_formal("tau");
  ChartPtr pt = ptb.build();
  ActionPtr on_point =
      make_action(torus->name + "-on-point", torus, pt,
                  [&](const ChartPtr& prod, const std::vector<int>&, const std::vector<int>& m) {
                    return std::vector<Scalar>{Scalar::variable(prod, prod->var(m[0]).name)};
                  });
  SpacePtr nk = SimplicialSpace::make_action_space(on_point, p_max);

  DupontAlgForm theta_bar = universal_connection(nb);
  DupontForm w = dupont_char_form(P, theta_bar);

  // descend along the global section s_p: v_c -> u_{c+1} ... u_p
  DupontForm descended{nk, {}};
  for (int p = 0; p <= p_max; ++p) {
    const LevelChart& nbl = nb->dupont(p);
    const LevelChart& nkl = nk->dupont(p);
    std::vector<Scalar> images(nbl.chart->num_vars(), Scalar::zero(nkl.chart));
    for (int i = 1; i <= p; ++i)
      images[nbl.simplex_vars[i - 1]] = Scalar::variable(nkl.chart, "t" + std::to_string(i));
    for (int c = 0; c <= p; ++c) {
      for (int r = 0; r < rank; ++r) {
        Scalar prod = Scalar::one(nkl.chart);
        for (int j = c + 1; j <= p; ++j)
          prod *= Scalar::variable(nkl.chart,
                                   nkl.chart->var(nkl.group_blocks[j - 1][r]).name);
        images[nbl.group_blocks[c][r]] = prod;
      }
    }
    images[nbl.chart->var_index("tau")] = Scalar::variable(nkl.chart, "tau");
    Substitution section(nbl.chart, nkl.chart, images);
    descended.levels.push_back(section.apply(w.levels[p]));

    // exactness of the descent: gamma^* of the descended form reproduces it
    std::vector<Scalar> gimages(nkl.chart->num_vars(), Scalar::zero(nbl.chart));
    for (int i = 1; i <= p; ++i)
      gimages[nkl.simplex_vars[i - 1]] = Scalar::variable(nbl.chart, "t" + std::to_string(i));
    for (int j = 1; j <= p; ++j) {
      for (int r = 0; r < rank; ++r) {
        gimages[nkl.group_blocks[j - 1][r]] =
            Scalar::variable(nbl.chart, nbl.chart->var(nbl.group_blocks[j - 1][r]).name) *
            Scalar::variable(nbl.chart, nbl.chart->var(nbl.group_blocks[j][r]).name).inverse();
      }
    }
    gimages[nkl.chart->var_index("tau")] = Scalar::variable(nbl.chart, "tau");
    Substitution gamma(nkl.chart, nbl.chart, gimages);
    if (gamma.apply(descended.levels[p]) != w.levels[p])
      report.fail("descent is not exact at level " + std::to_string(p));
  }
  if (!dupont_compatible(descended)) report.fail("descended form is not compatible");

  EquivariantForm got = pr0_J(simplex_integrate(descended));
  EquivariantForm expect = EquivariantForm::zero(on_point);
  for (const auto& [mono, c] : P.coeffs) {
    Scalar coeff = Scalar::constant(pt, c);
    if (P.tau_power != 0) {
      ExpVec e(pt->num_vars(), 0);
      e[pt->var_index("tau")] = -P.tau_power;
      coeff *= Scalar::monomial(pt, e, GaussianRational(1));
    }
    expect.add(mono, Form::from_scalar(coeff));
  }
  if (!(got == expect))
    report.fail("truncated inverse mismatch: got " + got.str() + ", expected " + expect.str());
  return report;
}

}  // namespace ecw
