#include "ecw/simplicial.hpp"

#include <bit>

namespace ecw {

namespace {

std::string copy_var_name(SimplicialSpace::Kind kind, int copy, int r, int rank) {
  std::string base = (kind == SimplicialSpace::ActionSpace ? "g" : "v") + std::to_string(copy);
  if (rank > 1) base += "_" + std::to_string(r + 1);
  return base;
}

std::vector<int> vars_by_name(const ChartPtr& from, const std::vector<int>& from_vars,
                              const ChartPtr& to) {
  std::vector<int> out;
  for (int v : from_vars) {
    int t = to->var_index(from->var(v).name);
    if (t < 0) throw std::logic_error("variable lost in chart product: " + from->var(v).name);
    out.push_back(t);
  }
  return out;
}

}  // namespace

std::shared_ptr<const SimplicialSpace> SimplicialSpace::make_action_space(ActionPtr action,
                                                                          int p_max) {
  auto s = std::shared_ptr<SimplicialSpace>(new SimplicialSpace());
  s->kind_ = ActionSpace;
  s->p_max_ = p_max;
  s->action_ = action;
  s->group_ = action->group;
  s->build_levels();
  s->validate_relations();
  return s;
}

std::shared_ptr<const SimplicialSpace> SimplicialSpace::make_nerve_bar(TorusPtr torus, int p_max) {
  auto s = std::shared_ptr<SimplicialSpace>(new SimplicialSpace());
  s->kind_ = NerveBar;
  s->p_max_ = p_max;
  s->group_ = torus;
  s->build_levels();
  s->validate_relations();
  return s;
}

void SimplicialSpace::build_levels() {
  const int rank = group_->rank;
  const ChartPtr space = kind_ == ActionSpace ? action_->space : nullptr;
  const std::string tag = kind_ == ActionSpace ? action_->name : group_->name + "-bar";

  auto fill_indices = [&](LevelChart& lc, int p, int n_simplex) {
    lc.group_blocks.clear();
    const int first_copy = kind_ == ActionSpace ? 1 : 0;
    const int n_copies = copies(p);
    for (int c = 0; c < n_copies; ++c) {
      std::vector<int> block;
      for (int r = 0; r < rank; ++r) {
        int v = lc.chart->var_index(copy_var_name(kind_, first_copy + c, r, rank));
        block.push_back(v);
        int g = lc.chart->generator_of_var(v);
        lc.group_gens |= GenMask(1) << g;
      }
      lc.group_blocks.push_back(std::move(block));
    }
    if (space) {
      lc.space_vars.clear();
      lc.space_gens.clear();
      for (int v = 0; v < space->num_vars(); ++v)
        lc.space_vars.push_back(lc.chart->var_index(space->var(v).name));
      for (int g = 0; g < space->num_gens(); ++g)
        lc.space_gens.push_back(lc.chart->gen_index(space->gen_name(g)));
    }
    lc.simplex_vars.clear();
    lc.simplex_gens = 0;
    for (int i = 1; i <= n_simplex; ++i) {
      int v = lc.chart->var_index("t" + std::to_string(i));
      lc.simplex_vars.push_back(v);
      lc.simplex_gens |= GenMask(1) << lc.chart->generator_of_var(v);
    }
  };

  auto build_level_chart = [&](int p) {
    LevelChart lc;
    if (kind_ == ActionSpace && p == 0) {
      lc.chart = space;
    } else {
      ChartBuilder b(tag + "-L" + std::to_string(p));
      const int first_copy = kind_ == ActionSpace ? 1 : 0;
      for (int c = 0; c < copies(p); ++c)
        for (int r = 0; r < rank; ++r) b.add_unit(copy_var_name(kind_, first_copy + c, r, rank));
      if (space)
        b.append_chart(*space);
      else
        b.add_formal("tau");
      lc.chart = b.build();
    }
    fill_indices(lc, p, 0);
    return lc;
  };

  auto build_dupont_chart = [&](int p) {
    if (p == 0) return levels_[0];
    LevelChart lc;
    ChartBuilder b(tag + "-D" + std::to_string(p));
    for (int i = 1; i <= p; ++i) b.add_ordinary("t" + std::to_string(i));
    b.append_chart(*levels_[p].chart);
    lc.chart = b.build();
    fill_indices(lc, p, p);
    return lc;
  };

  auto build_mixed_chart = [&](int p) {
    if (p == 1) return levels_[1];
    LevelChart lc;
    ChartBuilder b(tag + "-X" + std::to_string(p));
    for (int i = 1; i <= p - 1; ++i) b.add_ordinary("t" + std::to_string(i));
    b.append_chart(*levels_[p].chart);
    lc.chart = b.build();
    fill_indices(lc, p, p - 1);
    return lc;
  };

  for (int p = 0; p <= p_max_; ++p) levels_.push_back(build_level_chart(p));
  for (int p = 0; p <= p_max_; ++p) dupont_.push_back(build_dupont_chart(p));
  mixed_.push_back(LevelChart{});  // index 0 unused
  for (int p = 1; p <= p_max_; ++p) mixed_.push_back(build_mixed_chart(p));

  // ---- faces ---------------------------------------------------------------
  auto unit_one = [&](const ChartPtr& c) { return Scalar::one(c); };
  for (int p = 1; p <= p_max_; ++p) {
    std::vector<Substitution> row;
    const LevelChart& src = levels_[p - 1];
    const LevelChart& dst = levels_[p];
    for (int i = 0; i <= p; ++i) {
      std::vector<Scalar> images(src.chart->num_vars(), Scalar::zero(dst.chart));
      if (kind_ == ActionSpace) {
        const int pc = p - 1;  // source copies
        for (int c = 1; c <= pc; ++c) {
          for (int r = 0; r < rank; ++r) {
            int sv = src.group_blocks[c - 1][r];
            Scalar img(dst.chart);
            if (i == 0) {
              img = Scalar::variable(dst.chart, dst.chart->var(dst.group_blocks[c][r]).name);
            } else if (i >= 1 && i <= p - 1) {
              if (c < i)
                img = Scalar::variable(dst.chart, dst.chart->var(dst.group_blocks[c - 1][r]).name);
              else if (c == i)
                img = Scalar::variable(dst.chart,
                                       dst.chart->var(dst.group_blocks[i - 1][r]).name) *
                      Scalar::variable(dst.chart, dst.chart->var(dst.group_blocks[i][r]).name);
              else
                img = Scalar::variable(dst.chart, dst.chart->var(dst.group_blocks[c][r]).name);
            } else {  // i == p
              img = Scalar::variable(dst.chart, dst.chart->var(dst.group_blocks[c - 1][r]).name);
            }
            images[sv] = img;
          }
        }
        if (i < p) {
          for (int v = 0; v < (int)src.space_vars.size(); ++v)
            images[src.space_vars[v]] =
                Scalar::variable(dst.chart, dst.chart->var(dst.space_vars[v]).name);
        } else {
          std::vector<Scalar> acted =
              action_->action_images_on(dst.chart, dst.group_blocks[p - 1], dst.space_vars);
          for (int v = 0; v < (int)src.space_vars.size(); ++v)
            images[src.space_vars[v]] = acted[v];
        }
      } else {  // NerveBar: delete the i-th entry
        for (int c = 0; c <= p - 1; ++c) {
          int tc = c < i ? c : c + 1;
          for (int r = 0; r < rank; ++r)
            images[src.group_blocks[c][r]] =
                Scalar::variable(dst.chart, dst.chart->var(dst.group_blocks[tc][r]).name);
        }
        int tau_src = src.chart->var_index("tau");
        images[tau_src] = Scalar::variable(dst.chart, "tau");
      }
      row.push_back(Substitution(src.chart, dst.chart, images));
    }
    faces_.push_back(std::move(row));
  }

  // ---- degeneracies ----------------------------------------------------------
  for (int p = 0; p + 1 <= p_max_; ++p) {
    std::vector<Substitution> row;
    const LevelChart& src = levels_[p + 1];
    const LevelChart& dst = levels_[p];
    for (int i = 0; i <= p; ++i) {
      std::vector<Scalar> images(src.chart->num_vars(), Scalar::zero(dst.chart));
      if (kind_ == ActionSpace) {
        for (int c = 1; c <= p + 1; ++c) {
          for (int r = 0; r < rank; ++r) {
            int sv = src.group_blocks[c - 1][r];
            if (c <= i)
              images[sv] =
                  Scalar::variable(dst.chart, dst.chart->var(dst.group_blocks[c - 1][r]).name);
            else if (c == i + 1)
              images[sv] = unit_one(dst.chart);
            else
              images[sv] =
                  Scalar::variable(dst.chart, dst.chart->var(dst.group_blocks[c - 2][r]).name);
          }
        }
        for (int v = 0; v < (int)src.space_vars.size(); ++v)
          images[src.space_vars[v]] =
              Scalar::variable(dst.chart, dst.chart->var(dst.space_vars[v]).name);
      } else {
        for (int c = 0; c <= p + 1; ++c) {
          int tc = c <= i ? c : c - 1;
          for (int r = 0; r < rank; ++r)
            images[src.group_blocks[c][r]] =
                Scalar::variable(dst.chart, dst.chart->var(dst.group_blocks[tc][r]).name);
        }
        images[src.chart->var_index("tau")] = Scalar::variable(dst.chart, "tau");
      }
      row.push_back(Substitution(src.chart, dst.chart, images));
    }
    degeneracies_.push_back(std::move(row));
  }

  // ---- coface and extended-face substitutions for Dupont compatibility --------
  for (int p = 1; p <= p_max_; ++p) {
    std::vector<Substitution> crow, frow;
    const LevelChart& dp = dupont_[p];
    const LevelChart& dpm = dupont_[p - 1];
    const LevelChart& mx = mixed_[p];
    for (int i = 0; i <= p; ++i) {
      // (coface^i x id)^*: dupont(p) -> mixed(p)
      std::vector<Scalar> images(dp.chart->num_vars(), Scalar::zero(mx.chart));
      for (int j = 1; j <= p; ++j) {
        int tv = dp.simplex_vars[j - 1];
        Scalar img(mx.chart);
        if (i == 0) {
          if (j == 1) {
            img = Scalar::one(mx.chart);
            for (int k = 1; k <= p - 1; ++k)
              img -= Scalar::variable(mx.chart, "t" + std::to_string(k));
          } else {
            img = Scalar::variable(mx.chart, "t" + std::to_string(j - 1));
          }
        } else {
          if (j < i)
            img = Scalar::variable(mx.chart, "t" + std::to_string(j));
          else if (j == i)
            img = Scalar::zero(mx.chart);
          else
            img = Scalar::variable(mx.chart, "t" + std::to_string(j - 1));
        }
        images[tv] = img;
      }
      for (int v = 0; v < dp.chart->num_vars(); ++v) {
        bool is_t = false;
        for (int tv : dp.simplex_vars) is_t |= (tv == v);
        if (!is_t) images[v] = Scalar::variable(mx.chart, dp.chart->var(v).name);
      }
      crow.push_back(Substitution(dp.chart, mx.chart, images));

      // (id x face_i)^*: dupont(p-1) -> mixed(p)
      std::vector<Scalar> fimages(dpm.chart->num_vars(), Scalar::zero(mx.chart));
      for (int j = 1; j <= p - 1; ++j)
        fimages[dpm.simplex_vars[j - 1]] = Scalar::variable(mx.chart, "t" + std::to_string(j));
      const Substitution& f = faces_[p - 1][i];
      std::vector<int> lp_to_mx =
          vars_by_name(levels_[p].chart,
                       [&] {
                         std::vector<int> all;
                         for (int v = 0; v < levels_[p].chart->num_vars(); ++v) all.push_back(v);
                         return all;
                       }(),
                       mx.chart);
      for (int v = 0; v < levels_[p - 1].chart->num_vars(); ++v) {
        // source var v of level(p-1) sits at some position of dupont(p-1)
        int dv = dpm.chart->var_index(levels_[p - 1].chart->var(v).name);
        fimages[dv] = f.image(v).transport(mx.chart, lp_to_mx);
      }
      frow.push_back(Substitution(dpm.chart, mx.chart, fimages));
    }
    cofaces_.push_back(std::move(crow));
    face_exts_.push_back(std::move(frow));
  }
}

void SimplicialSpace::validate_relations() const {
  auto same = [](const Substitution& a, const Substitution& b) {
    for (int v = 0; v < a.source()->num_vars(); ++v)
      if (a.image(v) != b.image(v)) return false;
    return true;
  };
  // d_i d_j = d_{j-1} d_i  (i < j)
  for (int p = 1; p + 1 <= p_max_; ++p) {
    for (int i = 0; i <= p; ++i)
      for (int j = i + 1; j <= p + 1; ++j) {
        if (!same(face(p, i).then(face(p + 1, j)), face(p, j - 1).then(face(p + 1, i))))
          throw std::logic_error("face relation fails");
      }
  }
  // s_i s_j = s_{j+1} s_i  (i <= j)
  for (int p = 0; p + 2 <= p_max_; ++p) {
    for (int j = 0; j <= p; ++j)
      for (int i = 0; i <= j; ++i) {
        if (!same(degeneracy(p + 1, i).then(degeneracy(p, j)),
                  degeneracy(p + 1, j + 1).then(degeneracy(p, i))))
          throw std::logic_error("degeneracy relation fails");
      }
  }
  // d_i s_j relations
  for (int p = 1; p <= p_max_ - 1; ++p) {
    for (int j = 0; j <= p - 1; ++j)
      for (int i = 0; i <= p; ++i) {
        Substitution lhs = face(p, i).then(degeneracy(p - 1, j));
        if (i == j || i == j + 1) {
          for (int v = 0; v < levels_[p - 1].chart->num_vars(); ++v) {
            if (lhs.image(v) !=
                Scalar::variable(levels_[p - 1].chart, levels_[p - 1].chart->var(v).name))
              throw std::logic_error("face-degeneracy identity fails");
          }
        } else if (i < j) {
          if (!same(lhs, degeneracy(p - 2, j - 1).then(face(p - 1, i))))
            throw std::logic_error("face-degeneracy relation fails (i<j)");
        } else {
          if (!same(lhs, degeneracy(p - 2, j).then(face(p - 1, i - 1))))
            throw std::logic_error("face-degeneracy relation fails (i>j+1)");
        }
      }
  }
}

Scalar SimplicialSpace::t0(int p) const {
  const LevelChart& d = dupont_[p];
  Scalar s = Scalar::one(d.chart);
  for (int i = 1; i <= p; ++i) s -= Scalar::variable(d.chart, "t" + std::to_string(i));
  return s;
}

Scalar SimplicialSpace::t(int p, int i) const {
  return Scalar::variable(dupont_[p].chart, "t" + std::to_string(i));
}

Substitution SimplicialSpace::vertex_map(int p, int i) const {
  if (kind_ != ActionSpace) throw std::logic_error("vertex_map needs an action space");
  const LevelChart& d = dupont_[p];
  std::vector<Scalar> images;
  for (int v = 0; v < action_->space->num_vars(); ++v)
    images.push_back(Scalar::variable(d.chart, d.chart->var(d.space_vars[v]).name));
  for (int j = p; j >= i + 1; --j) {
    // one more translation: x -> g_j x
    std::vector<Scalar> prod_images(action_->product->num_vars(), Scalar::zero(d.chart));
    for (int r = 0; r < group_->rank; ++r)
      prod_images[action_->group_vars[r]] =
          Scalar::variable(d.chart, d.chart->var(d.group_blocks[j - 1][r]).name);
    for (int v = 0; v < action_->space->num_vars(); ++v)
      prod_images[action_->space_map[v]] = images[v];
    Substitution step(action_->product, d.chart, prod_images);
    std::vector<Scalar> next;
    for (int v = 0; v < action_->space->num_vars(); ++v)
      next.push_back(step.apply(action_->act->image(v)));
    images = std::move(next);
  }
  return Substitution(action_->space, d.chart, images);
}

Form SimplicialSpace::mc_component(int p, int copy, int j) const {
  const LevelChart& d = dupont_[p];
  return group_->maurer_cartan_component(d.chart, d.group_blocks[copy], j);
}

bool SimplicialSpace::is_k_invariant(int p, const Form& on_dupont,
                                     const ActionPtr& k_action) const {
  const LevelChart& d = dupont_[p];
  ChartBuilder b(d.chart->name() + "-kext");
  b.append_chart(*d.chart);
  std::vector<int> kk;
  for (int r = 1; r <= group_->rank; ++r) kk.push_back(b.add_unit("kk" + std::to_string(r)));
  ChartPtr ext = b.build();
  GenMask kk_gens = 0;
  for (int v : kk) kk_gens |= GenMask(1) << ext->generator_of_var(v);

  std::vector<Scalar> images(d.chart->num_vars(), Scalar::zero(ext));
  for (int v = 0; v < d.chart->num_vars(); ++v)
    images[v] = Scalar::variable(ext, d.chart->var(v).name);
  if (kind_ == NerveBar) {
    for (const auto& block : d.group_blocks)
      for (int r = 0; r < group_->rank; ++r)
        images[block[r]] = Scalar::variable(ext, d.chart->var(block[r]).name) *
                           Scalar::variable(ext, ext->var(kk[r]).name);
  } else {
    if (!k_action) throw std::invalid_argument("structure action required");
    std::vector<int> space_positions;
    for (int v : d.space_vars) space_positions.push_back(v);  // same indices in ext
    std::vector<Scalar> acted = k_action->action_images_on(ext, kk, space_positions);
    for (int v = 0; v < (int)d.space_vars.size(); ++v) images[d.space_vars[v]] = acted[v];
  }
  Substitution translate(d.chart, ext, images);
  Substitution embed = Substitution::renaming(d.chart, ext, [&] {
    std::vector<int> m;
    for (int v = 0; v < d.chart->num_vars(); ++v) m.push_back(ext->var_index(d.chart->var(v).name));
    return m;
  }());
  return translate.apply(on_dupont).drop_generators(kk_gens) == embed.apply(on_dupont);
}

VectorField SimplicialSpace::k_vertical(int p, int j, const ActionPtr& k_action) const {
  const LevelChart& d = dupont_[p];
  VectorField out = VectorField::zero(d.chart);
  if (kind_ == NerveBar) {
    for (const auto& block : d.group_blocks) {
      int v = block[j];
      int g = d.chart->generator_of_var(v);
      out.add(g, Scalar::variable(d.chart, d.chart->var(v).name) * GaussianRational::i());
    }
  } else {
    if (!k_action) throw std::invalid_argument("structure action required");
    std::vector<int> vm(k_action->space->num_vars());
    for (int v = 0; v < k_action->space->num_vars(); ++v) vm[v] = d.space_vars[v];
    for (const auto& [g, coeff] : k_action->fundamental[j].coeffs)
      out.add(d.space_gens[g], coeff.transport(d.chart, vm));
  }
  return out;
}

void TotalDeRhamElement::add(int level, const Form& f) {
  if (f.is_zero()) return;
  auto [it, fresh] = levels.emplace(level, f);
  if (!fresh) {
    it->second += f;
    if (it->second.is_zero()) levels.erase(it);
  }
}

bool TotalDeRhamElement::is_zero() const { return levels.empty(); }

SimplicialDeRhamElement simplicial_del(const SimplicialDeRhamElement& x) {
  const int p = x.level + 1;
  if (p > x.space->p_max()) throw std::invalid_argument("level overflow in del");
  Form out(x.space->level(p).chart);
  for (int i = 0; i <= p; ++i) {
    Form piece = x.space->face(p, i).apply(x.form);
    if (i % 2 == 1) piece = -piece;
    out += piece;
  }
  return SimplicialDeRhamElement{x.space, p, out};
}

TotalDeRhamElement total_differential(const TotalDeRhamElement& x) {
  TotalDeRhamElement out{x.space, {}};
  for (const auto& [lvl, f] : x.levels) {
    for (int q = 0; q <= f.max_degree(); ++q) {
      Form part = f.degree_part(q);
      if (part.is_zero()) continue;
      out.add(lvl, exterior_d(part));
      Form delled = simplicial_del(SimplicialDeRhamElement{x.space, lvl, part}).form;
      if (q % 2 == 1) delled = -delled;
      out.add(lvl + 1, delled);
    }
  }
  return out;
}

TotalDeRhamElement double_complex_defect(const SimplicialDeRhamElement& x) {
  TotalDeRhamElement e{x.space, {}};
  e.add(x.level, x.form);
  return total_differential(total_differential(e));
}

bool DupontForm::is_zero() const {
  for (const Form& f : levels)
    if (!f.is_zero()) return false;
  return true;
}

DupontForm DupontForm::operator+(const DupontForm& o) const {
  DupontForm r = *this;
  for (size_t p = 0; p < levels.size(); ++p) r.levels[p] += o.levels[p];
  return r;
}

DupontForm DupontForm::operator*(const GaussianRational& c) const {
  DupontForm r = *this;
  for (Form& f : r.levels) f *= c;
  return r;
}

DupontForm dupont_d(const DupontForm& w) {
  DupontForm r = w;
  for (Form& f : r.levels) f = exterior_d(f);
  return r;
}

DupontForm dupont_wedge(const DupontForm& a, const DupontForm& b) {
  DupontForm r = a;
  for (size_t p = 0; p < r.levels.size(); ++p) r.levels[p] = wedge(a.levels[p], b.levels[p]);
  return r;
}

bool dupont_compatible(const DupontForm& w) {
  const SimplicialSpace& s = *w.space;
  for (int p = 1; p <= s.p_max(); ++p) {
    for (int i = 0; i <= p; ++i) {
      if (s.coface(p, i).apply(w.levels[p]) != s.face_ext(p, i).apply(w.levels[p - 1]))
        return false;
    }
  }
  return true;
}

bool DupontAlgForm::compatible() const {
  for (int j = 0; j < alg->dim(); ++j) {
    DupontForm comp{space, {}};
    for (const AlgebraValuedForm& lvl : levels) comp.levels.push_back(lvl.comps[j]);
    if (!dupont_compatible(comp)) return false;
  }
  return true;
}

Rational simplex_monomial_integral(int p, const std::vector<int>& exponents) {
  Rational num(1);
  long long total = p;
  for (int a : exponents) {
    num *= Rational::factorial(a);
    total += a;
  }
  return num / Rational::factorial(static_cast<int>(total));
}

std::vector<SimplicialDeRhamElement> simplex_integrate(const DupontForm& w) {
  const SimplicialSpace& s = *w.space;
  std::vector<SimplicialDeRhamElement> out;
  for (int p = 0; p <= s.p_max(); ++p) {
    const LevelChart& d = s.dupont(p);
    const LevelChart& lvl = s.level(p);
    std::vector<int> to_level(d.chart->num_vars(), -1);
    for (int v = 0; v < d.chart->num_vars(); ++v) {
      int t = lvl.chart->var_index(d.chart->var(v).name);
      to_level[v] = t;  // simplex vars map to -1 via missing names
    }
    Form result(lvl.chart);
    for (const auto& [mask, coeff] : w.levels[p].terms()) {
      if ((mask & d.simplex_gens) != d.simplex_gens) continue;  // needs all dt's
      GenMask rest = mask & ~d.simplex_gens;
      // sign of writing e_mask = dt-block ^ e_rest
      int inversions = 0;
      for (int g = 0; g < 32; ++g) {
        if (!(rest & (GenMask(1) << g))) continue;
        GenMask higher_dt = d.simplex_gens & ~((GenMask(2) << g) - 1);
        inversions += std::popcount(higher_dt);
      }
      // integrate the coefficient monomials over the simplex
      Scalar integrated(d.chart);
      for (const auto& [e, c] : coeff.terms()) {
        std::vector<int> texp;
        ExpVec flat = e;
        for (int tv : d.simplex_vars) {
          texp.push_back(e[tv]);
          flat[tv] = 0;
        }
        Rational weight = simplex_monomial_integral(p, texp);
        integrated += Scalar::monomial(d.chart, flat, c * GaussianRational(weight));
      }
      if (inversions % 2 == 1) integrated *= GaussianRational(-1);
      // move the generators and the coefficient down to the level chart
      GenMask lvl_mask = 0;
      for (int g = 0; g < 32; ++g) {
        if (!(rest & (GenMask(1) << g))) continue;
        int lg = lvl.chart->gen_index(d.chart->gen_name(g));
        if (lg < 0) throw std::logic_error("generator lost in simplex integration");
        lvl_mask |= GenMask(1) << lg;
      }
      result.add_term(integrated.transport(lvl.chart, to_level), lvl_mask);
    }
    out.push_back(SimplicialDeRhamElement{w.space, p, result});
  }
  return out;
}

DupontForm dupont_prism(const SpacePtr& space, const Form& alpha_on_space) {
  DupontForm w{space, {}};
  for (int p = 0; p <= space->p_max(); ++p) {
    Form lvl(space->dupont(p).chart);
    for (int i = 0; i <= p; ++i) {
      Scalar ti = i == 0 ? space->t0(p) : space->t(p, i);
      lvl += ti * space->vertex_map(p, i).apply(alpha_on_space);
    }
    w.levels.push_back(lvl);
  }
  return w;
}

DupontAlgForm simplicial_connection(const SpacePtr& space, const Connection& conn) {
  if (!conn.g_invariant)
    throw std::invalid_argument("simplicial connection needs a G-invariant connection");
  if (space->kind() != SimplicialSpace::ActionSpace ||
      space->action() != conn.bundle->g_action)
    throw std::invalid_argument("space does not match the bundle's symmetry action");
  DupontAlgForm theta{space, conn.comp.alg, {}};
  for (int p = 0; p <= space->p_max(); ++p) {
    AlgebraValuedForm lvl = AlgebraValuedForm::zero(conn.comp.alg, space->dupont(p).chart);
    for (int i = 0; i <= p; ++i) {
      Scalar ti = i == 0 ? space->t0(p) : space->t(p, i);
      Substitution m = space->vertex_map(p, i);
      for (int j = 0; j < conn.comp.alg->dim(); ++j)
        lvl.comps[j] += ti * m.apply(conn.comp.comps[j]);
    }
    theta.levels.push_back(lvl);
  }
  if (!theta.compatible()) throw std::logic_error("simplicial connection is not compatible");
  return theta;
}

DupontAlgForm universal_connection(const SpacePtr& nerve_bar) {
  if (nerve_bar->kind() != SimplicialSpace::NerveBar)
    throw std::invalid_argument("universal connection lives on the bar nerve");
  const TorusPtr& k = nerve_bar->group();
  DupontAlgForm theta{nerve_bar, k->algebra, {}};
  for (int p = 0; p <= nerve_bar->p_max(); ++p) {
    AlgebraValuedForm lvl = AlgebraValuedForm::zero(k->algebra, nerve_bar->dupont(p).chart);
    for (int i = 0; i <= p; ++i) {
      Scalar ti = i == 0 ? nerve_bar->t0(p) : nerve_bar->t(p, i);
      for (int j = 0; j < k->rank; ++j) lvl.comps[j] += ti * nerve_bar->mc_component(p, i, j);
    }
    theta.levels.push_back(lvl);
  }
  if (!theta.compatible()) throw std::logic_error("universal connection is not compatible");
  return theta;
}

DupontAlgForm dupont_curvature(const DupontAlgForm& theta) {
  DupontAlgForm omega{theta.space, theta.alg, {}};
  for (const AlgebraValuedForm& lvl : theta.levels) {
    AlgebraValuedForm half = bracket_wedge(lvl, lvl);
    for (Form& f : half.comps) f *= GaussianRational(Rational(1, 2));
    omega.levels.push_back(alg_d(lvl) + half);
  }
  return omega;
}

DupontForm dupont_char_form(const InvariantPolynomial& P, const DupontAlgForm& theta,
                            const ActionPtr& k_action, bool verify_basic) {
  DupontAlgForm omega = dupont_curvature(theta);
  DupontForm w{theta.space, {}};
  for (int p = 0; p <= theta.space->p_max(); ++p) {
    std::vector<AlgebraValuedForm> args(P.degree, omega.levels[p]);
    w.levels.push_back(evaluate_inv_poly(P, args));
  }
  if (verify_basic) {
    for (int p = 0; p <= theta.space->p_max(); ++p) {
      if (!theta.space->is_k_invariant(p, w.levels[p], k_action))
        throw std::logic_error("characteristic form is not K-invariant at level " +
                               std::to_string(p));
      for (int j = 0; j < theta.alg->dim(); ++j) {
        if (!contract(theta.space->k_vertical(p, j, k_action), w.levels[p]).is_zero())
          throw std::logic_error("characteristic form is not horizontal at level " +
                                 std::to_string(p));
      }
    }
  }
  return w;
}

}  // namespace ecw
