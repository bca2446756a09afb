#include "ecw/bundle.hpp"

#include <sstream>

namespace ecw {

void ComparisonReport::fail(const std::string& what) {
  ok = false;
  if (!detail.empty()) detail += "; ";
  detail += what;
}

void PrincipalBundleModel::validate() const {
  // commuting actions: (g x) k = g (x k) as substitutions on the chart
  // [g-block][k-block][total block]
  ChartBuilder cb(name + "-commute");
  std::vector<int> gvars, kvars;
  for (int j = 1; j <= g_action->group->rank; ++j)
    gvars.push_back(cb.add_unit("cg" + std::to_string(j)));
  for (int j = 1; j <= structure->rank; ++j)
    kvars.push_back(cb.add_unit("ck" + std::to_string(j)));
  int off = cb.append_chart(*total);
  ChartPtr c = cb.build();
  std::vector<int> tvars;
  for (int v = 0; v < total->num_vars(); ++v) tvars.push_back(off + v);

  std::vector<Scalar> g_then_k;  // x -> gx -> (gx)k
  {
    std::vector<Scalar> gx = g_action->action_images_on(c, gvars, tvars);
    std::vector<Scalar> k_img = k_action->action_images_on(c, kvars, tvars);
    // substitute gx into the k-images
    std::vector<Scalar> all(c->num_vars(), Scalar::zero(c));
    for (int v = 0; v < c->num_vars(); ++v) all[v] = Scalar::variable(c, c->var(v).name);
    for (int v = 0; v < total->num_vars(); ++v) all[tvars[v]] = gx[v];
    Substitution push(c, c, all);
    for (const Scalar& s : k_img) g_then_k.push_back(push.apply(s));
  }
  std::vector<Scalar> k_then_g;
  {
    std::vector<Scalar> kx = k_action->action_images_on(c, kvars, tvars);
    std::vector<Scalar> g_img = g_action->action_images_on(c, gvars, tvars);
    std::vector<Scalar> all(c->num_vars(), Scalar::zero(c));
    for (int v = 0; v < c->num_vars(); ++v) all[v] = Scalar::variable(c, c->var(v).name);
    for (int v = 0; v < total->num_vars(); ++v) all[tvars[v]] = kx[v];
    Substitution push(c, c, all);
    for (const Scalar& s : g_img) k_then_g.push_back(push.apply(s));
  }
  if (g_then_k != k_then_g)
    throw std::invalid_argument(name + ": the K- and G-actions do not commute");

  // pi (g x) = g pi(x), when the base is modeled
  if (base && projection && g_action_base) {
    ChartBuilder pb(name + "-equivar");
    std::vector<int> pgv;
    for (int j = 1; j <= g_action->group->rank; ++j)
      pgv.push_back(pb.add_unit("cg" + std::to_string(j)));
    int poff = pb.append_chart(*total);
    ChartPtr pc = pb.build();
    std::vector<int> ptv;
    for (int v = 0; v < total->num_vars(); ++v) ptv.push_back(poff + v);
    std::vector<Scalar> gx = g_action->action_images_on(pc, pgv, ptv);
    // route 1: base var -> pi^* -> then g-translate on the total chart
    std::vector<Scalar> all(pc->num_vars(), Scalar::zero(pc));
    for (int v = 0; v < pc->num_vars(); ++v) all[v] = Scalar::variable(pc, pc->var(v).name);
    for (int v = 0; v < total->num_vars(); ++v) all[ptv[v]] = gx[v];
    Substitution push(pc, pc, all);
    // route 2: base var -> g-translate on the base -> pi^*
    std::vector<Scalar> pi_up;  // pi^* images transported into pc
    for (int v = 0; v < base->num_vars(); ++v) {
      std::vector<int> vm(total->num_vars());
      for (int t = 0; t < total->num_vars(); ++t) vm[t] = ptv[t];
      pi_up.push_back(projection->image(v).transport(pc, vm));
    }
    // substitute pi-images into the base action formula
    std::vector<Scalar> base_ids;
    for (int v = 0; v < base->num_vars(); ++v) base_ids.push_back(pi_up[v]);
    std::vector<Scalar> route2;
    {
      // base action images live on [gb-block][base block]; map base vars to
      // pi-images and group vars to the shared copies.
      const ActionModel& ab = *g_action_base;
      std::vector<Scalar> prod_images(ab.product->num_vars(), Scalar::zero(pc));
      for (int j = 0; j < ab.group->rank; ++j)
        prod_images[ab.group_vars[j]] = Scalar::variable(pc, pc->var(pgv[j]).name);
      for (int v = 0; v < base->num_vars(); ++v) prod_images[ab.space_map[v]] = base_ids[v];
      Substitution inst(ab.product, pc, prod_images);
      for (int v = 0; v < base->num_vars(); ++v) route2.push_back(inst.apply(ab.act->image(v)));
    }
    for (int v = 0; v < base->num_vars(); ++v) {
      if (push.apply(pi_up[v]) != route2[v])
        throw std::invalid_argument(name + ": projection is not G-equivariant");
    }
  }
}

VectorField vertical_field(const PrincipalBundleModel& b, int j) {
  return b.k_action->fundamental[j];
}

Scalar vf_apply_scalar(const VectorField& X, const Scalar& s) {
  Form df = exterior_d(Form::from_scalar(s));
  Form c = contract(X, df);
  Scalar out(s.chart());
  for (const auto& [mask, coeff] : c.terms()) {
    if (mask != 0) throw std::logic_error("contraction of a 1-form is not a scalar");
    out += coeff;
  }
  return out;
}

void verify_connection(Connection& conn) {
  const PrincipalBundleModel& b = *conn.bundle;
  const int krank = b.structure->rank;
  // vertical normalization: i(Y_j#) theta = coordinate of Y_j
  for (int j = 0; j < krank; ++j) {
    VectorField v = vertical_field(b, j);
    for (int comp = 0; comp < krank; ++comp) {
      Form c = contract(v, conn.comp.comps[comp]);
      Form expect = comp == j ? Form::from_scalar(Scalar::one(b.total)) : Form::zero(b.total);
      if (c != expect)
        throw std::invalid_argument(conn.name + ": vertical normalization fails");
    }
  }
  // K-invariance of the components
  for (int comp = 0; comp < krank; ++comp) {
    if (!b.k_action->is_invariant(conn.comp.comps[comp]))
      throw std::invalid_argument(conn.name + ": connection is not K-invariant");
  }
  // G-invariance flag
  conn.g_invariant = true;
  for (int comp = 0; comp < krank; ++comp) {
    if (!b.g_action->is_invariant(conn.comp.comps[comp])) conn.g_invariant = false;
  }
}

AlgebraValuedForm curvature(const Connection& conn) {
  AlgebraValuedForm omega = alg_d(conn.comp);
  AlgebraValuedForm half_bracket = bracket_wedge(conn.comp, conn.comp);
  for (auto& f : half_bracket.comps) f *= GaussianRational(Rational(1, 2));
  return omega + half_bracket;
}

AlgebraValuedForm moment_map(const Connection& conn, int g_basis) {
  const PrincipalBundleModel& b = *conn.bundle;
  return alg_contract(b.g_action->fundamental[g_basis], conn.comp);
}

namespace {

/// P evaluated on the combined object Omega + mu with mu carrying one unit
/// of S(g^v)-degree per insertion.
EquivariantForm char_form_raw(const InvariantPolynomial& P, const Connection& conn) {
  const PrincipalBundleModel& b = *conn.bundle;
  const int grank = b.g_action->group->rank;
  AlgebraValuedForm omega = curvature(conn);
  std::vector<AlgebraValuedForm> mu;
  for (int j = 0; j < grank; ++j) mu.push_back(moment_map(conn, j));

  EquivariantForm out = EquivariantForm::zero(b.g_action);
  // choose, for each of the q slots, either the curvature (empty monomial)
  // or mu(X_j) (monomial {j}); all components have even form degree
  const int q = P.degree;
  std::vector<int> choice(q, -1);  // -1 = curvature, j >= 0 = mu_j
  auto rec = [&](auto&& self, int slot) -> void {
    if (slot == q) {
      std::vector<AlgebraValuedForm> args;
      SymMonomial mono;
      for (int s = 0; s < q; ++s) {
        if (choice[s] < 0) {
          args.push_back(omega);
        } else {
          args.push_back(mu[choice[s]]);
          mono.push_back(choice[s]);
        }
      }
      std::sort(mono.begin(), mono.end());
      out.add(mono, evaluate_inv_poly(P, args));
      return;
    }
    for (choice[slot] = -1; choice[slot] < grank; ++choice[slot]) self(self, slot + 1);
  };
  rec(rec, 0);
  return out;
}

}  // namespace

EquivariantForm equivariant_char_form(const InvariantPolynomial& P, const Connection& conn) {
  if (!conn.g_invariant)
    throw std::invalid_argument(conn.name + ": characteristic form needs a G-invariant connection");
  const PrincipalBundleModel& b = *conn.bundle;
  EquivariantForm out = char_form_raw(P, conn);
  // basic: K-invariant and killed by the vertical contractions
  for (const auto& [mono, f] : out.comps) {
    (void)mono;
    if (!b.k_action->is_invariant(f))
      throw std::logic_error(conn.name + ": characteristic form is not K-invariant");
    for (int j = 0; j < b.structure->rank; ++j) {
      if (!contract(vertical_field(b, j), f).is_zero())
        throw std::logic_error(conn.name + ": characteristic form is not horizontal");
    }
  }
  // closed in the Cartan model
  if (!cartan_d(out).is_zero())
    throw std::logic_error(conn.name + ": characteristic form is not d_C-closed");
  return out;
}

IntervalExtension extend_by_interval(const BundlePtr& b) {
  ChartBuilder cb(b->name + "-interval");
  cb.add_ordinary("s");
  int off = cb.append_chart(*b->total);
  ChartPtr ext = cb.build();
  std::vector<int> var_map(b->total->num_vars());
  for (int v = 0; v < b->total->num_vars(); ++v) var_map[v] = off + v;

  auto lift_action = [&](const ActionPtr& a, const std::string& label) {
    return make_action(
        a->name + label, a->group, ext,
        [&](const ChartPtr& product, const std::vector<int>& gvars,
            const std::vector<int>& smap) {
          std::vector<Scalar> images;
          // ext vars: s first, then the total block
          std::vector<int> total_positions;
          for (int v = 0; v < b->total->num_vars(); ++v)
            total_positions.push_back(smap[off + v]);
          std::vector<Scalar> tot = a->action_images_on(product, gvars, total_positions);
          for (int v = 0; v < ext->num_vars(); ++v) {
            if (v == 0)
              images.push_back(Scalar::variable(product, "s"));
            else
              images.push_back(tot[v - off]);
          }
          return images;
        });
  };

  auto nb = std::make_shared<PrincipalBundleModel>();
  nb->name = b->name + "-interval";
  nb->total = ext;
  nb->structure = b->structure;
  nb->k_action = lift_action(b->k_action, "-ext-k");
  nb->g_action = lift_action(b->g_action, "-ext-g");
  nb->g_fiber_weight = b->g_fiber_weight;
  nb->validate();
  return IntervalExtension{nb, var_map};
}

EquivariantForm transgression(const InvariantPolynomial& P, const Connection& theta0,
                              const Connection& theta1) {
  if (theta0.bundle != theta1.bundle)
    throw std::invalid_argument("transgression needs connections on one bundle");
  if (!theta0.g_invariant || !theta1.g_invariant)
    throw std::invalid_argument("transgression needs G-invariant connections");
  const BundlePtr& b = theta0.bundle;
  IntervalExtension ext = extend_by_interval(b);
  const ChartPtr& chart = ext.bundle->total;

  Scalar s = Scalar::variable(chart, "s");
  Scalar one_minus = Scalar::one(chart) - s;
  AlgebraValuedForm comp_t = AlgebraValuedForm::zero(b->structure->algebra, chart);
  Substitution lift = Substitution::renaming(b->total, chart, ext.var_map);
  for (int j = 0; j < b->structure->rank; ++j) {
    comp_t.comps[j] = one_minus * lift.apply(theta0.comp.comps[j]) +
                      s * lift.apply(theta1.comp.comps[j]);
  }
  Connection conn_t{theta0.name + "->" + theta1.name, ext.bundle, comp_t, false};
  verify_connection(conn_t);
  EquivariantForm along = equivariant_char_form(P, conn_t);

  // integrate out the path parameter and land back on the original chart
  std::vector<int> back(chart->num_vars(), -1);
  for (int v = 0; v < b->total->num_vars(); ++v) back[ext.var_map[v]] = v;
  EquivariantForm out = EquivariantForm::zero(b->g_action);
  for (const auto& [mono, f] : along.comps) {
    Form integrated = integrate_param(f, "s");
    Form home(b->total);
    for (const auto& [mask, coeff] : integrated.terms()) {
      // generators of the extension are the lifted total generators plus ds
      GenMask mapped = 0;
      for (int g = 0; g < 32; ++g) {
        if (!(mask & (GenMask(1) << g))) continue;
        int tg = b->total->gen_index(chart->gen_name(g));
        if (tg < 0) throw std::logic_error("transgression left a path generator behind");
        mapped |= GenMask(1) << tg;
      }
      home.add_term(coeff.transport(b->total, back), mapped);
    }
    out.add(mono, home);
  }
  return out;
}

Scalar vb_moment_map(const LineBundleModel& L, int g_basis, const Scalar& phi) {
  const VectorField& xsharp = L.g_action->fundamental[g_basis];
  // nabla_{X#} phi = X#(phi) + A(X#) phi
  Scalar a_of_x(L.base);
  {
    Form c = contract(xsharp, L.A);
    for (const auto& [mask, coeff] : c.terms()) {
      if (mask != 0) throw std::invalid_argument("connection form of degree != 1");
      a_of_x += coeff;
    }
  }
  Scalar nabla_term = vf_apply_scalar(xsharp, phi) + a_of_x * phi;
  // L^E_X phi = d/dt|_0 exp(tX)^* phi = i * g_twist * weight-character - X#(phi)
  Scalar lie_term = Scalar::constant(L.base, GaussianRational::i() *
                                                 GaussianRational(L.g_twist * L.k_weight)) *
                        phi -
                    vf_apply_scalar(xsharp, phi);
  return nabla_term + lie_term;
}

ComparisonReport compare_pb_vb(const Connection& conn, const LineBundleModel& L) {
  ComparisonReport report;
  const PrincipalBundleModel& b = *conn.bundle;
  if (!b.base || !b.section) {
    report.fail("bundle has no frame/section data");
    return report;
  }
  const Substitution& frame = *b.section;
  const GaussianRational i_times_n = GaussianRational::i() * GaussianRational(L.k_weight);

  // curvature half: d A + A ^ A == rho(s^* Omega)
  Form r_vb = exterior_d(L.A) + wedge(L.A, L.A);
  AlgebraValuedForm omega = curvature(conn);
  Form r_pb = frame.apply(omega.comps[0]) * i_times_n;
  if (r_vb != r_pb)
    report.fail("curvature mismatch: vb = " + r_vb.str() + " vs pb = " + r_pb.str());

  // moment half per symmetry basis element
  for (int j = 0; j < b.g_action->group->rank; ++j) {
    AlgebraValuedForm mu = moment_map(conn, j);
    Scalar endo_pb(L.base);
    {
      Form f = frame.apply(mu.comps[0]);
      for (const auto& [mask, coeff] : f.terms()) {
        if (mask != 0) {
          report.fail("moment map is not a function");
          return report;
        }
        endo_pb += coeff;
      }
      endo_pb *= i_times_n;
    }
    Scalar endo_vb = vb_moment_map(L, j, Scalar::one(L.base));
    if (endo_pb != endo_vb)
      report.fail("moment mismatch: vb = " + endo_vb.str() + " vs pb = " + endo_pb.str());
    // section independence on a nontrivial section
    Scalar phi = Scalar::variable(L.base, L.base->var(0).name) + Scalar::one(L.base);
    if (vb_moment_map(L, j, phi) != endo_vb * phi)
      report.fail("vb moment map is not phi-linear");
  }
  return report;
}

}  // namespace ecw
