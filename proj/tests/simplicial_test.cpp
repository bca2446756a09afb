#include "doctest.h"

#include "ecw/random_gen.hpp"
#include "ecw/registry.hpp"
#include "ecw/simplicial.hpp"

using namespace ecw;

namespace {
SpacePtr rotation_space(int p_max = 3) {
  return SimplicialSpace::make_action_space(Registry::instance().action("rotation-plane"), p_max);
}
}  // namespace

TEST_CASE("simplicial relations hold for the rotation action and both nerves") {
  // construction validates all relations; also build the bar nerve
  SpacePtr s = rotation_space();
  CHECK(s->p_max() == 3);
  SpacePtr nb = SimplicialSpace::make_nerve_bar(Registry::instance().torus("U1"), 3);
  CHECK(nb->copies(2) == 3);
  SpacePtr nk = SimplicialSpace::make_action_space(
      make_action("u1-on-point", Registry::instance().torus("U1"),
                  Registry::instance().chart("point"),
                  [&](const ChartPtr& p, const std::vector<int>&, const std::vector<int>& m) {
                    return std::vector<Scalar>{Scalar::variable(p, p->var(m[0]).name)};
                  }),
      3);
  CHECK(nk->copies(2) == 2);
}

TEST_CASE("del: trivial action kills level zero, the commutator pattern shows") {
  // under the trivial action del = pr^* - pr^* = 0 on any level-0 form
  SpacePtr triv = SimplicialSpace::make_action_space(
      Registry::instance().action("trivial-cplane"), 1);
  ChartPtr mt = triv->action()->space;
  Form dzdzc_t = wedge(Form::generator(mt, "dz"), Form::generator(mt, "dzc"));
  CHECK(simplicial_del(SimplicialDeRhamElement{triv, 0, dzdzc_t}).form.is_zero());

  SpacePtr s = rotation_space();
  ChartPtr m = s->action()->space;

  // z dzc is not invariant: del = pr^* - act^*
  Form zdzc = Scalar::variable(m, "z") * Form::generator(m, "dzc");
  SimplicialDeRhamElement y{s, 0, zdzc};
  Form del = simplicial_del(y).form;
  Form expect = s->face(1, 0).apply(zdzc) - s->face(1, 1).apply(zdzc);
  CHECK(del == expect);
  CHECK(!del.is_zero());
}

TEST_CASE("del squares to zero and the double complex closes") {
  SpacePtr s = rotation_space();
  std::mt19937_64 rng(101);
  for (int lvl = 0; lvl <= 1; ++lvl) {
    for (int k = 0; k < 12; ++k) {
      Form f = random_form_mixed(s->level(lvl).chart, rng);
      SimplicialDeRhamElement x{s, lvl, f};
      CHECK(simplicial_del(simplicial_del(x)).form.is_zero());
      CHECK(double_complex_defect(x).is_zero());
    }
  }
  SimplicialDeRhamElement zero{s, 0, Form::zero(s->level(0).chart)};
  CHECK(double_complex_defect(zero).is_zero());
}

TEST_CASE("simplex integration: volumes, a univariate case, level zero") {
  // volume of the p-simplex is 1/p!
  for (int p = 0; p <= 5; ++p) {
    CHECK(simplex_monomial_integral(p, std::vector<int>(p, 0)) ==
          Rational(1) / Rational::factorial(p));
  }
  // t0 dt1 over the 1-simplex with t0 = 1 - t1: integral 1/2
  CHECK(simplex_monomial_integral(1, {0}) - simplex_monomial_integral(1, {1}) ==
        Rational(1, 2));

  SpacePtr s = rotation_space(2);
  ChartPtr m = s->action()->space;
  Form alpha = Scalar::variable(m, "z") * Form::generator(m, "dzc");
  DupontForm w = dupont_prism(s, alpha);
  auto integrated = simplex_integrate(w);
  // level 0 integration is the identity on the dt-free part
  CHECK(integrated[0].form == alpha);
}

TEST_CASE("prism families are Dupont compatible and closed under d and wedge") {
  SpacePtr s = rotation_space(2);
  ChartPtr m = s->action()->space;
  std::mt19937_64 rng(103);
  for (int k = 0; k < 6; ++k) {
    DupontForm a = dupont_prism(s, random_form(m, rng, 1));
    DupontForm b = dupont_prism(s, random_form(m, rng, k % 2));
    CHECK(dupont_compatible(a));
    CHECK(dupont_compatible(dupont_d(a)));
    CHECK(dupont_compatible(dupont_wedge(a, dupont_d(b))));
  }
}

TEST_CASE("stokes consistency of the simplex integration") {
  // [int d w]_p = (-1)^p d [int w]_p + del [int w]_{p-1}
  SpacePtr s = rotation_space(3);
  ChartPtr m = s->action()->space;
  std::mt19937_64 rng(107);
  for (int k = 0; k < 8; ++k) {
    DupontForm a = dupont_prism(s, random_form(m, rng, 1, 2));
    DupontForm b = dupont_prism(s, random_form(m, rng, 0, 2));
    DupontForm w = dupont_wedge(a, dupont_d(b));  // carries dt-terms
    auto iw = simplex_integrate(w);
    auto idw = simplex_integrate(dupont_d(w));
    for (int p = 0; p <= 2; ++p) {
      Form lhs = idw[p].form;
      Form rhs = exterior_d(iw[p].form);
      if (p % 2 == 1) rhs = -rhs;
      if (p >= 1) rhs += simplicial_del(iw[p - 1]).form;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("simplicial connection: level zero is theta, level one is the convex mix") {
  const Registry& reg = Registry::instance();
  const Connection& conn = reg.connection("trivial-r2", "std");
  SpacePtr s = SimplicialSpace::make_action_space(conn.bundle->g_action, 2);

  DupontAlgForm theta = simplicial_connection(s, conn);
  CHECK(theta.levels[0].comps[0] == conn.comp.comps[0]);

  // level 1: t0 (act pr)^* theta + t1 pr^* theta
  Form level1 = theta.levels[1].comps[0];
  Form expect = s->t0(1) * s->vertex_map(1, 0).apply(conn.comp.comps[0]) +
                s->t(1, 1) * s->vertex_map(1, 1).apply(conn.comp.comps[0]);
  CHECK(level1 == expect);
  CHECK(theta.compatible());

  // trivial G-action: both vertex maps agree and theta stays the pullback
  const Connection& stat = reg.connection("trivial-r2-static", "std");
  SpacePtr st = SimplicialSpace::make_action_space(stat.bundle->g_action, 1);
  DupontAlgForm ts = simplicial_connection(st, stat);
  CHECK(ts.levels[1].comps[0] == st->vertex_map(1, 1).apply(stat.comp.comps[0]));
}

TEST_CASE("hopf simplicial connection is compatible") {
  const Registry& reg = Registry::instance();
  const Connection& conn = reg.connection("hopf", "std");
  SpacePtr s = SimplicialSpace::make_action_space(conn.bundle->g_action, 2);
  DupontAlgForm theta = simplicial_connection(s, conn);
  CHECK(theta.compatible());
  // basic at every level
  DupontForm w = dupont_char_form(reg.polynomial("id"), theta, conn.bundle->k_action);
  CHECK(dupont_compatible(w));
}

TEST_CASE("universal connection on the bar nerve") {
  const Registry& reg = Registry::instance();
  SpacePtr nb = SimplicialSpace::make_nerve_bar(reg.torus("U1"), 3);
  DupontAlgForm theta = universal_connection(nb);

  // level 0 is the Maurer-Cartan form
  CHECK(theta.levels[0].comps[0] == nb->mc_component(0, 0, 0));
  CHECK(theta.compatible());

  // K-invariance of each level under the diagonal translation
  for (int p = 0; p <= 3; ++p) CHECK(nb->is_k_invariant(p, theta.levels[p].comps[0]));

  // vertical normalization of each level: pairing with the diagonal field
  for (int p = 0; p <= 3; ++p) {
    Form c = contract(nb->k_vertical(p, 0), theta.levels[p].comps[0]);
    CHECK(c == Form::from_scalar(Scalar::one(nb->dupont(p).chart)));
  }

  // its characteristic forms are basic
  DupontForm w1 = dupont_char_form(reg.polynomial("id"), theta);
  DupontForm w2 = dupont_char_form(reg.polynomial("X^2"), theta);
  CHECK(dupont_compatible(w1));
  CHECK(dupont_compatible(w2));
  CHECK(w1.levels[0].is_zero());  // curvature of the Maurer-Cartan form vanishes
}
