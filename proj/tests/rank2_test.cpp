#include "doctest.h"

#include "ecw/getzler.hpp"
#include "ecw/random_gen.hpp"
#include "ecw/registry.hpp"

// The rank-2 torus paths: dual monomials in two symbols, multilinear
// contraction slots in the shuffle map, and two-variable group copies.

using namespace ecw;

TEST_CASE("rank-2 fundamental fields carry the character weights") {
  const Registry& reg = Registry::instance();
  ActionPtr a = reg.action("bi-rotation");
  ChartPtr c = a->space;
  Scalar z = Scalar::variable(c, "z");
  int gz = c->generator_of_var(c->var_index("z"));
  CHECK(a->fundamental[0].coeffs.at(gz) == GaussianRational::i() * z);
  CHECK(a->fundamental[1].coeffs.at(gz) == GaussianRational(Rational(2)) * GaussianRational::i() * z);
}

TEST_CASE("rank-2 cartan model: defect identity and closedness") {
  const Registry& reg = Registry::instance();
  ActionPtr a = reg.action("bi-rotation");
  ChartPtr c = a->space;
  std::mt19937_64 rng(179);
  for (int k = 0; k < 10; ++k) {
    EquivariantForm w = EquivariantForm::zero(a);
    w.add({}, random_form_mixed(c, rng));
    w.add({static_cast<int>(rng() % 2)}, random_form_mixed(c, rng, 2));
    for (int j = 0; j < 2; ++j) {
      CHECK(cartan_d_defect(w, j) == lie_derivative(a->fundamental[j], w.eval_at_basis(j)));
    }
  }
  // invariant input: |z|^2-polynomials times the area form
  Scalar r2 = Scalar::variable(c, "z") * Scalar::variable(c, "zc");
  Form area = wedge(Form::generator(c, "dz"), Form::generator(c, "dzc"));
  EquivariantForm w = EquivariantForm::from_form(a, r2 * area);
  w.add({0}, Form::from_scalar(r2));
  w.add({1}, Form::from_scalar(r2 * GaussianRational(2)));
  REQUIRE(check_equivariance(w));
  CHECK(cartan_d(cartan_d(w)).is_zero());
}

TEST_CASE("rank-2 simplicial and Getzler layers") {
  const Registry& reg = Registry::instance();
  SpacePtr s = SimplicialSpace::make_action_space(reg.action("bi-rotation"), 3);
  std::mt19937_64 rng(181);

  // relations validated at construction; run the cochain identities
  for (int k = 0; k < 6; ++k) {
    GetzlerCochain f = random_cochain(s, k % 2, rng);
    CHECK(dbar(dbar(f)).is_zero());
    GetzlerCochain lhs = iota_bar(dbar(f));
    if (f.level >= 1) lhs = lhs + dbar(iota_bar(f));
    CHECK(lhs == (GetzlerCochain::zero(s, f.level) - lie_part(f)));
  }
  // chain identities with two basis directions per contraction slot
  for (int lvl = 0; lvl <= 1; ++lvl) {
    for (int k = 0; k < 5; ++k) {
      Form f = random_form_mixed(s->level(lvl).chart, rng);
      CheckReport r = chain_map_check(SimplicialDeRhamElement{s, lvl, f});
      CHECK(r.ok);
      if (!r.ok) MESSAGE(r.summary());
    }
  }
  // group averaging integrates both coordinates of the first copy
  GetzlerCochain g = random_cochain(s, 0, rng);
  GetzlerCochain closed = dbar(g);
  CHECK(dbar(group_average(closed)) == closed);
}

TEST_CASE("rank-2 torus nerve carries a compatible universal connection") {
  const Registry& reg = Registry::instance();
  SpacePtr nb = SimplicialSpace::make_nerve_bar(reg.torus("T2"), 2);
  DupontAlgForm theta = universal_connection(nb);
  CHECK(theta.compatible());
  for (int p = 0; p <= 2; ++p) {
    for (int j = 0; j < 2; ++j) {
      Form c = contract(nb->k_vertical(p, j), theta.levels[p].comps[j]);
      CHECK(c == Form::from_scalar(Scalar::one(nb->dupont(p).chart)));
      Form cross = contract(nb->k_vertical(p, j), theta.levels[p].comps[1 - j]);
      CHECK(cross.is_zero());
    }
  }
}

TEST_CASE("rank-2 universal inverse at degree one") {
  const Registry& reg = Registry::instance();
  InvariantPolynomial xi2;
  xi2.name = "xi2";
  xi2.alg = reg.algebra("torus2");
  xi2.degree = 1;
  xi2.coeffs[{1}] = GaussianRational(1);
  xi2.validate();
  CHECK(universal_inverse_check(reg.torus("T2"), xi2, 2).ok);

  InvariantPolynomial mixed;
  mixed.name = "xi1*xi2";
  mixed.alg = reg.algebra("torus2");
  mixed.degree = 2;
  mixed.coeffs[{0, 1}] = GaussianRational(1);
  mixed.validate();
  CHECK(universal_inverse_check(reg.torus("T2"), mixed, 2).ok);
}
