#include "doctest.h"

#include "ecw/random_gen.hpp"
#include "ecw/registry.hpp"

using namespace ecw;

namespace {
EquivariantForm random_equivariant_candidate(const ActionPtr& a, std::mt19937_64& rng) {
  EquivariantForm w = EquivariantForm::zero(a);
  std::uniform_int_distribution<int> deg(0, 2);
  w.add({}, random_form(a->space, rng, deg(rng)));
  if (rng() % 2) w.add({0}, random_form(a->space, rng, deg(rng)));
  if (rng() % 3 == 0) w.add({0, 0}, random_form(a->space, rng, 0));
  return w;
}
}  // namespace

TEST_CASE("cartan differential on a point recovers invariant polynomials") {
  const Registry& reg = Registry::instance();
  ActionPtr pt_action = make_action(
      "u1-on-point", reg.torus("U1"), reg.chart("point"),
      [&](const ChartPtr& p, const std::vector<int>&, const std::vector<int>& m) {
        return std::vector<Scalar>{Scalar::variable(p, p->var(m[0]).name)};
      });
  EquivariantForm w = EquivariantForm::zero(pt_action);
  w.add({0}, Form::from_scalar(Scalar::one(pt_action->space)));
  w.add({0, 0}, Form::from_scalar(Scalar::constant(pt_action->space, GaussianRational(3))));
  CHECK(cartan_d(w).is_zero());
  CHECK(check_equivariance(w));
}

TEST_CASE("constant function is closed") {
  const Registry& reg = Registry::instance();
  ActionPtr rot = reg.action("rotation-xy");
  EquivariantForm c = EquivariantForm::from_form(
      rot, Form::from_scalar(Scalar::constant(rot->space, GaussianRational(5))));
  CHECK(cartan_d(c).is_zero());
}

TEST_CASE("rotation example: dx^dy plus its moment term is closed") {
  const Registry& reg = Registry::instance();
  ActionPtr rot = reg.action("rotation-xy");
  ChartPtr p = rot->space;
  Form dxdy = wedge(Form::generator(p, "dx"), Form::generator(p, "dy"));

  // solve d(mu) = -i(X#)(dx^dy) symbolically: the right-hand side is
  // x dx + y dy, so mu = (x^2 + y^2)/2
  Form rhs = -contract(rot->fundamental[0], dxdy);
  Scalar mu = (Scalar::variable(p, "x").pow(2) + Scalar::variable(p, "y").pow(2)) *
              GaussianRational(Rational(1, 2));
  CHECK(exterior_d(Form::from_scalar(mu)) == rhs);

  EquivariantForm w = EquivariantForm::from_form(rot, dxdy);
  w.add({0}, Form::from_scalar(mu));
  CHECK(check_equivariance(w));
  CHECK(cartan_d(w).is_zero());
  CHECK(w.total_degree() == 2);
}

TEST_CASE("defect of the squared differential is the Lie derivative") {
  const Registry& reg = Registry::instance();
  ActionPtr rot = reg.action("rotation-xy");
  ChartPtr p = rot->space;

  // non-invariant component: x dy
  EquivariantForm w = EquivariantForm::from_form(
      rot, Scalar::variable(p, "x") * Form::generator(p, "dy"));
  Form defect = cartan_d_defect(w, 0);
  Form lie = lie_derivative(rot->fundamental[0], w.eval_at_basis(0));
  CHECK(!lie.is_zero());
  CHECK(defect == lie);

  // equivariant input: defect vanishes
  Form dxdy = wedge(Form::generator(p, "dx"), Form::generator(p, "dy"));
  EquivariantForm inv = EquivariantForm::from_form(rot, dxdy);
  CHECK(cartan_d_defect(inv, 0).is_zero());

  // trivial action: always zero
  ActionPtr triv = reg.action("trivial-cplane");
  std::mt19937_64 rng(61);
  for (int k = 0; k < 10; ++k) {
    EquivariantForm r = random_equivariant_candidate(triv, rng);
    CHECK(cartan_d_defect(r, 0).is_zero());
  }
}

TEST_CASE("defect equals the Lie derivative on random candidates") {
  const Registry& reg = Registry::instance();
  std::mt19937_64 rng(67);
  for (ActionPtr a : {reg.action("rotation-xy"), reg.action("rotation-plane")}) {
    for (int k = 0; k < 25; ++k) {
      EquivariantForm w = random_equivariant_candidate(a, rng);
      Form defect = cartan_d_defect(w, 0);
      Form lie = lie_derivative(a->fundamental[0], w.eval_at_basis(0));
      CHECK(defect == lie);
    }
  }
}

TEST_CASE("d_C squares to zero exactly on equivariant inputs") {
  const Registry& reg = Registry::instance();
  ActionPtr rot = reg.action("rotation-xy");
  ChartPtr p = rot->space;
  std::mt19937_64 rng(71);
  Scalar r2 = Scalar::variable(p, "x").pow(2) + Scalar::variable(p, "y").pow(2);
  Form dxdy = wedge(Form::generator(p, "dx"), Form::generator(p, "dy"));
  for (int k = 0; k < 20; ++k) {
    // invariant candidates: polynomials in r^2 times invariant forms
    EquivariantForm w = EquivariantForm::zero(rot);
    int pow = static_cast<int>(rng() % 3);
    w.add({}, r2.pow(pow) * dxdy);
    if (rng() % 2) w.add({0}, Form::from_scalar(r2.pow(pow)));
    REQUIRE(check_equivariance(w));
    CHECK(cartan_d(cartan_d(w)).is_zero());
  }
}

TEST_CASE("equivariant wedge: unit, point squares, degree bookkeeping") {
  const Registry& reg = Registry::instance();
  ActionPtr rot = reg.action("rotation-xy");
  ChartPtr p = rot->space;
  EquivariantForm one = EquivariantForm::from_form(rot, Form::from_scalar(Scalar::one(p)));
  std::mt19937_64 rng(73);
  EquivariantForm w = random_equivariant_candidate(rot, rng);
  CHECK(wedge_equivariant(one, w) == w);
  CHECK(wedge_equivariant(w, one) == w);

  // two degree-1 polynomial elements multiply into S^2
  EquivariantForm p1 = EquivariantForm::zero(rot);
  p1.add({0}, Form::from_scalar(Scalar::constant(p, GaussianRational(2))));
  EquivariantForm p2 = EquivariantForm::zero(rot);
  p2.add({0}, Form::from_scalar(Scalar::constant(p, GaussianRational(3))));
  EquivariantForm prod = wedge_equivariant(p1, p2);
  REQUIRE(prod.comps.size() == 1);
  CHECK(prod.comps.begin()->first == SymMonomial{0, 0});
  CHECK(prod.comps.begin()->second ==
        Form::from_scalar(Scalar::constant(p, GaussianRational(6))));
  CHECK(prod.total_degree() == 4);

  // (2*1+0) + (2*0+2) -> total degree 4
  EquivariantForm a = EquivariantForm::zero(rot);
  a.add({0}, Form::from_scalar(Scalar::one(p)));
  EquivariantForm b = EquivariantForm::from_form(
      rot, wedge(Form::generator(p, "dx"), Form::generator(p, "dy")));
  CHECK(a.total_degree() == 2);
  CHECK(b.total_degree() == 2);
  CHECK(wedge_equivariant(a, b).total_degree() == 4);
}

TEST_CASE("equivariant wedge is associative and graded-commutative") {
  const Registry& reg = Registry::instance();
  ActionPtr rot = reg.action("rotation-plane");
  std::mt19937_64 rng(79);
  for (int k = 0; k < 10; ++k) {
    EquivariantForm a = random_equivariant_candidate(rot, rng);
    EquivariantForm b = random_equivariant_candidate(rot, rng);
    EquivariantForm c = random_equivariant_candidate(rot, rng);
    CHECK(wedge_equivariant(wedge_equivariant(a, b), c) ==
          wedge_equivariant(a, wedge_equivariant(b, c)));
  }
  // graded commutativity in total degree on homogeneous elements
  ChartPtr p = rot->space;
  EquivariantForm odd1 = EquivariantForm::from_form(rot, Form::generator(p, "dz"));
  EquivariantForm odd2 = EquivariantForm::from_form(
      rot, Scalar::variable(p, "z") * Form::generator(p, "dzc"));
  CHECK(wedge_equivariant(odd1, odd2) == (EquivariantForm::zero(rot) - wedge_equivariant(odd2, odd1)));
  EquivariantForm even = EquivariantForm::zero(rot);
  even.add({0}, Form::from_scalar(Scalar::one(p)));
  CHECK(wedge_equivariant(even, odd1) == wedge_equivariant(odd1, even));
}

TEST_CASE("cartan_d raises the total degree by one") {
  const Registry& reg = Registry::instance();
  ActionPtr rot = reg.action("rotation-xy");
  ChartPtr p = rot->space;
  EquivariantForm w = EquivariantForm::zero(rot);
  w.add({0}, Scalar::variable(p, "x") * Form::generator(p, "dy"));  // degree 3
  CHECK(w.total_degree() == 3);
  EquivariantForm dw = cartan_d(w);
  CHECK(dw.total_degree() == 4);
}

TEST_CASE("equivariance check: spec examples") {
  const Registry& reg = Registry::instance();
  ActionPtr rot = reg.action("rotation-xy");
  ChartPtr p = rot->space;
  Form dxdy = wedge(Form::generator(p, "dx"), Form::generator(p, "dy"));
  CHECK(check_equivariance(EquivariantForm::from_form(rot, dxdy)));
  CHECK(!check_equivariance(EquivariantForm::from_form(
      rot, Scalar::variable(p, "x") * Form::generator(p, "dy"))));

  ActionPtr triv = reg.action("trivial-cplane");
  std::mt19937_64 rng(83);
  for (int k = 0; k < 5; ++k)
    CHECK(check_equivariance(random_equivariant_candidate(triv, rng)));
}
