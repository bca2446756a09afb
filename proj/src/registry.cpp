#include "ecw/registry.hpp"

namespace ecw {

namespace {

const GaussianRational kI = GaussianRational::i();
const GaussianRational kHalf(Rational(1, 2));

Scalar var(const ChartPtr& c, const std::string& n, int p = 1) {
  return Scalar::variable(c, n, p);
}

/// identity images of a chart block inside a product chart
std::vector<Scalar> identity_images(const ChartPtr& space, const ChartPtr& product,
                                    const std::vector<int>& space_map) {
  std::vector<Scalar> out;
  for (int v = 0; v < space->num_vars(); ++v)
    out.push_back(var(product, product->var(space_map[v]).name));
  return out;
}

ActionPtr trivial_action(const std::string& name, TorusPtr group, ChartPtr space) {
  return make_action(name, group, space,
                     [&](const ChartPtr& product, const std::vector<int>&,
                         const std::vector<int>& smap) {
                       return identity_images(space, product, smap);
                     });
}

}  // namespace

const Registry& Registry::instance() {
  static Registry r;
  return r;
}

Registry::Registry() {
  // ---- charts -------------------------------------------------------------
  charts_["plane"] = make_plane_chart();
  charts_["cplane"] = make_cplane_chart();
  charts_["line"] = make_line_chart();
  charts_["s3"] = make_s3_chart();
  charts_["point"] = make_point_chart();

  // ---- algebras and groups ------------------------------------------------
  algebras_["u1"] = abelian_algebra("u1", 1);
  algebras_["torus2"] = abelian_algebra("torus2", 2);
  {
    GMatrix e11(2), e12(2), e21(2), e22(2);
    e11.at(0, 0) = GaussianRational(1);
    e12.at(0, 1) = GaussianRational(1);
    e21.at(1, 0) = GaussianRational(1);
    e22.at(1, 1) = GaussianRational(1);
    algebras_["gl2-formal"] =
        algebra_from_matrices("gl2-formal", {"e11", "e12", "e21", "e22"}, {e11, e12, e21, e22});
    GMatrix e(2), f(2), h(2);
    e.at(0, 1) = GaussianRational(1);
    f.at(1, 0) = GaussianRational(1);
    h.at(0, 0) = GaussianRational(1);
    h.at(1, 1) = GaussianRational(-1);
    algebras_["sl2"] = algebra_from_matrices("sl2", {"e", "f", "h"}, {e, f, h});
  }
  tori_["U1"] = make_torus("U1", 1);
  tori_["T2"] = make_torus("T2", 2);

  // ---- actions --------------------------------------------------------------
  const ChartPtr cplane = charts_["cplane"];
  const ChartPtr plane = charts_["plane"];
  const ChartPtr s3 = charts_["s3"];
  const TorusPtr u1 = tori_["U1"];

  actions_["rotation-plane"] =
      make_action("rotation-plane", u1, cplane,
                  [&](const ChartPtr& p, const std::vector<int>& g, const std::vector<int>& m) {
                    std::string u = p->var(g[0]).name;
                    return std::vector<Scalar>{var(p, u) * var(p, p->var(m[0]).name),
                                               var(p, u, -1) * var(p, p->var(m[1]).name),
                                               var(p, p->var(m[2]).name)};
                  });
  actions_["weighted-rotation"] =
      make_action("weighted-rotation", u1, cplane,
                  [&](const ChartPtr& p, const std::vector<int>& g, const std::vector<int>& m) {
                    std::string u = p->var(g[0]).name;
                    return std::vector<Scalar>{var(p, u, 2) * var(p, p->var(m[0]).name),
                                               var(p, u, -2) * var(p, p->var(m[1]).name),
                                               var(p, p->var(m[2]).name)};
                  });
  // rotation of the real plane: x + iy -> u (x + iy), written with Laurent
  // cosine and sine
  actions_["rotation-xy"] =
      make_action("rotation-xy", u1, plane,
                  [&](const ChartPtr& p, const std::vector<int>& g, const std::vector<int>& m) {
                    Scalar u = var(p, p->var(g[0]).name);
                    Scalar uinv = var(p, p->var(g[0]).name, -1);
                    Scalar cos = (u + uinv) * kHalf;
                    Scalar sin = (u - uinv) * (kHalf * -kI);  // (u - u^-1)/(2i)
                    Scalar x = var(p, p->var(m[0]).name), y = var(p, p->var(m[1]).name);
                    return std::vector<Scalar>{cos * x - sin * y, sin * x + cos * y,
                                               var(p, p->var(m[2]).name)};
                  });
  // diagonal circle action on the 3-sphere (the Hopf fibration's structure
  // action)
  auto s3_action = [&](const std::string& name, int w1, int w2) {
    return make_action(name, u1, s3,
                       [&, w1, w2](const ChartPtr& p, const std::vector<int>& g,
                                   const std::vector<int>& m) {
                         std::string u = p->var(g[0]).name;
                         std::vector<Scalar> out;
                         out.push_back(var(p, u, w1) * var(p, p->var(m[0]).name));
                         out.push_back(var(p, u, -w1) * var(p, p->var(m[1]).name));
                         out.push_back(var(p, u, w2) * var(p, p->var(m[2]).name));
                         out.push_back(var(p, u, -w2) * var(p, p->var(m[3]).name));
                         out.push_back(var(p, p->var(m[4]).name));  // tau
                         return out;
                       });
  };
  actions_["hopf"] = s3_action("hopf", 1, 1);
  actions_["rotation-s3-first"] = s3_action("rotation-s3-first", 1, 0);
  actions_["weighted-s3"] = s3_action("weighted-s3", 1, 2);
  actions_["trivial-plane"] = trivial_action("trivial-plane", u1, plane);
  actions_["trivial-cplane"] = trivial_action("trivial-cplane", u1, cplane);
  // rank-2 torus acting through the character u1 u2^2
  actions_["bi-rotation"] =
      make_action("bi-rotation", tori_["T2"], cplane,
                  [&](const ChartPtr& p, const std::vector<int>& g, const std::vector<int>& m) {
                    Scalar chr = var(p, p->var(g[0]).name) * var(p, p->var(g[1]).name, 2);
                    return std::vector<Scalar>{chr * var(p, p->var(m[0]).name),
                                               chr.inverse() * var(p, p->var(m[1]).name),
                                               var(p, p->var(m[2]).name)};
                  });

  // ---- invariant polynomials -------------------------------------------------
  {
    InvariantPolynomial id;
    id.name = "id";
    id.alg = algebras_["u1"];
    id.degree = 1;
    id.coeffs[{0}] = GaussianRational(1);
    id.validate();
    polynomials_["id"] = id;

    InvariantPolynomial sq;
    sq.name = "X^2";
    sq.alg = algebras_["u1"];
    sq.degree = 2;
    sq.coeffs[{0, 0}] = GaussianRational(1);
    sq.validate();
    polynomials_["X^2"] = sq;

    InvariantPolynomial c1 = id;
    c1.name = "c1";
    c1.tau_power = 1;
    polynomials_["c1"] = c1;

    InvariantPolynomial tr2;
    tr2.name = "tr2-gl2";
    tr2.alg = algebras_["gl2-formal"];
    tr2.degree = 2;
    tr2.kind = InvariantPolynomial::TracePower;
    tr2.validate();
    polynomials_["tr2-gl2"] = tr2;
  }

  // ---- bundles -----------------------------------------------------------------
  // trivial principal U(1)-bundle over the real plane, fiber coordinate w
  ChartPtr r2total;
  {
    ChartBuilder tb("trivial-r2-total");
    tb.add_ordinary("x");
    tb.add_ordinary("y");
    tb.add_unit("w");
    tb.add_formal("tau");
    r2total = tb.build();
  }
  auto r2_k_action = make_action(
      "trivial-r2-k", u1, r2total,
      [&](const ChartPtr& p, const std::vector<int>& g, const std::vector<int>& m) {
        return std::vector<Scalar>{var(p, p->var(m[0]).name), var(p, p->var(m[1]).name),
                                   var(p, p->var(m[2]).name) * var(p, p->var(g[0]).name),
                                   var(p, p->var(m[3]).name)};
      });
  auto r2_rotation_lift = [&](const std::string& name, int fiber_weight) {
    return make_action(
        name, u1, r2total,
        [&, fiber_weight](const ChartPtr& p, const std::vector<int>& g,
                          const std::vector<int>& m) {
          Scalar u = var(p, p->var(g[0]).name);
          Scalar uinv = var(p, p->var(g[0]).name, -1);
          Scalar cos = (u + uinv) * kHalf;
          Scalar sin = (u - uinv) * (kHalf * -kI);
          Scalar x = var(p, p->var(m[0]).name), y = var(p, p->var(m[1]).name);
          Scalar w = var(p, p->var(m[2]).name);
          Scalar wimg = fiber_weight == 0
                            ? w
                            : w * var(p, p->var(g[0]).name, fiber_weight);
          return std::vector<Scalar>{cos * x - sin * y, sin * x + cos * y, wimg,
                                     var(p, p->var(m[3]).name)};
        });
  };

  auto make_trivial_r2 = [&](const std::string& name, ActionPtr g_action, ActionPtr g_base,
                             int fiber_weight) {
    auto b = std::make_shared<PrincipalBundleModel>();
    b->name = name;
    b->total = r2total;
    b->structure = u1;
    b->k_action = r2_k_action;
    b->g_action = g_action;
    b->base = plane;
    b->g_action_base = g_base;
    b->g_fiber_weight = fiber_weight;
    b->projection = std::make_unique<Substitution>(
        plane, r2total,
        std::vector<Scalar>{var(r2total, "x"), var(r2total, "y"), var(r2total, "tau")});
    b->section = std::make_unique<Substitution>(
        r2total, plane,
        std::vector<Scalar>{var(plane, "x"), var(plane, "y"), Scalar::one(plane),
                            var(plane, "tau")});
    b->validate();
    return b;
  };
  bundles_["trivial-r2"] =
      make_trivial_r2("trivial-r2", r2_rotation_lift("trivial-r2-g", 0), actions_["rotation-xy"], 0);
  bundles_["trivial-r2-static"] = make_trivial_r2(
      "trivial-r2-static", trivial_action("trivial-r2-static-g", u1, r2total),
      actions_["trivial-plane"], 0);
  bundles_["trivial-r2-twisted"] = make_trivial_r2(
      "trivial-r2-twisted", r2_rotation_lift("trivial-r2-twisted-g", 1), actions_["rotation-xy"], 1);

  // the Hopf bundle: total space the 3-sphere, kept upstairs (no base chart)
  auto make_hopf = [&](const std::string& name, ActionPtr g_action) {
    auto b = std::make_shared<PrincipalBundleModel>();
    b->name = name;
    b->total = s3;
    b->structure = u1;
    b->k_action = actions_["hopf"];
    b->g_action = g_action;
    b->validate();
    return b;
  };
  bundles_["hopf"] = make_hopf("hopf", actions_["rotation-s3-first"]);
  bundles_["weighted-hopf"] = make_hopf("weighted-hopf", actions_["weighted-s3"]);
  bundles_["hopf-static"] = make_hopf("hopf-static", trivial_action("hopf-static-g", u1, s3));

  // the bundle K -> pt with its unique connection; G = K by left translation
  ChartPtr ktotal;
  {
    ChartBuilder tb("circle-total");
    tb.add_unit("w");
    tb.add_formal("tau");
    ktotal = tb.build();
  }
  {
    auto right = make_action("circle-k", u1, ktotal,
                             [&](const ChartPtr& p, const std::vector<int>& g,
                                 const std::vector<int>& m) {
                               return std::vector<Scalar>{
                                   var(p, p->var(m[0]).name) * var(p, p->var(g[0]).name),
                                   var(p, p->var(m[1]).name)};
                             });
    auto left = make_action("circle-g", u1, ktotal,
                            [&](const ChartPtr& p, const std::vector<int>& g,
                                const std::vector<int>& m) {
                              return std::vector<Scalar>{
                                  var(p, p->var(g[0]).name) * var(p, p->var(m[0]).name),
                                  var(p, p->var(m[1]).name)};
                            });
    auto b = std::make_shared<PrincipalBundleModel>();
    b->name = "universal-level0";
    b->total = ktotal;
    b->structure = u1;
    b->k_action = right;
    b->g_action = left;
    b->validate();
    bundles_["universal-level0"] = b;
  }

  // ---- connections ----------------------------------------------------------
  auto register_connection = [&](const std::string& bundle_name, const std::string& conn_name,
                                 Form extra) {
    const BundlePtr& b = bundles_.at(bundle_name);
    AlgebraValuedForm comp = AlgebraValuedForm::zero(u1->algebra, b->total);
    int wv = b->total->var_index("w");
    if (wv >= 0) {
      comp.comps[0] = u1->maurer_cartan_component(b->total, {wv}, 0);
    } else {
      // sphere bundle: -i a is the normalized standard connection
      comp.comps[0] = Form::generator(b->total, "a") * -kI;
    }
    comp.comps[0] += extra;
    Connection conn{bundle_name + "/" + conn_name, b, comp, false};
    verify_connection(conn);
    connections_[bundle_name].emplace(conn_name, std::move(conn));
  };

  {
    Form zero(r2total);
    Scalar x = var(r2total, "x"), y = var(r2total, "y");
    Form dx = Form::generator(r2total, "dx"), dy = Form::generator(r2total, "dy");
    Form xdy = x * dy;
    Form inv = (x * dy - y * dx) * kHalf;
    register_connection("trivial-r2", "flat", zero);
    register_connection("trivial-r2", "std", inv);
    register_connection("trivial-r2", "xdy", xdy);
    register_connection("trivial-r2-static", "flat", zero);
    register_connection("trivial-r2-static", "std", xdy);
    register_connection("trivial-r2-twisted", "flat", zero);
    register_connection("trivial-r2-twisted", "std", inv);
  }
  register_connection("hopf", "std", Form::zero(s3));
  register_connection("weighted-hopf", "std", Form::zero(s3));
  register_connection("hopf-static", "std", Form::zero(s3));
  {
    // a second connection on the sphere: the horizontal self-conjugate
    // correction z1c^2 b + z1^2 bc is K-invariant and not closed
    Form corr = Scalar::variable(s3, "z1c").pow(2) * Form::generator(s3, "b") +
                Scalar::variable(s3, "z1").pow(2) * Form::generator(s3, "bc");
    register_connection("hopf-static", "bent", corr * kHalf);
  }
  register_connection("universal-level0", "std", Form::zero(ktotal));

  // ---- line bundles ------------------------------------------------------------
  {
    LineBundleModel l1;
    l1.name = "line-r2";
    l1.base = plane;
    l1.g_action = actions_["rotation-xy"];
    l1.k_weight = 1;
    l1.g_twist = 0;
    // A = rho(s^* theta) for the frame w = 1
    const Connection& std_conn = connections_["trivial-r2"].at("std");
    l1.A = std_conn.bundle->section->apply(std_conn.comp.comps[0]) * kI;
    line_bundles_["line-r2"] = l1;

    LineBundleModel l2 = l1;
    l2.name = "line-r2-twisted";
    l2.g_twist = 1;
    const Connection& tw_conn = connections_["trivial-r2-twisted"].at("std");
    l2.A = tw_conn.bundle->section->apply(tw_conn.comp.comps[0]) * kI;
    line_bundles_["line-r2-twisted"] = l2;
  }
}

namespace {
template <typename M>
const typename M::mapped_type& lookup(const M& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) throw std::out_of_range(std::string("unknown ") + what + ": " + name);
  return it->second;
}
template <typename M>
std::vector<std::string> keys(const M& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}
}  // namespace

ChartPtr Registry::chart(const std::string& n) const { return lookup(charts_, n, "chart"); }
AlgebraPtr Registry::algebra(const std::string& n) const { return lookup(algebras_, n, "algebra"); }
TorusPtr Registry::torus(const std::string& n) const { return lookup(tori_, n, "torus"); }
ActionPtr Registry::action(const std::string& n) const { return lookup(actions_, n, "action"); }
const InvariantPolynomial& Registry::polynomial(const std::string& n) const {
  return lookup(polynomials_, n, "polynomial");
}
BundlePtr Registry::bundle(const std::string& n) const { return lookup(bundles_, n, "bundle"); }
const Connection& Registry::connection(const std::string& b, const std::string& c) const {
  return lookup(lookup(connections_, b, "bundle"), c, "connection");
}
const LineBundleModel& Registry::line_bundle(const std::string& n) const {
  return lookup(line_bundles_, n, "line bundle");
}

std::vector<std::string> Registry::chart_names() const { return keys(charts_); }
std::vector<std::string> Registry::algebra_names() const { return keys(algebras_); }
std::vector<std::string> Registry::action_names() const { return keys(actions_); }
std::vector<std::string> Registry::polynomial_names() const { return keys(polynomials_); }
std::vector<std::string> Registry::bundle_names() const { return keys(bundles_); }
std::vector<std::string> Registry::connection_names(const std::string& b) const {
  return keys(lookup(connections_, b, "bundle"));
}
std::vector<std::string> Registry::line_bundle_names() const { return keys(line_bundles_); }

}  // namespace ecw
