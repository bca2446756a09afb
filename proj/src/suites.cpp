#include "ecw/suites.hpp"

#include <chrono>
#include <future>
#include <functional>
#include <sstream>

#include "ecw/getzler.hpp"
#include "ecw/json_io.hpp"
#include "ecw/random_gen.hpp"
#include "ecw/registry.hpp"

namespace ecw {

namespace {

struct Checker {
  SuiteResult& result;
  void check(bool ok, const std::string& what, const std::string& detail = "") {
    if (ok) {
      result.lines.push_back("pass: " + what);
    } else {
      result.passed = false;
      result.lines.push_back("FAIL: " + what + (detail.empty() ? "" : " [" + detail + "]"));
    }
  }
};

int default_samples(const SuiteConfig& cfg, int fallback) {
  return cfg.samples > 0 ? cfg.samples : fallback;
}

// ---------------------------------------------------------------------------

void suite_exterior(const SuiteConfig& cfg, Checker& c) {
  const Registry& reg = Registry::instance();
  const int n = default_samples(cfg, 100);
  SpacePtr rot = SimplicialSpace::make_action_space(reg.action("rotation-plane"), 2);
  struct Case {
    std::string label;
    ChartPtr chart;
  };
  std::vector<Case> cases = {{"rotation-plane", reg.chart("cplane")},
                             {"s3", reg.chart("s3")},
                             {"torus-level-1", rot->level(1).chart},
                             {"torus-level-2", rot->level(2).chart}};
  for (const Case& cs : cases) {
    std::mt19937_64 rng(derive_seed(cfg.seed, "exterior-" + cs.label));
    bool d2 = true, i2 = true, magic = true;
    for (int k = 0; k < n; ++k) {
      Form f = random_form_mixed(cs.chart, rng);
      d2 &= exterior_d(exterior_d(f)).is_zero();
      VectorField v = VectorField::zero(cs.chart);
      for (int g = 0; g < cs.chart->num_gens(); ++g)
        v.add(g, random_scalar(cs.chart, rng, 2, 1));
      i2 &= contract(v, contract(v, f)).is_zero();
      Form lhs = lie_derivative(v, f);
      Form rhs = contract(v, exterior_d(f)) + exterior_d(contract(v, f));
      magic &= (lhs == rhs);
    }
    c.check(d2, "d^2 = 0 on " + cs.label + " (" + std::to_string(n) + " forms)");
    c.check(i2, "iota^2 = 0 on " + cs.label);
    c.check(magic, "Cartan magic formula on " + cs.label);
  }
  // pullback commutes with d (rotation action pullback and a polynomial map)
  {
    std::mt19937_64 rng(derive_seed(cfg.seed, "exterior-pullback"));
    ActionPtr a = reg.action("rotation-plane");
    bool ok = true;
    for (int k = 0; k < n / 2; ++k) {
      Form f = random_form_mixed(a->space, rng);
      ok &= (a->act->apply(exterior_d(f)) == exterior_d(a->act->apply(f)));
    }
    ChartPtr plane = reg.chart("plane");
    ChartPtr cpl = reg.chart("cplane");
    for (int k = 0; k < n / 2; ++k) {
      std::vector<Scalar> images = {random_scalar(cpl, rng, 2, 2), random_scalar(cpl, rng, 2, 2),
                                    Scalar::variable(cpl, "tau")};
      Substitution sub(plane, cpl, images);
      Form f = random_form_mixed(plane, rng);
      ok &= (sub.apply(exterior_d(f)) == exterior_d(sub.apply(f)));
    }
    c.check(ok, "pullback commutes with d");
  }
  // confluence corpus: products reduced in two term orders agree
  {
    std::mt19937_64 rng(derive_seed(cfg.seed, "exterior-confluence"));
    ChartPtr s3 = reg.chart("s3");
    bool ok = true;
    for (int k = 0; k < n / 2; ++k) {
      Scalar f = random_scalar(s3, rng, 3, 2);
      Scalar g = random_scalar(s3, rng, 3, 2);
      Scalar h = random_scalar(s3, rng, 2, 1);
      ok &= ((f * g) * h == f * (g * h));
      ok &= (f * g == g * f);
    }
    c.check(ok, "normal forms are confluent on the relation corpus");
  }
  // numeric oracle consistency
  {
    std::mt19937_64 rng(derive_seed(cfg.seed, "exterior-numeric"));
    bool ok = true;
    double worst = 0.0;
    for (const Case& cs : {cases[0], cases[1]}) {
      NumericModel m = infer_numeric_model(cs.chart);
      for (int k = 0; k < 20; ++k) {
        Form f = random_form_mixed(cs.chart, rng);
        auto pt = m.sample(rng);
        double err = finite_difference_d_error(f, m, pt);
        worst = std::max(worst, err);
        ok &= err <= 1e-6;
      }
    }
    c.check(ok, "finite-difference d matches the symbolic d to 1e-6");
  }
}

void suite_cartan(const SuiteConfig& cfg, Checker& c) {
  const Registry& reg = Registry::instance();
  const int n = default_samples(cfg, 50);
  for (const char* aname : {"rotation-xy", "rotation-plane"}) {
    ActionPtr a = reg.action(aname);
    std::mt19937_64 rng(derive_seed(cfg.seed, std::string("cartan-") + aname));
    bool defect_ok = true;
    for (int k = 0; k < n; ++k) {
      EquivariantForm w = EquivariantForm::zero(a);
      w.add({}, random_form_mixed(a->space, rng));
      if (rng() % 2) w.add({0}, random_form_mixed(a->space, rng, 2));
      Form defect = cartan_d_defect(w, 0);
      Form lie = lie_derivative(a->fundamental[0], w.eval_at_basis(0));
      defect_ok &= (defect == lie);
    }
    c.check(defect_ok, "d_C^2 defect equals the Lie derivative on " + std::string(aname) +
                           " (" + std::to_string(n) + " candidates)");
  }
  {
    ActionPtr a = reg.action("rotation-xy");
    ChartPtr p = a->space;
    std::mt19937_64 rng(derive_seed(cfg.seed, "cartan-closed"));
    Scalar r2 = Scalar::variable(p, "x").pow(2) + Scalar::variable(p, "y").pow(2);
    Form dxdy = wedge(Form::generator(p, "dx"), Form::generator(p, "dy"));
    bool ok = true;
    int count = 0;
    for (int k = 0; k < n; ++k) {
      EquivariantForm w = EquivariantForm::zero(a);
      w.add({}, r2.pow(rng() % 3) * dxdy);
      if (rng() % 2) w.add({0}, Form::from_scalar(r2.pow(rng() % 3)));
      if (!check_equivariance(w)) continue;
      ++count;
      ok &= cartan_d(cartan_d(w)).is_zero();
    }
    c.check(ok && count > 0, "d_C^2 = 0 on all candidates passing the equivariance check");
  }
}

void suite_double_complex(const SuiteConfig& cfg, Checker& c) {
  const Registry& reg = Registry::instance();
  const int n = default_samples(cfg, 20);
  SpacePtr s = SimplicialSpace::make_action_space(reg.action("rotation-plane"), 5);
  std::mt19937_64 rng(derive_seed(cfg.seed, "double-complex"));
  for (int lvl = 0; lvl <= 3; ++lvl) {
    bool del2 = true, defect = true;
    for (int k = 0; k < n; ++k) {
      Form f = random_form_mixed(s->level(lvl).chart, rng);
      SimplicialDeRhamElement x{s, lvl, f};
      del2 &= simplicial_del(simplicial_del(x)).form.is_zero();
      defect &= double_complex_defect(x).is_zero();
    }
    c.check(del2, "del^2 = 0 at level " + std::to_string(lvl));
    c.check(defect, "(d + (-1)^q del)^2 = 0 at level " + std::to_string(lvl));
  }
}

void suite_getzler(const SuiteConfig& cfg, Checker& c) {
  const Registry& reg = Registry::instance();
  const int n = default_samples(cfg, 20);
  SpacePtr s = SimplicialSpace::make_action_space(reg.action("rotation-plane"), 4);
  std::mt19937_64 rng(derive_seed(cfg.seed, "getzler"));

  bool dbar2 = true, iota2 = true, lemma = true, total = true, contraction = true;
  for (int k = 0; k < n; ++k) {
    GetzlerCochain f0 = random_cochain(s, k % 3, rng);
    dbar2 &= dbar(dbar(f0)).is_zero();

    GetzlerCochain f2 = random_cochain(s, 2 + (k % 2), rng);
    iota2 &= iota_bar(iota_bar(f2)).is_zero();

    GetzlerCochain g = random_cochain(s, k % 3, rng);
    GetzlerCochain lhs = iota_bar(dbar(g));
    if (g.level >= 1) lhs = lhs + dbar(iota_bar(g));
    lemma &= (lhs == GetzlerCochain::zero(s, g.level) - lie_part(g));

    GetzlerElement e = GetzlerElement::of(random_cochain(s, k % 3, rng));
    total &= getzler_total_d(getzler_total_d(e)).is_zero();

    GetzlerCochain pre = random_cochain(s, k % 2, rng);
    GetzlerCochain closed = dbar(pre);
    contraction &= (dbar(group_average(closed)) == closed);
  }
  c.check(dbar2, "dbar^2 = 0 (" + std::to_string(n) + " cochains)");
  c.check(iota2, "iota-bar^2 = 0");
  c.check(lemma, "dbar iota-bar + iota-bar dbar = -L");
  c.check(total, "total differential squares to zero");
  c.check(contraction, "group averaging contracts dbar-closed cochains");
}

void suite_chain_map(const SuiteConfig& cfg, Checker& c) {
  const Registry& reg = Registry::instance();
  const int n = default_samples(cfg, 20);
  SpacePtr s = SimplicialSpace::make_action_space(reg.action("rotation-plane"), 3);
  const int sign = cfg.inject_sign_defect ? +1 : -1;
  for (int lvl = 0; lvl <= 2; ++lvl) {
    std::mt19937_64 rng(derive_seed(cfg.seed, "chain-map-" + std::to_string(lvl)));
    bool ok = true;
    std::string first;
    for (int k = 0; k < n; ++k) {
      Form f = random_form_mixed(s->level(lvl).chart, rng);
      CheckReport r = chain_map_check(SimplicialDeRhamElement{s, lvl, f}, sign);
      if (!r.ok && first.empty()) first = r.summary();
      ok &= r.ok;
    }
    c.check(ok, "shuffle map chain identities at level " + std::to_string(lvl), first);
  }
}

void suite_simplex_volume(const SuiteConfig& cfg, Checker& c) {
  bool vol = true;
  for (int p = 0; p <= 5; ++p)
    vol &= (simplex_monomial_integral(p, std::vector<int>(p, 0)) ==
            Rational(1) / Rational::factorial(p));
  c.check(vol, "volume of the p-simplex is 1/p! for p = 0..5");
  c.check(simplex_monomial_integral(1, {0}) - simplex_monomial_integral(1, {1}) ==
              Rational(1, 2),
          "int over Delta^1 of t0 dt1 = 1/2");

  const Registry& reg = Registry::instance();
  SpacePtr s = SimplicialSpace::make_action_space(reg.action("rotation-plane"), 3);
  ChartPtr m = s->action()->space;
  std::mt19937_64 rng(derive_seed(cfg.seed, "simplex-stokes"));
  bool stokes = true;
  for (int k = 0; k < 6; ++k) {
    DupontForm a = dupont_prism(s, random_form(m, rng, 1, 2));
    DupontForm b = dupont_prism(s, random_form(m, rng, 0, 2));
    DupontForm w = dupont_wedge(a, dupont_d(b));
    auto iw = simplex_integrate(w);
    auto idw = simplex_integrate(dupont_d(w));
    for (int p = 0; p <= 2; ++p) {
      Form rhs = exterior_d(iw[p].form);
      if (p % 2 == 1) rhs = -rhs;
      if (p >= 1) rhs += simplicial_del(iw[p - 1]).form;
      stokes &= (idw[p].form == rhs);
    }
  }
  c.check(stokes, "Stokes consistency of the simplex integration (levels <= 2)");
}

void suite_chern_weil(const SuiteConfig& cfg, Checker& c) {
  (void)cfg;
  const Registry& reg = Registry::instance();
  for (const char* bname : {"trivial-r2", "trivial-r2-static", "trivial-r2-twisted", "hopf",
                            "weighted-hopf", "hopf-static", "universal-level0"}) {
    const Connection& conn = reg.connection(bname, "std");
    for (const char* pname : {"id", "X^2"}) {
      bool ok = true;
      std::string err;
      try {
        equivariant_char_form(reg.polynomial(pname), conn);  // verifies basic + closed
      } catch (const std::exception& e) {
        ok = false;
        err = e.what();
      }
      c.check(ok, "characteristic form basic and d_C-closed: " + std::string(bname) + ", " + pname, err);
    }
    // Bianchi-type closedness of the pure curvature polynomial
    AlgebraValuedForm omega = curvature(conn);
    bool closed = exterior_d(evaluate_inv_poly(reg.polynomial("X^2"), {omega, omega})).is_zero() &&
                  exterior_d(evaluate_inv_poly(reg.polynomial("id"), {omega})).is_zero();
    c.check(closed, std::string("d P(Omega^q) = 0 on the total chart: ") + bname);
  }
  // homomorphism: the product polynomial maps to the wedge
  {
    const Connection& conn = reg.connection("hopf", "std");
    AlgebraValuedForm omega = curvature(conn);
    Form w1 = evaluate_inv_poly(reg.polynomial("id"), {omega});
    Form w2 = evaluate_inv_poly(reg.polynomial("X^2"), {omega, omega});
    c.check(w2 == wedge(w1, w1), "P*Q maps to the wedge of characteristic forms (hopf)");
    const Connection& conn2 = reg.connection("trivial-r2", "std");
    EquivariantForm e1 = equivariant_char_form(reg.polynomial("id"), conn2);
    EquivariantForm e2 = equivariant_char_form(reg.polynomial("X^2"), conn2);
    c.check(e2 == wedge_equivariant(e1, e1),
            "P*Q maps to the equivariant wedge (trivial-r2)");
  }
  // transgression differentiates to the difference
  for (const char* bname : {"trivial-r2", "trivial-r2-static", "hopf-static"}) {
    for (const char* pname : {"id", "X^2"}) {
      const bool sphere = std::string(bname) == "hopf-static";
      const Connection& flat = reg.connection(bname, sphere ? "std" : "flat");
      const Connection& full = reg.connection(bname, sphere ? "bent" : "std");
      EquivariantForm tr = transgression(reg.polynomial(pname), flat, full);
      EquivariantForm diff = equivariant_char_form(reg.polynomial(pname), full) -
                             equivariant_char_form(reg.polynomial(pname), flat);
      c.check(cartan_d(tr) == diff,
              "d_C(transgression) = difference of characteristic forms: " + std::string(bname) +
                  ", " + pname);
    }
  }
  // pullback naturality along the axis inclusion
  {
    ChartBuilder lb("r1-total");
    lb.add_ordinary("x");
    lb.add_unit("w");
    lb.add_formal("tau");
    ChartPtr r1total = lb.build();
    const Connection& conn = reg.connection("trivial-r2-static", "std");
    Substitution incl(conn.bundle->total, r1total,
                      {Scalar::variable(r1total, "x"), Scalar::zero(r1total),
                       Scalar::variable(r1total, "w"), Scalar::variable(r1total, "tau")});
    Form lhs = incl.apply(curvature(conn).comps[0]);
    Form rhs = exterior_d(incl.apply(conn.comp.comps[0]));
    c.check(lhs == rhs, "pullback naturality along R^1 -> R^2");
  }
}

void suite_classform(const SuiteConfig& cfg, Checker& c) {
  const Registry& reg = Registry::instance();
  struct Case {
    std::string bundle, poly;
  };
  for (const Case& cs : {Case{"trivial-r2", "id"}, Case{"trivial-r2", "X^2"},
                         Case{"hopf", "id"}}) {
    CheckReport r =
        classform_check(reg.polynomial(cs.poly), reg.connection(cs.bundle, "std"), cfg.p_max);
    c.check(r.ok, "pr0 J int_Delta omega_P(Theta) = P(Omega + mu): " + cs.bundle + ", " + cs.poly,
            r.summary() == "ok" ? "" : r.summary());
  }
}

void suite_algebra_hom(const SuiteConfig& cfg, Checker& c) {
  const Registry& reg = Registry::instance();
  const int n = default_samples(cfg, 10);
  SpacePtr s = SimplicialSpace::make_action_space(reg.action("rotation-plane"), 3);
  ChartPtr m = s->action()->space;
  std::mt19937_64 rng(derive_seed(cfg.seed, "algebra-hom"));
  bool ok = true;
  std::string first;
  for (int k = 0; k < n; ++k) {
    DupontForm a = dupont_prism(s, random_form(m, rng, 1));
    DupontForm b = dupont_prism(s, random_form(m, rng, k % 2));
    if (k % 3 == 0) a = dupont_d(a);
    if (k % 3 == 1) b = dupont_wedge(b, dupont_d(dupont_prism(s, random_form(m, rng, 0))));
    if (k % 3 == 2) {  // overlapping dt-support in both factors
      a = dupont_d(a);
      b = dupont_d(b);
    }
    CheckReport r = algebra_hom_check(a, b, s->action());
    if (!r.ok && first.empty()) first = r.summary();
    ok &= r.ok;
  }
  c.check(ok, "pr0 J int_Delta is an algebra homomorphism (" + std::to_string(n) + " pairs)",
          first);
}

void suite_vector_bundle(const SuiteConfig& cfg, Checker& c) {
  (void)cfg;
  const Registry& reg = Registry::instance();
  struct Case {
    std::string conn_bundle, line;
  };
  for (const Case& cs :
       {Case{"trivial-r2", "line-r2"}, Case{"trivial-r2-twisted", "line-r2-twisted"}}) {
    ComparisonReport r =
        compare_pb_vb(reg.connection(cs.conn_bundle, "std"), reg.line_bundle(cs.line));
    c.check(r.ok, "d theta + theta^theta = R and mu_theta = mu_nabla: " + cs.line, r.detail);
  }
}

void suite_universal(const SuiteConfig& cfg, Checker& c) {
  const Registry& reg = Registry::instance();
  for (const char* pname : {"id", "X^2"}) {
    CheckReport r = universal_inverse_check(reg.torus("U1"), reg.polynomial(pname),
                                            std::max(cfg.p_max, 3));
    c.check(r.ok, std::string("pr0 J int_Delta inverts the universal construction: ") + pname,
            r.summary() == "ok" ? "" : r.summary());
  }
}

void suite_numeric(const SuiteConfig& cfg, Checker& c) {
  const Registry& reg = Registry::instance();
  const int n = default_samples(cfg, 50);
  for (const char* bname : {"trivial-r2", "hopf"}) {
    const Connection& conn = reg.connection(bname, "std");
    NumericModel m = infer_numeric_model(conn.bundle->total);
    std::mt19937_64 rng(derive_seed(cfg.seed, std::string("numeric-") + bname));
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      auto pt = m.sample(rng);
      // curvature: symbolic d of the connection against finite differences
      worst = std::max(worst, finite_difference_d_error(conn.comp.comps[0], m, pt));
    }
    // characteristic-form components against finite differences of their d
    EquivariantForm w = equivariant_char_form(reg.polynomial("id"), conn);
    for (const auto& [mono, f] : w.comps) {
      (void)mono;
      std::mt19937_64 rng2(derive_seed(cfg.seed, std::string("numeric-char-") + bname));
      for (int k = 0; k < 10; ++k) {
        auto pt = m.sample(rng2);
        worst = std::max(worst, finite_difference_d_error(f, m, pt));
      }
    }
    std::ostringstream os;
    os << "finite-difference cross-check on " << bname << " (max rel err ";
    os.setf(std::ios::scientific);
    os.precision(2);
    os << worst << ")";
    c.check(worst <= 1e-6, os.str());
  }
}

using SuiteFn = std::function<void(const SuiteConfig&, Checker&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"algebra-hom", suite_algebra_hom},
      {"cartan", suite_cartan},
      {"chain-map", suite_chain_map},
      {"chern-weil", suite_chern_weil},
      {"classform", suite_classform},
      {"double-complex", suite_double_complex},
      {"exterior", suite_exterior},
      {"getzler", suite_getzler},
      {"numeric", suite_numeric},
      {"simplex-volume", suite_simplex_volume},
      {"universal", suite_universal},
      {"vector-bundle", suite_vector_bundle},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suite_table()) n.push_back(name);
    return n;
  }();
  return names;
}

bool is_suite_name(const std::string& name) {
  for (const auto& n : suite_names())
    if (n == name) return true;
  return false;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
  for (const auto& [n, fn] : suite_table()) {
    if (n == name) {
      SuiteResult result;
      result.name = name;
      Checker checker{result};
      auto start = std::chrono::steady_clock::now();
      try {
        fn(cfg, checker);
      } catch (const std::exception& e) {
        result.passed = false;
        result.lines.push_back(std::string("FAIL: suite aborted [") + e.what() + "]");
      }
      result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                           .count();
      return result;
    }
  }
  throw std::out_of_range("unknown suite: " + name);
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names,
                                    const SuiteConfig& cfg) {
  // everything under the suites is immutable after registry construction,
  // so independent suites can run concurrently; the report keeps the
  // caller's (sorted) order
  Registry::instance();
  std::vector<std::future<SuiteResult>> futures;
  futures.reserve(names.size());
  for (const auto& n : names)
    futures.push_back(std::async(std::launch::async, [n, cfg] { return run_suite(n, cfg); }));
  std::vector<SuiteResult> out;
  out.reserve(names.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

std::string format_report(const std::vector<SuiteResult>& results, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    os << "{";
    bool first_suite = true;
    for (const SuiteResult& r : results) {
      if (!first_suite) os << ",";
      first_suite = false;
      os << "\"" << r.name << "\":{\"passed\":" << (r.passed ? "true" : "false") << ",\"lines\":[";
      for (size_t i = 0; i < r.lines.size(); ++i) {
        if (i) os << ",";
        os << "\"";
        for (char ch : r.lines[i]) {
          if (ch == '"' || ch == '\\') os << '\\';
          os << ch;
        }
        os << "\"";
      }
      os << "]}";
    }
    os << "}\n";
  } else if (format == "latex") {
    os << "\\begin{itemize}\n";
    for (const SuiteResult& r : results) {
      os << "\\item \\texttt{" << r.name << "}: " << (r.passed ? "pass" : "\\textbf{fail}")
         << "\n";
      for (const auto& line : r.lines) os << "  % " << line << "\n";
    }
    os << "\\end{itemize}\n";
  } else {
    for (const SuiteResult& r : results) {
      os << "[" << (r.passed ? "PASS" : "FAIL") << "] " << r.name << "\n";
      for (const auto& line : r.lines) os << "    " << line << "\n";
    }
  }
  return os.str();
}

}  // namespace ecw
