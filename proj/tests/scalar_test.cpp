#include "doctest.h"

#include "ecw/random_gen.hpp"
#include "ecw/scalar.hpp"
#include "ecw/standard_charts.hpp"

using namespace ecw;

TEST_CASE("rational arithmetic is exact and normalized") {
  Rational a(2, 4), b(1, 3);
  CHECK(a == Rational(1, 2));
  CHECK((a + b) == Rational(5, 6));
  CHECK((a * b) == Rational(1, 6));
  CHECK((a / b) == Rational(3, 2));
  CHECK(Rational::factorial(5) == Rational(120));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("gaussian rationals form a field") {
  GaussianRational i = GaussianRational::i();
  CHECK((i * i) == GaussianRational(-1));
  GaussianRational z(Rational(1, 2), Rational(-3));
  CHECK((z * z.inverse()).is_one());
  CHECK(z.conj().im() == Rational(3));
}

TEST_CASE("sphere relation reduces to unique normal forms") {
  ChartPtr s3 = make_s3_chart();
  Scalar z1 = Scalar::variable(s3, "z1"), z1c = Scalar::variable(s3, "z1c");
  Scalar z2 = Scalar::variable(s3, "z2"), z2c = Scalar::variable(s3, "z2c");
  CHECK(z1 * z1c + z2 * z2c == Scalar::one(s3));
  // powers of the relation stay reduced
  Scalar r = (z1 * z1c + z2 * z2c).pow(3);
  CHECK(r == Scalar::one(s3));
}

namespace {
// Alternate reduction strategy: applies the rules to the largest monomial
// first. Confluence means it must agree with the library's normal form.
Scalar reduce_backwards(const ChartPtr& chart, std::map<ExpVec, GaussianRational> raw) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = raw.rbegin(); it != raw.rend() && !changed; ++it) {
      for (const RewriteRule& rule : chart->rules()) {
        bool div = true;
        for (size_t v = 0; v < rule.lhs.size(); ++v)
          if (rule.lhs[v] > 0 && it->first[v] < rule.lhs[v]) { div = false; break; }
        if (!div) continue;
        ExpVec cof = it->first;
        for (size_t v = 0; v < cof.size(); ++v) cof[v] -= rule.lhs[v];
        GaussianRational c = it->second;
        raw.erase(std::next(it).base());
        for (const auto& [m, rc] : rule.rhs) {
          ExpVec e = cof;
          for (size_t v = 0; v < e.size(); ++v) e[v] += m[v];
          auto [pos, fresh] = raw.emplace(e, c * rc);
          if (!fresh) {
            pos->second += c * rc;
            if (pos->second.is_zero()) raw.erase(pos);
          }
        }
        changed = true;
        break;
      }
    }
  }
  Scalar out(chart);
  for (const auto& [e, c] : raw) out += Scalar::monomial(chart, e, c);
  return out;
}
}  // namespace

TEST_CASE("confluence corpus: two reduction orders agree") {
  ChartPtr s3 = make_s3_chart();
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 50; ++trial) {
    // build an unreduced product term-by-term
    Scalar f = random_scalar(s3, rng, 3, 2);
    Scalar g = random_scalar(s3, rng, 3, 2);
    std::map<ExpVec, GaussianRational> raw;
    for (const auto& [ea, ca] : f.terms()) {
      for (const auto& [eb, cb] : g.terms()) {
        ExpVec e = ea;
        for (size_t v = 0; v < e.size(); ++v) e[v] += eb[v];
        auto [it, fresh] = raw.emplace(e, ca * cb);
        if (!fresh) it->second += ca * cb;
      }
    }
    CHECK(f * g == reduce_backwards(s3, raw));
  }
}

TEST_CASE("ordinary variables reject negative exponents") {
  ChartPtr plane = make_plane_chart();
  CHECK_THROWS_AS(Scalar::variable(plane, "x", -1), std::invalid_argument);
}

TEST_CASE("rules that do not decrease the monomial order are rejected") {
  ChartBuilder b("bad");
  int x = b.add_ordinary("x");
  int y = b.add_ordinary("y");
  // x -> y^2 raises the graded order: must throw at build
  ExpVec lhs(2, 0), rhs(2, 0);
  lhs[x] = 1;
  rhs[y] = 2;
  b.add_rule(lhs, {{rhs, GaussianRational(1)}});
  CHECK_THROWS_AS(b.build(), std::invalid_argument);
}

TEST_CASE("laurent exponents on units and tau") {
  ChartBuilder b("torus1");
  b.add_unit("u");
  b.add_formal("tau");
  ChartPtr t = b.build();
  Scalar u = Scalar::variable(t, "u");
  CHECK(u * u.pow(-1) == Scalar::one(t));
  Scalar tau = Scalar::variable(t, "tau", -2);
  CHECK((tau * Scalar::variable(t, "tau", 2)) == Scalar::one(t));
}

TEST_CASE("scalar derivative respects laurent exponents") {
  ChartBuilder b("torus1");
  b.add_unit("u");
  ChartPtr t = b.build();
  Scalar u3 = Scalar::variable(t, "u", -3);
  CHECK(u3.derivative(0) == Scalar::variable(t, "u", -4) * GaussianRational(-3));
}
