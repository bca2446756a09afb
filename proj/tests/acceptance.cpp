// Acceptance gate: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. All comparisons are exact symbolic
// equalities except the explicitly numeric cross-check (relative 1e-6).

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "ecw/suites.hpp"

using namespace ecw;

namespace {

struct Criterion {
  int number;
  std::string description;
  std::vector<std::string> suites;
  double budget_seconds;
};

}  // namespace

int main(int argc, char** argv) {
  SuiteConfig cfg;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string flag = argv[i];
    if (flag == "--seed") cfg.seed = std::stoull(argv[i + 1]);
    if (flag == "--samples") cfg.samples = std::stoi(argv[i + 1]);
  }

  const std::vector<Criterion> criteria = {
      {1, "exterior-calculus suite (d^2, iota^2, magic formula, pullback/d, confluence)",
       {"exterior"}, 10.0},
      {2, "Cartan suite (defect = Lie derivative, d_C^2 = 0 on equivariant inputs)",
       {"cartan"}, 10.0},
      {3, "double-complex suite (del^2 = 0 and (d + (-1)^q del)^2 = 0, levels <= 3)",
       {"double-complex"}, 20.0},
      {4, "Getzler suite (dbar^2, iota-bar^2, anticommutator = -L, d_G^2, averaging)",
       {"getzler"}, 30.0},
      {5, "shuffle-map chain identities at levels 0, 1, 2", {"chain-map"}, 30.0},
      {6, "simplex integration (volumes 1/p! for p = 0..5, Stokes consistency)",
       {"simplex-volume"}, 10.0},
      {7, "Chern-Weil suite (basicness, closedness, homomorphism, transgression, naturality)",
       {"chern-weil"}, 20.0},
      {8, "main comparison pr0 J int_Delta omega_P(Theta) = P(Omega + mu), three cases",
       {"classform"}, 60.0},
      {9, "algebra homomorphism property of pr0 J int_Delta", {"algebra-hom"}, 30.0},
      {10, "vector-bundle comparison (curvature and moment map halves)",
       {"vector-bundle"}, 10.0},
      {11, "universal truncated inverse for id and X^2 at p_max = 3", {"universal"}, 60.0},
      {12, "numeric finite-difference cross-check at relative 1e-6", {"numeric"}, 30.0},
  };

  int failures = 0;
  for (const Criterion& cr : criteria) {
    auto start = std::chrono::steady_clock::now();
    bool passed = true;
    std::string detail;
    for (const std::string& s : cr.suites) {
      SuiteResult r = run_suite(s, cfg);
      if (!r.passed) {
        passed = false;
        for (const std::string& line : r.lines)
          if (line.rfind("FAIL", 0) == 0) detail += (detail.empty() ? "" : "; ") + line;
      }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = secs <= cr.budget_seconds;
    if (!in_budget) passed = false;
    std::printf("[%s] criterion %2d: %s (%.2f s / budget %.0f s)\n",
                passed ? "PASS" : "FAIL", cr.number, cr.description.c_str(), secs,
                cr.budget_seconds);
    if (!detail.empty()) std::printf("       %s\n", detail.c_str());
    if (!passed) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
