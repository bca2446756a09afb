// Command-line front end: verification suites, characteristic-form
// computations for the registered examples, and canonical export.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ecw/getzler.hpp"
#include "ecw/json_io.hpp"
#include "ecw/registry.hpp"
#include "ecw/suites.hpp"

using namespace ecw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitConfigError = 2;

std::map<std::string, std::string> load_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = value;
  }
  return kv;
}

std::string equivariant_to_json(const EquivariantForm& w) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [mono, f] : w.comps) {
    if (!first) os << ",";
    first = false;
    std::string key;
    for (int j : mono) {
      if (!key.empty()) key += "*";
      key += w.action->group->algebra->dual_basis[j];
    }
    os << "\"" << key << "\":" << form_to_json(f);
  }
  os << "}";
  return os.str();
}

std::string equivariant_to_latex(const EquivariantForm& w) {
  if (w.comps.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, f] : w.comps) {
    if (!first) os << " + ";
    first = false;
    std::string key;
    for (int j : mono) key += "\\xi_{" + std::to_string(j + 1) + "}";
    if (!key.empty()) os << key << " \\left(";
    os << form_to_latex(f);
    if (!key.empty()) os << "\\right)";
  }
  return os.str();
}

int run_compute(const std::string& example, const std::string& polynomial,
                const std::string& what, const std::string& format, std::ostream& out) {
  const Registry& reg = Registry::instance();
  const Connection& conn = reg.connection(example, "std");
  const InvariantPolynomial& P = reg.polynomial(polynomial);

  auto print_form = [&](const Form& f) {
    if (format == "json")
      out << form_to_json(f) << "\n";
    else if (format == "latex")
      out << form_to_latex(f) << "\n";
    else
      out << f.str() << "\n";
  };
  auto print_equivariant = [&](const EquivariantForm& w) {
    if (format == "json")
      out << equivariant_to_json(w) << "\n";
    else if (format == "latex")
      out << equivariant_to_latex(w) << "\n";
    else
      out << w.str() << "\n";
  };

  if (what == "curvature") {
    print_form(curvature(conn).comps[0]);
  } else if (what == "moment-map") {
    print_form(moment_map(conn, 0).comps[0]);
  } else if (what == "char-form") {
    print_equivariant(equivariant_char_form(P, conn));
  } else if (what == "transgression") {
    const Connection& flat = reg.connection(example, "flat");
    print_equivariant(transgression(P, flat, conn));
  } else {
    throw std::out_of_range("unknown computation: " + what);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact equivariant Chern-Weil verification engine"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "plain-text key=value configuration file");

  std::uint64_t seed = 1;
  int samples = 0;
  int p_max = 3;
  std::string format = "plain";
  bool inject_defect = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed for the property suites");
    cmd->add_option("--samples", samples, "sample count override (0 = defaults)");
    cmd->add_option("--p-max", p_max, "simplicial truncation level");
    cmd->add_option("--format", format, "output format: plain, json or latex")
        ->check(CLI::IsMember({"plain", "json", "latex"}));
  };

  // verify
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites;
  verify->add_option("--suite", suites, "suite name (repeatable; default all)");
  verify->add_flag("--inject-sign-defect", inject_defect,
                   "test hook: corrupt the shuffle-map insertion sign");
  add_common(verify);

  // compute / export
  std::string example = "trivial-r2", polynomial = "id", what = "char-form";
  auto add_compute_opts = [&](CLI::App* cmd) {
    cmd->add_option("--example", example, "registered bundle name");
    cmd->add_option("--polynomial", polynomial, "registered invariant polynomial");
    cmd->add_option("--what", what, "curvature | char-form | moment-map | transgression");
    add_common(cmd);
  };
  auto* compute = app.add_subcommand("compute", "compute a characteristic quantity");
  add_compute_opts(compute);
  auto* exp = app.add_subcommand("export", "compute and export (default format json)");
  add_compute_opts(exp);

  // list
  auto* list = app.add_subcommand("list", "list the registry contents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    // config file first, then flags win
    if (!config_path.empty()) {
      auto kv = load_config(config_path);
      auto maybe = [&](const char* key, auto& target) {
        auto it = kv.find(key);
        if (it == kv.end()) return;
        std::istringstream is(it->second);
        is >> target;
      };
      std::uint64_t file_seed = seed;
      int file_samples = samples, file_pmax = p_max;
      std::string file_format = format;
      maybe("seed", file_seed);
      maybe("samples", file_samples);
      maybe("p-max", file_pmax);
      maybe("format", file_format);
      if (verify->count("--seed") == 0 && compute->count("--seed") == 0 &&
          exp->count("--seed") == 0)
        seed = file_seed;
      if (verify->count("--samples") == 0) samples = file_samples;
      if (verify->count("--p-max") == 0 && compute->count("--p-max") == 0) p_max = file_pmax;
      if (verify->count("--format") == 0 && compute->count("--format") == 0 &&
          exp->count("--format") == 0)
        format = file_format;
      if (kv.count("suite") && suites.empty()) suites.push_back(kv["suite"]);
      if (kv.count("example") && compute->count("--example") == 0 && exp->count("--example") == 0)
        example = kv["example"];
    }

    if (*verify) {
      if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) suites = suite_names();
      for (const auto& s : suites) {
        if (!is_suite_name(s)) {
          std::cerr << "unknown suite: " << s << "\n";
          return kExitConfigError;
        }
      }
      SuiteConfig cfg{seed, samples, p_max, inject_defect};
      std::vector<SuiteResult> results = run_suites(suites, cfg);
      std::cout << format_report(results, format);
      for (const SuiteResult& r : results)
        if (!r.passed) return kExitIdentityFailure;
      return kExitOk;
    }
    if (*compute) {
      if (format.empty()) format = "plain";
      return run_compute(example, polynomial, what, format, std::cout);
    }
    if (*exp) {
      if (exp->count("--format") == 0) format = "json";
      return run_compute(example, polynomial, what, format, std::cout);
    }
    if (*list) {
      const Registry& reg = Registry::instance();
      auto dump = [&](const char* title, const std::vector<std::string>& names) {
        std::cout << title << ":";
        for (const auto& n : names) std::cout << " " << n;
        std::cout << "\n";
      };
      dump("charts", reg.chart_names());
      dump("algebras", reg.algebra_names());
      dump("actions", reg.action_names());
      dump("polynomials", reg.polynomial_names());
      dump("bundles", reg.bundle_names());
      dump("line-bundles", reg.line_bundle_names());
      dump("suites", suite_names());
      return kExitOk;
    }
  } catch (const std::out_of_range& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
