#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ecw/json_io.hpp"
#include "ecw/registry.hpp"
#include "ecw/suites.hpp"

using namespace ecw;

namespace {

int run_cli(const std::string& args, const std::string& stdout_file = "") {
  std::string cmd = std::string(ECW_CLI_PATH) + " " + args;
  if (!stdout_file.empty()) cmd += " > " + stdout_file + " 2>/dev/null";
  else cmd += " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("cli exit codes: success, identity failure, config error") {
  CHECK(run_cli("verify --suite simplex-volume") == 0);
  CHECK(run_cli("verify --suite chain-map --inject-sign-defect") == 1);
  CHECK(run_cli("verify --suite no-such-suite") == 2);
  CHECK(run_cli("compute --example no-such-bundle --what curvature") == 2);
  CHECK(run_cli("compute --example trivial-r2 --what no-such-thing") == 2);
  CHECK(run_cli("bogus-subcommand") == 2);
}

TEST_CASE("cli reports are byte-identical for equal configs") {
  CHECK(run_cli("verify --suite getzler --seed 7 --samples 8", "/tmp/ecw_det_a.txt") == 0);
  CHECK(run_cli("verify --suite getzler --seed 7 --samples 8", "/tmp/ecw_det_b.txt") == 0);
  CHECK(slurp("/tmp/ecw_det_a.txt") == slurp("/tmp/ecw_det_b.txt"));
  CHECK(!slurp("/tmp/ecw_det_a.txt").empty());
}

TEST_CASE("config file values apply and flags win") {
  {
    std::ofstream cfg("/tmp/ecw_cfg.txt");
    cfg << "# suite configuration\nseed = 7\nsamples = 8\nsuite = getzler\n";
  }
  CHECK(run_cli("--config /tmp/ecw_cfg.txt verify", "/tmp/ecw_cfg_run.txt") == 0);
  CHECK(slurp("/tmp/ecw_cfg_run.txt") == slurp("/tmp/ecw_det_a.txt"));
  // a flag overrides the file: different samples give a different header line
  CHECK(run_cli("--config /tmp/ecw_cfg.txt verify --samples 9", "/tmp/ecw_cfg_run2.txt") == 0);
  CHECK(slurp("/tmp/ecw_cfg_run2.txt") != slurp("/tmp/ecw_cfg_run.txt"));
}

TEST_CASE("compute output matches the registry expectations") {
  // trivially-acted bundle: the characteristic form reduces to the curvature
  CHECK(run_cli("compute --example trivial-r2-static --what char-form",
                "/tmp/ecw_static.txt") == 0);
  CHECK(slurp("/tmp/ecw_static.txt") == "dx∧dy\n");
  CHECK(run_cli("compute --example hopf --what moment-map", "/tmp/ecw_hopf_mu.txt") == 0);
  CHECK(slurp("/tmp/ecw_hopf_mu.txt") == "z1*z1c\n");
  CHECK(run_cli("compute --example trivial-r2-static --what transgression",
                "/tmp/ecw_tr.txt") == 0);
  CHECK(slurp("/tmp/ecw_tr.txt") == "x*dy\n");
}

TEST_CASE("export emits the canonical json and it parses back") {
  CHECK(run_cli("export --example trivial-r2 --what curvature", "/tmp/ecw_json.txt") == 0);
  std::string text = slurp("/tmp/ecw_json.txt");
  const Registry& reg = Registry::instance();
  const Connection& conn = reg.connection("trivial-r2", "std");
  Form f = form_from_json(conn.bundle->total, text);
  CHECK(f == curvature(conn).comps[0]);
}

TEST_CASE("report formats render") {
  SuiteConfig cfg;
  auto results = run_suites({"simplex-volume"}, cfg);
  CHECK(format_report(results, "plain").find("[PASS]") != std::string::npos);
  CHECK(format_report(results, "json").find("\"passed\":true") != std::string::npos);
  CHECK(format_report(results, "latex").find("\\texttt") != std::string::npos);
}
