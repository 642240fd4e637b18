#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string cli() {
  const char* p = std::getenv("QOSC_CLI");
  REQUIRE_MESSAGE(p != nullptr, "QOSC_CLI must point at the built binary");
  return p;
}

struct RunResult {
  int code = -1;
  std::string out;
};

// run a command, capturing stdout (stderr is left on the test log)
RunResult run(const std::string& args) {
  std::string tmp = std::string("/tmp/qosc_cli_test_") +
                    std::to_string(reinterpret_cast<uintptr_t>(&args)) + ".out";
  std::string cmd = cli() + " " + args + " > " + tmp;
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream is(tmp);
  std::stringstream ss;
  ss << is.rdbuf();
  r.out = ss.str();
  std::remove(tmp.c_str());
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

const char* kPointArgs =
    "--omega 1 --gamma 0.05 --sigma 0.3 --ell 2 --cutoff 1000";

}  // namespace

TEST_CASE("negativity: frozen output at the reference point") {
  auto r = run(std::string("negativity ") + kPointArgs);
  CHECK(r.code == 0);
  CHECK(r.out.find("eta_lt = 0.519246726587383") != std::string::npos);
  CHECK(r.out.find("negativity = 0") != std::string::npos);
  CHECK(r.out.find("branch = plus_chi_minus_p") != std::string::npos);
  CHECK(r.out.find("regime = direct_dominated") != std::string::npos);
  CHECK(r.out.find("entangled = no") != std::string::npos);
}

TEST_CASE("negativity: entangled at small separation") {
  auto r = run("negativity --omega 1 --gamma 0.05 --sigma 0.3 --ell 0.15 "
               "--cutoff 1000");
  CHECK(r.code == 0);
  CHECK(r.out.find("eta_lt = 0.476514042583349") != std::string::npos);
  CHECK(r.out.find("entangled = yes") != std::string::npos);
}

TEST_CASE("exit codes: 1 for domain problems, 2 for usage problems") {
  // unstable separation
  CHECK(run("negativity --omega 1 --gamma 0.05 --sigma 0.3 --ell 0.05 "
            "--cutoff 1000 2>/dev/null").code == 1);
  // sigma outside the physical window
  CHECK(run("negativity --omega 1 --sigma 2.0 --ell 1 2>/dev/null").code == 1);
  // usage problems
  CHECK(run("2>/dev/null").code == 2);
  CHECK(run("bogus-subcommand 2>/dev/null").code == 2);
  CHECK(run("negativity --no-such-flag 2>/dev/null").code == 2);
  CHECK(run("sweep --grid gamma=1:2:2 2>/dev/null").code == 2);  // missing --out
  CHECK(run("sweep --grid nonsense --out /tmp/x.csv 2>/dev/null").code == 1);
}

TEST_CASE("deterministic output: repeated runs are byte-identical") {
  auto a = run(std::string("negativity ") + kPointArgs);
  auto b = run(std::string("negativity ") + kPointArgs);
  CHECK(a.out == b.out);
  std::string f1 = "/tmp/qosc_det_1.csv", f2 = "/tmp/qosc_det_2.csv";
  std::string sweep_args =
      "sweep --omega 5 --cutoff 10000 --ell 0.05 "
      "--grid gamma=0.05:0.1:2,sigma=0.25:0.5:2 --out ";
  CHECK(run(sweep_args + f1).code == 0);
  CHECK(run(sweep_args + f2).code == 0);
  std::string c1 = slurp(f1), c2 = slurp(f2);
  CHECK(!c1.empty());
  CHECK(c1 == c2);
  std::remove(f1.c_str());
  std::remove(f2.c_str());
}

TEST_CASE("sweep: CSV shape and 17-digit payload") {
  std::string out = "/tmp/qosc_sweep_shape.csv";
  auto r = run("sweep --omega 5 --cutoff 10000 --ell 0.05 "
               "--grid gamma=0.05:0.1:3 --out " + out);
  CHECK(r.code == 0);
  CHECK(r.out.find("wrote 3 points") != std::string::npos);
  std::istringstream is(slurp(out));
  std::string line;
  std::getline(is, line);
  CHECK(line ==
        "m,omega,gamma,sigma,ell,lambda_cut,beta,eta_sq,negativity,branch,"
        "stable_plus,stable_minus,regime,valid");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3);
  // a 17-significant-digit value appears (0.05 is not exactly representable)
  CHECK(slurp(out).find("0.050000000000000003") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("sweep: JSON format and the no-ell critical surface") {
  std::string out = "/tmp/qosc_sweep.json";
  auto r = run("sweep --omega 5 --cutoff 10000 "
               "--grid gamma=0.05:0.1:2 --format json --out " + out);
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["ell_from_critical"] == true);
  REQUIRE(doc["points"].size() == 2);
  for (const auto& pt : doc["points"]) {
    CHECK(pt["valid"] == true);
    double eta_sq = pt["eta_sq"].get<double>();
    CHECK(std::abs(eta_sq - 0.25) < 1e-8);  // points sit on the contour
    CHECK(pt["ell"].get<double>() > 0.0);
  }
  std::remove(out.c_str());
  // explicit --ell disables the critical surface
  auto r2 = run("sweep --omega 5 --cutoff 10000 --ell 0.05 "
                "--grid gamma=0.05:0.1:2 --format json --out " + out);
  CHECK(r2.code == 0);
  auto doc2 = nlohmann::json::parse(slurp(out));
  CHECK(doc2["ell_from_critical"] == false);
  CHECK(doc2["points"][0]["ell"].get<double>() == 0.05);
  std::remove(out.c_str());
}

TEST_CASE("critical-sep: numeric root plus closed-form summaries") {
  auto r = run("critical-sep --omega 5 --gamma 0.1 --sigma 0.5 --cutoff 10000");
  CHECK(r.code == 0);
  CHECK(r.out.find("numeric roots: 1") != std::string::npos);
  CHECK(r.out.find("ell_lt = 0.0340386965") != std::string::npos);
  CHECK(r.out.find("ell_lt iterated = 0.036321013087") != std::string::npos);
  CHECK(r.out.find("gamma upper bound = ") != std::string::npos);
}

TEST_CASE("poles: perturbative, newton, strong-damping, ladder") {
  auto r = run(std::string("poles ") + kPointArgs + " --nmin 5 --nmax 6");
  CHECK(r.code == 0);
  CHECK(r.out.find("perturbative s = -0.0666345494018297") != std::string::npos);
  CHECK(r.out.find("newton s = ") != std::string::npos);
  CHECK(r.out.find("strong-damping root s = ") != std::string::npos);
  CHECK(r.out.find("ladder n=5 s = ") != std::string::npos);
  CHECK(r.out.find("ladder n=6 s = ") != std::string::npos);
  auto rm = run(std::string("poles ") + kPointArgs + " --mode minus");
  CHECK(rm.code == 0);
  CHECK(rm.out.find("[no real root for this mode]") != std::string::npos);
  CHECK(run(std::string("poles ") + kPointArgs + " --mode sideways 2>/dev/null")
            .code == 2);
}

TEST_CASE("transient: CSV trajectory and blow-up signalling") {
  std::string out = "/tmp/qosc_transient.csv";
  auto r = run(std::string("transient ") + kPointArgs +
               " --tmax 5 --out " + out);
  CHECK(r.code == 0);
  std::istringstream is(slurp(out));
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,chi,chi_dot");
  std::getline(is, line);
  CHECK(line.rfind("0,1,0", 0) == 0);
  std::remove(out.c_str());
  // unstable plus branch: file still written atomically, exit code 1
  auto rb = run("transient --omega 1 --gamma 0.3 --sigma 0.3 --ell 0.3 "
                "--cutoff 1000 --tmax 200 --out " + out + " 2>/dev/null");
  CHECK(rb.code == 1);
  CHECK(!slurp(out).empty());
  std::remove(out.c_str());
}

TEST_CASE("config file supplies defaults and rejects unknown keys") {
  std::string cfg = "/tmp/qosc_test.cfg";
  {
    std::ofstream os(cfg);
    os << "# reference point\nomega = 1\ngamma = 0.05\nsigma = 0.3\n"
          "ell = 2\ncutoff = 1000\n";
  }
  auto via_cfg = run("negativity --config " + cfg);
  auto direct = run(std::string("negativity ") + kPointArgs);
  CHECK(via_cfg.code == 0);
  CHECK(via_cfg.out == direct.out);
  // flags override config values
  auto overridden = run("negativity --config " + cfg + " --ell 0.15");
  CHECK(overridden.out.find("entangled = yes") != std::string::npos);
  {
    std::ofstream os(cfg);
    os << "frequency = 1\n";  // unknown key
  }
  CHECK(run("negativity --config " + cfg + " 2>/dev/null").code == 2);
  std::remove(cfg.c_str());
}

TEST_CASE("check subcommand: quadrature vs closed-form self-test passes") {
  auto r = run("check");
  CHECK(r.code == 0);
  CHECK(r.out.find("check: all comparisons passed") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
}
