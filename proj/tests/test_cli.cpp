#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(COLDPLASMA_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("coldplasma_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("") == 2);
  CHECK(run("reproduce 0") == 2);
  CHECK(run("reproduce 7") == 2);
  CHECK(run("simulate --no-such-flag") == 2);
  CHECK(run("simulate --rho-star -1") == 2);
  CHECK(run("simulate --d-theta 0") == 2);
  CHECK(run("certify --n-list 0") == 2);

  const fs::path dir = scratch("badcfg");
  std::ofstream(dir / "cfg.json") << R"({"alpha": 0.3, "typo": 1})";
  CHECK(run("certify --config " + (dir / "cfg.json").string()) == 2);
}

TEST_CASE("help succeeds") { CHECK(run("--help") == 0); }

TEST_CASE("certify and blowup commands") {
  const fs::path dir = scratch("cmds");
  std::ofstream(dir / "cfg.json") << R"({"alpha": 0.4761, "rho_star": 6, "d_rho_coarse": 0.05,
    "domain_half_width": 10, "theta_cap": 20})";
  CHECK(run("certify --config " + (dir / "cfg.json").string()) == 0);
  CHECK(run("blowup --config " + (dir / "cfg.json").string() + " --output-dir " + dir.string()) == 0);
  CHECK(fs::exists(dir / "blowup.csv"));
}

TEST_CASE("equilibrium simulation succeeds and flags no blow-up") {
  const fs::path dir = scratch("rest");
  CHECK(run("simulate --theta-cap 1 --d-rho-coarse 0.1 --output-dir " + dir.string()) == 0);
  std::ifstream in(dir / "summary.json");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("no blow-up detected within horizon") != std::string::npos);
}

TEST_CASE("output directory from the environment") {
  const fs::path dir = scratch("env");
  const std::string cmd = "COLDPLASMA_OUTPUT_DIR=" + dir.string() + " " + COLDPLASMA_CLI +
                          " simulate --theta-cap 1 --d-rho-coarse 0.1 >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "summary.json"));
}
