#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "coldplasma/errors.hpp"
#include "coldplasma/scenario.hpp"

using namespace coldplasma;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("coldplasma_test_" + name);
  fs::remove_all(p);
  return p;
}

// Small, fast stand-in for variant 3.
ScenarioConfig small_config(const fs::path& dir) {
  ScenarioConfig c;
  c.alpha = 0.4761;
  c.rho_star = 6.0;
  c.domain_half_width = 10.0;
  c.d_rho_coarse = 0.05;
  c.d_rho_fine = 0.005;
  c.theta_cap = 20.0;
  c.output_dir = dir.string();
  return c;
}

}  // namespace

TEST_CASE("number formatting and file names") {
  CHECK(format_value(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_value(0.1) == "0.1");
  CHECK(format_value(std::numbers::pi) == "3.14159265359");
  CHECK(format_value(-1.5e-20) == "-1.5e-20");
  CHECK(profile_file_name(55.105) == "profile_55.105.csv");
  CHECK(profile_file_name(55.105000000000004) == "profile_55.105.csv");
}

TEST_CASE("strict configuration parsing") {
  const ScenarioConfig c = config_from_json(json::parse(R"({"alpha": 0.5, "rho_star": 2, "n_list": [1, 4],
      "domain_half_width": null, "output_dir": "x"})"));
  CHECK(c.alpha == 0.5);
  CHECK(c.rho_star == 2.0);
  CHECK(c.n_list == std::vector<int>{1, 4});
  CHECK_FALSE(c.domain_half_width.has_value());
  CHECK(c.half_width() == 10.0);
  CHECK(c.output_dir == "x");

  CHECK_THROWS_AS(config_from_json(json::parse(R"({"alpah": 0.5})")), UsageError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"alpha": "0.5"})")), UsageError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"n_list": [0]})")), UsageError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"n_list": [1.5]})")), UsageError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"n_list": []})")), UsageError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"d_theta": 0})")), UsageError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"theta_cap": -1})")), UsageError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"rho_star": 0})")), UsageError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"domain_half_width": -3})")), UsageError);
  CHECK_THROWS_AS(config_from_json(json::parse("[1, 2]")), UsageError);

  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK_THROWS_AS(load_config(dir / "bad.json"), UsageError);
  CHECK_THROWS_AS(load_config(dir / "missing.json"), UsageError);

  ScenarioConfig v = variant_config(4);
  v.domain_half_width = 12.0;
  const ScenarioConfig back = config_from_json(json::parse(to_json(v).dump()));
  CHECK(back.beta == v.beta);
  CHECK(back.rho_star == v.rho_star);
  CHECK(*back.domain_half_width == 12.0);
  CHECK(back.n_list == v.n_list);
}

TEST_CASE("variant table") {
  CHECK_THROWS_AS(variant_config(0), UsageError);
  CHECK_THROWS_AS(variant_config(7), UsageError);
  const double params[6][3] = {{0.4761, 0, 3},       {0.4761, 0, 4.5},     {0.4761, 0, 6},
                               {0, -0.6129, 4},      {0, -0.7857, 4},      {0, -0.9088, 4}};
  for (int k = 1; k <= 6; ++k) {
    const ScenarioConfig c = variant_config(k);
    CHECK(c.alpha == params[k - 1][0]);
    CHECK(c.beta == params[k - 1][1]);
    CHECK(c.rho_star == params[k - 1][2]);
    CHECK(c.n_list == std::vector<int>{1, 2, 3});
    CHECK(c.variant == std::to_string(k));
  }
}

TEST_CASE("scenario outputs: headers, determinism, summary consistency") {
  const fs::path a = scratch("run_a"), b = scratch("run_b");
  const RunArtifacts art = run_scenario(small_config(a), Execution::parallel);
  run_scenario(small_config(b), Execution::serial);

  const std::vector<std::string> names{"blowup.csv", "phi.csv", "density.csv", "summary.json",
                                       profile_file_name(art.profiles.front().theta)};
  for (const std::string& n : names) {
    REQUIRE(fs::exists(a / n));
    CHECK(slurp(a / n) == slurp(b / n));
  }
  CHECK(read_csv(a / "blowup.csv")[0] == std::vector<std::string>{"variant", "T_br", "rho_br_plus", "rho_br_minus", "rho0_star"});
  CHECK(read_csv(a / "phi.csv")[0] == std::vector<std::string>{"n", "theta", "phi_min", "argmin_rho0"});
  CHECK(read_csv(a / "density.csv")[0] == std::vector<std::string>{"theta", "N_origin", "N_max", "rho_at_max"});
  CHECK(read_csv(a / names.back())[0] == std::vector<std::string>{"rho", "P", "E", "p", "e", "N"});

  REQUIRE(art.report.found);
  const json summary = json::parse(slurp(a / "summary.json"));
  CHECK(summary["T_br"].get<double>() == art.report.T_br);
  CHECK(summary["rho_br_plus"].get<double>() == *art.report.rho_br_plus);
  CHECK(summary["blowup_detected"].get<bool>());

  const auto blow = read_csv(a / "blowup.csv");
  CHECK(blow[1][0] == "custom");
  CHECK(std::stod(blow[1][1]) == doctest::Approx(summary["T_br"].get<double>()).epsilon(1e-11));
  CHECK(std::stod(blow[1][2]) == doctest::Approx(summary["rho_br_plus"].get<double>()).epsilon(1e-11));
  CHECK(std::stod(blow[1][4]) == doctest::Approx(summary["rho0_star"].get<double>()).epsilon(1e-11));

  // theta_n and phi0 re-derived from phi.csv.
  const auto phi = read_csv(a / "phi.csv");
  for (int n : {1, 2, 3}) {
    std::vector<PhiPoint> series;
    for (std::size_t i = 1; i < phi.size(); ++i) {
      if (std::stoi(phi[i][0]) == n) series.push_back({std::stod(phi[i][1]), std::stod(phi[i][2]), std::stod(phi[i][3])});
    }
    REQUIRE_FALSE(series.empty());
    const std::string key = std::to_string(n);
    CHECK(series.front().phi_min == doctest::Approx(summary["phi0_" + key].get<double>()).epsilon(1e-11));
    std::optional<double> theta;
    for (const SignChange& c : sign_changes(series)) {
      if (c.direction < 0) {
        theta = c.theta;
        break;
      }
    }
    if (summary["theta_" + key].is_null()) {
      CHECK_FALSE(theta.has_value());
    } else {
      REQUIRE(theta.has_value());
      CHECK(*theta == doctest::Approx(summary["theta_" + key].get<double>()).epsilon(1e-9));
      CHECK(summary["T_" + key + "_sm"].get<double>() == summary["theta_" + key].get<double>() + n * std::numbers::pi);
    }
  }

  const auto dens = read_csv(a / "density.csv");
  CHECK(dens.size() == art.density.points.size() + 1);
  CHECK(summary["density_positivity_violations"].get<std::size_t>() == art.density.positivity_violations);
}

TEST_CASE("equilibrium scenario reports no blow-up") {
  const fs::path dir = scratch("rest");
  ScenarioConfig c = small_config(dir);
  c.alpha = 0.0;
  c.theta_cap = 2.0;
  const RunArtifacts art = run_scenario(c);
  CHECK_FALSE(art.report.found);
  CHECK(art.summary["status"] == "no blow-up detected within horizon");
  CHECK(art.summary["T_br"].is_null());
  const auto blow = read_csv(dir / "blowup.csv");
  CHECK(blow[1][1] == "nan");
  CHECK(fs::exists(dir / profile_file_name(2.0)));
}

TEST_CASE("certification at the initial time") {
  const CertifyResult v1 = certify_initial_data(variant_config(1));
  CHECK_FALSE(v1.equilibrium);
  REQUIRE(v1.certificates.size() == 3);
  for (const Certificate& c : v1.certificates) {
    CHECK(c.holds);
    CHECK(c.infimum == doctest::Approx(0.0478).epsilon(1e-10));
  }
  ScenarioConfig rest;
  const CertifyResult r = certify_initial_data(rest);
  CHECK(r.equilibrium);
  CHECK(r.certificates.front().infimum == 1.0);
}
