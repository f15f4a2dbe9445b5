#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coldplasma/dynamics.hpp"
#include "coldplasma/errors.hpp"
#include "coldplasma/scenario.hpp"

namespace cp = coldplasma;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kSimpleWave = 3;
constexpr int kIntegrator = 4;

struct Overrides {
  std::string config;
  std::optional<double> alpha, beta, rho_star, half_width, d_rho_coarse, d_rho_fine, d_theta, theta_cap;
  std::vector<int> n_list;
  std::optional<std::string> output_dir;
  bool serial = false;
};

void add_scenario_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--alpha", o.alpha, "E0 amplitude");
  cmd->add_option("--beta", o.beta, "P0 amplitude");
  cmd->add_option("--rho-star", o.rho_star, "pulse width");
  cmd->add_option("--domain-half-width", o.half_width, "label domain half width");
  cmd->add_option("--d-rho-coarse", o.d_rho_coarse, "coarse label step");
  cmd->add_option("--d-rho-fine", o.d_rho_fine, "fine label step");
  cmd->add_option("--d-theta", o.d_theta, "time step");
  cmd->add_option("--theta-cap", o.theta_cap, "integration horizon");
  cmd->add_option("--n-list", o.n_list, "condition orders")->delimiter(',');
  cmd->add_option("--output-dir", o.output_dir, "output directory");
  cmd->add_flag("--serial", o.serial, "use the serial reference kernels");
}

std::string default_output_dir() {
  const char* env = std::getenv("COLDPLASMA_OUTPUT_DIR");
  return env && *env ? env : "out";
}

cp::ScenarioConfig build_config(const Overrides& o) {
  cp::ScenarioConfig base;
  base.output_dir = default_output_dir();
  cp::ScenarioConfig c = o.config.empty() ? base : cp::load_config(o.config, base);
  if (o.alpha) c.alpha = *o.alpha;
  if (o.beta) c.beta = *o.beta;
  if (o.rho_star) c.rho_star = *o.rho_star;
  if (o.half_width) c.domain_half_width = *o.half_width;
  if (o.d_rho_coarse) c.d_rho_coarse = *o.d_rho_coarse;
  if (o.d_rho_fine) c.d_rho_fine = *o.d_rho_fine;
  if (o.d_theta) c.d_theta = *o.d_theta;
  if (o.theta_cap) c.theta_cap = *o.theta_cap;
  if (!o.n_list.empty()) c.n_list = o.n_list;
  if (o.output_dir) c.output_dir = *o.output_dir;
  cp::validate(c);
  return c;
}

cp::Execution execution(const Overrides& o) { return o.serial ? cp::Execution::serial : cp::Execution::parallel; }

void print_summary(const cp::RunArtifacts& art, const std::string& dir) {
  std::cout << art.summary.dump(2) << '\n';
  std::cout << "outputs written to " << dir << '\n';
}

int cmd_certify(const Overrides& o) {
  const cp::ScenarioConfig cfg = build_config(o);
  const cp::CertifyResult r = cp::certify_initial_data(cfg);
  if (r.equilibrium) std::cout << "equilibrium data\n";
  for (const cp::Certificate& c : r.certificates) {
    std::cout << "n=" << c.n << " infimum=" << cp::format_value(c.infimum)
              << " holds=" << (c.holds ? "true" : "false")
              << " horizon=" << cp::format_value(c.horizon)
              << " argmin_rho=" << cp::format_value(c.argmin_rho) << '\n';
  }
  return kOk;
}

int cmd_blowup(const Overrides& o) {
  const cp::ScenarioConfig cfg = build_config(o);
  const cp::InitialDataField field = cp::gaussian_pulse(cfg.alpha, cfg.beta, cfg.rho_star);
  cp::RunArtifacts art;
  art.report = cp::find_blowup(field, cfg.search(), execution(o));
  const cp::BlowupReport& r = art.report;
  if (!r.found) {
    std::cout << "no blow-up detected within horizon " << cp::format_value(cfg.theta_cap) << '\n';
  } else {
    std::cout << "T_br=" << cp::format_value(r.T_br);
    if (r.rho_br_plus) std::cout << " rho_br_plus=" << cp::format_value(*r.rho_br_plus);
    if (r.rho_br_minus) std::cout << " rho_br_minus=" << cp::format_value(*r.rho_br_minus);
    std::cout << " rho0_star=" << cp::format_value(r.rho0_star) << '\n';
  }
  std::filesystem::create_directories(cfg.output_dir);
  std::FILE* f = std::fopen((std::filesystem::path(cfg.output_dir) / "blowup.csv").c_str(), "w");
  if (!f) throw cp::UsageError("cannot write blowup.csv");
  const auto opt = [](const std::optional<double>& v) { return v ? cp::format_value(*v) : std::string("nan"); };
  std::fprintf(f, "variant,T_br,rho_br_plus,rho_br_minus,rho0_star\n%s,%s,%s,%s,%s\n", cfg.variant.c_str(),
               r.found ? cp::format_value(r.T_br).c_str() : "nan", opt(r.rho_br_plus).c_str(),
               opt(r.rho_br_minus).c_str(), r.found ? cp::format_value(r.rho0_star).c_str() : "nan");
  std::fclose(f);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cold plasma oscillation breaking: characteristics, smoothness certificates, blow-up search"};
  app.require_subcommand(1);

  Overrides sim, cert, blow;
  CLI::App* simulate = app.add_subcommand("simulate", "full scenario: blow-up, condition dynamics, density, profiles");
  add_scenario_flags(simulate, sim);
  CLI::App* certify = app.add_subcommand("certify", "smoothness condition at theta = 0, one line per n");
  add_scenario_flags(certify, cert);
  CLI::App* blowup = app.add_subcommand("blowup", "blow-up search only");
  add_scenario_flags(blowup, blow);

  CLI::App* reproduce = app.add_subcommand("reproduce", "rerun one of the six reference variants");
  int variant = 0;
  std::optional<std::string> repro_dir;
  bool repro_serial = false;
  reproduce->add_option("k", variant, "variant 1..6")->required()->check(CLI::Range(1, 6));
  reproduce->add_option("--output-dir", repro_dir, "output directory");
  reproduce->add_flag("--serial", repro_serial, "use the serial reference kernels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) {
      const cp::ScenarioConfig cfg = build_config(sim);
      print_summary(cp::run_scenario(cfg, execution(sim)), cfg.output_dir);
      return kOk;
    }
    if (*certify) return cmd_certify(cert);
    if (*blowup) return cmd_blowup(blow);
    if (*reproduce) {
      const std::string dir =
          repro_dir ? *repro_dir : (std::filesystem::path(default_output_dir()) / ("variant_" + std::to_string(variant))).string();
      const auto exec = repro_serial ? cp::Execution::serial : cp::Execution::parallel;
      print_summary(cp::reproduce_variant(variant, dir, exec), dir);
      return kOk;
    }
  } catch (const cp::SimpleWaveError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSimpleWave;
  } catch (const cp::IntegratorError& e) {
    std::cerr << "integrator failure: " << e.what() << " (last valid theta="
              << cp::format_value(e.last_valid().theta) << ", rho0=" << cp::format_value(e.last_valid().rho0) << ")\n";
    return kIntegrator;
  } catch (const cp::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const cp::DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}
