#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coldplasma/certifier.hpp"
#include "coldplasma/experiments.hpp"

namespace coldplasma {

struct ScenarioConfig {
  double alpha = 0.0;
  double beta = 0.0;
  double rho_star = 1.0;
  std::optional<double> domain_half_width;  ///< defaults to max(4.5 rho_star, 10)
  double d_rho_coarse = 1e-2;
  double d_rho_fine = 1e-3;
  double d_theta = 1e-3;
  double theta_cap = 60.0;
  std::vector<int> n_list{1, 2, 3};
  std::string output_dir = "out";
  std::string variant = "custom";

  double half_width() const;
  BlowupSearch search() const;
};

/// Throws UsageError on non-positive steps or horizon, or n < 1.
void validate(const ScenarioConfig& config);

/// Strict parse: unknown keys and wrongly typed values throw UsageError.
ScenarioConfig config_from_json(const nlohmann::json& doc, ScenarioConfig base = {});
ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base = {});
nlohmann::ordered_json to_json(const ScenarioConfig& config);

/// Baked-in parameters of variants 1..6. Throws UsageError otherwise.
ScenarioConfig variant_config(int k);

struct RunArtifacts {
  BlowupReport report;
  std::vector<ConditionDynamics> dynamics;
  DensitySeries density;
  std::vector<Profile> profiles;
  nlohmann::ordered_json summary;
};

/// Blow-up search, condition dynamics for every n, density series and a
/// profile snapshot just before blow-up (or at theta_cap). Pure: writes
/// nothing.
RunArtifacts compute_scenario(const ScenarioConfig& config, Execution exec = Execution::parallel);

/// compute_scenario followed by write_artifacts.
RunArtifacts run_scenario(const ScenarioConfig& config, Execution exec = Execution::parallel);

RunArtifacts reproduce_variant(int k, const std::string& output_dir,
                               Execution exec = Execution::parallel);

/// blowup.csv, phi.csv, density.csv, profile_<theta>.csv and summary.json.
void write_artifacts(const RunArtifacts& artifacts, const ScenarioConfig& config);

/// 12 significant digits; "nan" for absent values.
std::string format_value(double v);
std::string profile_file_name(double theta);

/// Certificates at theta = 0 on the coarse grid, one per n.
struct CertifyResult {
  bool equilibrium = false;
  std::vector<Certificate> certificates;
};
CertifyResult certify_initial_data(const ScenarioConfig& config);

}  // namespace coldplasma
