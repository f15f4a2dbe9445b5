#include "coldplasma/scenario.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "coldplasma/errors.hpp"

namespace coldplasma {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

double number_field(const json& doc, const std::string& key) {
  if (!doc.is_number()) throw UsageError("config: '" + key + "' must be a number");
  return doc.get<double>();
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
}

std::string opt_value(const std::optional<double>& v) {
  return format_value(v ? *v : std::numeric_limits<double>::quiet_NaN());
}

ordered_json build_summary(const ScenarioConfig& cfg, const RunArtifacts& art) {
  ordered_json s;
  s["variant"] = cfg.variant;
  s["alpha"] = cfg.alpha;
  s["beta"] = cfg.beta;
  s["rho_star"] = cfg.rho_star;
  s["domain_half_width"] = cfg.half_width();
  s["d_rho_coarse"] = cfg.d_rho_coarse;
  s["d_rho_fine"] = cfg.d_rho_fine;
  s["d_theta"] = cfg.d_theta;
  s["theta_cap"] = cfg.theta_cap;
  s["blowup_detected"] = art.report.found;
  s["status"] = art.report.found ? "blow-up detected" : "no blow-up detected within horizon";
  s["T_br"] = art.report.found ? ordered_json(art.report.T_br) : ordered_json(nullptr);
  s["rho_br_plus"] = optional_number(art.report.rho_br_plus);
  s["rho_br_minus"] = optional_number(art.report.rho_br_minus);
  s["rho0_star"] = art.report.found ? ordered_json(art.report.rho0_star) : ordered_json(nullptr);
  s["refined"] = art.report.refined;
  for (const ConditionDynamics& cd : art.dynamics) {
    const std::string n = std::to_string(cd.n);
    s["phi0_" + n] = cd.series.empty() ? ordered_json(nullptr) : ordered_json(cd.series.front().phi_min);
    s["theta_" + n] = optional_number(cd.theta_n);
    s["T_" + n + "_sm"] = optional_number(cd.T_n_sm);
  }
  s["density_positivity_violations"] = art.density.positivity_violations;
  s["profile_theta"] = art.profiles.empty() ? ordered_json(nullptr) : ordered_json(art.profiles.front().theta);
  return s;
}

}  // namespace

double ScenarioConfig::half_width() const {
  return domain_half_width.value_or(default_half_width(rho_star));
}

BlowupSearch ScenarioConfig::search() const {
  BlowupSearch s;
  s.domain_half_width = half_width();
  s.d_rho_coarse = d_rho_coarse;
  s.d_rho_fine = d_rho_fine;
  s.dtheta = d_theta;
  s.theta_cap = theta_cap;
  return s;
}

void validate(const ScenarioConfig& c) {
  if (!std::isfinite(c.alpha) || !std::isfinite(c.beta)) throw UsageError("config: alpha and beta must be finite");
  if (!(c.rho_star > 0.0)) throw UsageError("config: rho_star must be positive");
  if (c.domain_half_width && !(*c.domain_half_width > 0.0)) {
    throw UsageError("config: domain_half_width must be positive");
  }
  if (!(c.d_rho_coarse > 0.0) || !(c.d_rho_fine > 0.0) || !(c.d_theta > 0.0)) {
    throw UsageError("config: steps must be positive");
  }
  if (!(c.theta_cap > 0.0) || !std::isfinite(c.theta_cap)) throw UsageError("config: theta_cap must be positive");
  if (c.n_list.empty()) throw UsageError("config: n_list is empty");
  for (int n : c.n_list) {
    if (n < 1) throw UsageError("config: n_list entries must be >= 1");
  }
}

ScenarioConfig config_from_json(const json& doc, ScenarioConfig cfg) {
  if (!doc.is_object()) throw UsageError("config: top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "alpha") {
      cfg.alpha = number_field(value, key);
    } else if (key == "beta") {
      cfg.beta = number_field(value, key);
    } else if (key == "rho_star") {
      cfg.rho_star = number_field(value, key);
    } else if (key == "domain_half_width") {
      cfg.domain_half_width = value.is_null() ? std::nullopt : std::optional<double>(number_field(value, key));
    } else if (key == "d_rho_coarse") {
      cfg.d_rho_coarse = number_field(value, key);
    } else if (key == "d_rho_fine") {
      cfg.d_rho_fine = number_field(value, key);
    } else if (key == "d_theta") {
      cfg.d_theta = number_field(value, key);
    } else if (key == "theta_cap") {
      cfg.theta_cap = number_field(value, key);
    } else if (key == "n_list") {
      if (!value.is_array()) throw UsageError("config: 'n_list' must be an array of integers");
      cfg.n_list.clear();
      for (const auto& n : value) {
        if (!n.is_number_integer()) throw UsageError("config: 'n_list' must be an array of integers");
        cfg.n_list.push_back(n.get<int>());
      }
    } else if (key == "output_dir") {
      if (!value.is_string()) throw UsageError("config: 'output_dir' must be a string");
      cfg.output_dir = value.get<std::string>();
    } else {
      throw UsageError("config: unknown key '" + key + "'");
    }
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return config_from_json(doc, std::move(base));
}

ordered_json to_json(const ScenarioConfig& c) {
  ordered_json j;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["rho_star"] = c.rho_star;
  j["domain_half_width"] = optional_number(c.domain_half_width);
  j["d_rho_coarse"] = c.d_rho_coarse;
  j["d_rho_fine"] = c.d_rho_fine;
  j["d_theta"] = c.d_theta;
  j["theta_cap"] = c.theta_cap;
  j["n_list"] = c.n_list;
  j["output_dir"] = c.output_dir;
  return j;
}

ScenarioConfig variant_config(int k) {
  static constexpr std::array<std::array<double, 3>, 6> kParams{{
      {0.4761, 0.0, 3.0},
      {0.4761, 0.0, 4.5},
      {0.4761, 0.0, 6.0},
      {0.0, -0.6129, 4.0},
      {0.0, -0.7857, 4.0},
      {0.0, -0.9088, 4.0},
  }};
  if (k < 1 || k > 6) throw UsageError("variant must be in 1..6");
  ScenarioConfig c;
  const auto& p = kParams[static_cast<std::size_t>(k - 1)];
  c.alpha = p[0];
  c.beta = p[1];
  c.rho_star = p[2];
  c.theta_cap = 60.0;
  c.n_list = {1, 2, 3};
  c.variant = std::to_string(k);
  return c;
}

RunArtifacts compute_scenario(const ScenarioConfig& cfg, Execution exec) {
  validate(cfg);
  const InitialDataField field = gaussian_pulse(cfg.alpha, cfg.beta, cfg.rho_star);
  const BlowupSearch search = cfg.search();

  RunArtifacts art;
  art.report = find_blowup(field, search, exec);

  DiagnosticsRequest req;
  req.labels = diagnostic_labels(art.report, search);
  req.dtheta = cfg.d_theta;
  req.theta_stop = art.report.found ? art.report.T_br : cfg.theta_cap;
  req.n_list = cfg.n_list;
  if (art.report.found) {
    // Last grid time strictly before the singularity.
    const double steps = std::ceil(art.report.T_br / cfg.d_theta) - 1.0;
    req.snapshots = {std::max(0.0, steps * cfg.d_theta)};
  } else {
    req.snapshots = {cfg.theta_cap};
  }
  Diagnostics diag = run_diagnostics(field, req, exec);
  art.dynamics = std::move(diag.dynamics);
  art.density = std::move(diag.density);
  art.profiles = std::move(diag.profiles);
  art.summary = build_summary(cfg, art);
  return art;
}

RunArtifacts run_scenario(const ScenarioConfig& cfg, Execution exec) {
  RunArtifacts art = compute_scenario(cfg, exec);
  write_artifacts(art, cfg);
  return art;
}

RunArtifacts reproduce_variant(int k, const std::string& output_dir, Execution exec) {
  ScenarioConfig cfg = variant_config(k);
  cfg.output_dir = output_dir;
  return run_scenario(cfg, exec);
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.12g", v);
  return buf.data();
}

std::string profile_file_name(double theta) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "profile_%.3f.csv", theta);
  return buf.data();
}

void write_artifacts(const RunArtifacts& art, const ScenarioConfig& cfg) {
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);

  const BlowupReport& r = art.report;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  write_csv(dir / "blowup.csv", "variant,T_br,rho_br_plus,rho_br_minus,rho0_star",
            {{cfg.variant, format_value(r.found ? r.T_br : nan), opt_value(r.rho_br_plus),
              opt_value(r.rho_br_minus), format_value(r.found ? r.rho0_star : nan)}});

  std::vector<std::vector<std::string>> phi;
  for (const ConditionDynamics& cd : art.dynamics) {
    for (const PhiPoint& p : cd.series) {
      phi.push_back({std::to_string(cd.n), format_value(p.theta), format_value(p.phi_min), format_value(p.argmin_rho0)});
    }
  }
  write_csv(dir / "phi.csv", "n,theta,phi_min,argmin_rho0", phi);

  std::vector<std::vector<std::string>> dens;
  for (const DensityPoint& d : art.density.points) {
    dens.push_back({format_value(d.theta), format_value(d.N_origin), format_value(d.N_max), format_value(d.rho_at_max)});
  }
  write_csv(dir / "density.csv", "theta,N_origin,N_max,rho_at_max", dens);

  for (const Profile& prof : art.profiles) {
    std::vector<std::vector<std::string>> rows;
    for (const ProfileRow& row : prof.rows) {
      rows.push_back({format_value(row.rho), format_value(row.P), format_value(row.E), format_value(row.p),
                      format_value(row.e), format_value(row.N)});
    }
    write_csv(dir / profile_file_name(prof.theta), "rho,P,E,p,e,N", rows);
  }

  std::ofstream summary(dir / "summary.json");
  if (!summary) throw UsageError("cannot write summary.json");
  summary << art.summary.dump(2) << '\n';
}

CertifyResult certify_initial_data(const ScenarioConfig& cfg) {
  validate(cfg);
  const InitialDataField field = gaussian_pulse(cfg.alpha, cfg.beta, cfg.rho_star);
  const std::vector<double> labels = symmetric_labels(cfg.half_width(), cfg.d_rho_coarse);
  const std::vector<FieldSample> samples = sample_field(field, labels);

  CertifyResult result;
  result.equilibrium = is_equilibrium(samples);
  if (!result.equilibrium && detect_simple_wave(samples)) {
    throw SimpleWaveError("certify: C(rho) is constant (simple wave); the condition does not apply");
  }
  std::vector<CertSample> cs;
  cs.reserve(samples.size());
  for (const FieldSample& s : samples) cs.push_back({s.rho, s.p0, s.e0, s.c});
  for (int n : cfg.n_list) result.certificates.push_back(certify(cs, n));
  return result;
}

}  // namespace coldplasma
