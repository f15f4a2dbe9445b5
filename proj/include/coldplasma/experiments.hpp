#pragma once

#include <optional>
#include <span>
#include <vector>

#include "coldplasma/initial_data.hpp"
#include "coldplasma/sweep.hpp"

namespace coldplasma {

struct BlowupSearch {
  double domain_half_width = 10.0;
  double d_rho_coarse = 1e-2;
  double d_rho_fine = 1e-3;
  double dtheta = 1e-3;
  double theta_cap = 60.0;
  /// Fine patch covers +-fine_patch_cells coarse cells around the argmin.
  int fine_patch_cells = 10;
};

struct BlowupReport {
  bool found = false;
  double T_br = 0.0;
  std::optional<double> rho_br_plus;
  std::optional<double> rho_br_minus;
  double rho0_star = 0.0;  ///< Lagrangian label of the first singular characteristic
  std::vector<double> rho0_labels;  ///< one label per reported location
  bool refined = false;
  double d_rho_coarse = 0.0;
  double d_rho_fine = 0.0;
  double dtheta = 0.0;
};

/// Coarse lockstep scan to the first q zero, a fine scan around the
/// minimizing label (and its mirror, if it also broke), then parabolic
/// refinement. Identically zero data reports no blow-up; simple-wave data
/// throws SimpleWaveError.
BlowupReport find_blowup(const InitialDataField& field, const BlowupSearch& search,
                         Execution exec = Execution::parallel);

struct PhiPoint {
  double theta = 0.0;
  double phi_min = 0.0;
  double argmin_rho0 = 0.0;
};

struct SignChange {
  double theta = 0.0;
  int direction = 0;  ///< -1 for positive to non-positive, +1 for the reverse
};

struct ConditionDynamics {
  int n = 1;
  std::vector<PhiPoint> series;
  std::vector<SignChange> sign_changes;
  std::optional<double> theta_n;  ///< first positive-to-negative transition
  std::optional<double> T_n_sm;   ///< theta_n + n pi
};

struct DensityPoint {
  double theta = 0.0;
  double N_origin = 1.0;
  double N_max = 1.0;
  double rho_at_max = 0.0;
};

struct DensitySeries {
  std::vector<DensityPoint> points;
  std::size_t positivity_violations = 0;
};

struct ProfileRow {
  double rho = 0.0;
  double P = 0.0;
  double E = 0.0;
  double p = 0.0;
  double e = 0.0;
  double N = 1.0;
  double rho0 = 0.0;   ///< label, not written to CSV
  double e_bar = 0.0;  ///< q + e0 - 1, not written to CSV
};

struct Profile {
  double theta = 0.0;
  std::vector<ProfileRow> rows;
};

struct DiagnosticsRequest {
  std::vector<double> labels;
  double dtheta = 1e-3;
  /// Condition and density samples are taken at theta < theta_stop.
  double theta_stop = 1.0;
  std::vector<int> n_list{1, 2, 3};
  int output_every = 10;
  bool density = true;
  std::vector<double> snapshots;
};

struct Diagnostics {
  std::vector<ConditionDynamics> dynamics;
  DensitySeries density;
  std::vector<Profile> profiles;
};

/// Single lockstep pass producing condition dynamics, density series and
/// profile snapshots.
Diagnostics run_diagnostics(const InitialDataField& field, const DiagnosticsRequest& request,
                            Execution exec = Execution::parallel);

ConditionDynamics condition_dynamics(const InitialDataField& field, std::span<const double> labels,
                                     double dtheta, int n, double theta_stop,
                                     Execution exec = Execution::parallel);

DensitySeries density_diagnostics(const InitialDataField& field, std::span<const double> labels,
                                  double dtheta, double theta_stop,
                                  Execution exec = Execution::parallel);

std::vector<ProfileRow> eulerian_profiles(const InitialDataField& field,
                                          std::span<const double> labels, double dtheta,
                                          double theta_snapshot,
                                          Execution exec = Execution::parallel);

/// Finds sign transitions of a sampled series and locates each by linear
/// interpolation.
std::vector<SignChange> sign_changes(std::span<const PhiPoint> series);

/// Coarse labels with fine patches spliced in around the reported blow-up labels.
std::vector<double> diagnostic_labels(const BlowupReport& report, const BlowupSearch& search);

/// Trapezoid rule for the excess charge, int (N - 1) drho, over a profile.
double excess_charge(std::span<const ProfileRow> rows);

/// The same integral in the label variable, -int e_bar drho0. The integrand
/// stays smooth up to blow-up.
double excess_charge_lagrangian(std::span<const ProfileRow> rows);

/// Profile rows from the current ensemble state, sorted by rho.
std::vector<ProfileRow> profile_rows(const Ensemble& ensemble);

}  // namespace coldplasma
