#include "coldplasma/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "coldplasma/errors.hpp"

namespace coldplasma {

namespace {

void check_search(const BlowupSearch& s) {
  if (!(s.domain_half_width > 0.0) || !(s.d_rho_coarse > 0.0) || !(s.d_rho_fine > 0.0) ||
      !(s.dtheta > 0.0) || !(s.theta_cap > 0.0) || s.fine_patch_cells < 1) {
    throw UsageError("find_blowup: steps, half width and horizon must be positive");
  }
}

// Index of the earliest event, ties to the lower index.
std::optional<std::size_t> earliest(const std::vector<std::optional<QZeroEvent>>& events) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i] && (!best || events[i]->theta < events[*best]->theta)) best = i;
  }
  return best;
}

int patch_half_cells(const BlowupSearch& s) {
  return static_cast<int>(std::lround(s.fine_patch_cells * s.d_rho_coarse / s.d_rho_fine));
}

std::vector<double> fine_patch(double center, const BlowupSearch& s) {
  const int j_max = patch_half_cells(s);
  std::vector<double> labels;
  labels.reserve(static_cast<std::size_t>(2 * j_max + 1));
  for (int j = -j_max; j <= j_max; ++j) labels.push_back(center + static_cast<double>(j) * s.d_rho_fine);
  return labels;
}

struct Located {
  double theta = 0.0;
  double rho = 0.0;
  double label = 0.0;
  bool refined = false;
};

// Fine scan around one coarse label, then a three-point parabolic fit.
Located refine_location(const InitialDataField& field, double center, double coarse_theta,
                        const BlowupSearch& s, Execution exec) {
  const std::vector<double> labels = fine_patch(center, s);
  const double cap = std::min(s.theta_cap, coarse_theta + 0.5);
  const auto events = first_crossings(field, labels, s.dtheta, cap, exec);
  const auto best = earliest(events);
  if (!best) throw UsageError("find_blowup: fine scan lost the coarse event");
  const std::size_t j = *best;

  Located out{events[j]->theta, events[j]->rho, labels[j], false};
  if (j == 0 || j + 1 >= labels.size() || !events[j - 1] || !events[j + 1]) return out;

  const double tm = events[j - 1]->theta;
  const double t0 = events[j]->theta;
  const double tp = events[j + 1]->theta;
  const double curvature = tm - 2.0 * t0 + tp;
  if (!(curvature > 0.0)) return out;
  const double delta = std::clamp(0.5 * (tm - tp) / curvature, -1.0, 1.0);

  auto parabola = [delta](double ym, double y0, double yp) {
    return y0 + 0.5 * delta * (yp - ym) + 0.5 * delta * delta * (yp - 2.0 * y0 + ym);
  };
  out.theta = parabola(tm, t0, tp);
  out.rho = parabola(events[j - 1]->rho, events[j]->rho, events[j + 1]->rho);
  out.label = labels[j] + delta * s.d_rho_fine;
  out.refined = true;
  return out;
}

double density_at_origin(const Ensemble& ens) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (ens.alive(i)) pts.emplace_back(ens.states[i].rho, derive(ens.states[i]).N);
  }
  if (pts.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (!std::is_sorted(pts.begin(), pts.end())) std::sort(pts.begin(), pts.end());
  auto it = std::lower_bound(pts.begin(), pts.end(), std::make_pair(0.0, -std::numeric_limits<double>::infinity()));
  if (it == pts.end()) return pts.back().second;
  if (it->first == 0.0 || it == pts.begin()) return it->second;
  const auto& [r1, n1] = *it;
  const auto& [r0, n0] = *(it - 1);
  return n0 + (n1 - n0) * (0.0 - r0) / (r1 - r0);
}

}  // namespace

BlowupReport find_blowup(const InitialDataField& field, const BlowupSearch& search, Execution exec) {
  check_search(search);
  BlowupReport report;
  report.d_rho_coarse = search.d_rho_coarse;
  report.d_rho_fine = search.d_rho_fine;
  report.dtheta = search.dtheta;

  const std::vector<double> labels = symmetric_labels(search.domain_half_width, search.d_rho_coarse);
  const std::vector<FieldSample> samples = sample_field(field, labels);
  if (is_equilibrium(samples)) return report;
  if (detect_simple_wave(samples)) {
    throw SimpleWaveError("find_blowup: C(rho) is constant (simple wave); the search does not apply");
  }

  // Lockstep coarse scan; the first step with any sign change holds the global minimum.
  Ensemble ens = make_ensemble(field, labels);
  const auto full = static_cast<long>(std::floor(search.theta_cap / search.dtheta + 1e-9));
  const double rest = search.theta_cap - static_cast<double>(full) * search.dtheta;
  const long total = full + (rest > 1e-12 * search.dtheta ? 1 : 0);
  bool hit = false;
  for (long k = 1; k <= total && !hit; ++k) {
    hit = advance(ens, k <= full ? search.dtheta : rest, exec) > 0;
  }
  const auto first = earliest(ens.events);
  if (!first) return report;

  std::vector<std::size_t> centers{*first};
  const std::size_t mirror = labels.size() - 1 - *first;
  if (mirror != *first && ens.events[mirror]) centers.push_back(mirror);

  std::vector<Located> found;
  for (std::size_t idx : centers) {
    found.push_back(refine_location(field, labels[idx], ens.events[idx]->theta, search, exec));
  }

  report.found = true;
  report.refined = std::all_of(found.begin(), found.end(), [](const Located& l) { return l.refined; });
  const auto best = std::min_element(found.begin(), found.end(), [](const Located& a, const Located& b) {
    return a.theta < b.theta || (a.theta == b.theta && a.rho > b.rho);
  });
  report.T_br = best->theta;
  report.rho0_star = best->label;
  for (const Located& l : found) {
    report.rho0_labels.push_back(l.label);
    if (l.rho >= 0.0) {
      if (!report.rho_br_plus) report.rho_br_plus = l.rho;
    } else if (!report.rho_br_minus) {
      report.rho_br_minus = l.rho;
    }
  }
  return report;
}

std::vector<SignChange> sign_changes(std::span<const PhiPoint> series) {
  std::vector<SignChange> out;
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    const double a = series[i].phi_min;
    const double b = series[i + 1].phi_min;
    const bool pa = a > 0.0;
    const bool pb = b > 0.0;
    if (pa == pb) continue;
    const double t = series[i].theta + (series[i + 1].theta - series[i].theta) * a / (a - b);
    out.push_back({t, pa ? -1 : +1});
  }
  return out;
}

Diagnostics run_diagnostics(const InitialDataField& field, const DiagnosticsRequest& req, Execution exec) {
  if (req.labels.empty()) throw UsageError("run_diagnostics: no labels");
  if (!(req.dtheta > 0.0) || req.output_every < 1) {
    throw UsageError("run_diagnostics: dtheta must be positive and output_every >= 1");
  }
  for (int n : req.n_list) {
    if (n < 1) throw UsageError("run_diagnostics: n must be >= 1");
  }

  Diagnostics out;
  for (int n : req.n_list) out.dynamics.push_back(ConditionDynamics{n, {}, {}, std::nullopt, std::nullopt});

  std::vector<double> snapshots = req.snapshots;
  std::sort(snapshots.begin(), snapshots.end());
  std::size_t next_snapshot = 0;
  double end = req.theta_stop;
  if (!snapshots.empty()) end = std::max(end, snapshots.back());

  Ensemble ens = make_ensemble(field, req.labels);
  auto sample = [&] {
    for (ConditionDynamics& cd : out.dynamics) {
      const Extremum m = phi_min(ens, cd.n, exec);
      if (m.valid) cd.series.push_back({ens.theta, m.value, req.labels[m.index]});
    }
    if (req.density) {
      const Extremum m = density_max(ens, exec);
      if (m.valid) {
        out.density.points.push_back({ens.theta, density_at_origin(ens), m.value, ens.states[m.index].rho});
      }
      out.density.positivity_violations += density_violations(ens, exec);
    }
  };
  auto take_snapshots = [&] {
    while (next_snapshot < snapshots.size() && snapshots[next_snapshot] < ens.theta + req.dtheta - 1e-12) {
      const double target = snapshots[next_snapshot++];
      Ensemble copy = ens;
      if (target - copy.theta > 1e-12 * req.dtheta) advance(copy, target - copy.theta, exec);
      out.profiles.push_back({target, profile_rows(copy)});
    }
  };

  for (long k = 0;; ++k) {
    if (k % req.output_every == 0 && ens.theta < req.theta_stop) sample();
    take_snapshots();
    if (ens.theta + 0.5 * req.dtheta >= end) break;
    advance(ens, req.dtheta, exec);
  }
  take_snapshots();

  for (ConditionDynamics& cd : out.dynamics) {
    cd.sign_changes = sign_changes(cd.series);
    const auto down = std::find_if(cd.sign_changes.begin(), cd.sign_changes.end(),
                                   [](const SignChange& s) { return s.direction < 0; });
    if (down != cd.sign_changes.end()) {
      cd.theta_n = down->theta;
      cd.T_n_sm = down->theta + cd.n * std::numbers::pi;
    }
  }
  return out;
}

ConditionDynamics condition_dynamics(const InitialDataField& field, std::span<const double> labels,
                                     double dtheta, int n, double theta_stop, Execution exec) {
  DiagnosticsRequest req;
  req.labels.assign(labels.begin(), labels.end());
  req.dtheta = dtheta;
  req.theta_stop = theta_stop;
  req.n_list = {n};
  req.density = false;
  return std::move(run_diagnostics(field, req, exec).dynamics.front());
}

DensitySeries density_diagnostics(const InitialDataField& field, std::span<const double> labels,
                                  double dtheta, double theta_stop, Execution exec) {
  DiagnosticsRequest req;
  req.labels.assign(labels.begin(), labels.end());
  req.dtheta = dtheta;
  req.theta_stop = theta_stop;
  req.n_list.clear();
  return run_diagnostics(field, req, exec).density;
}

std::vector<ProfileRow> eulerian_profiles(const InitialDataField& field, std::span<const double> labels,
                                          double dtheta, double theta_snapshot, Execution exec) {
  DiagnosticsRequest req;
  req.labels.assign(labels.begin(), labels.end());
  req.dtheta = dtheta;
  req.theta_stop = 0.0;
  req.n_list.clear();
  req.density = false;
  req.snapshots = {theta_snapshot};
  return std::move(run_diagnostics(field, req, exec).profiles.front().rows);
}

std::vector<double> diagnostic_labels(const BlowupReport& report, const BlowupSearch& search) {
  std::vector<double> coarse = symmetric_labels(search.domain_half_width, search.d_rho_coarse);
  if (!report.found) return coarse;

  const double reach = patch_half_cells(search) * search.d_rho_fine;
  std::vector<double> centers;
  for (double l : report.rho0_labels) {
    centers.push_back(static_cast<double>(std::lround(l / search.d_rho_coarse)) * search.d_rho_coarse);
  }
  std::vector<double> labels;
  for (double c : coarse) {
    const bool covered = std::any_of(centers.begin(), centers.end(),
                                     [&](double m) { return std::abs(c - m) <= reach + 1e-9 * search.d_rho_fine; });
    if (!covered) labels.push_back(c);
  }
  for (double m : centers) {
    const auto patch = fine_patch(m, search);
    labels.insert(labels.end(), patch.begin(), patch.end());
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

double excess_charge(std::span<const ProfileRow> rows) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    sum += 0.5 * ((rows[i].N - 1.0) + (rows[i + 1].N - 1.0)) * (rows[i + 1].rho - rows[i].rho);
  }
  return sum;
}

double excess_charge_lagrangian(std::span<const ProfileRow> rows) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(rows.size());
  for (const ProfileRow& r : rows) pts.emplace_back(r.rho0, r.e_bar);
  std::sort(pts.begin(), pts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    sum -= 0.5 * (pts[i].second + pts[i + 1].second) * (pts[i + 1].first - pts[i].first);
  }
  return sum;
}

std::vector<ProfileRow> profile_rows(const Ensemble& ens) {
  std::vector<ProfileRow> rows;
  rows.reserve(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (!ens.alive(i)) continue;
    const CharacteristicState& s = ens.states[i];
    const DerivedQuantities d = derive(s);
    rows.push_back({s.rho, s.P, s.E, d.p, d.e, d.N, s.rho0, s.e_bar()});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ProfileRow& a, const ProfileRow& b) { return a.rho < b.rho; });
  return rows;
}

}  // namespace coldplasma
