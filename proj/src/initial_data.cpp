#include "coldplasma/initial_data.hpp"

#include <algorithm>
#include <cmath>

#include "coldplasma/dynamics.hpp"
#include "coldplasma/errors.hpp"

namespace coldplasma {

InitialDataField gaussian_pulse(double alpha, double beta, double rho_star) {
  if (!(rho_star > 0.0) || !std::isfinite(rho_star)) {
    throw DomainError("gaussian_pulse: rho_star must be positive");
  }
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("gaussian_pulse: non-finite amplitude");
  }
  const double w2 = rho_star * rho_star;
  auto envelope = [w2](double rho) { return std::exp(-2.0 * rho * rho / w2); };
  auto slope = [w2, envelope](double rho) { return (1.0 - 4.0 * rho * rho / w2) * envelope(rho); };

  InitialDataField f;
  f.E0 = [alpha, envelope](double rho) { return alpha * rho * envelope(rho); };
  f.P0 = [beta, envelope](double rho) { return beta * rho * envelope(rho); };
  f.e0 = [alpha, slope](double rho) { return alpha * slope(rho); };
  f.p0 = [beta, slope](double rho) { return beta * slope(rho); };
  f.gaussian = GaussianParams{alpha, beta, rho_star};
  f.odd = true;
  return f;
}

InitialDataField constant_field(double P0, double E0) {
  InitialDataField f;
  f.P0 = [P0](double) { return P0; };
  f.E0 = [E0](double) { return E0; };
  f.p0 = [](double) { return 0.0; };
  f.e0 = [](double) { return 0.0; };
  f.odd = (P0 == 0.0 && E0 == 0.0);
  return f;
}

std::vector<FieldSample> sample_field(const InitialDataField& field, std::span<const double> labels) {
  std::vector<FieldSample> out;
  out.reserve(labels.size());
  for (double rho : labels) {
    FieldSample s;
    s.rho = rho;
    s.P0 = field.P0(rho);
    s.E0 = field.E0(rho);
    s.p0 = field.p0(rho);
    s.e0 = field.e0(rho);
    s.c = conserved_c(s.P0, s.E0);
    out.push_back(s);
  }
  return out;
}

bool detect_simple_wave(std::span<const FieldSample> samples) {
  if (samples.size() < 2) {
    throw UsageError("detect_simple_wave: need at least two samples");
  }
  auto [lo, hi] = std::minmax_element(samples.begin(), samples.end(),
                                      [](const FieldSample& a, const FieldSample& b) { return a.c < b.c; });
  return (hi->c - lo->c) < 1e-12 * std::max(1.0, hi->c);
}

bool is_equilibrium(std::span<const FieldSample> samples) {
  return std::all_of(samples.begin(), samples.end(), [](const FieldSample& s) {
    return s.P0 == 0.0 && s.E0 == 0.0 && s.p0 == 0.0 && s.e0 == 0.0;
  });
}

std::vector<double> symmetric_labels(double half_width, double step) {
  if (!(step > 0.0) || !(half_width >= 0.0)) {
    throw UsageError("symmetric_labels: step must be positive and half width non-negative");
  }
  const auto m = static_cast<long>(std::floor(half_width / step + 1e-9));
  std::vector<double> labels;
  labels.reserve(static_cast<std::size_t>(2 * m + 1));
  for (long i = -m; i <= m; ++i) {
    labels.push_back(static_cast<double>(i) * step);
  }
  return labels;
}

double default_half_width(double rho_star) { return std::max(4.5 * rho_star, 10.0); }

}  // namespace coldplasma
