#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace coldplasma {

struct GaussianParams {
  double alpha = 0.0;
  double beta = 0.0;
  double rho_star = 1.0;
};

/// Cauchy data P(rho, 0) = P0(rho), E(rho, 0) = E0(rho) together with the
/// exact derivatives p0 = P0', e0 = E0'.
struct InitialDataField {
  std::function<double(double)> P0;
  std::function<double(double)> E0;
  std::function<double(double)> p0;
  std::function<double(double)> e0;
  std::optional<GaussianParams> gaussian;
  /// Both P0 and E0 are odd functions of rho.
  bool odd = false;
};

/// One grid point of the data, with its first integral C = 2 sqrt(1 + P0^2) + E0^2.
struct FieldSample {
  double rho = 0.0;
  double P0 = 0.0;
  double E0 = 0.0;
  double p0 = 0.0;
  double e0 = 0.0;
  double c = 2.0;
};

/// E0 = alpha rho exp(-2 rho^2 / rho_star^2), P0 = beta rho exp(-2 rho^2 / rho_star^2).
InitialDataField gaussian_pulse(double alpha, double beta, double rho_star);

/// Spatially constant data; the derivatives vanish.
InitialDataField constant_field(double P0, double E0);

std::vector<FieldSample> sample_field(const InitialDataField& field, std::span<const double> labels);

/// True when C is constant over the samples to 1e-12 relative. Requires at
/// least two samples.
bool detect_simple_wave(std::span<const FieldSample> samples);

/// True when every sample is exactly the rest state P0 = E0 = p0 = e0 = 0.
bool is_equilibrium(std::span<const FieldSample> samples);

/// Labels i * step for |i * step| <= half_width. The grid is exactly
/// symmetric about 0 so odd data stays odd to the last bit.
std::vector<double> symmetric_labels(double half_width, double step);

/// Truncation half width for a Gaussian pulse: max(4.5 rho_star, 10).
double default_half_width(double rho_star);

}  // namespace coldplasma
