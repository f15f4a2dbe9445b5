#include "coldplasma/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "coldplasma/errors.hpp"

namespace coldplasma {

namespace {

bool finite_state(const CharacteristicState& s) {
  return std::isfinite(s.rho) && std::isfinite(s.P) && std::isfinite(s.E) && std::isfinite(s.p_bar) &&
         std::isfinite(s.q);
}

CharacteristicState shifted(const CharacteristicState& s, const StateDerivative& d, double h) {
  CharacteristicState out = s;
  out.rho += h * d.rho;
  out.P += h * d.P;
  out.E += h * d.E;
  out.p_bar += h * d.p_bar;
  out.q += h * d.q;
  return out;
}

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(n - 1 - i)] = z;
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(n - 1 - i)] = wi;
  }
}

}  // namespace

double lorentz_gamma(double P) {
  if (!std::isfinite(P)) throw DomainError("lorentz_gamma: non-finite momentum");
  return std::sqrt(1.0 + P * P);
}

double conserved_c(double P, double E) {
  if (!std::isfinite(E)) throw DomainError("conserved_c: non-finite field");
  return 2.0 * lorentz_gamma(P) + E * E;
}

double k_minus(double c) {
  if (!std::isfinite(c) || c < 2.0) {
    throw DomainError("k_minus: first integral below its lower bound 2");
  }
  return 8.0 / (c * c * c);
}

DerivedQuantities derive(const CharacteristicState& s) {
  DerivedQuantities d;
  d.gamma = std::sqrt(1.0 + s.P * s.P);
  d.V = s.P / d.gamma;
  d.K = 1.0 / (d.gamma * d.gamma * d.gamma);
  d.p = s.p_bar / s.q;
  d.e = s.e_bar() / s.q;
  d.N = 1.0 - d.e;
  return d;
}

StateDerivative rhs(const CharacteristicState& s) noexcept {
  const double gamma = std::sqrt(1.0 + s.P * s.P);
  const double v = s.P / gamma;
  const double k = 1.0 / (gamma * gamma * gamma);
  return {v, -s.E, v, -s.e_bar(), s.p_bar * k};
}

CharacteristicState rk4_step(const CharacteristicState& s, double dtheta) noexcept {
  const StateDerivative k1 = rhs(s);
  const StateDerivative k2 = rhs(shifted(s, k1, 0.5 * dtheta));
  const StateDerivative k3 = rhs(shifted(s, k2, 0.5 * dtheta));
  const StateDerivative k4 = rhs(shifted(s, k3, dtheta));
  const double w = dtheta / 6.0;
  CharacteristicState out = s;
  out.rho += w * (k1.rho + 2.0 * k2.rho + 2.0 * k3.rho + k4.rho);
  out.P += w * (k1.P + 2.0 * k2.P + 2.0 * k3.P + k4.P);
  out.E += w * (k1.E + 2.0 * k2.E + 2.0 * k3.E + k4.E);
  out.p_bar += w * (k1.p_bar + 2.0 * k2.p_bar + 2.0 * k3.p_bar + k4.p_bar);
  out.q += w * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
  out.theta = s.theta + dtheta;
  return out;
}

CharacteristicState initial_state(const InitialDataField& field, double rho0) {
  CharacteristicState s;
  s.rho0 = rho0;
  s.rho = rho0;
  s.P = field.P0(rho0);
  s.E = field.E0(rho0);
  s.p_bar = field.p0(rho0);
  s.e0 = field.e0(rho0);
  s.q = 1.0;
  if (!finite_state(s) || !std::isfinite(s.e0)) {
    throw DomainError("initial_state: field not finite at the label");
  }
  return s;
}

QZeroEvent refine_q_zero(const CharacteristicState& before, double dtheta, double tolerance) {
  const CharacteristicState after = rk4_step(before, dtheta);
  if (!(before.q > 0.0) || after.q > 0.0) {
    throw DomainError("refine_q_zero: step does not bracket a zero of q");
  }
  auto q_at = [&](double tau) { return rk4_step(before, tau * dtheta).q; };

  // Cubic Hermite seed on tau in [0, 1].
  const double q0 = before.q;
  const double q1 = after.q;
  const double d0 = rhs(before).q * dtheta;
  const double d1 = rhs(after).q * dtheta;
  auto hermite = [&](double t) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * q0 + (t3 - 2 * t2 + t) * d0 + (-2 * t3 + 3 * t2) * q1 + (t3 - t2) * d1;
  };
  double a = 0.0;
  double b = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (a + b);
    (hermite(m) > 0.0 ? a : b) = m;
  }
  const double seed = 0.5 * (a + b);

  double lo = 0.0;
  double hi = 1.0;
  constexpr double kSeedHalfWidth = 1e-4;
  const double slo = std::max(0.0, seed - kSeedHalfWidth);
  const double shi = std::min(1.0, seed + kSeedHalfWidth);
  if ((slo == 0.0 || q_at(slo) > 0.0) && (shi == 1.0 || q_at(shi) <= 0.0)) {
    lo = slo;
    hi = shi;
  }

  // Bisect well below the requested tolerance; keep the q > 0 end.
  const double width = 1e-2 * tolerance / dtheta;
  while (hi - lo > width) {
    const double m = 0.5 * (lo + hi);
    if (m <= lo || m >= hi) break;
    (q_at(m) > 0.0 ? lo : hi) = m;
  }

  QZeroEvent ev;
  ev.state = rk4_step(before, lo * dtheta);
  ev.theta = ev.state.theta;
  ev.rho = ev.state.rho;
  return ev;
}

std::optional<QZeroEvent> step_or_event(CharacteristicState& s, double h, double tolerance) {
  const CharacteristicState next = rk4_step(s, h);
  if (!finite_state(next)) {
    throw IntegratorError("non-finite characteristic state", s);
  }
  if (next.q <= 0.0) return refine_q_zero(s, h, tolerance);
  s = next;
  return std::nullopt;
}

Trajectory integrate_characteristic(double rho0, const InitialDataField& field,
                                    const IntegrationOptions& options) {
  if (!(options.dtheta > 0.0)) throw DomainError("integrate_characteristic: dtheta must be positive");
  if (!(options.theta_max >= 0.0)) throw DomainError("integrate_characteristic: negative horizon");
  if (options.cadence < 1) throw DomainError("integrate_characteristic: cadence must be >= 1");

  Trajectory traj;
  CharacteristicState s = initial_state(field, rho0);
  traj.states.push_back(s);

  const auto full_steps = static_cast<long>(std::floor(options.theta_max / options.dtheta + 1e-9));
  const double rest = options.theta_max - static_cast<double>(full_steps) * options.dtheta;
  const long total = full_steps + (rest > 1e-12 * options.dtheta ? 1 : 0);

  for (long k = 1; k <= total; ++k) {
    const double h = k <= full_steps ? options.dtheta : rest;
    if (auto event = step_or_event(s, h, options.event_tolerance)) {
      traj.states.push_back(event->state);
      traj.blowup = std::move(event);
      return traj;
    }
    if (k % options.cadence == 0) traj.states.push_back(s);
  }
  return traj;
}

double period(double c, double tolerance) {
  if (!std::isfinite(c) || c < 2.0) throw DomainError("period: first integral below 2");
  if (c == 2.0) return 2.0 * std::numbers::pi;

  // With P = P+ sin(psi) and c^2 - 4 = 4 P+^2 the integrand reduces to the
  // smooth function sqrt(c + 2 sqrt(1 + P^2)) on [-pi/2, pi/2].
  const double p_plus2 = 0.25 * (c * c - 4.0);
  auto integrand = [&](double psi) {
    const double s = std::sin(psi);
    return std::sqrt(c + 2.0 * std::sqrt(1.0 + p_plus2 * s * s));
  };
  const double half = 0.5 * std::numbers::pi;
  std::vector<double> x;
  std::vector<double> w;
  auto rule = [&](int n) {
    gauss_legendre(n, x, w);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * integrand(half * x[i]);
    return half * sum;
  };
  double prev = rule(8);
  for (int n = 16; n <= 1024; n *= 2) {
    const double cur = rule(n);
    if (std::abs(cur - prev) <= tolerance * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace coldplasma
