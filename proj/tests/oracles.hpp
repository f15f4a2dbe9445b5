#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's integrator or quadrature.

#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

// Nonlinear extended system on one characteristic, state (rho, P, E, p, e):
//   rho' = V, P' = -E, E' = V, p' = -e - K p^2, e' = K p (1 - e),
// with V = P / sqrt(1 + P^2) and K = dV/dP.
using Nonlinear = std::array<double, 5>;

inline Nonlinear nonlinear_rhs(const Nonlinear& y) {
  const double g2 = 1.0 + y[1] * y[1];
  const double V = y[1] / std::sqrt(g2);
  const double K = 1.0 / (g2 * std::sqrt(g2));
  return {V, -y[2], V, -y[4] - K * y[3] * y[3], K * y[3] * (1.0 - y[4])};
}

template <class State, class Rhs>
State rk4(const State& y, double h, Rhs f) {
  auto axpy = [](const State& a, double s, const State& b) {
    State r{};
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  const State k1 = f(y);
  const State k2 = f(axpy(y, h / 2, k1));
  const State k3 = f(axpy(y, h / 2, k2));
  const State k4 = f(axpy(y, h, k3));
  State out{};
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

// Linear system in (P, E, p_bar, q) with e_bar integrated too, (P, E, p_bar, e_bar, q):
//   P' = -E, E' = V, p_bar' = -e_bar, e_bar' = p_bar K, q' = p_bar K.
using Linear = std::array<double, 5>;

inline Linear linear_rhs(const Linear& y) {
  const double g2 = 1.0 + y[0] * y[0];
  const double K = 1.0 / (g2 * std::sqrt(g2));
  return {-y[1], y[0] / std::sqrt(g2), -y[3], y[2] * K, y[2] * K};
}

// 2 * int_{P-}^{P+} dP / sqrt(C - 2 sqrt(1 + P^2)) by tanh-sinh directly on
// the singular integrand. The complement argument keeps the radicand exact
// near the endpoints.
inline double period_bruteforce(double c) {
  const double pp = std::sqrt(c * c - 4.0) / 2.0;
  const double gp = std::sqrt(1.0 + pp * pp);
  auto f = [&](double P, double Pc) {
    const double dist = std::abs(Pc);  // P+ - |P|
    const double gap = dist * (2.0 * pp - dist);
    const double radicand = 2.0 * gap / (gp + std::sqrt(1.0 + P * P));
    return 1.0 / std::sqrt(radicand);
  };
  boost::math::quadrature::tanh_sinh<double> integrator(15);
  return 2.0 * integrator.integrate(f, -pp, pp, 1e-15);
}

}  // namespace oracle
