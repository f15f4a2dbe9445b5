#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "coldplasma/initial_data.hpp"

namespace coldplasma {

/// State of one Lagrangian particle along its characteristic.
///
/// The integrated variables are (rho, P, E, p_bar, q). The derivative
/// variables come from linearizing the Riccati system for (P_rho, E_rho):
/// P_rho = p_bar / q and E_rho = e_bar / q, where e_bar = q + e0 - 1 holds
/// identically and is therefore reconstructed instead of integrated. The
/// gradient catastrophe on this characteristic is the first zero of q.
struct CharacteristicState {
  double theta = 0.0;
  double rho = 0.0;
  double P = 0.0;
  double E = 0.0;
  double p_bar = 0.0;
  double q = 1.0;
  double e0 = 0.0;    ///< E0'(rho0), constant along the characteristic
  double rho0 = 0.0;  ///< Lagrangian label

  double e_bar() const noexcept { return q + e0 - 1.0; }
};

struct StateDerivative {
  double rho = 0.0;
  double P = 0.0;
  double E = 0.0;
  double p_bar = 0.0;
  double q = 0.0;
};

struct DerivedQuantities {
  double gamma = 1.0;  ///< sqrt(1 + P^2)
  double V = 0.0;      ///< P / gamma
  double K = 1.0;      ///< (1 + P^2)^(-3/2)
  double p = 0.0;      ///< P_rho
  double e = 0.0;      ///< E_rho
  double N = 1.0;      ///< density 1 - E_rho
};

/// Refined zero of q. `state` is the last state with q > 0, within the
/// refinement tolerance of the crossing.
struct QZeroEvent {
  double theta = 0.0;
  double rho = 0.0;
  CharacteristicState state;
};

struct Trajectory {
  std::vector<CharacteristicState> states;
  std::optional<QZeroEvent> blowup;
};

struct IntegrationOptions {
  double dtheta = 1e-3;
  double theta_max = 1.0;
  int cadence = 1;  ///< keep every `cadence`-th step
  double event_tolerance = 1e-10;
};

class IntegratorError : public std::runtime_error {
 public:
  IntegratorError(const std::string& what, const CharacteristicState& last_valid)
      : std::runtime_error(what), last_valid_(last_valid) {}

  const CharacteristicState& last_valid() const noexcept { return last_valid_; }

 private:
  CharacteristicState last_valid_;
};

double lorentz_gamma(double P);

/// First integral 2 sqrt(1 + P^2) + E^2 of the characteristic system.
double conserved_c(double P, double E);

/// Lower bound 8 / C^3 of K along a characteristic with first integral C.
double k_minus(double c);

DerivedQuantities derive(const CharacteristicState& s);

/// (drho, dP, dE, dp_bar, dq) / dtheta = (V, -E, V, -e_bar, p_bar K).
StateDerivative rhs(const CharacteristicState& s) noexcept;

/// One classical fourth-order Runge-Kutta step.
CharacteristicState rk4_step(const CharacteristicState& s, double dtheta) noexcept;

/// (rho0, P0, E0, p0, 1) at theta = 0.
CharacteristicState initial_state(const InitialDataField& field, double rho0);

/// Locates the zero of q inside a step of length dtheta that starts at
/// `before` (q > 0) and ends with q <= 0. A cubic Hermite fit of q seeds a
/// bisection on re-integrated substeps from `before`.
QZeroEvent refine_q_zero(const CharacteristicState& before, double dtheta, double tolerance = 1e-10);

/// Advances s by h, unless q reaches zero within the step: then the refined
/// event is returned and s is left at the start of the step. Throws
/// IntegratorError on a non-finite result.
std::optional<QZeroEvent> step_or_event(CharacteristicState& s, double h, double tolerance = 1e-10);

/// Fixed-step integration from rho0 to theta_max or to the first zero of q.
/// Throws IntegratorError if the state becomes non-finite.
Trajectory integrate_characteristic(double rho0, const InitialDataField& field,
                                    const IntegrationOptions& options);

/// Period of the (P, E) oscillation with first integral c,
/// T = 2 * int_{P-}^{P+} dP / sqrt(c - 2 sqrt(1 + P^2)), P+- = +-sqrt(c^2 - 4) / 2.
/// period(2) = 2 pi.
double period(double c, double tolerance = 1e-13);

}  // namespace coldplasma
