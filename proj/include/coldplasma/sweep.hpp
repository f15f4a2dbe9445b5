#pragma once

// Data-parallel kernels over many characteristics. Every kernel has a
// serial reference path and an OpenMP path; both perform the same
// per-characteristic arithmetic, so results are bit-identical.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "coldplasma/dynamics.hpp"
#include "coldplasma/initial_data.hpp"

namespace coldplasma {

enum class Execution { serial, parallel };

/// All characteristics advanced in lockstep.
struct Ensemble {
  std::vector<CharacteristicState> states;
  std::vector<double> k_minus;  ///< 8 / C^3, fixed per characteristic
  std::vector<std::optional<QZeroEvent>> events;
  double theta = 0.0;

  std::size_t size() const noexcept { return states.size(); }
  bool alive(std::size_t i) const noexcept { return !events[i].has_value(); }
};

Ensemble make_ensemble(const InitialDataField& field, std::span<const double> labels);

/// Advances every live characteristic by dtheta. Characteristics whose q
/// changes sign get a refined event and stop. Returns the number of new
/// events.
std::size_t advance(Ensemble& ensemble, double dtheta, Execution exec);

/// Integrates each label independently to its first q zero or theta_cap.
std::vector<std::optional<QZeroEvent>> first_crossings(const InitialDataField& field,
                                                       std::span<const double> labels,
                                                       double dtheta, double theta_cap,
                                                       Execution exec);

/// Extremum with its characteristic index. Ties go to the lower index, so
/// the reduction does not depend on the merge order.
struct Extremum {
  double value = 0.0;
  std::size_t index = 0;
  bool valid = false;
};

/// min over live characteristics of K_-^(n-1) (1 - e)^2 - e^2 / K_- - p^2.
Extremum phi_min(const Ensemble& ensemble, int n, Execution exec);

/// max over live characteristics of N = 1 - e.
Extremum density_max(const Ensemble& ensemble, Execution exec);

/// Number of live characteristics with N <= 0.
std::size_t density_violations(const Ensemble& ensemble, Execution exec);

}  // namespace coldplasma
