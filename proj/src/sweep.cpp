#include "coldplasma/sweep.hpp"

#include <climits>
#include <cmath>
#include <cstddef>
#include <exception>

#include "coldplasma/certifier.hpp"
#include "coldplasma/errors.hpp"

namespace coldplasma {

namespace {

Extremum lesser(const Extremum& a, const Extremum& b) {
  if (!b.valid) return a;
  if (!a.valid) return b;
  if (b.value < a.value || (b.value == a.value && b.index < a.index)) return b;
  return a;
}

Extremum greater(const Extremum& a, const Extremum& b) {
  if (!b.valid) return a;
  if (!a.valid) return b;
  if (b.value > a.value || (b.value == a.value && b.index < a.index)) return b;
  return a;
}

#pragma omp declare reduction(minloc : Extremum : omp_out = lesser(omp_out, omp_in)) \
    initializer(omp_priv = Extremum{})
#pragma omp declare reduction(maxloc : Extremum : omp_out = greater(omp_out, omp_in)) \
    initializer(omp_priv = Extremum{})

// Keeps the failure of the lowest index so parallel runs report the same
// error as the serial path.
struct FirstError {
  std::exception_ptr error;
  std::ptrdiff_t index = -1;

  void record(std::ptrdiff_t i) {
#pragma omp critical(coldplasma_first_error)
    {
      if (index < 0 || i < index) {
        index = i;
        error = std::current_exception();
      }
    }
  }
  void rethrow() const {
    if (error) std::rethrow_exception(error);
  }
};

double phi_value(const CharacteristicState& s, double k, int n) {
  const DerivedQuantities d = derive(s);
  return condn_lhs(d.p, d.e, k, n);
}

std::optional<QZeroEvent> crossing_of(const InitialDataField& field, double label, double dtheta,
                                      double theta_cap) {
  IntegrationOptions opts;
  opts.dtheta = dtheta;
  opts.theta_max = theta_cap;
  opts.cadence = INT_MAX;
  return integrate_characteristic(label, field, opts).blowup;
}

}  // namespace

Ensemble make_ensemble(const InitialDataField& field, std::span<const double> labels) {
  Ensemble ens;
  ens.states.reserve(labels.size());
  ens.k_minus.reserve(labels.size());
  for (double rho0 : labels) {
    const CharacteristicState s = initial_state(field, rho0);
    ens.states.push_back(s);
    ens.k_minus.push_back(k_minus(conserved_c(s.P, s.E)));
  }
  ens.events.assign(labels.size(), std::nullopt);
  return ens;
}

std::size_t advance(Ensemble& ens, double dtheta, Execution exec) {
  const auto n = static_cast<std::ptrdiff_t>(ens.size());
  std::size_t fresh = 0;
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      if (!ens.alive(u)) continue;
      if (auto ev = step_or_event(ens.states[u], dtheta)) {
        ens.events[u] = std::move(ev);
        ++fresh;
      }
    }
  } else {
    FirstError failure;
#pragma omp parallel for schedule(static) reduction(+ : fresh)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      if (!ens.alive(u)) continue;
      try {
        if (auto ev = step_or_event(ens.states[u], dtheta)) {
          ens.events[u] = std::move(ev);
          ++fresh;
        }
      } catch (...) {
        failure.record(i);
      }
    }
    failure.rethrow();
  }
  ens.theta += dtheta;
  return fresh;
}

std::vector<std::optional<QZeroEvent>> first_crossings(const InitialDataField& field,
                                                       std::span<const double> labels,
                                                       double dtheta, double theta_cap,
                                                       Execution exec) {
  const auto n = static_cast<std::ptrdiff_t>(labels.size());
  std::vector<std::optional<QZeroEvent>> out(labels.size());
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      out[u] = crossing_of(field, labels[u], dtheta, theta_cap);
    }
    return out;
  }
  FirstError failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    try {
      out[u] = crossing_of(field, labels[u], dtheta, theta_cap);
    } catch (...) {
      failure.record(i);
    }
  }
  failure.rethrow();
  return out;
}

Extremum phi_min(const Ensemble& ens, int n, Execution exec) {
  if (n < 1) throw UsageError("phi_min: n must be >= 1");
  const auto size = static_cast<std::ptrdiff_t>(ens.size());
  Extremum best;
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < size; ++i) {
      const auto u = static_cast<std::size_t>(i);
      if (!ens.alive(u)) continue;
      best = lesser(best, {phi_value(ens.states[u], ens.k_minus[u], n), u, true});
    }
    return best;
  }
#pragma omp parallel for schedule(static) reduction(minloc : best)
  for (std::ptrdiff_t i = 0; i < size; ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (!ens.alive(u)) continue;
    best = lesser(best, {phi_value(ens.states[u], ens.k_minus[u], n), u, true});
  }
  return best;
}

Extremum density_max(const Ensemble& ens, Execution exec) {
  const auto size = static_cast<std::ptrdiff_t>(ens.size());
  Extremum best;
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < size; ++i) {
      const auto u = static_cast<std::size_t>(i);
      if (!ens.alive(u)) continue;
      best = greater(best, {derive(ens.states[u]).N, u, true});
    }
    return best;
  }
#pragma omp parallel for schedule(static) reduction(maxloc : best)
  for (std::ptrdiff_t i = 0; i < size; ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (!ens.alive(u)) continue;
    best = greater(best, {derive(ens.states[u]).N, u, true});
  }
  return best;
}

std::size_t density_violations(const Ensemble& ens, Execution exec) {
  const auto size = static_cast<std::ptrdiff_t>(ens.size());
  std::size_t count = 0;
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < size; ++i) {
      const auto u = static_cast<std::size_t>(i);
      if (ens.alive(u) && !(derive(ens.states[u]).N > 0.0)) ++count;
    }
    return count;
  }
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (std::ptrdiff_t i = 0; i < size; ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (ens.alive(u) && !(derive(ens.states[u]).N > 0.0)) ++count;
  }
  return count;
}

}  // namespace coldplasma
