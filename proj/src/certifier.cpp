#include "coldplasma/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "coldplasma/dynamics.hpp"
#include "coldplasma/errors.hpp"

namespace coldplasma {

double condn_lhs(double p0, double e0, double k_minus, int n) {
  if (!(k_minus > 0.0) || k_minus > 1.0) {
    throw DomainError("condn_lhs: K_- must lie in (0, 1]");
  }
  if (n < 1) throw DomainError("condn_lhs: n must be >= 1");
  const double one_minus_e = 1.0 - e0;
  return std::pow(k_minus, n - 1) * one_minus_e * one_minus_e - e0 * e0 / k_minus - p0 * p0;
}

Certificate certify(std::span<const CertSample> samples, int n) {
  if (samples.empty()) throw UsageError("certify: empty sample set");
  if (n < 1) throw UsageError("certify: n must be >= 1");
  Certificate cert;
  cert.n = n;
  cert.horizon = n * std::numbers::pi;
  cert.infimum = std::numeric_limits<double>::infinity();
  for (const CertSample& s : samples) {
    const double value = condn_lhs(s.p, s.e, k_minus(s.c), n);
    if (value < cert.infimum) {
      cert.infimum = value;
      cert.argmin_rho = s.rho;
    }
  }
  cert.holds = cert.infimum > 0.0;
  return cert;
}

int required_n(double horizon) {
  if (!(horizon > 0.0)) throw DomainError("required_n: horizon must be positive");
  return std::max(1, static_cast<int>(std::ceil(horizon / std::numbers::pi)));
}

int theorem_n(double horizon) {
  if (!(horizon > 0.0)) throw DomainError("theorem_n: horizon must be positive");
  return static_cast<int>(std::floor(horizon / std::numbers::pi));
}

bool nonrelativistic_criterion(double p0, double e0) { return p0 * p0 + 2.0 * e0 - 1.0 < 0.0; }

double asymptotic_turns(double E0, double e0) {
  if (!std::isfinite(E0) || !std::isfinite(e0) || E0 == 0.0 || e0 <= 0.0) {
    throw DomainError("asymptotic_turns: needs E0 != 0 and e0 > 0");
  }
  return (4.0 / 3.0) * (1.0 - 2.0 * e0) / (E0 * E0 * e0);
}

double breakup_order(double E0, double N0) {
  if (!std::isfinite(E0) || !std::isfinite(N0) || E0 == 0.0 || N0 == 1.0) {
    throw DomainError("breakup_order: needs E0 != 0 and N0 != 1");
  }
  return 1.0 / (E0 * E0 * (1.0 - N0));
}

BoundCurve glue_bound(double p0, double e0, double k_minus, int half_turns) {
  if (!(k_minus > 0.0) || k_minus > 1.0) {
    throw DomainError("glue_bound: K_- must lie in (0, 1]");
  }
  if (half_turns < 1) throw DomainError("glue_bound: need at least one half-turn");

  // Work in u = q - (1 - e0), v = p_bar: the centre of every ellipse is the origin.
  const double qc = 1.0 - e0;
  BoundCurve curve;
  double u = e0;
  double v = p0;
  if (u == 0.0 && v == 0.0) return curve;

  auto push_arc = [&](Limiter lim, double k, double u1, double v1) {
    EllipseArc arc;
    arc.limiter = lim;
    arc.k = k;
    arc.constant = k * v * v + u * u - qc * qc;
    arc.start = {qc + u, v};
    arc.end = {qc + u1, v1};
    curve.arcs.push_back(arc);
    curve.min_q = std::min(curve.min_q, arc.end.q);
    u = u1;
    v = v1;
  };
  // L+ arc from the current point down to the q axis.
  auto to_axis = [&] {
    const double r = std::hypot(u, v);
    const double u1 = (u != 0.0 ? std::copysign(r, u) : std::copysign(r, v));
    push_arc(Limiter::k_plus, 1.0, u1, 0.0);
    curve.crossing_roots.push_back(qc - r);
  };

  int done = 0;
  if (u * v > 0.0) {
    to_axis();
    ++done;
  }
  const double root_k = std::sqrt(k_minus);
  while (done < half_turns) {
    if (v == 0.0) {
      push_arc(Limiter::k_minus, k_minus, 0.0, -std::copysign(std::abs(u) / root_k, u));
    } else if (u != 0.0) {
      const double h = k_minus * v * v + u * u;
      push_arc(Limiter::k_minus, k_minus, 0.0, std::copysign(std::sqrt(h / k_minus), v));
    }
    to_axis();
    ++done;
  }
  curve.survives = std::all_of(curve.crossing_roots.begin(), curve.crossing_roots.end(),
                               [](double r) { return r > 0.0; });
  return curve;
}

}  // namespace coldplasma
