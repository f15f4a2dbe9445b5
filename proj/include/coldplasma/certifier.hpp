#pragma once

#include <span>
#include <vector>

namespace coldplasma {

/// Left-hand side of the smoothness condition for horizon n * pi:
/// K_-^(n-1) (1 - e0)^2 - e0^2 / K_- - p0^2.
double condn_lhs(double p0, double e0, double k_minus, int n);

/// Per-label data for certification. (p, e) are the current derivatives
/// P_rho, E_rho; c is the conserved first integral of that characteristic.
struct CertSample {
  double rho = 0.0;
  double p = 0.0;
  double e = 0.0;
  double c = 2.0;
};

struct Certificate {
  int n = 1;
  double infimum = 0.0;  ///< min over samples; doubles as the safety margin
  bool holds = false;    ///< infimum > 0, no tolerance band
  double horizon = 0.0;  ///< n * pi
  double argmin_rho = 0.0;
};

/// Evaluates the condition with per-sample K_- = 8 / c^3. Throws UsageError
/// on an empty sample set.
Certificate certify(std::span<const CertSample> samples, int n);

/// Smallest n with n * pi >= T.
int required_n(double horizon);

/// floor(T / pi). Can fall short of T; see required_n.
int theorem_n(double horizon);

/// For K_- = 1: p0^2 + 2 e0 - 1 < 0.
bool nonrelativistic_criterion(double p0, double e0);

/// n ~ (4/3) (1 - 2 e0) / (E0^2 e0) for small data.
double asymptotic_turns(double E0, double e0);

/// Order of the breakup time, 1 / (E0^2 (1 - N0)).
double breakup_order(double E0, double N0);

enum class Limiter { k_plus, k_minus };

struct PhasePoint {
  double q = 0.0;
  double p_bar = 0.0;
};

/// Piece of K p_bar^2 + q^2 - 2 (1 - e0) q = constant.
struct EllipseArc {
  Limiter limiter = Limiter::k_plus;
  double k = 1.0;
  double constant = 0.0;
  PhasePoint start;
  PhasePoint end;
};

/// Outer bound for the phase trajectory of (q, p_bar), glued from ellipse
/// arcs. Gluing points lie on p_bar = 0 or on q = 1 - e0.
struct BoundCurve {
  std::vector<EllipseArc> arcs;
  /// Smaller q-root of each p_bar = 0 crossing, one per half-turn.
  std::vector<double> crossing_roots;
  double min_q = 1.0;
  bool survives = true;
};

/// Builds the bound through `half_turns` half-turns of the phase
/// trajectory, each lasting at least pi. A first arc that heads straight to
/// the p_bar = 0 axis is counted as the first half-turn. The curve survives
/// when every crossing root is positive.
BoundCurve glue_bound(double p0, double e0, double k_minus, int half_turns);

}  // namespace coldplasma
