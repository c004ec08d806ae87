#pragma once

// Exponent algebra and DMT primitives shared by the solvers and the
// Monte Carlo layer. Every function here is pure.

#include <span>
#include <vector>

#include "hdrc/types.hpp"

namespace hdrc {

// Absolute tolerance used when comparing against interval endpoints.
inline constexpr double kEndpointTol = 1e-9;

inline double positive_part(double x) noexcept { return x > 0.0 ? x : 0.0; }

// Validates 0 <= r <= hi up to kEndpointTol and returns r clamped into range.
double checked_rate(double r, double hi, const char* op);

// DMT of the nt x nr point-to-point MIMO channel: linear interpolation of the
// corners (j, (nt-j)(nr-j)), j = 0..min(nt,nr).
double ptp_dmt(int nt, int nr, double r);

// Full-duplex relay channel DMT, min{d_(m+k),n(r), d_m,(n+k)(r)}.
double fd_dmt(const AntennaConfig& config, double r);

// Objective of the exponent minimization over the unit cube.
double objective_F(const AntennaConfig& config, const ExponentTriple& t);

// Joint pdf exponent of the ordered eigenvalue exponents (valid for entries >= 0,
// not capped at 1).
double exponent_E(const AntennaConfig& config, const ExponentTriple& t);

// Membership in the support set of the joint exponent pdf. `slack` relaxes every
// inequality by the given amount (0 gives the exact set).
bool support_contains(const AntennaConfig& config, const ExponentTriple& t, double slack = 0.0);

// b*s/(b+s), with 0 when both are zero.
double relay_rate_fraction(double b, double s) noexcept;

// Asymptotic normalized cut-set rate r*(α, β, δ).
double rate_exponent(const ExponentTriple& t);

// i-th entry (1-based) of the level-to-vector map: (1 - (level - i + 1)^+)^+.
inline double phi_entry(double level, int i) noexcept {
  return positive_part(1.0 - positive_part(level - static_cast<double>(i) + 1.0));
}

// Exponent vector of length `len` whose aggregate Σ(1 - v_i) equals `level`
// and minimizes the objective among all such ordered vectors.
std::vector<double> phi_map(double level, int len);

// Feasible interval of a for a given r.
Interval region_R(const AntennaConfig& config, double r);

// Interval of b for a fixed a in region_R. At a == r the interval is [0, b_m].
Interval b_interval(const AntennaConfig& config, double r, double a);

// s on the active rate constraint a + b s/(b+s) = r, i.e. b(r-a)/(b-r+a).
// Returns 0 when r == a.
double relay_split(double r, double a, double b) noexcept;

// F(φ_α(a), φ_β(b), φ_δ(s)) without materializing the vectors. Bit-identical
// to objective_F on the phi_map vectors.
double objective_at_levels(const AntennaConfig& config, double a, double b, double s) noexcept;

namespace detail {

// Shared evaluation order for objective_F and objective_at_levels. The
// accessors take 1-based indices.
template <class Alpha, class Beta, class Delta>
double objective_impl(const AntennaConfig& c, Alpha alpha, Beta beta, Delta delta) noexcept {
  const int m = c.m();
  const int k = c.k();
  const int n = c.n();
  const int u = c.u();
  const int p = c.p();
  const int q = c.q();
  double value = 0.0;
  for (int i = 1; i <= u; ++i) value += static_cast<double>(n + m + 2 * k - 2 * i + 1) * alpha(i);
  for (int j = 1; j <= p; ++j) value += static_cast<double>(k + m - 2 * j + 1) * beta(j);
  for (int l = 1; l <= q; ++l) value += static_cast<double>(k + n - 2 * l + 1) * delta(l);
  value -= static_cast<double>(2 * k * u);
  for (int i = 1; i <= u; ++i) {
    const double ai = alpha(i);
    for (int j = 1; j <= p && i + j <= m; ++j) value += positive_part(1.0 - ai - beta(j));
    for (int l = 1; l <= q && i + l <= n; ++l) value += positive_part(1.0 - ai - delta(l));
  }
  return value;
}

}  // namespace detail

}  // namespace hdrc
