#include "hdrc/core_dmt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hdrc/errors.hpp"

namespace hdrc {

namespace {

void check_shape(const AntennaConfig& c, const ExponentTriple& t, const char* op) {
  if (t.alpha.size() != static_cast<std::size_t>(c.u()) ||
      t.beta.size() != static_cast<std::size_t>(c.p()) ||
      t.delta.size() != static_cast<std::size_t>(c.q())) {
    throw ContractError(std::string(op) + ": exponent vector lengths must be (u,p,q) for " +
                        to_string(c));
  }
}

double deficit(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += positive_part(1.0 - x);
  return s;
}

bool ordered(const std::vector<double>& v, double slack) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < -slack) return false;
    if (i > 0 && v[i] < v[i - 1] - slack) return false;
  }
  return true;
}

}  // namespace

double checked_rate(double r, double hi, const char* op) {
  if (!std::isfinite(r) || r < -kEndpointTol || r > hi + kEndpointTol) {
    throw DomainError(std::string(op) + ": r=" + std::to_string(r) + " outside [0, " +
                      std::to_string(hi) + "]");
  }
  return std::clamp(r, 0.0, hi);
}

double ptp_dmt(int nt, int nr, double r) {
  if (nt < 1 || nr < 1) throw ContractError("ptp_dmt: antenna counts must be positive");
  const int top = std::min(nt, nr);
  r = checked_rate(r, top, "ptp_dmt");
  const int j = static_cast<int>(std::floor(r));
  if (j >= top) return 0.0;
  const double f0 = static_cast<double>((nt - j) * (nr - j));
  const double f1 = static_cast<double>((nt - j - 1) * (nr - j - 1));
  return f0 + (f1 - f0) * (r - j);
}

double fd_dmt(const AntennaConfig& c, double r) {
  r = checked_rate(r, c.max_rate(), "fd_dmt");
  return std::min(ptp_dmt(c.m() + c.k(), c.n(), r), ptp_dmt(c.m(), c.n() + c.k(), r));
}

double objective_F(const AntennaConfig& c, const ExponentTriple& t) {
  check_shape(c, t, "objective_F");
  return detail::objective_impl(
      c, [&](int i) { return t.alpha[i - 1]; }, [&](int j) { return t.beta[j - 1]; },
      [&](int l) { return t.delta[l - 1]; });
}

double exponent_E(const AntennaConfig& c, const ExponentTriple& t) {
  check_shape(c, t, "exponent_E");
  const int m = c.m();
  const int k = c.k();
  const int n = c.n();
  double value = 0.0;
  for (int i = 1; i <= c.u(); ++i) value += static_cast<double>(n + m - 2 * i + 1) * t.alpha[i - 1];
  for (int j = 1; j <= c.p(); ++j) value += static_cast<double>(k + m - 2 * j + 1) * t.beta[j - 1];
  for (int l = 1; l <= c.q(); ++l) value += static_cast<double>(k + n - 2 * l + 1) * t.delta[l - 1];
  value -= 2.0 * k * deficit(t.alpha);
  for (int i = 1; i <= c.u(); ++i) {
    for (int j = 1; j <= c.p() && i + j <= m; ++j)
      value += positive_part(1.0 - t.alpha[i - 1] - t.beta[j - 1]);
    for (int l = 1; l <= c.q() && i + l <= n; ++l)
      value += positive_part(1.0 - t.alpha[i - 1] - t.delta[l - 1]);
  }
  return value;
}

bool support_contains(const AntennaConfig& c, const ExponentTriple& t, double slack) {
  check_shape(c, t, "support_contains");
  if (!ordered(t.alpha, slack) || !ordered(t.beta, slack) || !ordered(t.delta, slack)) return false;
  for (int i = 1; i <= c.u(); ++i) {
    for (int j = 1; j <= c.p(); ++j)
      if (i + j >= c.m() + 1 && t.alpha[i - 1] + t.beta[j - 1] < 1.0 - slack) return false;
    for (int l = 1; l <= c.q(); ++l)
      if (i + l >= c.n() + 1 && t.alpha[i - 1] + t.delta[l - 1] < 1.0 - slack) return false;
  }
  return true;
}

double relay_rate_fraction(double b, double s) noexcept {
  const double sum = b + s;
  return sum > 0.0 ? b * s / sum : 0.0;
}

double rate_exponent(const ExponentTriple& t) {
  return relay_rate_fraction(deficit(t.beta), deficit(t.delta)) + deficit(t.alpha);
}

std::vector<double> phi_map(double level, int len) {
  if (len < 1) throw ContractError("phi_map: len must be positive");
  level = checked_rate(level, len, "phi_map");
  std::vector<double> v(static_cast<std::size_t>(len));
  for (int i = 1; i <= len; ++i) v[i - 1] = phi_entry(level, i);
  return v;
}

Interval region_R(const AntennaConfig& c, double r) {
  r = checked_rate(r, c.max_rate(), "region_R");
  const double m = c.m();
  const double n = c.n();
  const double p = c.p();
  const double q = c.q();
  // a*_n pairs n with p and a*_m pairs m with q: these come from b_m = p, s_m = n - a
  // and b_m = m - a, s_m = q in b_m s_m / (b_m + s_m) >= r - a.
  const double a_n = (n + r) / 2.0 - std::sqrt(std::pow((n - r) / 2.0, 2) + p * (n - r));
  const double a_m = (m + r) / 2.0 - std::sqrt(std::pow((m - r) / 2.0, 2) + q * (m - r));
  double lo = std::max({r - p * q / (p + q), r - std::sqrt((m - r) * (n - r)), a_n, a_m, 0.0});
  const double hi = std::min(c.max_rate(), r);
  if (lo > hi + kEndpointTol) {
    throw InternalError("region_R: empty interval for " + to_string(c) + " at r=" +
                        std::to_string(r));
  }
  lo = std::min(lo, hi);
  return {lo, hi};
}

Interval b_interval(const AntennaConfig& c, double r, double a) {
  const Interval ra = region_R(c, r);
  r = std::clamp(r, 0.0, c.max_rate());
  if (!ra.contains(a, kEndpointTol)) {
    throw DomainError("b_interval: a=" + std::to_string(a) + " outside region [" +
                      std::to_string(ra.lo) + ", " + std::to_string(ra.hi) + "]");
  }
  a = std::clamp(a, ra.lo, ra.hi);
  const double b_m = std::min<double>(c.p(), c.m() - a);
  const double s_m = std::min<double>(c.q(), c.n() - a);
  if (r - a <= 0.0) return {0.0, b_m};
  const double den = s_m - r + a;
  if (den <= 0.0) {
    throw InternalError("b_interval: s_m - r + a <= 0 inside region for " + to_string(c));
  }
  double lo = s_m * (r - a) / den;
  if (lo > b_m + kEndpointTol) {
    throw InternalError("b_interval: empty interval inside region for " + to_string(c));
  }
  return {std::min(lo, b_m), b_m};
}

double relay_split(double r, double a, double b) noexcept {
  const double gap = r - a;
  if (gap <= 0.0) return 0.0;
  const double den = b - gap;
  if (den <= 0.0) return std::numeric_limits<double>::infinity();
  return b * gap / den;
}

double objective_at_levels(const AntennaConfig& c, double a, double b, double s) noexcept {
  return detail::objective_impl(
      c, [a](int i) { return phi_entry(a, i); }, [b](int j) { return phi_entry(b, j); },
      [s](int l) { return phi_entry(s, l); });
}

}  // namespace hdrc
