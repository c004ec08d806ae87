// Upper bound on the (n,k,n) half-duplex DMT as the minimum of sub-bounds,
// each valid on its own r-interval.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hdrc/core_dmt.hpp"
#include "hdrc/errors.hpp"
#include "hdrc/solvers.hpp"

namespace hdrc {

namespace {

bool within(double r, double lo, double hi) {
  return lo <= hi + kEndpointTol && r >= lo - kEndpointTol && r <= hi + kEndpointTol;
}

}  // namespace

std::vector<UpperBoundTerm> symmetric_upper_terms(int n, int k, double r) {
  if (n < 1 || k < 1) throw ContractError("symmetric_upper_terms: n and k must be positive");
  r = checked_rate(r, n, "dmt_symmetric_upper");
  const int p = std::min(n, k);
  const double nd = n;
  const double pd = p;
  std::vector<UpperBoundTerm> terms;

  terms.push_back({"d_U1", ptp_dmt(n, n + k, r)});
  if (within(r, nd - pd / 2.0, nd)) terms.push_back({"d_U2", ptp_dmt(2 * n, 2 * n, 2.0 * r)});
  if (within(r, 0.0, pd / 2.0)) {
    const double x = pd * r / (pd - r);
    double v = nd * nd;
    for (int l = 1; l <= p; ++l) v += static_cast<double>(n + k - 2 * l + 1) * phi_entry(x, l);
    terms.push_back({"d_U3", v});
  }
  for (int N = 1; N <= p; ++N) {
    if (n - N < 1) continue;
    const double hi = std::min(nd - N / 2.0, nd - static_cast<double>(N * N) / (2 * p - N));
    if (!within(r, N / 2.0, hi)) continue;
    const double shifted = std::clamp(r - N / 2.0, 0.0, static_cast<double>(n - N));
    terms.push_back({"d_U" + std::to_string(3 + N),
                     static_cast<double>(N * N) + ptp_dmt(n - N, n + 2 * k - N, shifted)});
  }
  if (k >= n) {
    for (int N = 1; N <= p; ++N) {
      const double lo = std::max(N * nd / (N + nd), nd - pd);
      if (!within(r, lo, nd - N / 2.0)) continue;
      const double a_N =
          (nd + r) / 2.0 - std::sqrt(std::pow((nd - r) / 2.0, 2) + N * (nd - r));
      double v = static_cast<double>(N * N);
      for (int i = 1; i <= n - N; ++i)
        v += static_cast<double>(2 * n + k - N - 2 * i + 1) * phi_entry(a_N, i);
      terms.push_back({"d_U" + std::to_string(3 + p + N), v});
    }
  }
  return terms;
}

double dmt_symmetric_upper(int n, int k, double r) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : symmetric_upper_terms(n, k, r)) best = std::min(best, t.value);
  return best;
}

}  // namespace hdrc
