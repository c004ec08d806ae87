#include <algorithm>
#include <limits>
#include <span>
#include <vector>

#include <omp.h>

#include "hdrc/kernels.hpp"
#include "hdrc/solvers.hpp"

namespace hdrc::kernels {

namespace {

int thread_count(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

// Small fixed buffer: n is capped well below this by the solver.
constexpr int kMaxStaticN = 8;

double tuple_value(int n, double r, const std::vector<int>& t, int levels) {
  double alpha[kMaxStaticN];
  for (int i = 0; i < n; ++i) alpha[i] = static_cast<double>(t[i]) / levels;
  return static_reduced(n, r, alpha);
}

StaticCell select(const std::vector<double>& values) {
  const double best = *std::min_element(values.begin(), values.end());
  if (best == std::numeric_limits<double>::infinity()) return {best, -1};
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] <= best + kTieTol) return {values[i], static_cast<std::int64_t>(i)};
  return {best, -1};
}

}  // namespace

double static_beta_floor(int n, double r, const double* alpha) noexcept {
  double deficit = 0.0;
  for (int i = 0; i < n; ++i) deficit += 1.0 - alpha[i];
  return std::max({0.0, 1.0 - alpha[n - 1], 1.0 - 2.0 * (r - deficit)});
}

double static_reduced(int n, double r, const double* alpha) noexcept {
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (alpha[i] < 0.0 || alpha[i] > 1.0) return inf;
    if (i > 0 && alpha[i] < alpha[i - 1]) return inf;
  }
  // The objective increases with β at rate >= 1, so the smallest feasible β is optimal.
  const double beta = static_beta_floor(n, r, alpha);
  if (beta > 1.0 + kTieTol) return inf;
  return static_n1n_objective(n, std::span<const double>(alpha, static_cast<std::size_t>(n)),
                              std::min(beta, 1.0));
}

StaticCell static_scan_serial(int n, double r, const std::vector<std::vector<int>>& tuples,
                              int levels) {
  std::vector<double> values(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) values[i] = tuple_value(n, r, tuples[i], levels);
  return select(values);
}

StaticCell static_scan_parallel(int n, double r, const std::vector<std::vector<int>>& tuples,
                                int levels, int workers) {
  std::vector<double> values(tuples.size());
  const auto count = static_cast<std::int64_t>(tuples.size());
#pragma omp parallel for schedule(static) num_threads(thread_count(workers))
  for (std::int64_t i = 0; i < count; ++i) values[i] = tuple_value(n, r, tuples[i], levels);
  return select(values);
}

}  // namespace hdrc::kernels
