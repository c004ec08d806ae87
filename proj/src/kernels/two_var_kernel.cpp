#include <algorithm>
#include <limits>
#include <vector>

#include <omp.h>

#include "hdrc/core_dmt.hpp"
#include "hdrc/kernels.hpp"

namespace hdrc::kernels {

namespace {

int thread_count(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

double cell_value(const TwoVarGrid& g, int ia, int it, int& branch) noexcept {
  const double a = grid_a(g, ia);
  const double t = static_cast<double>(it) / g.t_steps;
  branch = 0;
  const double v0 = two_var_value(g.config, g.r, a, t, 0);
  if (!degenerate_row(g.r, a)) return v0;
  const double v1 = two_var_value(g.config, g.r, a, t, 1);
  if (v1 < v0) {
    branch = 1;
    return v1;
  }
  return v0;
}

double row_min(const TwoVarGrid& g, int ia) noexcept {
  double best = std::numeric_limits<double>::infinity();
  int branch = 0;
  for (int it = 0; it <= g.t_steps; ++it) best = std::min(best, cell_value(g, ia, it, branch));
  return best;
}

// First (ia, it) within kTieTol of the global minimum.
TwoVarCell select(const TwoVarGrid& g, const std::vector<double>& rows) {
  const double best = *std::min_element(rows.begin(), rows.end());
  const double cut = best + kTieTol;
  for (int ia = 0; ia <= g.a_steps; ++ia) {
    if (rows[ia] > cut) continue;
    for (int it = 0; it <= g.t_steps; ++it) {
      int branch = 0;
      const double v = cell_value(g, ia, it, branch);
      if (v <= cut) return {v, ia, it, branch};
    }
  }
  return {best, 0, 0, 0};  // unreachable: rows[ia] is attained in its row
}

}  // namespace

double grid_a(const TwoVarGrid& g, int ia) noexcept {
  if (ia >= g.a_steps) return g.a_range.hi;
  return g.a_range.lo + g.a_range.width() * static_cast<double>(ia) / g.a_steps;
}

LevelTriple two_var_levels(const AntennaConfig& c, double r, double a, double t, int branch) noexcept {
  const double b_m = std::min<double>(c.p(), c.m() - a);
  const double s_m = std::min<double>(c.q(), c.n() - a);
  if (degenerate_row(r, a)) {
    if (branch == 0) return {a, t * b_m, 0.0};
    return {a, 0.0, t * s_m};
  }
  const double gap = r - a;
  const double den = s_m - gap;
  const double b_lo = den > 0.0 ? std::min(s_m * gap / den, b_m) : b_m;
  const double b = b_lo + t * (b_m - b_lo);
  const double s = std::min(relay_split(r, a, b), s_m);
  return {a, b, s};
}

double two_var_value(const AntennaConfig& c, double r, double a, double t, int branch) noexcept {
  const LevelTriple lv = two_var_levels(c, r, a, t, branch);
  return objective_at_levels(c, lv.a, lv.b, lv.s);
}

TwoVarCell two_var_scan_serial(const TwoVarGrid& g) {
  std::vector<double> rows(static_cast<std::size_t>(g.a_steps) + 1);
  for (int ia = 0; ia <= g.a_steps; ++ia) rows[ia] = row_min(g, ia);
  return select(g, rows);
}

TwoVarCell two_var_scan_parallel(const TwoVarGrid& g, int workers) {
  std::vector<double> rows(static_cast<std::size_t>(g.a_steps) + 1);
#pragma omp parallel for schedule(static) num_threads(thread_count(workers))
  for (int ia = 0; ia <= g.a_steps; ++ia) rows[ia] = row_min(g, ia);
  return select(g, rows);
}

}  // namespace hdrc::kernels
