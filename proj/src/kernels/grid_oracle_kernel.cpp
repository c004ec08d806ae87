#include <algorithm>
#include <limits>
#include <vector>

#include <omp.h>

#include "hdrc/core_dmt.hpp"
#include "hdrc/kernels.hpp"

namespace hdrc::kernels {

namespace {

int thread_count(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

double deficit(const std::vector<int>& idx, int levels) {
  double s = 0.0;
  for (int j : idx) s += 1.0 - static_cast<double>(j) / levels;
  return s;
}

struct Prepared {
  std::vector<double> def_a, def_b, def_d;
};

Prepared prepare(const OracleGrid& g) {
  Prepared p;
  for (const auto& t : g.alpha) p.def_a.push_back(deficit(t, g.levels));
  for (const auto& t : g.beta) p.def_b.push_back(deficit(t, g.levels));
  for (const auto& t : g.delta) p.def_d.push_back(deficit(t, g.levels));
  return p;
}

// Support constraints on level indices: x_i + y_j >= 1 <=> ix + iy >= levels.
bool supported(const std::vector<int>& x, const std::vector<int>& y, int dim, int levels) {
  const int len_x = static_cast<int>(x.size());
  const int len_y = static_cast<int>(y.size());
  for (int i = 1; i <= len_x; ++i)
    for (int j = std::max(1, dim + 1 - i); j <= len_y; ++j)
      if (x[i - 1] + y[j - 1] < levels) return false;
  return true;
}

double value_at(const OracleGrid& g, const Prepared& p, std::int64_t ia, std::int64_t ib,
                std::int64_t id) {
  const auto& ta = g.alpha[ia];
  const auto& tb = g.beta[ib];
  const auto& td = g.delta[id];
  const double rate = relay_rate_fraction(p.def_b[ib], p.def_d[id]) + p.def_a[ia];
  if (rate > g.r + kTieTol) return std::numeric_limits<double>::infinity();
  if (!supported(ta, tb, g.config.m(), g.levels) || !supported(ta, td, g.config.n(), g.levels))
    return std::numeric_limits<double>::infinity();
  const double L = g.levels;
  return detail::objective_impl(
      g.config, [&](int i) { return ta[i - 1] / L; }, [&](int j) { return tb[j - 1] / L; },
      [&](int l) { return td[l - 1] / L; });
}

double row_min(const OracleGrid& g, const Prepared& p, std::int64_t ia) {
  double best = std::numeric_limits<double>::infinity();
  const auto nb = static_cast<std::int64_t>(g.beta.size());
  const auto nd = static_cast<std::int64_t>(g.delta.size());
  for (std::int64_t ib = 0; ib < nb; ++ib)
    for (std::int64_t id = 0; id < nd; ++id) best = std::min(best, value_at(g, p, ia, ib, id));
  return best;
}

OracleCell select(const OracleGrid& g, const Prepared& p, const std::vector<double>& rows) {
  const double best = *std::min_element(rows.begin(), rows.end());
  const double inf = std::numeric_limits<double>::infinity();
  if (best == inf) return {inf, -1, -1, -1};
  const double cut = best + kTieTol;
  for (std::size_t ia = 0; ia < rows.size(); ++ia) {
    if (rows[ia] > cut) continue;
    for (std::size_t ib = 0; ib < g.beta.size(); ++ib)
      for (std::size_t id = 0; id < g.delta.size(); ++id) {
        const double v = value_at(g, p, ia, ib, id);
        if (v <= cut) return {v, static_cast<std::int64_t>(ia), static_cast<std::int64_t>(ib),
                              static_cast<std::int64_t>(id)};
      }
  }
  return {best, -1, -1, -1};
}

}  // namespace

std::vector<std::vector<int>> sorted_tuples(int len, int levels) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(len), 0);
  while (true) {
    out.push_back(cur);
    int pos = len - 1;
    while (pos >= 0 && cur[pos] == levels) --pos;
    if (pos < 0) break;
    const int v = cur[pos] + 1;
    for (int i = pos; i < len; ++i) cur[i] = v;
  }
  return out;
}

OracleCell oracle_scan_serial(const OracleGrid& g) {
  const Prepared p = prepare(g);
  std::vector<double> rows(g.alpha.size());
  for (std::size_t ia = 0; ia < rows.size(); ++ia) rows[ia] = row_min(g, p, ia);
  return select(g, p, rows);
}

OracleCell oracle_scan_parallel(const OracleGrid& g, int workers) {
  const Prepared p = prepare(g);
  const auto na = static_cast<std::int64_t>(g.alpha.size());
  std::vector<double> rows(g.alpha.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count(workers))
  for (std::int64_t ia = 0; ia < na; ++ia) rows[ia] = row_min(g, p, ia);
  return select(g, p, rows);
}

}  // namespace hdrc::kernels
