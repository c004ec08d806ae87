#include "hdrc/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hdrc/core_dmt.hpp"
#include "hdrc/errors.hpp"
#include "hdrc/kernels.hpp"

namespace hdrc {

namespace {

constexpr double kGolden = 0.6180339887498949;

int steps_for(double width, double step) {
  if (width <= 0.0) return 0;
  return std::max(1, static_cast<int>(std::ceil(width / step - 1e-9)));
}

// Golden-section search of f on [lo, hi]. Returns the best probe, endpoints included.
template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, int iterations, std::int64_t& evals) {
  double best_x = lo;
  double best_v = f(lo);
  const double v_hi = f(hi);
  evals += 2;
  if (v_hi < best_v) {
    best_x = hi;
    best_v = v_hi;
  }
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  evals += 2;
  for (int it = 0; it < iterations; ++it) {
    if (f1 < best_v) {
      best_v = f1;
      best_x = x1;
    }
    if (f2 < best_v) {
      best_v = f2;
      best_x = x2;
    }
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = f(x2);
    }
    ++evals;
  }
  if (f1 < best_v) {
    best_v = f1;
    best_x = x1;
  }
  if (f2 < best_v) {
    best_v = f2;
    best_x = x2;
  }
  return {best_x, best_v};
}

}  // namespace

std::string_view to_string(SolveMethod m) noexcept {
  switch (m) {
    case SolveMethod::two_var: return "two-var";
    case SolveMethod::grid_oracle: return "grid-oracle";
    case SolveMethod::closed_form: return "closed-form";
    case SolveMethod::static_search: return "static-search";
  }
  return "unknown";
}

SolveResult solve_two_var(const AntennaConfig& c, double r, const TwoVarOptions& opt) {
  if (!(opt.grid_step > 0.0 && opt.grid_step <= 0.5))
    throw ContractError("solve_two_var: grid_step must lie in (0, 0.5]");
  r = checked_rate(r, c.max_rate(), "solve_two_var");
  const Interval region = region_R(c, r);

  kernels::TwoVarGrid grid{c, r, region, steps_for(region.width(), opt.grid_step),
                           steps_for(1.0, opt.grid_step)};
  const kernels::TwoVarCell cell = opt.exec.parallel
                                       ? kernels::two_var_scan_parallel(grid, opt.exec.workers)
                                       : kernels::two_var_scan_serial(grid);
  std::int64_t evals = static_cast<std::int64_t>(grid.a_steps + 1) * (grid.t_steps + 1);

  double a = kernels::grid_a(grid, cell.ia);
  double t = static_cast<double>(cell.it) / grid.t_steps;
  double v = cell.value;
  int branch = cell.branch;

  // Per-axis refinement around the grid minimizer; moves are accepted only if they improve.
  const double h_a = grid.a_steps > 0 ? region.width() / grid.a_steps : 0.0;
  const double h_t = 1.0 / grid.t_steps;
  auto refine_t = [&] {
    auto f = [&](double x) { return kernels::two_var_value(c, r, a, x, branch); };
    const auto [x, fx] = golden_min(f, std::max(0.0, t - h_t), std::min(1.0, t + h_t),
                                    opt.refine_iterations, evals);
    if (fx < v) {
      v = fx;
      t = x;
      return true;
    }
    return false;
  };
  auto refine_a = [&] {
    if (h_a <= 0.0) return false;
    auto f = [&](double x) { return kernels::two_var_value(c, r, x, t, 0); };
    const auto [x, fx] = golden_min(f, std::max(region.lo, a - h_a), std::min(region.hi, a + h_a),
                                    opt.refine_iterations, evals);
    if (fx < v) {
      v = fx;
      a = x;
      return true;
    }
    return false;
  };
  if (opt.refine_iterations > 0) {
    if (kernels::degenerate_row(r, a) && branch == 1) {
      refine_t();
    } else {
      branch = 0;
      for (int round = 0; round < 4; ++round) {
        const bool moved_a = refine_a();
        const bool moved_t = refine_t();
        if (!moved_a && !moved_t) break;
      }
    }
  }

  SolveResult res;
  res.d = (v < 0.0 && v > -kEndpointTol) ? 0.0 : v;
  res.argmin = kernels::two_var_levels(c, r, a, t, branch);
  res.method = SolveMethod::two_var;
  res.evaluations = evals;
  return res;
}

SolveResult solve_general_grid(const AntennaConfig& c, double r, double step,
                               const GridOracleOptions& opt) {
  if (!(step > 0.0 && step <= 0.25))
    throw ContractError("solve_general_grid: step must lie in (0, 0.25]");
  r = checked_rate(r, c.max_rate(), "solve_general_grid");
  const int dims = c.u() + c.p() + c.q();
  if (dims > 6) {
    throw SolverRefusal("grid oracle refuses " + to_string(c) + ": u+p+q = " +
                        std::to_string(dims) + " exceeds 6");
  }
  const int levels = static_cast<int>(std::ceil(1.0 / step - 1e-9));
  kernels::OracleGrid grid{c, r, levels, kernels::sorted_tuples(c.u(), levels),
                           kernels::sorted_tuples(c.p(), levels),
                           kernels::sorted_tuples(c.q(), levels)};
  const double points = static_cast<double>(grid.alpha.size()) *
                        static_cast<double>(grid.beta.size()) *
                        static_cast<double>(grid.delta.size());
  if (points > opt.max_points) {
    throw SolverRefusal("grid oracle refuses " + to_string(c) + ": " + std::to_string(points) +
                        " grid points exceed the cap");
  }
  const kernels::OracleCell cell = opt.exec.parallel
                                       ? kernels::oracle_scan_parallel(grid, opt.exec.workers)
                                       : kernels::oracle_scan_serial(grid);
  if (cell.ia < 0) throw InternalError("grid oracle found no feasible point for " + to_string(c));

  auto to_values = [levels](const std::vector<int>& idx) {
    std::vector<double> v;
    for (int j : idx) v.push_back(static_cast<double>(j) / levels);
    return v;
  };
  SolveResult res;
  res.d = cell.value;
  res.argmin = ExponentTriple{to_values(grid.alpha[cell.ia]), to_values(grid.beta[cell.ib]),
                              to_values(grid.delta[cell.id])};
  res.method = SolveMethod::grid_oracle;
  res.evaluations = static_cast<std::int64_t>(points);
  return res;
}

double dmt_1k1(int k, double r) {
  if (k < 1) throw ContractError("dmt_1k1: k must be positive");
  r = checked_rate(r, 1.0, "dmt_1k1");
  if (r <= 1.0 / (k + 1)) return (k + 1) * (1.0 - r);
  if (r <= 0.5) return 1.0 + k * (1.0 - 2.0 * r) / (1.0 - r);
  return 2.0 * (1.0 - r);
}

double dmt_n1n(int n, double r) {
  if (n < 1) throw ContractError("dmt_n1n: n must be positive");
  return ptp_dmt(n + 1, n, r);
}

double dmt_ddf_1k1(int k, double r) {
  if (k < 1) throw ContractError("dmt_ddf_1k1: k must be positive");
  r = checked_rate(r, 1.0, "dmt_ddf_1k1");
  if (r <= 1.0 / (k + 1)) return (k + 1) * (1.0 - r);
  if (r <= 0.5) return 1.0 + k * (1.0 - 2.0 * r) / (1.0 - r);
  return (1.0 - r) / r;
}

double dmt_static_1k1(int k, double r) {
  if (k < 1) throw ContractError("dmt_static_1k1: k must be positive");
  if (!std::isfinite(r) || r < 0.5 - kEndpointTol || r > 1.0 + kEndpointTol) {
    throw DomainError("dmt_static_1k1: r=" + std::to_string(r) +
                      " is outside the stated domain [1/2, 1]");
  }
  return 2.0 * (1.0 - std::clamp(r, 0.5, 1.0));
}

void check_variant_applicable(const AntennaConfig& c, Variant v) {
  auto need = [&](bool ok, const char* what) {
    if (!ok) {
      throw ConfigError(std::string("variant ") + std::string(to_string(v)) + " requires " + what +
                        ", got " + to_string(c));
    }
  };
  switch (v) {
    case Variant::hd_dynamic:
    case Variant::fd:
    case Variant::ptp: return;
    case Variant::hd_static_n1n:
    case Variant::closed_n1n: need(c.m() == c.n() && c.k() == 1, "(n,1,n)"); return;
    case Variant::closed_1k1:
    case Variant::ddf_1k1:
    case Variant::static_1k1: need(c.m() == 1 && c.n() == 1, "(1,k,1)"); return;
    case Variant::symmetric_upper: need(c.m() == c.n(), "m == n"); return;
  }
}

Interval variant_domain(const AntennaConfig& c, Variant v) {
  if (v == Variant::static_1k1) return {0.5, 1.0};
  return {0.0, c.max_rate()};
}

double evaluate_variant(const AntennaConfig& c, Variant v, double r, const TwoVarOptions& opt) {
  check_variant_applicable(c, v);
  switch (v) {
    case Variant::hd_dynamic: return solve_two_var(c, r, opt).d;
    case Variant::fd: return fd_dmt(c, r);
    case Variant::ptp: return ptp_dmt(c.m(), c.n(), r);
    case Variant::hd_static_n1n: {
      StaticOptions so;
      so.exec = opt.exec;
      return solve_static_n1n(c.n(), r, so).d;
    }
    case Variant::closed_n1n: return dmt_n1n(c.n(), r);
    case Variant::closed_1k1: return dmt_1k1(c.k(), r);
    case Variant::ddf_1k1: return dmt_ddf_1k1(c.k(), r);
    case Variant::static_1k1: return dmt_static_1k1(c.k(), r);
    case Variant::symmetric_upper: return dmt_symmetric_upper(c.n(), c.k(), r);
  }
  throw InternalError("evaluate_variant: unhandled variant");
}

DmtCurve dmt_curve(const AntennaConfig& c, Variant v, std::span<const double> r_grid,
                   const TwoVarOptions& opt) {
  check_variant_applicable(c, v);
  if (r_grid.empty()) throw ConfigError("dmt_curve: empty r grid");
  const Interval dom = variant_domain(c, v);
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!dom.contains(r_grid[i], kEndpointTol)) {
      throw ConfigError("dmt_curve: r=" + std::to_string(r_grid[i]) + " outside [" +
                        std::to_string(dom.lo) + ", " + std::to_string(dom.hi) + "] for " +
                        std::string(to_string(v)));
    }
    if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
      throw ConfigError("dmt_curve: r grid must be strictly increasing");
  }
  DmtCurve curve{c, v, {}};
  curve.points.reserve(r_grid.size());
  for (double r : r_grid) curve.points.push_back({r, evaluate_variant(c, v, r, opt)});
  return curve;
}

}  // namespace hdrc
