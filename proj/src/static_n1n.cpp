// Static (n,1,n) relaying: the relay listens for a fixed half of the block.

#include <cmath>
#include <string>
#include <vector>

#include "hdrc/core_dmt.hpp"
#include "hdrc/errors.hpp"
#include "hdrc/kernels.hpp"
#include "hdrc/solvers.hpp"

namespace hdrc {

double static_n1n_objective(int n, std::span<const double> alpha, double beta) {
  if (alpha.size() != static_cast<std::size_t>(n))
    throw ContractError("static_n1n_objective: alpha must have length n");
  double v = n * beta - n;
  for (int i = 1; i <= n; ++i) v += static_cast<double>(2 * n - 2 * i + 2) * alpha[i - 1];
  for (int i = 1; i <= n - 1; ++i) v += positive_part(1.0 - beta - alpha[i - 1]);
  return v;
}

SolveResult solve_static_n1n(int n, double r, const StaticOptions& opt) {
  if (n < 1) throw ContractError("solve_static_n1n: n must be positive");
  if (n > opt.max_n) {
    throw SolverRefusal("static (n,1,n) search refuses n=" + std::to_string(n) + " (limit " +
                        std::to_string(opt.max_n) + ")");
  }
  if (!(opt.grid_step > 0.0 && opt.grid_step <= 0.25))
    throw ContractError("solve_static_n1n: grid_step must lie in (0, 0.25]");
  r = checked_rate(r, n, "solve_static_n1n");

  const int levels = static_cast<int>(std::ceil(1.0 / opt.grid_step - 1e-9));
  const auto tuples = kernels::sorted_tuples(n, levels);
  const kernels::StaticCell cell =
      opt.exec.parallel ? kernels::static_scan_parallel(n, r, tuples, levels, opt.exec.workers)
                        : kernels::static_scan_serial(n, r, tuples, levels);
  if (cell.index < 0) throw InternalError("static (n,1,n) search found no feasible point");
  std::int64_t evals = static_cast<std::int64_t>(tuples.size());

  std::vector<double> alpha(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) alpha[i] = static_cast<double>(tuples[cell.index][i]) / levels;
  double v = cell.value;

  // Pattern search: ±e_i, ±e_i±e_j and ±(1,...,1), halving the step on stalls.
  std::vector<std::vector<int>> dirs;
  for (int i = 0; i < n; ++i) {
    for (int s : {1, -1}) {
      std::vector<int> d(static_cast<std::size_t>(n), 0);
      d[i] = s;
      dirs.push_back(d);
    }
    for (int j = i + 1; j < n; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          std::vector<int> d(static_cast<std::size_t>(n), 0);
          d[i] = si;
          d[j] = sj;
          dirs.push_back(d);
        }
  }
  dirs.emplace_back(static_cast<std::size_t>(n), 1);
  dirs.emplace_back(static_cast<std::size_t>(n), -1);

  std::vector<double> trial(alpha.size());
  for (double step = 1.0 / levels; step > 1e-10; step /= 2.0) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (const auto& d : dirs) {
        for (int i = 0; i < n; ++i) trial[i] = alpha[i] + step * d[i];
        const double w = kernels::static_reduced(n, r, trial.data());
        ++evals;
        if (w < v - 1e-15) {
          v = w;
          alpha = trial;
          improved = true;
        }
      }
    }
  }

  SolveResult res;
  res.d = (v < 0.0 && v > -kEndpointTol) ? 0.0 : v;
  res.argmin = ExponentTriple{alpha, {std::min(1.0, kernels::static_beta_floor(n, r, alpha.data()))}, {}};
  res.method = SolveMethod::static_search;
  res.evaluations = evals;
  return res;
}

}  // namespace hdrc
