#pragma once

// DMT solvers: the two-variable production path, the brute-force grid oracle
// over the full exponent problem, and the closed forms.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hdrc/types.hpp"

namespace hdrc {

enum class SolveMethod { two_var, grid_oracle, closed_form, static_search };

std::string_view to_string(SolveMethod m) noexcept;

struct SolveResult {
  double d = 0.0;
  std::variant<LevelTriple, ExponentTriple> argmin;
  SolveMethod method = SolveMethod::closed_form;
  std::int64_t evaluations = 0;
};

struct TwoVarOptions {
  double grid_step = 1e-3;
  int refine_iterations = 40;
  ExecPolicy exec{};
};

struct GridOracleOptions {
  // Refuse instances with more grid points than this.
  double max_points = 2e8;
  ExecPolicy exec{};
};

struct StaticOptions {
  double grid_step = 0.02;
  int max_n = 4;
  ExecPolicy exec{};
};

// min over a in region_R, b in b_interval of F(φ(a), φ(b), φ(s(a,b))).
SolveResult solve_two_var(const AntennaConfig& config, double r, const TwoVarOptions& opt = {});

// Exhaustive search over sorted exponent tuples on a uniform grid in [0,1].
// Throws SolverRefusal when u+p+q > 6 or the grid exceeds opt.max_points.
SolveResult solve_general_grid(const AntennaConfig& config, double r, double step,
                               const GridOracleOptions& opt = {});

double dmt_1k1(int k, double r);
double dmt_n1n(int n, double r);

// Objective of the static (n,1,n) problem; alpha has length n.
double static_n1n_objective(int n, std::span<const double> alpha, double beta);

// Static (n,1,n) minimization. The argmin is an ExponentTriple with alpha of
// length n, beta = {β₁}, delta empty.
SolveResult solve_static_n1n(int n, double r, const StaticOptions& opt = {});

struct UpperBoundTerm {
  std::string name;
  double value;
};

// Every sub-bound of the symmetric (n,k,n) upper bound whose r-domain contains r.
std::vector<UpperBoundTerm> symmetric_upper_terms(int n, int k, double r);
double dmt_symmetric_upper(int n, int k, double r);

double dmt_ddf_1k1(int k, double r);
// Only defined for 1/2 <= r <= 1.
double dmt_static_1k1(int k, double r);

// Throws ConfigError when the variant does not apply to config.
void check_variant_applicable(const AntennaConfig& config, Variant variant);
// r-range on which the variant is defined.
Interval variant_domain(const AntennaConfig& config, Variant variant);
double evaluate_variant(const AntennaConfig& config, Variant variant, double r,
                        const TwoVarOptions& opt = {});

// Points are computed independently, so the result does not depend on the schedule.
DmtCurve dmt_curve(const AntennaConfig& config, Variant variant, std::span<const double> r_grid,
                   const TwoVarOptions& opt = {});

}  // namespace hdrc
