#pragma once

// Hot loops behind the solvers and the simulator. Each kernel has a serial
// reference and an OpenMP version; both return bit-identical results.

#include <cstdint>
#include <vector>

#include "hdrc/types.hpp"

namespace hdrc::kernels {

// Ties within this of the global minimum resolve to the first index.
inline constexpr double kTieTol = 1e-9;

// ---- two-variable scan -------------------------------------------------

// Row ia holds a = lo + (hi-lo)*ia/a_steps; column it holds b = b_lo + t(b_m - b_lo)
// with t = it/t_steps. On the a == r row, branch 0 is (b = t b_m, s = 0) and
// branch 1 is (b = 0, s = t s_m).
struct TwoVarGrid {
  AntennaConfig config;
  double r;
  Interval a_range;
  int a_steps;
  int t_steps;
};

struct TwoVarCell {
  double value;
  int ia;
  int it;
  int branch;
};

double grid_a(const TwoVarGrid& g, int ia) noexcept;
// Levels at continuous coordinates (a, t). branch selects the degenerate family at a == r.
LevelTriple two_var_levels(const AntennaConfig& c, double r, double a, double t, int branch) noexcept;
double two_var_value(const AntennaConfig& c, double r, double a, double t, int branch) noexcept;
// true when a is the degenerate a == r row.
inline bool degenerate_row(double r, double a) noexcept { return r - a <= 0.0; }

TwoVarCell two_var_scan_serial(const TwoVarGrid& g);
TwoVarCell two_var_scan_parallel(const TwoVarGrid& g, int workers);

// ---- grid oracle -------------------------------------------------------

struct OracleGrid {
  AntennaConfig config;
  double r;
  int levels;  // grid values j/levels, j = 0..levels
  std::vector<std::vector<int>> alpha, beta, delta;  // sorted tuples of level indices
};

std::vector<std::vector<int>> sorted_tuples(int len, int levels);

struct OracleCell {
  double value;  // +inf when nothing is feasible
  std::int64_t ia, ib, id;
};

OracleCell oracle_scan_serial(const OracleGrid& g);
OracleCell oracle_scan_parallel(const OracleGrid& g, int workers);

// ---- static (n,1,n) grid -----------------------------------------------

// Smallest feasible β for the given α, or a value > 1 when α is infeasible.
double static_beta_floor(int n, double r, const double* alpha) noexcept;
// Objective with β at its floor; +inf when infeasible or unsorted.
double static_reduced(int n, double r, const double* alpha) noexcept;

struct StaticCell {
  double value;
  std::int64_t index;
};

StaticCell static_scan_serial(int n, double r, const std::vector<std::vector<int>>& tuples,
                              int levels);
StaticCell static_scan_parallel(int n, double r, const std::vector<std::vector<int>>& tuples,
                                int levels, int workers);

// ---- outage counting ---------------------------------------------------

// Samples are drawn in fixed blocks; block b uses RNG stream (seed, b). Counts
// are independent of the worker count.
inline constexpr std::int64_t kSampleBlock = 4096;

struct OutageJob {
  AntennaConfig config;
  std::uint64_t seed;
  std::int64_t n_samples;
  std::vector<double> rho;         // linear SNRs
  std::vector<double> thresholds;  // r log2(ρ) per SNR
};

// Outage counts per SNR, all SNRs evaluated on the same samples.
std::vector<std::int64_t> outage_count_serial(const OutageJob& job);
std::vector<std::int64_t> outage_count_parallel(const OutageJob& job, int workers);

}  // namespace hdrc::kernels
