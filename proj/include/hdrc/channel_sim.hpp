#pragma once

// Monte Carlo layer: Rayleigh channel draws, cut-set quantities, outage
// estimation and empirical checks of the eigenvalue-exponent machinery.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hdrc/rng.hpp"
#include "hdrc/types.hpp"

namespace hdrc::sim {

struct ChannelSample {
  Eigen::MatrixXcd H_SD;  // n x m
  Eigen::MatrixXcd H_SR;  // k x m
  Eigen::MatrixXcd H_RD;  // n x k
};

ChannelSample sample_channel(const AntennaConfig& config, PhiloxStream& rng);

// Base-2 log-determinants of the three cut-set matrices.
struct CutsetTerms {
  double log_L_SD = 0.0;
  double log_L_SRD = 0.0;
  double log_L_S_RD = 0.0;
  double rho = 0.0;
};

// log2 det(I + rho H H^†) through a Cholesky factor of the smaller Gram matrix.
double log2det_identity_plus(const Eigen::MatrixXcd& H, double rho);

CutsetTerms cutset_terms(const ChannelSample& sample, double rho);

// Threshold on A + B below which the relay links are treated as carrying nothing.
inline constexpr double kRelayFloor = 1e-12;

double optimal_switch_time(const CutsetTerms& terms) noexcept;
// R*_U = AB/(A+B) + log_L_SD in bits per channel use.
double rate_upper(const CutsetTerms& terms) noexcept;

// Eigenvalues of W1, W2, W3 in descending order, truncated to u, p, q.
struct WishartEigenvalues {
  Eigen::VectorXd lambda;
  Eigen::VectorXd mu;
  Eigen::VectorXd gamma;
};

WishartEigenvalues wishart_eigenvalues(const ChannelSample& sample, double rho);

inline constexpr double kEigenFloor = 1e-300;

// Exponents -ln(eig)/ln(rho), each vector ascending. Requires rho > 1.
ExponentTriple eigen_exponents(const ChannelSample& sample, double rho);

struct OutageEstimate {
  double rho = 0.0;
  double r = 0.0;
  double p_out = 0.0;
  std::int64_t n_samples = 0;
  std::int64_t outages = 0;
  double ci_half_width = 0.0;
};

OutageEstimate make_estimate(double rho, double r, std::int64_t outages, std::int64_t n_samples);

// All SNRs share the same channel draws.
std::vector<OutageEstimate> outage_sweep(const AntennaConfig& config, std::span<const double> rho,
                                         double r, std::int64_t n_samples, std::uint64_t seed,
                                         const ExecPolicy& exec = {});
OutageEstimate outage_probability(const AntennaConfig& config, double rho, double r,
                                  std::int64_t n_samples, std::uint64_t seed,
                                  const ExecPolicy& exec = {});

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct SlopeFit {
  double slope = 0.0;
  double std_error = 0.0;
  double intercept = 0.0;
  std::vector<double> rho_grid;
};

// Minimum expected outage count for a point to enter the fit.
inline constexpr double kMinOutageEvents = 20.0;

bool usable_for_fit(const OutageEstimate& e) noexcept;
SlopeFit diversity_fit(std::span<const OutageEstimate> estimates);

struct IndependenceReport {
  int bins_requested = 0;
  int bins_used = 0;
  std::vector<std::int64_t> bin_counts;
  // Within-bin correlation of mu_1 and gamma_1 after removing their common
  // dependence on lambda_1 inside the bin (the gated statistic).
  std::vector<double> partial_corr;
  // Plain within-bin Pearson correlation.
  std::vector<double> raw_corr;
  // Partial statistic with gamma residuals permuted inside the bin.
  std::vector<double> shuffled_corr;
  double max_abs_partial = 0.0;
  double max_abs_raw = 0.0;
  double max_abs_shuffled = 0.0;
  double unconditional_corr = 0.0;
  std::string note;
};

IndependenceReport conditional_independence_check(const AntennaConfig& config, double rho,
                                                  std::int64_t n_samples, int n_bins,
                                                  std::uint64_t seed);

}  // namespace hdrc::sim
