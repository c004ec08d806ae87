// Empirical check that the top W2 and W3 eigenvalues are uncorrelated once the
// top W1 eigenvalue is fixed.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "hdrc/channel_sim.hpp"
#include "hdrc/errors.hpp"
#include "hdrc/kernels.hpp"

namespace hdrc::sim {

namespace {

constexpr std::int64_t kMinPerBin = 50;
// Distinct key offset so the shuffling stream never overlaps the channel draws.
constexpr std::uint64_t kShuffleSalt = 0x5DEECE66DULL;

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

// Residuals of y after least squares on [1, z].
std::vector<double> residuals(const std::vector<double>& y, const std::vector<double>& z) {
  const double n = static_cast<double>(y.size());
  const double mz = std::accumulate(z.begin(), z.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double szz = 0.0;
  double szy = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    szz += (z[i] - mz) * (z[i] - mz);
    szy += (z[i] - mz) * (y[i] - my);
  }
  const double slope = szz > 0.0 ? szy / szz : 0.0;
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] - my - slope * (z[i] - mz);
  return out;
}

}  // namespace

IndependenceReport conditional_independence_check(const AntennaConfig& c, double rho,
                                                  std::int64_t n_samples, int n_bins,
                                                  std::uint64_t seed) {
  if (!(rho > 0.0)) throw DomainError("independence check: rho must be positive");
  if (n_bins < 1) throw DomainError("independence check: need at least one bin");
  if (n_samples < 1000) throw DomainError("independence check: at least 1000 samples required");

  std::vector<double> lambda(static_cast<std::size_t>(n_samples));
  std::vector<double> mu(lambda.size());
  std::vector<double> gamma(lambda.size());
  for (std::int64_t b = 0; b * kernels::kSampleBlock < n_samples; ++b) {
    PhiloxStream rng(seed, static_cast<std::uint64_t>(b));
    const std::int64_t last = std::min(n_samples, (b + 1) * kernels::kSampleBlock);
    for (std::int64_t i = b * kernels::kSampleBlock; i < last; ++i) {
      const auto e = wishart_eigenvalues(sample_channel(c, rng), rho);
      lambda[i] = e.lambda(0);
      mu[i] = e.mu(0);
      gamma[i] = e.gamma(0);
    }
  }

  IndependenceReport rep;
  rep.bins_requested = n_bins;
  rep.unconditional_corr = pearson(mu, gamma);
  int bins = n_bins;
  while (bins > 1 && n_samples / bins < kMinPerBin) --bins;
  if (bins != n_bins) {
    rep.note = "reduced bins from " + std::to_string(n_bins) + " to " + std::to_string(bins) +
               " (fewer than " + std::to_string(kMinPerBin) + " samples per bin)";
  }
  rep.bins_used = bins;

  std::vector<std::int64_t> order(lambda.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int64_t x, std::int64_t y) { return lambda[x] < lambda[y]; });

  for (int bin = 0; bin < bins; ++bin) {
    const std::int64_t first = n_samples * bin / bins;
    const std::int64_t last = n_samples * (bin + 1) / bins;
    std::vector<double> bm;
    std::vector<double> bg;
    std::vector<double> cov;
    for (std::int64_t j = first; j < last; ++j) {
      const std::int64_t i = order[j];
      bm.push_back(mu[i]);
      bg.push_back(gamma[i]);
      cov.push_back(1.0 / (1.0 + rho * lambda[i]));
    }
    rep.bin_counts.push_back(last - first);
    rep.raw_corr.push_back(pearson(bm, bg));
    const auto rm = residuals(bm, cov);
    auto rg = residuals(bg, cov);
    rep.partial_corr.push_back(pearson(rm, rg));

    PhiloxStream shuffle(seed ^ kShuffleSalt, static_cast<std::uint64_t>(bin));
    for (std::size_t i = rg.size(); i > 1; --i) {
      const auto u = shuffle.uniform_pair()[0];
      const auto j = static_cast<std::size_t>(u * static_cast<double>(i));
      std::swap(rg[i - 1], rg[std::min(j, i - 1)]);
    }
    rep.shuffled_corr.push_back(pearson(rm, rg));
  }
  auto max_abs = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };
  rep.max_abs_partial = max_abs(rep.partial_corr);
  rep.max_abs_raw = max_abs(rep.raw_corr);
  rep.max_abs_shuffled = max_abs(rep.shuffled_corr);
  return rep;
}

}  // namespace hdrc::sim
