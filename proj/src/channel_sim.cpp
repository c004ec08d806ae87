#include "hdrc/channel_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hdrc/errors.hpp"
#include "hdrc/kernels.hpp"

namespace hdrc::sim {

namespace {

void fill(Eigen::MatrixXcd& h, PhiloxStream& rng) {
  for (Eigen::Index j = 0; j < h.cols(); ++j)
    for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, j) = rng.complex_normal();
}

void require_finite(const Eigen::MatrixXcd& h, const char* name) {
  if (!h.allFinite()) throw InputError(std::string("cutset_terms: non-finite entry in ") + name);
}

// Hermitian positive-definite log-determinant, natural log.
double logdet_hpd(const Eigen::MatrixXcd& g) {
  Eigen::LLT<Eigen::MatrixXcd> llt(g);
  if (llt.info() != Eigen::Success) throw InternalError("Cholesky failed on I + rho H H^†");
  double s = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) s += std::log(llt.matrixLLT()(i, i).real());
  return 2.0 * s;
}

// Descending eigenvalues of a Hermitian matrix, truncated to `count`.
Eigen::VectorXd top_eigenvalues(const Eigen::MatrixXcd& w, int count) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& asc = es.eigenvalues();
  Eigen::VectorXd out(count);
  for (int i = 0; i < count; ++i) out(i) = asc(asc.size() - 1 - i);
  return out;
}

std::vector<double> exponents(const Eigen::VectorXd& eig_desc, double log_rho) {
  std::vector<double> v(static_cast<std::size_t>(eig_desc.size()));
  for (Eigen::Index i = 0; i < eig_desc.size(); ++i)
    v[i] = -std::log(std::max(eig_desc(i), kEigenFloor)) / log_rho;
  return v;
}

}  // namespace

ChannelSample sample_channel(const AntennaConfig& c, PhiloxStream& rng) {
  ChannelSample s{Eigen::MatrixXcd(c.n(), c.m()), Eigen::MatrixXcd(c.k(), c.m()),
                  Eigen::MatrixXcd(c.n(), c.k())};
  fill(s.H_SD, rng);
  fill(s.H_SR, rng);
  fill(s.H_RD, rng);
  return s;
}

double log2det_identity_plus(const Eigen::MatrixXcd& h, double rho) {
  if (h.size() == 0) return 0.0;
  if (h.rows() == 1 || h.cols() == 1) return std::log2(1.0 + rho * h.squaredNorm());
  Eigen::MatrixXcd g;
  if (h.rows() <= h.cols()) {
    g = rho * (h * h.adjoint());
  } else {
    g = rho * (h.adjoint() * h);
  }
  g.diagonal().array() += 1.0;
  return logdet_hpd(g) / std::numbers::ln2;
}

CutsetTerms cutset_terms(const ChannelSample& s, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("cutset_terms: rho must be positive");
  require_finite(s.H_SD, "H_SD");
  require_finite(s.H_SR, "H_SR");
  require_finite(s.H_RD, "H_RD");
  Eigen::MatrixXcd srd(s.H_SD.rows(), s.H_SD.cols() + s.H_RD.cols());
  srd << s.H_SD, s.H_RD;
  Eigen::MatrixXcd s_rd(s.H_SR.rows() + s.H_SD.rows(), s.H_SD.cols());
  s_rd << s.H_SR, s.H_SD;
  return {log2det_identity_plus(s.H_SD, rho), log2det_identity_plus(srd, rho),
          log2det_identity_plus(s_rd, rho), rho};
}

double optimal_switch_time(const CutsetTerms& t) noexcept {
  const double a = std::max(0.0, t.log_L_SRD - t.log_L_SD);
  const double b = std::max(0.0, t.log_L_S_RD - t.log_L_SD);
  if (a + b < kRelayFloor) return 0.5;
  return a / (a + b);
}

double rate_upper(const CutsetTerms& t) noexcept {
  const double a = std::max(0.0, t.log_L_SRD - t.log_L_SD);
  const double b = std::max(0.0, t.log_L_S_RD - t.log_L_SD);
  const double relay = a + b < kRelayFloor ? 0.0 : a * b / (a + b);
  return relay + t.log_L_SD;
}

WishartEigenvalues wishart_eigenvalues(const ChannelSample& s, double rho) {
  const auto m = s.H_SD.cols();
  const auto n = s.H_SD.rows();
  const int u = static_cast<int>(std::min(m, n));
  const int p = static_cast<int>(std::min(m, s.H_SR.rows()));
  const int q = static_cast<int>(std::min(n, s.H_RD.cols()));

  const Eigen::MatrixXcd w1 = s.H_SD * s.H_SD.adjoint();
  Eigen::MatrixXcd gm = rho * (s.H_SD.adjoint() * s.H_SD);
  gm.diagonal().array() += 1.0;
  Eigen::MatrixXcd gn = rho * w1;
  gn.diagonal().array() += 1.0;
  const Eigen::LLT<Eigen::MatrixXcd> lm(gm);
  const Eigen::LLT<Eigen::MatrixXcd> ln(gn);
  const Eigen::MatrixXcd w2 = s.H_SR * lm.solve(s.H_SR.adjoint());
  const Eigen::MatrixXcd w3 = s.H_RD.adjoint() * ln.solve(s.H_RD);
  return {top_eigenvalues(w1, u), top_eigenvalues(w2, p), top_eigenvalues(w3, q)};
}

ExponentTriple eigen_exponents(const ChannelSample& s, double rho) {
  if (!(rho > 1.0)) throw DomainError("eigen_exponents: rho must exceed 1");
  const WishartEigenvalues e = wishart_eigenvalues(s, rho);
  const double log_rho = std::log(rho);
  return {exponents(e.lambda, log_rho), exponents(e.mu, log_rho), exponents(e.gamma, log_rho)};
}

OutageEstimate make_estimate(double rho, double r, std::int64_t outages, std::int64_t n_samples) {
  OutageEstimate e;
  e.rho = rho;
  e.r = r;
  e.outages = outages;
  e.n_samples = n_samples;
  e.p_out = n_samples > 0 ? static_cast<double>(outages) / static_cast<double>(n_samples) : 0.0;
  e.ci_half_width = n_samples > 0 ? 1.96 * std::sqrt(e.p_out * (1.0 - e.p_out) / n_samples) : 0.0;
  return e;
}

std::vector<OutageEstimate> outage_sweep(const AntennaConfig& c, std::span<const double> rho,
                                         double r, std::int64_t n_samples, std::uint64_t seed,
                                         const ExecPolicy& exec) {
  if (!(r > 0.0) || !(r < c.max_rate())) {
    throw DomainError("outage: r=" + std::to_string(r) + " must lie strictly inside (0, " +
                      std::to_string(c.u()) + ")");
  }
  if (n_samples < 1000) throw DomainError("outage: at least 1000 samples are required");
  if (rho.empty()) throw DomainError("outage: empty SNR list");
  kernels::OutageJob job{c, seed, n_samples, {}, {}};
  for (double x : rho) {
    if (!(x > 1.0) || !std::isfinite(x)) throw DomainError("outage: SNR must exceed 1 (0 dB)");
    job.rho.push_back(x);
    job.thresholds.push_back(r * std::log2(x));
  }
  const auto counts = exec.parallel ? kernels::outage_count_parallel(job, exec.workers)
                                    : kernels::outage_count_serial(job);
  std::vector<OutageEstimate> out;
  for (std::size_t i = 0; i < rho.size(); ++i)
    out.push_back(make_estimate(rho[i], r, counts[i], n_samples));
  return out;
}

OutageEstimate outage_probability(const AntennaConfig& c, double rho, double r,
                                  std::int64_t n_samples, std::uint64_t seed,
                                  const ExecPolicy& exec) {
  const double grid[1] = {rho};
  return outage_sweep(c, grid, r, n_samples, seed, exec).front();
}

bool usable_for_fit(const OutageEstimate& e) noexcept {
  return e.p_out > 0.0 && static_cast<double>(e.n_samples) * e.p_out >= kMinOutageEvents;
}

SlopeFit diversity_fit(std::span<const OutageEstimate> estimates) {
  std::vector<double> x;
  std::vector<double> y;
  SlopeFit fit;
  for (const auto& e : estimates) {
    if (!usable_for_fit(e)) continue;
    if (std::find(fit.rho_grid.begin(), fit.rho_grid.end(), e.rho) != fit.rho_grid.end()) continue;
    fit.rho_grid.push_back(e.rho);
    x.push_back(std::log10(e.rho));
    y.push_back(-std::log10(e.p_out));
  }
  if (x.size() < 3) {
    throw InsufficientData("diversity_fit: " + std::to_string(x.size()) +
                           " usable SNR points, need at least 3");
  }
  const double cnt = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= cnt;
  my /= cnt;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double res = y[i] - fit.intercept - fit.slope * x[i];
    sse += res * res;
  }
  fit.std_error = std::sqrt(sse / (cnt - 2.0) / sxx);
  return fit;
}

}  // namespace hdrc::sim
