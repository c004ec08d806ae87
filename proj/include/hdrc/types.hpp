#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hdrc {

// Antenna counts of the (m,k,n) relay channel: source, relay, destination.
class AntennaConfig {
 public:
  AntennaConfig(int m, int k, int n);

  int m() const noexcept { return m_; }
  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }

  // Number of non-zero eigenvalues of H_SD H_SD^†.
  int u() const noexcept { return std::min(m_, n_); }
  // Number of non-zero eigenvalues of the source-relay composite matrix.
  int p() const noexcept { return std::min(m_, k_); }
  // Number of non-zero eigenvalues of the relay-destination composite matrix.
  int q() const noexcept { return std::min(n_, k_); }

  // Largest multiplexing gain, min(m,n).
  double max_rate() const noexcept { return static_cast<double>(u()); }

  bool symmetric() const noexcept { return m_ == n_; }
  AntennaConfig reciprocal() const { return AntennaConfig(n_, k_, m_); }

  friend bool operator==(const AntennaConfig&, const AntennaConfig&) = default;

 private:
  int m_;
  int k_;
  int n_;
};

std::string to_string(const AntennaConfig& config);

// Negative SNR exponents of the ordered eigenvalues of the three composite
// channel matrices. Lengths u, p, q; each vector non-decreasing.
struct ExponentTriple {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> delta;
};

// Aggregate levels a = Σ(1-α_i), b = Σ(1-β_j), s = Σ(1-δ_l).
struct LevelTriple {
  double a = 0.0;
  double b = 0.0;
  double s = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double x, double tol) const noexcept { return x >= lo - tol && x <= hi + tol; }
};

enum class Variant {
  hd_dynamic,
  fd,
  hd_static_n1n,
  closed_1k1,
  closed_n1n,
  symmetric_upper,
  ddf_1k1,
  static_1k1,
  ptp,
};

std::string_view to_string(Variant v) noexcept;
std::optional<Variant> parse_variant(std::string_view name) noexcept;
const std::vector<Variant>& all_variants();

// How a kernel runs. workers <= 0 means the OpenMP default.
struct ExecPolicy {
  bool parallel = true;
  int workers = 0;
};

struct DmtPoint {
  double r = 0.0;
  double d = 0.0;
};

struct DmtCurve {
  AntennaConfig config;
  Variant variant;
  std::vector<DmtPoint> points;
};

}  // namespace hdrc
