#include "hdrc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "hdrc/core_dmt.hpp"
#include "hdrc/errors.hpp"

namespace hdrc::verify {

namespace {

using PhiFn = std::function<std::vector<double>(double, int)>;

std::vector<double> grid(double lo, double hi, int points) {
  std::vector<double> v;
  for (int i = 0; i < points; ++i) v.push_back(lo + (hi - lo) * i / (points - 1));
  v.back() = hi;
  return v;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Tracks the worst deviation seen by a check.
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, std::string w) {
    if (v > value || where.empty()) {
      value = std::max(value, v);
      where = std::move(w);
    }
  }
};

CheckResult bounded(std::string name, bool hard, const Worst& w, double tol) {
  CheckResult c{std::move(name), hard, w.value <= tol, {}};
  c.detail = fmt("max deviation %.3g (tol %.3g)", w.value, tol);
  if (!w.where.empty()) c.detail += " at " + w.where;
  return c;
}

CheckResult phi_consistency(const PhiFn& phi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Worst w;
  for (int trial = 0; trial < 2000; ++trial) {
    const int len = 1 + trial % 4;
    const double level = unit(rng) * len;
    const auto v = phi(level, len);
    double deficit = 0.0;
    double bad = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      deficit += 1.0 - v[i];
      if (v[i] < 0.0 || v[i] > 1.0) bad = std::max(bad, std::max(-v[i], v[i] - 1.0));
      if (i > 0 && v[i] < v[i - 1]) bad = std::max(bad, v[i - 1] - v[i]);
    }
    w.update(std::max(std::abs(deficit - level), bad), fmt("level=%.6f len=%d", level, len));
  }
  return bounded("φ consistency", true, w, 1e-12);
}

CheckResult f_equals_e(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const AntennaConfig configs[] = {{1, 1, 1}, {2, 1, 2}, {2, 3, 2}, {3, 2, 1}};
  Worst w;
  for (const auto& c : configs) {
    for (int trial = 0; trial < 1000; ++trial) {
      ExponentTriple t;
      auto draw = [&](int len) {
        std::vector<double> v(static_cast<std::size_t>(len));
        for (double& x : v) x = unit(rng);
        std::sort(v.begin(), v.end());
        return v;
      };
      t.alpha = draw(c.u());
      t.beta = draw(c.p());
      t.delta = draw(c.q());
      w.update(std::abs(objective_F(c, t) - exponent_E(c, t)), to_string(c));
    }
  }
  return bounded("F = E on the unit cube", true, w, 1e-12);
}

CheckResult closed_1k1(const TwoVarOptions& so) {
  Worst w;
  for (int k : {1, 2, 4})
    for (double r : grid(0.0, 1.0, 21))
      w.update(std::abs(solve_two_var({1, k, 1}, r, so).d - dmt_1k1(k, r)), fmt("k=%d r=%.4f", k, r));
  return bounded("(1,k,1) closed form", true, w, 1e-3);
}

CheckResult closed_n1n(const TwoVarOptions& so) {
  Worst w;
  for (int n : {1, 2, 3})
    for (double r : grid(0.0, n, 21))
      w.update(std::abs(solve_two_var({n, 1, n}, r, so).d - dmt_n1n(n, r)), fmt("n=%d r=%.4f", n, r));
  return bounded("(n,1,n) closed form", true, w, 1e-3);
}

CheckResult reciprocity(const TwoVarOptions& so) {
  const AntennaConfig pairs[] = {{1, 2, 3}, {2, 1, 3}, {2, 2, 3}};
  Worst w;
  for (const auto& c : pairs)
    for (double r : grid(0.0, c.max_rate(), 11))
      w.update(std::abs(solve_two_var(c, r, so).d - solve_two_var(c.reciprocal(), r, so).d),
               to_string(c) + fmt(" r=%.4f", r));
  return bounded("reciprocity", true, w, 1e-6);
}

CheckResult sandwich(const TwoVarOptions& so) {
  const AntennaConfig configs[] = {{1, 2, 1}, {2, 2, 2}, {2, 3, 2}, {3, 2, 2}, {1, 2, 3}};
  Worst w;
  for (const auto& c : configs) {
    for (double r : grid(0.0, c.max_rate(), 11)) {
      const double hd = solve_two_var(c, r, so).d;
      const double lo = ptp_dmt(c.m(), c.n(), r);
      const double hi = fd_dmt(c, r);
      w.update(std::max(lo - hd, hd - hi), to_string(c) + fmt(" r=%.4f hd=%.6f", r, hd));
    }
  }
  return bounded("sandwich ptp <= hd <= fd", true, w, 1e-6);
}

CheckResult oracle_agreement(const TwoVarOptions& so) {
  const AntennaConfig configs[] = {{1, 1, 1}, {1, 2, 1}, {2, 1, 2}};
  Worst w;
  for (const auto& c : configs) {
    for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double r = f * c.max_rate();
      GridOracleOptions go;
      go.exec = so.exec;
      w.update(std::abs(solve_general_grid(c, r, 0.05, go).d - solve_two_var(c, r, so).d),
               to_string(c) + fmt(" r=%.4f", r));
    }
  }
  return bounded("grid oracle agreement", true, w, 0.15);
}

CheckResult static_dynamic(const TwoVarOptions& so) {
  Worst w;
  StaticOptions st;
  st.exec = so.exec;
  for (int n : {1, 2})
    for (double r : grid(0.0, n, 11))
      w.update(std::abs(solve_static_n1n(n, r, st).d - dmt_n1n(n, r)), fmt("n=%d r=%.4f", n, r));
  return bounded("static = dynamic (n,1,n)", true, w, 5e-3);
}

CheckResult upper_dominance(const TwoVarOptions& so) {
  Worst w;
  for (int n : {1, 2})
    for (int k : {1, 2, 3})
      for (double r : grid(0.0, n, 11))
        w.update(solve_two_var({n, k, n}, r, so).d - dmt_symmetric_upper(n, k, r),
                 fmt("(n,k)=(%d,%d) r=%.4f", n, k, r));
  return bounded("symmetric upper bound dominates", true, w, 1e-3);
}

CheckResult monotone(const TwoVarOptions& so) {
  const AntennaConfig configs[] = {{2, 2, 2}, {2, 3, 2}, {1, 2, 3}};
  Worst w;
  for (const auto& c : configs) {
    const auto rs = grid(0.0, c.max_rate(), 21);
    const DmtCurve curve = dmt_curve(c, Variant::hd_dynamic, rs, so);
    for (std::size_t i = 1; i < curve.points.size(); ++i)
      w.update(curve.points[i].d - curve.points[i - 1].d, to_string(c) + fmt(" r=%.4f", rs[i]));
  }
  return bounded("hd curve non-increasing", true, w, 1e-9);
}

CheckResult conjecture_upper(const TwoVarOptions& so) {
  Worst w;
  for (int n : {1, 2})
    for (int k : {1, 2, 3})
      for (double r : grid(0.0, n, 21))
        w.update(std::abs(solve_two_var({n, k, n}, r, so).d - dmt_symmetric_upper(n, k, r)),
                 fmt("(n,k)=(%d,%d) r=%.4f", n, k, r));
  auto c = bounded("conjecture: symmetric bound is tight", false, w, 1e-2);
  c.detail = (c.passed ? "consistent; " : "inconsistent; ") + c.detail;
  return c;
}

CheckResult conjecture_fd(const TwoVarOptions& so) {
  Worst w;
  for (const AntennaConfig& c : {AntennaConfig(3, 2, 2), AntennaConfig(3, 1, 2)})
    for (double r : grid(0.0, c.max_rate(), 21))
      w.update(std::abs(solve_two_var(c, r, so).d - fd_dmt(c, r)), to_string(c) + fmt(" r=%.4f", r));
  auto c = bounded("conjecture: hd = fd for m > n >= k", false, w, 1e-2);
  c.detail = (c.passed ? "consistent; " : "inconsistent; ") + c.detail;
  return c;
}

}  // namespace

bool Report::hard_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.hard || c.passed; });
}

Report run(const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  PhiFn phi = phi_map;
  if (opt.fault == Fault::phi) {
    phi = [](double level, int len) {
      auto v = phi_map(level, len);
      v.front() = std::min(1.0, v.front() + 1e-3);
      return v;
    };
  }
  const TwoVarOptions& so = opt.solver;
  Report rep;
  auto guarded = [&](const char* name, auto&& fn) {
    try {
      rep.checks.push_back(fn());
    } catch (const Error& e) {
      rep.checks.push_back({name, true, false, std::string("threw: ") + e.what()});
    }
  };
  guarded("φ consistency", [&] { return phi_consistency(phi, rng); });
  guarded("F = E on the unit cube", [&] { return f_equals_e(rng); });
  guarded("(1,k,1) closed form", [&] { return closed_1k1(so); });
  guarded("(n,1,n) closed form", [&] { return closed_n1n(so); });
  guarded("reciprocity", [&] { return reciprocity(so); });
  guarded("sandwich ptp <= hd <= fd", [&] { return sandwich(so); });
  guarded("grid oracle agreement", [&] { return oracle_agreement(so); });
  guarded("static = dynamic (n,1,n)", [&] { return static_dynamic(so); });
  guarded("symmetric upper bound dominates", [&] { return upper_dominance(so); });
  guarded("hd curve non-increasing", [&] { return monotone(so); });
  if (opt.conjectures) {
    rep.checks.push_back(conjecture_upper(so));
    rep.checks.push_back(conjecture_fd(so));
  }
  return rep;
}

std::string format_report(const Report& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    const char* status = c.passed ? "PASS" : (c.hard ? "FAIL" : "WARN");
    os << status << (c.hard ? "  " : "~ ") << c.name << ": " << c.detail << "\n";
  }
  os << (report.hard_ok() ? "all hard checks passed" : "hard check failures present") << "\n";
  return os.str();
}

}  // namespace hdrc::verify
