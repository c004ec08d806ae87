#include <cmath>
#include <variant>

#include "doctest.h"
#include "hdrc/core_dmt.hpp"
#include "hdrc/errors.hpp"
#include "hdrc/solvers.hpp"

using namespace hdrc;
using doctest::Approx;

namespace {

std::vector<double> grid(double lo, double hi, int points) {
  std::vector<double> v;
  for (int i = 0; i < points; ++i) v.push_back(lo + (hi - lo) * i / (points - 1));
  v.back() = hi;
  return v;
}

}  // namespace

TEST_CASE("solve_two_var examples") {
  CHECK(solve_two_var({1, 2, 1}, 0.25).d == Approx(2.25).epsilon(1e-9));
  CHECK(solve_two_var({1, 1, 1}, 1.0).d == 0.0);
  CHECK(solve_two_var({2, 1, 2}, 1.0).d == Approx(2.0).epsilon(1e-9));
  CHECK_THROWS_AS(solve_two_var({2, 1, 2}, 2.5), DomainError);
}

TEST_CASE("solve_two_var is zero at full multiplexing") {
  for (const AntennaConfig& c : {AntennaConfig(1, 1, 1), AntennaConfig(2, 3, 2), AntennaConfig(1, 2, 3),
                                 AntennaConfig(3, 1, 2)}) {
    CAPTURE(to_string(c));
    CHECK(std::abs(solve_two_var(c, c.max_rate()).d) <= 1e-12);
  }
}

TEST_CASE("solve_two_var argmin reproduces d through objective_F") {
  for (const AntennaConfig& c : {AntennaConfig(2, 2, 2), AntennaConfig(1, 2, 3), AntennaConfig(3, 2, 2)}) {
    for (double r : grid(0.0, c.max_rate(), 7)) {
      const SolveResult res = solve_two_var(c, r);
      REQUIRE(std::holds_alternative<LevelTriple>(res.argmin));
      const auto lv = std::get<LevelTriple>(res.argmin);
      const ExponentTriple x{phi_map(std::min(lv.a, 1.0 * c.u()), c.u()),
                             phi_map(std::min(lv.b, 1.0 * c.p()), c.p()),
                             phi_map(std::min(lv.s, 1.0 * c.q()), c.q())};
      CAPTURE(to_string(c));
      CAPTURE(r);
      CHECK(std::abs(objective_F(c, x) - res.d) <= 1e-9);
      CHECK(rate_exponent(x) <= r + 1e-9);
      CHECK(res.method == SolveMethod::two_var);
      CHECK(res.evaluations > 0);
    }
  }
}

TEST_CASE("solve_two_var matches the (1,k,1) and (n,1,n) closed forms") {
  for (int k : {1, 2, 3, 4})
    for (double r : grid(0.0, 1.0, 50)) CHECK(solve_two_var({1, k, 1}, r).d == Approx(dmt_1k1(k, r)).epsilon(1e-3));
  for (int n : {1, 2, 3})
    for (double r : grid(0.0, n, 50)) CHECK(solve_two_var({n, 1, n}, r).d == Approx(dmt_n1n(n, r)).epsilon(1e-3));
}

TEST_CASE("reciprocity") {
  for (const AntennaConfig& c : {AntennaConfig(1, 2, 3), AntennaConfig(2, 1, 3), AntennaConfig(1, 3, 2),
                                 AntennaConfig(2, 3, 4)}) {
    for (double r : grid(0.0, c.max_rate(), 20)) {
      CAPTURE(to_string(c));
      CAPTURE(r);
      CHECK(std::abs(solve_two_var(c, r).d - solve_two_var(c.reciprocal(), r).d) <= 1e-6);
    }
  }
}

TEST_CASE("sandwich between point-to-point and full-duplex") {
  for (const AntennaConfig& c : {AntennaConfig(1, 2, 1), AntennaConfig(2, 2, 2), AntennaConfig(2, 3, 2),
                                 AntennaConfig(3, 2, 2), AntennaConfig(1, 2, 3), AntennaConfig(3, 1, 2)}) {
    for (double r : grid(0.0, c.max_rate(), 20)) {
      const double hd = solve_two_var(c, r).d;
      CAPTURE(to_string(c));
      CAPTURE(r);
      CHECK(ptp_dmt(c.m(), c.n(), r) <= hd + 1e-6);
      CHECK(hd <= fd_dmt(c, r) + 1e-6);
    }
  }
}

TEST_CASE("grid oracle examples and agreement") {
  CHECK(solve_general_grid({1, 1, 1}, 0.0, 0.05).d == Approx(2.0).epsilon(0.05));
  CHECK(solve_general_grid({1, 2, 1}, 0.5, 0.05).d == Approx(1.0).epsilon(0.05));
  CHECK(solve_general_grid({1, 1, 1}, 1.0, 0.1).d == Approx(0.0));
  for (const AntennaConfig& c : {AntennaConfig(1, 1, 1), AntennaConfig(1, 2, 1), AntennaConfig(2, 1, 2),
                                 AntennaConfig(1, 2, 2), AntennaConfig(2, 1, 1)}) {
    for (int i = 0; i <= 10; ++i) {
      const double r = c.max_rate() * i / 10.0;
      CAPTURE(to_string(c));
      CAPTURE(r);
      CHECK(std::abs(solve_general_grid(c, r, 0.05).d - solve_two_var(c, r).d) <= 0.1);
    }
  }
}

TEST_CASE("grid oracle argmin is feasible") {
  const AntennaConfig c(2, 1, 2);
  const SolveResult res = solve_general_grid(c, 0.7, 0.05);
  const auto x = std::get<ExponentTriple>(res.argmin);
  CHECK(support_contains(c, x, 1e-12));
  CHECK(rate_exponent(x) <= 0.7 + 1e-9);
  CHECK(objective_F(c, x) == Approx(res.d).epsilon(1e-12));
}

TEST_CASE("grid oracle refuses large instances") {
  CHECK_THROWS_AS(solve_general_grid({3, 3, 3}, 1.0, 0.05), SolverRefusal);
  GridOracleOptions tight;
  tight.max_points = 1000;
  CHECK_THROWS_AS(solve_general_grid({2, 2, 2}, 1.0, 0.05, tight), SolverRefusal);
  CHECK_THROWS_AS(solve_general_grid({1, 1, 1}, 0.5, 0.3), ContractError);
}

TEST_CASE("closed forms") {
  CHECK(dmt_1k1(2, 0.0) == 3.0);
  CHECK(dmt_1k1(2, 1.0 / 3.0) == Approx(2.0));
  CHECK(dmt_1k1(4, 0.4) == Approx(1.0 + 4.0 * 0.2 / 0.6));
  CHECK(dmt_n1n(2, 0.0) == 6.0);
  CHECK(dmt_n1n(2, 2.0) == 0.0);
  CHECK(dmt_n1n(3, 2.0) == 2.0);
  CHECK(dmt_ddf_1k1(2, 0.5) == Approx(1.0));
  // 0.25 < 1/(k+1), so the first branch applies: 3(1 - 0.25).
  CHECK(dmt_ddf_1k1(2, 0.25) == Approx(2.25));
  CHECK(dmt_ddf_1k1(3, 1.0) == 0.0);
  CHECK(dmt_ddf_1k1(2, 0.75) == Approx(1.0 / 3.0));
  CHECK(dmt_static_1k1(2, 0.5) == 1.0);
  CHECK(dmt_static_1k1(5, 1.0) == 0.0);
  CHECK(dmt_static_1k1(2, 0.75) == 0.5);
  CHECK_THROWS_AS(dmt_static_1k1(2, 0.4), DomainError);
  CHECK_THROWS_AS(dmt_1k1(2, 1.2), DomainError);
}

TEST_CASE("branch continuity of the (1,k,1) forms") {
  for (int k = 1; k <= 6; ++k) {
    const double r1 = 1.0 / (k + 1);
    CHECK(std::abs((k + 1) * (1.0 - r1) - (1.0 + k * (1.0 - 2.0 * r1) / (1.0 - r1))) <= 1e-12);
    CHECK(std::abs((1.0 + k * (1.0 - 2.0 * 0.5) / 0.5) - 2.0 * (1.0 - 0.5)) <= 1e-12);
    CHECK(std::abs((1.0 + k * (1.0 - 2.0 * 0.5) / 0.5) - (1.0 - 0.5) / 0.5) <= 1e-12);
    CHECK(std::abs(dmt_1k1(k, r1) - dmt_1k1(k, std::nextafter(r1, 1.0))) <= 1e-12);
    CHECK(std::abs(dmt_ddf_1k1(k, 0.5) - dmt_ddf_1k1(k, std::nextafter(0.5, 1.0))) <= 1e-12);
  }
}

TEST_CASE("static (n,1,n) equals the dynamic DMT") {
  CHECK(solve_static_n1n(1, 0.5).d == Approx(1.0).epsilon(1e-9));
  CHECK(solve_static_n1n(2, 1.0).d == Approx(2.0).epsilon(1e-9));
  CHECK(solve_static_n1n(1, 1.0).d == Approx(0.0));
  for (int n : {1, 2, 3})
    for (double r : grid(0.0, n, 20)) CHECK(std::abs(solve_static_n1n(n, r).d - dmt_n1n(n, r)) <= 5e-3);
  CHECK_THROWS_AS(solve_static_n1n(5, 1.0), SolverRefusal);
}

TEST_CASE("static (n,1,n) argmin is feasible") {
  const int n = 3;
  const double r = 1.3;
  const SolveResult res = solve_static_n1n(n, r);
  const auto x = std::get<ExponentTriple>(res.argmin);
  double deficit = 0.0;
  for (double a : x.alpha) deficit += 1.0 - a;
  CHECK(deficit + 0.5 * (1.0 - x.beta[0]) <= r + 1e-9);
  CHECK(x.beta[0] + x.alpha.back() >= 1.0 - 1e-9);
  CHECK(static_n1n_objective(n, x.alpha, x.beta[0]) == Approx(res.d).epsilon(1e-12));
}

TEST_CASE("symmetric upper bound examples") {
  CHECK(dmt_symmetric_upper(1, 1, 0.0) == 2.0);
  CHECK(dmt_symmetric_upper(2, 4, 1.5) == Approx(1.0));
  bool saw_u2 = false;
  for (const auto& t : symmetric_upper_terms(2, 4, 1.5)) {
    if (t.name == "d_U2") {
      saw_u2 = true;
      CHECK(t.value == Approx(ptp_dmt(4, 4, 3.0)));
    }
  }
  CHECK(saw_u2);
  CHECK(std::abs(dmt_symmetric_upper(2, 2, 1.0) - solve_two_var({2, 2, 2}, 1.0).d) <= 1e-3);
  CHECK_THROWS_AS(dmt_symmetric_upper(2, 2, 2.5), DomainError);
}

TEST_CASE("symmetric upper bound dominates the solver") {
  for (int n : {1, 2, 3})
    for (int k : {1, 2, 3, 4})
      for (double r : grid(0.0, n, 20)) {
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(r);
        CHECK(dmt_symmetric_upper(n, k, r) >= solve_two_var({n, k, n}, r).d - 1e-3);
      }
}

TEST_CASE("dmt_curve dispatch and validation") {
  const auto c1 = dmt_curve({1, 2, 1}, Variant::hd_dynamic, std::vector<double>{0.0, 0.5, 1.0});
  REQUIRE(c1.points.size() == 3);
  CHECK(c1.points[0].d == Approx(3.0));
  CHECK(c1.points[1].d == Approx(1.0));
  CHECK(c1.points[2].d == Approx(0.0));
  const auto c2 = dmt_curve({2, 1, 2}, Variant::fd, std::vector<double>{0.0, 1.0, 2.0});
  CHECK(c2.points[0].d == 6.0);
  CHECK(c2.points[1].d == 2.0);
  CHECK(c2.points[2].d == 0.0);
  const auto c3 = dmt_curve({2, 3, 2}, Variant::ptp, std::vector<double>{2.0});
  CHECK(c3.points[0].d == 0.0);

  CHECK_THROWS_AS(dmt_curve({2, 2, 1}, Variant::closed_1k1, std::vector<double>{0.5}), ConfigError);
  CHECK_THROWS_AS(dmt_curve({2, 2, 2}, Variant::closed_n1n, std::vector<double>{0.5}), ConfigError);
  CHECK_THROWS_AS(dmt_curve({2, 1, 3}, Variant::symmetric_upper, std::vector<double>{0.5}), ConfigError);
  CHECK_THROWS_AS(dmt_curve({1, 1, 1}, Variant::fd, std::vector<double>{}), ConfigError);
  CHECK_THROWS_AS(dmt_curve({1, 1, 1}, Variant::fd, std::vector<double>{0.5, 0.2}), ConfigError);
  CHECK_THROWS_AS(dmt_curve({1, 1, 1}, Variant::fd, std::vector<double>{0.5, 1.5}), ConfigError);
  CHECK_THROWS_AS(dmt_curve({1, 2, 1}, Variant::static_1k1, std::vector<double>{0.2}), ConfigError);
}

TEST_CASE("every variant produces a non-increasing curve") {
  const AntennaConfig c11(1, 2, 1);
  const AntennaConfig n1n(2, 1, 2);
  const std::pair<AntennaConfig, Variant> cases[] = {
      {c11, Variant::hd_dynamic},     {c11, Variant::fd},        {c11, Variant::closed_1k1},
      {c11, Variant::ddf_1k1},        {c11, Variant::static_1k1}, {c11, Variant::ptp},
      {n1n, Variant::hd_static_n1n},  {n1n, Variant::closed_n1n}, {n1n, Variant::symmetric_upper},
      {{2, 3, 2}, Variant::hd_dynamic}, {{3, 2, 2}, Variant::hd_dynamic}};
  for (const auto& [c, v] : cases) {
    const Interval dom = variant_domain(c, v);
    const auto curve = dmt_curve(c, v, grid(dom.lo, dom.hi, 25));
    CAPTURE(std::string(to_string(v)));
    for (std::size_t i = 1; i < curve.points.size(); ++i) CHECK(curve.points[i].d <= curve.points[i - 1].d + 1e-9);
    if (v == Variant::hd_dynamic || v == Variant::fd || v == Variant::ptp) CHECK(curve.points.back().d == Approx(0.0));
  }
}

TEST_CASE("variant names round-trip") {
  for (Variant v : all_variants()) CHECK(parse_variant(to_string(v)) == v);
  CHECK_FALSE(parse_variant("bogus").has_value());
}

TEST_CASE("serial and parallel solvers give identical results") {
  TwoVarOptions serial;
  serial.exec.parallel = false;
  TwoVarOptions parallel;
  parallel.exec.workers = 3;
  for (const AntennaConfig& c : {AntennaConfig(2, 2, 2), AntennaConfig(1, 2, 3)}) {
    for (double r : grid(0.0, c.max_rate(), 9)) {
      const auto a = solve_two_var(c, r, serial);
      const auto b = solve_two_var(c, r, parallel);
      CHECK(a.d == b.d);
      CHECK(std::get<LevelTriple>(a.argmin).a == std::get<LevelTriple>(b.argmin).a);
      CHECK(std::get<LevelTriple>(a.argmin).b == std::get<LevelTriple>(b.argmin).b);
    }
  }
}
