#include <cmath>
#include <limits>
#include <utility>

#include "doctest.h"
#include "hdrc/core_dmt.hpp"
#include "hdrc/kernels.hpp"

using namespace hdrc;

TEST_CASE("two-var scan: parallel equals serial for every worker count") {
  for (const AntennaConfig& c : {AntennaConfig(2, 2, 2), AntennaConfig(1, 2, 3), AntennaConfig(3, 1, 2)}) {
    for (double f : {0.0, 0.3, 0.55, 1.0}) {
      const double r = f * c.max_rate();
      const Interval a = region_R(c, r);
      const kernels::TwoVarGrid g{c, r, a, a.width() > 0 ? 200 : 0, 200};
      const auto ref = kernels::two_var_scan_serial(g);
      for (int w : {1, 2, 3, 5}) {
        const auto par = kernels::two_var_scan_parallel(g, w);
        CHECK(par.value == ref.value);
        CHECK(par.ia == ref.ia);
        CHECK(par.it == ref.it);
        CHECK(par.branch == ref.branch);
      }
    }
  }
}

TEST_CASE("two-var scan picks the first cell on ties") {
  // Reference: row-major enumeration, taking the first cell within the tie tolerance.
  for (const auto& [c, r] : {std::pair{AntennaConfig(2, 3, 2), 0.0}, std::pair{AntennaConfig(2, 3, 2), 1.5},
                             std::pair{AntennaConfig(1, 2, 3), 1.0}, std::pair{AntennaConfig(2, 2, 2), 1.0}}) {
    const kernels::TwoVarGrid g{c, r, region_R(c, r), 40, 50};
    auto value = [&](int ia, int it) {
      const double a = kernels::grid_a(g, ia);
      const double t = static_cast<double>(it) / g.t_steps;
      double v = kernels::two_var_value(c, r, a, t, 0);
      if (kernels::degenerate_row(r, a)) v = std::min(v, kernels::two_var_value(c, r, a, t, 1));
      return v;
    };
    double best = std::numeric_limits<double>::infinity();
    for (int ia = 0; ia <= g.a_steps; ++ia)
      for (int it = 0; it <= g.t_steps; ++it) best = std::min(best, value(ia, it));
    int want_a = -1;
    int want_t = -1;
    for (int ia = 0; ia <= g.a_steps && want_a < 0; ++ia)
      for (int it = 0; it <= g.t_steps; ++it)
        if (value(ia, it) <= best + kernels::kTieTol) {
          want_a = ia;
          want_t = it;
          break;
        }
    const auto cell = kernels::two_var_scan_serial(g);
    CAPTURE(to_string(c));
    CAPTURE(r);
    CHECK(cell.value == best);
    CHECK(cell.ia == want_a);
    CHECK(cell.it == want_t);
  }
}

TEST_CASE("degenerate row evaluates both branches") {
  // (1,2,3) at r = 1: a = r = 1 forces b_m = 0, so only the s-branch reaches the minimum 0.
  const AntennaConfig c(1, 2, 3);
  const LevelTriple lv = kernels::two_var_levels(c, 1.0, 1.0, 1.0, 1);
  CHECK(lv.b == 0.0);
  CHECK(lv.s == 2.0);
  CHECK(kernels::two_var_value(c, 1.0, 1.0, 1.0, 1) < kernels::two_var_value(c, 1.0, 1.0, 1.0, 0));
}

TEST_CASE("sorted tuples enumerate multisets") {
  const auto t = kernels::sorted_tuples(3, 4);
  CHECK(t.size() == 35);  // C(4+3, 3)
  for (const auto& x : t) CHECK(std::is_sorted(x.begin(), x.end()));
  CHECK(t.front() == std::vector<int>{0, 0, 0});
  CHECK(t.back() == std::vector<int>{4, 4, 4});
}

TEST_CASE("oracle scan: parallel equals serial") {
  for (const AntennaConfig& c : {AntennaConfig(2, 1, 2), AntennaConfig(1, 2, 2)}) {
    const int levels = 10;
    const kernels::OracleGrid g{c, 0.6, levels, kernels::sorted_tuples(c.u(), levels),
                                kernels::sorted_tuples(c.p(), levels), kernels::sorted_tuples(c.q(), levels)};
    const auto ref = kernels::oracle_scan_serial(g);
    for (int w : {1, 2, 4}) {
      const auto par = kernels::oracle_scan_parallel(g, w);
      CHECK(par.value == ref.value);
      CHECK(par.ia == ref.ia);
      CHECK(par.ib == ref.ib);
      CHECK(par.id == ref.id);
    }
  }
}

TEST_CASE("static scan: parallel equals serial, infeasible points are +inf") {
  const int n = 3;
  const int levels = 20;
  const auto tuples = kernels::sorted_tuples(n, levels);
  const auto ref = kernels::static_scan_serial(n, 1.1, tuples, levels);
  for (int w : {1, 2, 3}) {
    const auto par = kernels::static_scan_parallel(n, 1.1, tuples, levels, w);
    CHECK(par.value == ref.value);
    CHECK(par.index == ref.index);
  }
  const double unsorted[] = {0.5, 0.2, 0.9};
  CHECK(std::isinf(kernels::static_reduced(n, 1.1, unsorted)));
  const double zeros[] = {0.0, 0.0, 0.0};
  CHECK(std::isinf(kernels::static_reduced(n, 0.5, zeros)));  // deficit 3 > r
}

TEST_CASE("outage counts do not depend on the worker count") {
  const kernels::OutageJob job{AntennaConfig(2, 1, 2), 99, 3 * kernels::kSampleBlock + 17,
                               {10.0, 100.0, 1000.0}, {std::log2(10.0), std::log2(100.0), std::log2(1000.0)}};
  const auto ref = kernels::outage_count_serial(job);
  for (int w : {1, 2, 3, 7}) CHECK(kernels::outage_count_parallel(job, w) == ref);
  CHECK(ref[0] >= ref[1]);
  CHECK(ref[1] >= ref[2]);
}
