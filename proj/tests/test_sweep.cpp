#include "core/sweep.hpp"

#include "core/two_level.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace eplab;

TEST_CASE("crossing-point sweep hits the defect row exactly") {
  const Scenario sc = preset("fig1_left");
  const SweepResult res = run_sweep(sc, 1);
  REQUIRE(res.rows.size() == 601);
  const SweepRow &row = res.rows[400];
  CHECK(row.a == 2.0 / 3.0);
  CHECK(row.defect);
  CHECK(row.z_abs == 0.0);
  CHECK(row.E1 == row.E2);
  CHECK(row.G1_half == row.G2_half);
  CHECK(std::abs(row.E1 - 2.0 / 3.0) <= 1e-15);
  CHECK(row.G1_half == doctest::Approx(0.005).epsilon(1e-6));
  CHECK(row.b11sq == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(row.b12sq == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(row.b21sq == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(row.b22sq == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(row.r1_abs == 0.0);
  CHECK(row.r2_abs == 0.0);
  // the independently rounded bare energies straddle the crossing by an ulp
  CHECK(std::abs(row.e1_bare - row.e2_bare) <= 3e-16);
}

TEST_CASE("trace is conserved along every preset sweep") {
  for (const char *name :
       {"fig1_left", "fig1_right", "fig2_left", "fig2_right"}) {
    const Scenario sc = preset(name);
    const SweepResult res = run_sweep(sc, 0);
    REQUIRE(res.rows.size() == static_cast<size_t>(sc.grid.count));
    for (const SweepRow &row : res.rows) {
      const System sys = sc.system_at(row.a);
      const double s = scale_of(sys);
      CHECK(std::abs(row.E1 + row.E2 - (row.e1_bare + row.e2_bare)) <=
            1e-10 * s);
      CHECK(std::abs(row.G1_half + row.G2_half - 0.5 * (sc.g1 + sc.g2)) <=
            1e-10 * s);
    }
  }
}

TEST_CASE("gain/loss sweep splits into the two known regimes") {
  const Scenario sc = preset("fig2_left");
  const SweepResult res = run_sweep(sc, 0);
  REQUIRE(res.rows.size() == 601);
  for (const SweepRow &row : res.rows) {
    if (row.a > 0.05) {
      // strong coupling: real splitting, widths locked together
      CHECK(row.G1_half == 0.0);
      CHECK(row.G2_half == 0.0);
      CHECK(row.E1 != row.E2);
    } else if (row.a < 0.05) {
      // weak coupling: energies locked, widths split
      CHECK(std::abs(row.E1 - row.E2) < 1e-10);
      CHECK(row.G1_half != 0.0);
      CHECK(row.G1_half == -row.G2_half);
    }
  }
  CHECK(res.rows[300].a == 0.05);
  CHECK(res.rows[300].defect);
  CHECK(res.rows[300].z_abs == 0.0);
  CHECK(res.rows[360].a == 0.06);
  CHECK(res.rows[360].G1_half == 0.0);
  CHECK(res.rows[200].G1_half ==
        doctest::Approx(0.037267799624996503).epsilon(1e-13));
}

TEST_CASE("thread count does not change the result") {
  const Scenario sc = preset("fig1_right");
  const SweepResult a = run_sweep(sc, 1);
  const SweepResult b = run_sweep(sc, 7);
  REQUIRE(a.rows.size() == b.rows.size());
  CHECK(a.swap_count == b.swap_count);
  for (size_t k = 0; k < a.rows.size(); ++k) {
    const SweepRow &x = a.rows[k];
    const SweepRow &y = b.rows[k];
    CHECK(x.E1 == y.E1);
    CHECK(x.E2 == y.E2);
    CHECK(x.G1_half == y.G1_half);
    CHECK(x.G2_half == y.G2_half);
    CHECK(x.b11sq == y.b11sq);
    CHECK(x.r1_abs == y.r1_abs);
    CHECK(x.z_abs == y.z_abs);
    CHECK(x.defect == y.defect);
    CHECK(x.swapped == y.swapped);
  }
}

TEST_CASE("branch tracking keeps widths continuous through a crossing") {
  // uncoupled levels that cross at a = 0.5 with distinct widths; eigenvalue
  // ordering by the principal square root would exchange the widths there,
  // tracking must not
  Scenario sc;
  sc.name = "crossing";
  sc.e1 = {0.0, 1.0};
  sc.e2 = {1.0, -1.0};
  sc.g1 = -0.2;
  sc.g2 = -0.6;
  sc.omega = {cplx(0.0, 0.0), cplx(0.0, 0.0)};
  sc.grid = {0.0, 1.0, 601};
  const SweepResult res = run_sweep(sc, 0);
  REQUIRE(res.rows.size() == 601);
  int swapped_rows = 0;
  for (size_t k = 0; k < res.rows.size(); ++k) {
    const SweepRow &row = res.rows[k];
    CHECK(row.G1_half == doctest::Approx(-0.3).epsilon(1e-13));
    CHECK(row.G2_half == doctest::Approx(-0.1).epsilon(1e-13));
    if (row.swapped) {
      ++swapped_rows;
      CHECK(k == 300);
    }
    if (k > 0) {
      // tracked energies move by at most a little more than one grid step
      CHECK(std::abs(row.E1 - res.rows[k - 1].E1) < 0.01);
    }
  }
  CHECK(res.swap_count == 1);
  CHECK(swapped_rows == 1);
}

TEST_CASE("a failure deep in the grid is reported with its index") {
  Scenario sc;
  sc.name = "overflow";
  sc.e1 = {1e308, 1e308};
  sc.e2 = {0.0, 0.0};
  sc.g1 = 0.0;
  sc.g2 = 0.0;
  sc.omega = {cplx(0.0, 0.0), cplx(0.0, 0.0)};
  sc.grid = {0.0, 1.0, 3};
  Errc code = Errc::ok;
  std::string msg;
  try {
    run_sweep(sc, 2);
  } catch (const Error &e) {
    code = e.code();
    msg = e.what();
  }
  CHECK(code == Errc::invalid_argument);
  CHECK(msg.find("at grid index 2") != std::string::npos);
}
