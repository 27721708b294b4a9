#include "core/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace eplab;

TEST_CASE("preset parameter tables") {
  SUBCASE("crossing levels, real coupling") {
    const Scenario sc = preset("fig1_left");
    CHECK(sc.e1.c0 == 1.0);
    CHECK(sc.e1.c1 == -0.5);
    CHECK(sc.e2.c0 == 0.0);
    CHECK(sc.e2.c1 == 1.0);
    CHECK(sc.g1 == -0.1);
    CHECK(sc.g2 == 0.12);
    CHECK(sc.omega.c0 == cplx(0.055, 0.0));
    CHECK(sc.omega.c1 == cplx(0.0, 0.0));
    CHECK(sc.grid.start == 0.0);
    CHECK(sc.grid.stop == 1.0);
    CHECK(sc.grid.count == 601);
    CHECK(sc.channels == 1);
  }
  SUBCASE("crossing levels, complex coupling") {
    const Scenario sc = preset("fig1_right");
    // |omega| = 0.0789 along the pi/4 direction
    CHECK(sc.omega.c0.real() == 0.0557907250356186);
    CHECK(sc.omega.c0.imag() == sc.omega.c0.real());
    CHECK(std::abs(std::abs(cplx(sc.omega.c0)) - 0.0789) <= 1e-16);
    CHECK(sc.omega.c1 == cplx(0.0, 0.0));
  }
  SUBCASE("gain/loss pair swept in real coupling") {
    const Scenario sc = preset("fig2_left");
    CHECK(sc.e1.c0 == 2.0 / 3.0);
    CHECK(sc.e1.c1 == 0.0);
    CHECK(sc.e2.c0 == 2.0 / 3.0);
    CHECK(sc.g1 == -0.1);
    CHECK(sc.g2 == 0.1);
    CHECK(sc.omega.c0 == cplx(0.0, 0.0));
    CHECK(sc.omega.c1 == cplx(1.0, 0.0));
    CHECK(sc.grid.stop == 0.1);
  }
  SUBCASE("separated levels swept in imaginary coupling") {
    const Scenario sc = preset("fig2_right");
    CHECK(sc.e2.c0 == -2.0 / 3.0);
    CHECK(sc.omega.c1 == cplx(0.0, 1.0));
    CHECK(sc.grid.stop == 0.12);
  }
  CHECK_THROWS_AS(preset("fig3_left"), Error);
  try {
    preset("fig3_left");
  } catch (const Error &e) {
    CHECK(e.code() == Errc::unknown_preset);
  }
}

TEST_CASE("grid points land on representable values") {
  const Grid g{0.0, 0.1, 601};
  CHECK(g.point(0) == 0.0);
  CHECK(g.point(600) == 0.1);
  CHECK(g.point(300) == 0.05);
  CHECK(g.point(360) == 0.06);
  CHECK(g.point(200) == 1.0 / 30.0);

  const Grid u{0.0, 1.0, 601};
  CHECK(u.point(400) == 2.0 / 3.0);

  const Grid tiny{0.25, 0.75, 1};
  CHECK(tiny.point(0) == 0.25);
}

TEST_CASE("level difference is exact at the crossing") {
  const Scenario sc = preset("fig1_left");
  const double ac = 2.0 / 3.0;
  const double lo = std::nextafter(ac, 0.0);
  const double hi = std::nextafter(ac, 1.0);
  // the affine coefficients are subtracted before evaluating, so the
  // crossing value itself (and its upper neighbor) collapse to exactly zero
  CHECK(sc.delta_real_at(ac) == 0.0);
  CHECK(sc.delta_real_at(hi) == 0.0);
  CHECK(std::abs(sc.delta_real_at(lo)) <= 3e-16);
  // one step away on the preset grid it is decisively nonzero
  CHECK(sc.delta_real_at(sc.grid.point(399)) != 0.0);

  const cplx d = sc.delta_at(ac);
  CHECK(d.real() == 0.0);
  CHECK(d.imag() == 0.5 * (sc.g1 - sc.g2));
}

TEST_CASE("system assembly at a grid value") {
  const Scenario sc = preset("fig1_left");
  const System sys = sc.system_at(0.5);
  CHECK(sys.e1 == 0.75);
  CHECK(sys.e2 == 0.5);
  CHECK(sys.g1 == -0.1);
  CHECK(sys.g2 == 0.12);
  CHECK(sys.omega == cplx(0.055, 0.0));
}

TEST_CASE("scenario validation") {
  Scenario sc = preset("fig1_left");
  sc.grid.count = 1;
  CHECK_THROWS_AS(sc.validate(), Error);
  sc = preset("fig1_left");
  sc.grid.stop = sc.grid.start;
  CHECK_THROWS_AS(sc.validate(), Error);
  sc = preset("fig1_left");
  sc.g1 = std::nan("");
  CHECK_THROWS_AS(sc.validate(), Error);
  sc = preset("fig1_left");
  sc.channels = 0;
  CHECK_THROWS_AS(sc.validate(), Error);
  try {
    sc.validate();
  } catch (const Error &e) {
    CHECK(e.code() == Errc::invalid_argument);
  }
}

TEST_CASE("JSON round trip is byte-stable") {
  for (const char *name :
       {"fig1_left", "fig1_right", "fig2_left", "fig2_right"}) {
    const Scenario sc = preset(name);
    const std::string j1 = scenario_to_json(sc);
    const Scenario back = parse_scenario(j1);
    const std::string j2 = scenario_to_json(back);
    CHECK(j1 == j2);
    CHECK(back.name == sc.name);
    CHECK(back.omega.c0 == sc.omega.c0);
    CHECK(back.grid.count == sc.grid.count);
  }
}

TEST_CASE("JSON input conveniences") {
  // a bare number is accepted wherever a complex pair is expected
  const std::string text = R"({
    "name": "custom",
    "e1_expr": {"c0": 1.0, "c1": -0.5},
    "e2_expr": {"c0": 0.0, "c1": 1.0},
    "g1": -0.1,
    "g2": 0.12,
    "omega_expr": {"c0": 0.055, "c1": 0.0},
    "a_grid": {"start": 0.0, "stop": 1.0, "count": 601},
    "channels": 1
  })";
  const Scenario sc = parse_scenario(text);
  CHECK(sc.omega.c0 == cplx(0.055, 0.0));
  CHECK(sc.omega.c1 == cplx(0.0, 0.0));
  CHECK(sc.e1.c1 == -0.5);

  // a manifest wraps the scenario under "config"
  const std::string manifest =
      std::string(R"({"command": "sweep", "config": )") + text + "}";
  const Scenario unwrapped = parse_scenario(manifest);
  CHECK(unwrapped.omega.c0 == cplx(0.055, 0.0));

  CHECK_THROWS_AS(parse_scenario("{not json"), Error);
  try {
    parse_scenario("{not json");
  } catch (const Error &e) {
    CHECK(e.code() == Errc::parse);
  }
}
