#pragma once

#include "core/types.hpp"

#include <string>

namespace eplab {

struct AffineReal {
  double c0 = 0.0, c1 = 0.0;
  double at(double a) const { return c0 + c1 * a; }
};

struct AffineComplex {
  cplx c0, c1;
  cplx at(double a) const { return c0 + c1 * a; }
};

struct Grid {
  double start = 0.0, stop = 1.0;
  int count = 601;

  // a_k = start + (k*(stop-start))/(count-1), in exactly this evaluation
  // order; it lands on more representable values than start + k*step.
  double point(int k) const;
  double step() const;
};

struct Scenario {
  std::string name = "custom";
  AffineReal e1, e2;         // bare level positions as functions of a
  double g1 = 0.0, g2 = 0.0; // full widths
  AffineComplex omega;
  Grid grid;
  int channels = 1; // metadata only

  System system_at(double a) const;

  // e1(a) - e2(a) with the affine coefficients subtracted before evaluation;
  // at a crossing this is exactly zero where the difference of the two
  // rounded energies is not.
  double delta_real_at(double a) const;
  cplx delta_at(double a) const; // eps1 - eps2 built from delta_real_at

  void validate() const; // throws invalid_argument
};

Scenario preset(const std::string &name);
Scenario parse_scenario(const std::string &json_text);
std::string scenario_to_json(const Scenario &sc);

} // namespace eplab
