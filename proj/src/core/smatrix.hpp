#pragma once

#include "core/types.hpp"

#include <vector>

namespace eplab {

// One-resonance unitary factor (E - E1 + i*G1/2)/(E - E1 - i*G1/2).
// Widths are passed with their produced sign (negative = decay).
cplx s_one(double energy, double e_res, double g_res);

// Product of two one-resonance factors.
cplx s_two(double energy, double e1, double g1, double e2, double g2);

// Double-pole form 1 + 2i*G/d - G^2/d^2 with d = E - E_d - i*G_d/2;
// the coincident limit of s_two. Requires g_d != 0.
cplx s_double_pole(double energy, double e_d, double g_d);

// |1 - S|^2 with the proportionality constant fixed to 1.
double cross_section(cplx s);

struct Peak {
  double position = 0.0;
  double height = 0.0;
  double left_halfwidth;  // NaN when the half level is never crossed
  double right_halfwidth;
  double asymmetry; // (right - left)/(right + left), NaN when incomplete
};

struct LineShapeFeatures {
  std::vector<Peak> peaks;
  std::vector<Peak> minima; // position/height only, other fields NaN
};

// Strict discrete extrema of a sampled cross section; half-height crossings
// by linear interpolation. Throws TooFewPoints for fewer than 3 samples.
LineShapeFeatures line_shape_features(const std::vector<double> &energy,
                                      const std::vector<double> &sigma);

} // namespace eplab
