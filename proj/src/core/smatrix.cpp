#include "core/smatrix.hpp"

#include <cmath>
#include <limits>

namespace eplab {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void check_finite(double energy, double e_res, double g_res) {
  if (!std::isfinite(energy) || !std::isfinite(e_res) || !std::isfinite(g_res))
    throw Error(Errc::invalid_argument, "resonance arguments must be finite");
}

} // namespace

cplx s_one(double energy, double e_res, double g_res) {
  check_finite(energy, e_res, g_res);
  if (g_res == 0.0 && energy == e_res)
    throw Error(Errc::pole_on_real_axis,
                "zero-width resonance evaluated at its own energy");
  const double x = energy - e_res;
  const double g = 0.5 * g_res;
  return cplx(x, g) / cplx(x, -g);
}

cplx s_two(double energy, double e1, double g1, double e2, double g2) {
  return s_one(energy, e1, g1) * s_one(energy, e2, g2);
}

cplx s_double_pole(double energy, double e_d, double g_d) {
  check_finite(energy, e_d, g_d);
  if (g_d == 0.0)
    throw Error(Errc::invalid_argument,
                "double pole requires a nonzero width");
  const cplx d(energy - e_d, -0.5 * g_d);
  const cplx t1 = cplx(0.0, 2.0 * g_d) / d;
  const cplx t2 = (g_d * g_d) / (d * d);
  return (1.0 + t1) - t2;
}

double cross_section(cplx s) { return std::norm(1.0 - s); }

LineShapeFeatures line_shape_features(const std::vector<double> &energy,
                                      const std::vector<double> &sigma) {
  const int n = static_cast<int>(energy.size());
  if (n < 3 || sigma.size() != energy.size())
    throw Error(Errc::too_few_points,
                "line shape analysis needs at least 3 matching samples");
  for (int i = 1; i < n; ++i)
    if (!(energy[i] > energy[i - 1]))
      throw Error(Errc::invalid_argument, "energy grid must be increasing");

  LineShapeFeatures out;
  for (int i = 1; i + 1 < n; ++i) {
    const bool is_max = sigma[i] > sigma[i - 1] && sigma[i] > sigma[i + 1];
    const bool is_min = sigma[i] < sigma[i - 1] && sigma[i] < sigma[i + 1];
    if (!is_max && !is_min)
      continue;
    Peak p;
    p.position = energy[i];
    p.height = sigma[i];
    p.left_halfwidth = kNan;
    p.right_halfwidth = kNan;
    p.asymmetry = kNan;
    if (is_min) {
      out.minima.push_back(p);
      continue;
    }
    const double level = 0.5 * p.height;
    // walk outward to the first crossing of the half level, interpolate
    for (int j = i; j-- > 0;) {
      if (sigma[j] <= level) {
        const double frac = (level - sigma[j]) / (sigma[j + 1] - sigma[j]);
        const double e_cross = energy[j] + frac * (energy[j + 1] - energy[j]);
        p.left_halfwidth = p.position - e_cross;
        break;
      }
    }
    for (int j = i + 1; j < n; ++j) {
      if (sigma[j] <= level) {
        const double frac = (sigma[j - 1] - level) / (sigma[j - 1] - sigma[j]);
        const double e_cross =
            energy[j - 1] + frac * (energy[j] - energy[j - 1]);
        p.right_halfwidth = e_cross - p.position;
        break;
      }
    }
    if (std::isfinite(p.left_halfwidth) && std::isfinite(p.right_halfwidth))
      p.asymmetry = (p.right_halfwidth - p.left_halfwidth) /
                    (p.right_halfwidth + p.left_halfwidth);
    out.peaks.push_back(p);
  }
  return out;
}

} // namespace eplab
