#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace eplab {

using cplx = std::complex<double>;

enum class Errc {
  ok = 0,
  invalid_argument,
  inconsistent_spectrum,
  zero_vector,
  no_root_in_interval,
  degenerate_widths,
  no_convergence,
  left_box,
  family_mismatch,
  unknown_preset,
  too_few_points,
  pole_on_real_axis,
  parse,
  io,
  internal,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string &msg)
      : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

struct System {
  double e1 = 0.0, e2 = 0.0; // bare level positions
  double g1 = 0.0, g2 = 0.0; // full widths, signed (negative = loss)
  cplx omega;                // symmetric coupling

  cplx eps1() const { return {e1, 0.5 * g1}; }
  cplx eps2() const { return {e2, 0.5 * g2}; }
};

struct SpectralPair {
  cplx ev1, ev2; // ev1 carries +Z
  cplx z;
};

} // namespace eplab
