#include "core/two_level.hpp"

#include <algorithm>
#include <cmath>

namespace eplab {

double scale_of(const System &sys) {
  return std::max({std::abs(sys.eps1()), std::abs(sys.eps2()),
                   std::abs(sys.omega), 1.0});
}

void validate(const System &sys) {
  const bool ok = std::isfinite(sys.e1) && std::isfinite(sys.e2) &&
                  std::isfinite(sys.g1) && std::isfinite(sys.g2) &&
                  std::isfinite(sys.omega.real()) &&
                  std::isfinite(sys.omega.imag());
  if (!ok)
    throw Error(Errc::invalid_argument, "system fields must be finite");
}

cplx splitting_radicand(cplx delta, cplx omega) {
  // 2i*omega assembled componentwise; a complex multiply by (0,2) would
  // round differently and can miss an exact zero of a factor.
  const cplx c(-2.0 * omega.imag(), 2.0 * omega.real());
  const cplx r = (delta + c) * (delta - c);
  return r + cplx(0.0, 0.0);
}

cplx half_splitting(cplx delta, cplx omega) {
  return 0.5 * std::sqrt(splitting_radicand(delta, omega));
}

cplx discriminant(const System &sys) {
  validate(sys);
  return half_splitting(sys.eps1() - sys.eps2(), sys.omega);
}

SpectralPair eigenvalues_from(cplx mean, cplx delta, cplx omega) {
  const cplx z = half_splitting(delta, omega);
  return {mean + z, mean - z, z};
}

SpectralPair eigenvalues(const System &sys) {
  validate(sys);
  const cplx mean = 0.5 * (sys.eps1() + sys.eps2());
  return eigenvalues_from(mean, sys.eps1() - sys.eps2(), sys.omega);
}

void hamiltonian(const System &sys, cplx out[4]) {
  validate(sys);
  out[0] = sys.eps1();
  out[1] = sys.omega;
  out[2] = sys.omega;
  out[3] = sys.eps2();
}

} // namespace eplab
