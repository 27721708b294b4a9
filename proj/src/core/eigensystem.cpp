#include "core/eigensystem.hpp"

#include <cmath>

namespace eplab {

namespace {

// Leading-component sign rule: after normalization the first component whose
// modulus is not negligible gets an argument in (-pi/2, pi/2].
void fix_phase(cplx v[2]) {
  const double a0 = std::abs(v[0]);
  const double a1 = std::abs(v[1]);
  const cplx lead = (a0 > 1e-14 * (a0 + a1)) ? v[0] : v[1];
  if (lead.real() < 0.0 || (lead.real() == 0.0 && lead.imag() < 0.0)) {
    v[0] = -v[0];
    v[1] = -v[1];
  }
}

cplx rigidity_of_normalized(const cplx v[2]) {
  const cplx tt = v[0] * v[0] + v[1] * v[1];
  const double dd = std::norm(v[0]) + std::norm(v[1]);
  return tt / dd;
}

// Eigenvector for the eigenvalue mean + s*z (s = +1 or -1), h = delta/2.
// Two algebraically equivalent candidates; their unconjugated self-products
// are 2z(sz - h) and 2z(sz + h), so the larger-|.| one is numerically safe.
void general_vector(const cplx &omega, const cplx &z, const cplx &h, double s,
                    cplx v[2]) {
  const cplx sz = s * z;
  const cplx ua[2] = {omega, sz - h};
  const cplx ub[2] = {sz + h, omega};
  const cplx ta = ua[0] * ua[0] + ua[1] * ua[1];
  const cplx tb = ub[0] * ub[0] + ub[1] * ub[1];
  const bool use_a = std::abs(ta) >= std::abs(tb);
  const cplx *u = use_a ? ua : ub;
  const cplx t = use_a ? ta : tb;
  if (std::abs(t) == 0.0)
    throw Error(Errc::internal, "vanishing eigenvector self-product");
  const cplx root = std::sqrt(t);
  v[0] = u[0] / root;
  v[1] = u[1] / root;
  fix_phase(v);
}

} // namespace

EigenPair eigenvectors(const System &sys, const SpectralPair *given,
                       const cplx *exact_delta) {
  validate(sys);
  const double scale = scale_of(sys);
  const double ep_tol = 1e-8 * scale;
  const cplx delta = exact_delta ? *exact_delta : sys.eps1() - sys.eps2();
  const cplx mean = 0.5 * (sys.eps1() + sys.eps2());
  const SpectralPair sp = eigenvalues_from(mean, delta, sys.omega);

  if (given) {
    const double tol = 1e-8 * scale;
    if (std::abs(given->ev1 - sp.ev1) > tol ||
        std::abs(given->ev2 - sp.ev2) > tol || std::abs(given->z - sp.z) > tol)
      throw Error(Errc::inconsistent_spectrum,
                  "supplied spectral pair does not match the system");
  }

  EigenPair out;
  if (sys.omega == cplx(0.0, 0.0)) {
    // Diagonal matrix: standard basis, matched to the +Z/-Z ordering. This
    // covers eps1 == eps2 too (diagonalizable degeneracy, not a defect).
    const bool first = std::abs(sp.ev1 - sys.eps1()) <=
                       std::abs(sp.ev1 - sys.eps2());
    out.v1[0] = first ? 1.0 : 0.0;
    out.v1[1] = first ? 0.0 : 1.0;
    out.v2[0] = first ? 0.0 : 1.0;
    out.v2[1] = first ? 1.0 : 0.0;
    out.r1 = out.r2 = 1.0;
    out.defect = false;
    return out;
  }

  if (std::abs(sp.z) < ep_tol) {
    // Defective branch: single eigenvector (omega, -delta/2), Euclidean
    // normalized since the biorthogonal product vanishes here.
    const cplx q = -0.5 * delta;
    const double n = std::sqrt(std::norm(sys.omega) + std::norm(q));
    cplx v[2] = {sys.omega / n, q / n};
    fix_phase(v);
    out.v1[0] = out.v2[0] = v[0];
    out.v1[1] = out.v2[1] = v[1];
    out.r1 = out.r2 = 0.0;
    out.defect = true;
    return out;
  }

  const cplx h = 0.5 * delta;
  general_vector(sys.omega, sp.z, h, +1.0, out.v1);
  general_vector(sys.omega, sp.z, h, -1.0, out.v2);
  out.r1 = rigidity_of_normalized(out.v1);
  out.r2 = rigidity_of_normalized(out.v2);
  out.defect = false;
  return out;
}

cplx phase_rigidity(const cplx v[2]) {
  if (v[0] == cplx(0.0, 0.0) && v[1] == cplx(0.0, 0.0))
    throw Error(Errc::zero_vector, "phase rigidity of the zero vector");
  const cplx t = v[0] * v[0] + v[1] * v[1];
  if (std::abs(t) == 0.0)
    return {0.0, 0.0}; // self-orthogonal: the defective limit
  const cplx root = std::sqrt(t);
  const cplx w[2] = {v[0] / root, v[1] / root};
  return rigidity_of_normalized(w);
}

MixingTable mixing_coefficients(const EigenPair &pair) {
  MixingTable out;
  for (int l = 0; l < 2; ++l) {
    out.b[0][l] = pair.v1[l];
    out.b[1][l] = pair.v2[l];
  }
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      out.theta[k][l] = std::atan2(out.b[k][l].imag(), out.b[k][l].real());
  out.defect = pair.defect;
  return out;
}

double coalescence_metric(const EigenPair &pair) {
  const double n1 = std::sqrt(std::norm(pair.v1[0]) + std::norm(pair.v1[1]));
  const double n2 = std::sqrt(std::norm(pair.v2[0]) + std::norm(pair.v2[1]));
  if (n1 == 0.0 || n2 == 0.0)
    throw Error(Errc::zero_vector, "coalescence metric of a zero vector");
  const cplx ip =
      std::conj(pair.v1[0]) * pair.v2[0] + std::conj(pair.v1[1]) * pair.v2[1];
  return std::abs(ip) / (n1 * n2);
}

} // namespace eplab
