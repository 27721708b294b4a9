#pragma once

#include "core/two_level.hpp"

namespace eplab {

struct EigenPair {
  cplx v1[2], v2[2]; // right eigenvectors, v_k^T v_k = 1 when not defective
  cplx r1, r2;       // phase rigidity per state
  bool defect = false;
};

struct MixingTable {
  cplx b[2][2]; // row k = components of eigenvector k in the bare basis
  double theta[2][2];
  bool defect = false;
};

// given: externally supplied eigenvalues to validate against (may be null).
// exact_delta: eps1 - eps2 supplied by a caller that can evaluate the
// difference without subtracting the rounded level energies (may be null).
EigenPair eigenvectors(const System &sys, const SpectralPair *given,
                       const cplx *exact_delta);

// r = (v^T v)/(v^dag v) after normalizing to v^T v = 1; self-orthogonal
// input (v^T v = 0) yields 0. Throws ZeroVector for the zero vector.
cplx phase_rigidity(const cplx v[2]);

MixingTable mixing_coefficients(const EigenPair &pair);

// |v1^dag v2| / (||v1|| ||v2||) with Euclidean norms.
double coalescence_metric(const EigenPair &pair);

} // namespace eplab
