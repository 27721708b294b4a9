#pragma once

#include "core/types.hpp"

namespace eplab {

// Tolerance scale for a system: max(|eps1|, |eps2|, |omega|, 1).
double scale_of(const System &sys);

// Throws invalid_argument when any field is non-finite.
void validate(const System &sys);

// Radicand of the level-splitting square root, (eps1-eps2)^2 + 4*omega^2,
// kept in the factored form (d + 2i*w)(d - 2i*w) so that exact cancellations
// at a crossing survive in floating point. The result is folded with +0.0 to
// normalize signed zeros before the principal square root picks its branch.
cplx splitting_radicand(cplx delta, cplx omega);

// Z: half the principal square root of the radicand.
cplx half_splitting(cplx delta, cplx omega);

cplx discriminant(const System &sys);

// delta is eps1 - eps2; callers that can evaluate the difference more
// faithfully than by subtracting the rounded level energies (the sweep
// engine subtracts affine coefficients first) pass it here.
SpectralPair eigenvalues_from(cplx mean, cplx delta, cplx omega);
SpectralPair eigenvalues(const System &sys);

// Row-major [[eps1, omega], [omega, eps2]].
void hamiltonian(const System &sys, cplx out[4]);

} // namespace eplab
