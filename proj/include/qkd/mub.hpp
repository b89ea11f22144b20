// mub.hpp
// Mutually unbiased basis sets for qudit dimensions.

#pragma once

#include "qkd/state.hpp"

namespace qkd {

/// True if a full set of d+1 MUBs can be constructed here (d in {2,3,4,5,7,8}).
bool full_mub_supported(int d);

/// m mutually unbiased bases in dimension d.
///
/// bases[0] is the computational basis. For m == 2 (any d in [2,16]) the
/// second basis is dqft_basis(d). For m > 2, d must be in {2,3,4,5,7,8}:
///   - d == 2: the sigma_z, sigma_x, sigma_y eigenbases;
///   - odd prime d: quadratic-phase bases with amplitudes w^(b*j^2 + k*j),
///     whose b = 0 member is exactly dqft_basis(d);
///   - d == 4, 8: additive-character bases with quaternary phases
///     i^tr((a + 2b) x) over the Galois ring GR(4, log2 d).
/// The returned set is numerically validated: every cross-basis overlap
/// satisfies | |<a|b>|^2 - 1/d | <= 1e-10.
BasisSet mub_set(int d, int m);

}  // namespace qkd
