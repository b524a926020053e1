#ifndef MWELL_QUADPREC_HPP
#define MWELL_QUADPREC_HPP

#include <vector>

#include "mwell/numerics.hpp"

namespace mwell {

/// Rayleigh quotient iteration in quadruple precision on the tridiagonal
/// matrix with constant off-diagonal -kinetic and the given diagonal.
/// Interior-sized input/output. Refines lambda and v in place; returns the
/// final quad-precision residual ||Tv - lambda v|| / ||v||.
///
/// Needed because resonance widths reach 1e-18 of the matrix norm: the exact
/// eigenvalues have tiny negative imaginary parts that double precision
/// arithmetic cannot resolve.
double refine_eigenpair_quad(const std::vector<cplx>& diag, double kinetic, cplx& lambda,
                             std::vector<cplx>& v, int max_iter = 12);

}  // namespace mwell

#endif
