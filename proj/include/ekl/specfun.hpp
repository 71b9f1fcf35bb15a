#pragma once
// Special functions at arbitrary precision: complex gamma (Spouge's series
// with reflection), reciprocal gamma, upper incomplete gamma (continued
// fraction / series / recurrence, per the region), AGM, Legendre nodes.
//
// Error model: each routine works at the caller's precision plus an internal
// guard chosen so that the returned value is accurate to within a few ulps at
// the caller's precision; callers should budget 2^-(P-8) relative error per
// call. Truncation criteria are documented at the implementation site.

#include "ekl/complex.hpp"

namespace ekl {

cplx gamma(const cplx& z);     // poles at nonpositive integers -> inf
cplx rgamma(const cplx& z);    // 1/gamma, zero at nonpositive integers

// upper incomplete gamma  Gamma(a,x) = int_x^inf t^{a-1} e^{-t} dt,  x > 0.
// Works for arbitrary complex a including nonpositive integers.
cplx upper_gamma(const cplx& a, const real& x);

real agm(real a, real b);
real lemniscate_constant();    // pi / agm(1, sqrt 2)

// Gauss-Legendre nodes/weights on [-1,1], ascending nodes
void gauss_legendre(int n, std::vector<real>& nodes, std::vector<real>& weights);

} // namespace ekl
