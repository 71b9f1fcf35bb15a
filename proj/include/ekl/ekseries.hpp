#pragma once
// Eisenstein-Kronecker lattice series over a complex lattice Lambda in C^d:
//
//   K^mu(z, w, s) = sum over lambda != -z of
//       conj(z + lambda)^mu e^{2 pi i <lambda, w>} / |z + lambda|_H^{2s}
//
// with <x,y> = Im H(x,y). theta is the associated Gaussian kernel; ek_k
// evaluates the analytic continuation through the incomplete-gamma splitting
// of the completed function G(s) = pi^{-s} Gamma(s) K^mu(s), which satisfies
//   G(s) = e^{2 pi i <w,z>} vol^{-1} G*(d + |mu| - s)
// with G* the completed series on the dual lattice with z and w swapped.

#include "ekl/lattice.hpp"
#include "ekl/specfun.hpp"

namespace ekl {

struct EKQuery {
    ComplexLattice L;
    HermitianForm H;
    cvec z, w;
    std::vector<int> mu;    // d nonnegative exponents
    cplx s;
    real target = real(0);  // absolute truncation error; 0 = precision default
};

struct EKValue {
    cplx value;        // K^mu(z, w, s)
    cplx completed;    // G(s) = pi^{-s} Gamma(s) K^mu(s)
    real error_bound;  // certified absolute truncation bound on `completed`
    cplx pole_at_0;    // residue of G at s = 0 (equals -[z in L] e^{2 pi i <w,z>})
    cplx pole_at_d;    // residue of G at s = d (equals [w in L*] / vol)
    std::string method;
};

// theta^mu_t(z, w) = sum over lambda of conj(z+lambda)^mu
//   e^{-pi t |z+lambda|_H^2} e^{2 pi i <lambda, w>}, certified tail.
// `parallel` switches the OpenMP kernel; results are bit-identical either
// way (terms are reduced in canonical enumeration order).
cplx theta(const ComplexLattice& L, const HermitianForm& H, const cvec& z,
           const cvec& w, const real& t, const std::vector<int>& mu,
           real* tail_bound = nullptr, bool parallel = true);

// direct summation in the convergence region Re s >= d + |mu|/2 + 1
EKValue ek_k_direct(const EKQuery& q);

// analytic continuation valid at every s except the pole of K at s = d
// (present when mu = 0 and w lies in the dual lattice)
EKValue ek_k(const EKQuery& q);

// membership of x in L up to lattice-coordinate distance 2^-(P-16);
// distances between that and 2^-24 are ambiguous and fail loudly
bool lattice_member(const ComplexLattice& L, const cvec& x);

} // namespace ekl
