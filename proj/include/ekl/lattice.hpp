#pragma once
// Complex lattices in C^d under a diagonal Hermitian form H(z,w) =
// sum_i r_i z_i conj(w_i), with the alternating pairing <x,y> = Im H(x,y).
// Provides duals, covolumes, certified point enumeration and certified
// Gaussian / power-law tail bounds for truncated lattice sums.

#include "ekl/complex.hpp"
#include "ekl/errors.hpp"
#include <optional>
#include <string>

namespace ekl {

struct HermitianForm {
    std::vector<real> r; // positive scale per coordinate
    int dim() const { return static_cast<int>(r.size()); }
};

HermitianForm std_form(int d);

// H(x,y), <x,y> = Im H(x,y), |x|_H^2
cplx herm(const HermitianForm& H, const cvec& x, const cvec& y);
real pairing(const HermitianForm& H, const cvec& x, const cvec& y);
real norm_H(const HermitianForm& H, const cvec& x);

struct ComplexLattice {
    int d = 1;
    std::vector<cvec> gens;    // 2d generators, each a vector in C^d
    std::string provenance;    // free-form note (field/ideal/scale) when known

    // cached geometry (filled lazily by the functions below)
    mutable std::optional<real> cached_min_norm2; // under the std form
};

// lattice from explicit generators; verifies full real rank
ComplexLattice make_lattice(int d, std::vector<cvec> gens, std::string prov = "");

ComplexLattice dual_lattice(const ComplexLattice& L, const HermitianForm& H);
real covolume(const ComplexLattice& L, const HermitianForm& H);

// squared H-norm of a shortest nonzero vector
real min_norm2(const ComplexLattice& L, const HermitianForm& H);

struct ShellEnumeration {
    cvec center;                          // z
    real radius;                          // R
    std::vector<std::vector<long>> coords; // integer coordinates, lex order
    std::vector<cvec> points;             // z + lattice vector (same order)
    bool certified_complete = true;
};

// all lattice vectors v with |z + v|_H <= R, complete by construction
// (Fincke-Pohst over the Cholesky factor of the real Gram matrix)
ShellEnumeration enumerate_shells(const ComplexLattice& L, const HermitianForm& H,
                                  const cvec& z, const real& R,
                                  long budget = 80000000L);

// rigorous bound on sum over |z+v|_H > R of |z+v|_H^m exp(-pi t |z+v|_H^2)
real gaussian_tail(const ComplexLattice& L, const HermitianForm& H,
                   const real& R, const real& t, int m);

// rigorous bound on sum over |z+v|_H > R of |z+v|_H^q, q < -2d
real powerlaw_tail(const ComplexLattice& L, const HermitianForm& H,
                   const real& R, const real& q);

// smallest radius (on a coarse grid) with gaussian_tail < target
real truncation_radius(const ComplexLattice& L, const HermitianForm& H,
                       const real& t, int mu_degree, const real& target);

// optional persistent cache for enumerations (versioned binary file per key)
void set_shell_cache_dir(const std::string& dir); // empty = disabled
std::string lattice_fingerprint(const ComplexLattice& L, const HermitianForm& H);

} // namespace ekl
