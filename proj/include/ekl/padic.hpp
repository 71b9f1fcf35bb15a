#pragma once
// Finite combinatorics of p-adic interpolation for a split ordinary prime p:
// residue systems and CRT idempotents mod p^m, the partial Fourier transform
// with the pairing model <t, s> = zeta_{p^m}^{t s}, extraction of the finite
// local character chi_fin, conductor decompositions, local and Euler factors,
// and the measure-consistency identity tying the transform to translated
// lattice-series values.

#include "ekl/hecke.hpp"

namespace ekl {

struct PStructure {
    FieldData fd;
    long p = 0;
    int m = 1;
    long pm = 0;                       // p^m
    FractionalIdeal pSigma, pBar;      // the two primes above p
    FractionalIdeal pSigmaM, pBarM, pM; // their m-th powers and (p^m)
    felem gSigma, gBar;                // small generators of the primes
    felem eSigma, eBar;                // CRT idempotents mod p^m
    std::vector<felem> res_sigma, res_bar; // canonical residues mod each power
    std::vector<long> lift_sigma, lift_bar; // integer lifts in [0, p^m)
};

// verifies p splits with one prime on each side of the CM type; the two
// residue towers must be genuinely distinct (inert/ramified primes fail)
PStructure check_ordinary(const FieldData& fd, long p, int m);

// exact tables on O/p^m as CRT pairs, indexed [sigma residue][bar residue]
using PTable = std::vector<std::vector<cyc>>;

// (P rho)(s, frak_s) = p^{-dm} sum_t <t, frak_s>^{-1} rho(t, s);
// output indexed [frak_s (sigma side)][s (bar side)]
PTable partial_fourier(const PStructure& ps, const PTable& rho);

// finite local character: chi((lambda)) = chi_fin(lambda) conj-norm^beta /
// norm^alpha, tabulated on unit residues mod p^m (zero elsewhere); every
// value is verified against two independent CRT lifts
PTable extract_chi_fin(const HeckeCharacter& chi, const PStructure& ps);

struct Decomposition {
    felem c;            // c = unit * (p-part generator), c = 1 mod the rest
    felem b_gen;        // generator of b (class number one)
    int a_sigma = 0;    // sigma-side exponent of the conductor
    int b_bar = 0;      // bar-side exponent
};
Decomposition decompose_conductor(const HeckeCharacter& chi, const PStructure& ps,
                                  const felem& cond_gen);

// Local = N(c)^{alpha0} (PF)(c^{-1}) / (conj-N(c)^{beta0} chi(b)) with
// F(t, s) = chi_fin at (t, s^{-1}), zero-extended off the units
cyc local_factor(const HeckeCharacter& chi, const PStructure& ps,
                 const Decomposition& dec);

// exact pair: prod over sigma-side primes (1 - chi(q)^{-1}/Nq),
//             prod over bar-side primes (1 - chi(q)); ramified factors are 1
std::pair<cyc, cyc> euler_factors(const HeckeCharacter& chi, const PStructure& ps);

struct InterpolatedValue {
    cplx value;
    real error_bound;
    cyc local, euler_sigma, euler_bar; // exact skeleton factors
    long unit_index;                   // [O^x : units congruent to 1 mod f]
    Recognition recognition;
};
// period-normalized interpolated value: factorial/period factor * Local *
// unit index * Euler factors * L(chi, 0); p-adic periods are out of scope
InterpolatedValue interpolated_value(const HeckeCharacter& chi,
                                     const PeriodData& periods,
                                     const PStructure& ps);

// measure consistency (d = 1): with g the order-p^m torsion point e_bar/p^m,
//   sum over frak_s of (P rho)(frak_s) K(x + frak_s g, 0, s; L)
//     = p^{-m} sum over t of rho(t) K(x, w_t, s; pbar^{-m} L)
// where w_t in the dual of L is chosen with <g, w_t> = -t/p^m mod 1
enum class RhoKind { one, pairing, delta };
struct MeasureReport {
    cplx lhs, rhs;
    real residual, error_bound;
};
MeasureReport measure_consistency_check(const PStructure& ps, RhoKind kind,
                                        long param);

// Euler stripping: (1 - chi(pbar)) L_f(chi, 0) against the L-value computed
// with the bar-enlarged conductor, both sides independent series assemblies
struct StripReport {
    cplx lhs, rhs;
    real residual, error_bound;
};
StripReport euler_strip_check(const HeckeCharacter& chi, const PStructure& ps);

} // namespace ekl
