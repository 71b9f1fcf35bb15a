#pragma once
// Unit-group-averaged Eisenstein series over a lattice L in C^d:
//
//   E^{beta,alpha}(O, s) = sum over Gamma\(L + O), x != 0, of
//       conj(x)^beta / (x^alpha N(x)^s),   N(x) = prod_i |x_i|^2.
//
// Direct orbit summation in the convergent range; analytic continuation by
// reduction to the lattice series (d = 1) or by Gauss-Legendre integration
// over the fundamental interval of the unit flow (d = 2). Unit groups enter
// only through an embedded generator list and the division index.

#include "ekl/ekseries.hpp"
#include "ekl/field.hpp"

namespace ekl {

struct OrbitSet {
    std::vector<cvec> points; // distinct residues of O modulo the lattice
};

struct EisQuery {
    std::vector<int> beta, alpha; // d exponents each, >= 0
    OrbitSet O;
    cplx s;
    ComplexLattice L;
    HermitianForm H;
    std::vector<cvec> unit_gens; // embedded generators of Gamma (norm-1 part)
    long finite_index = 1;       // |Gamma| for finite Gamma; [Gamma:<eps>] else
    cvec fund_unit;              // embedded infinite-order unit (d >= 2 only)
    real target = real(0);
};

struct EisValue {
    cplx value;
    real error_bound;
    std::string method;
};

// direct summation; needs Re s > (|beta|-|alpha|)/2 + d (with margin)
EisValue e_series_direct(const EisQuery& q);

// any s: d = 1 reduces to the lattice series; d = 2 integrates the unit flow
EisValue e_series(const EisQuery& q);

// orbit of a field element under the unit generators modulo an ideal,
// embedded through the CM type (all distinct residues, not just a rep)
OrbitSet orbit_points(const FieldData& fd, const felem& t, const FractionalIdeal& I);

// distribution relation for principal ideals (c), (f), (b):
//   sum over t in (f/(bc)) / (f/b) of E(Gamma(1+t), 0; f b^{-1})
//     = E(Gamma 1, 0; f b^{-1} c^{-1})
struct DistResult {
    cplx lhs, rhs;
    real residual;
    real error_bound;
    cplx weighted; // Nc * E(1,0; f b^{-1}) - E(1,0; f b^{-1} c^{-1})
};
DistResult verify_distribution(const FieldData& fd, const felem& c_gen,
                               const felem& f_gen, const felem& b_gen,
                               const std::vector<int>& beta,
                               const std::vector<int>& alpha);

} // namespace ekl
