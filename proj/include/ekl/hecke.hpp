#pragma once
// Hecke characters on CM fields with critical infinity types, their L-values
// at s = 0 assembled from unit-averaged Eisenstein series, period
// normalization, exact regularizer arithmetic, and algebraic recognition.

#include "ekl/cyclotomic.hpp"
#include "ekl/eisenstein.hpp"

namespace ekl {

struct InfinityType {
    std::vector<int> beta;  // exponents on the conjugate embeddings
    std::vector<int> alpha; // exponents on the CM embeddings
};

enum class Criticality { invalid, hecke_type_only, critical };

struct CritResult {
    Criticality cls;
    int weight;        // beta - alpha, constant across fibers when valid
    int failing_fiber; // -1 unless cls == invalid
};

// type check against the CM fiber structure: beta and alpha must be constant
// on each fiber with a common difference w; critical additionally needs
// alpha >= 1 and beta >= 0 everywhere
CritResult is_critical(const InfinityType& inf, const CMTypeSpec& cm);

// character on principal ideals of a class-number-one cyclotomic preset
// field: chi((lambda)) = fin(lambda mod f) * lambda^{-alpha} conj(lambda)^beta,
// all values exact in Q(zeta_{zeta_order})
struct HeckeCharacter {
    FieldData fd;
    FractionalIdeal cond;
    InfinityType inf;
    int zeta_order = 4; // coefficient field Q(zeta_N)
    // finite part on unit residues mod cond (empty = trivial finite part)
    std::vector<std::pair<felem, cyc>> fin;
};

// builds and validates: well-definedness over the torsion units (generator
// independence) and multiplicativity of the finite part
HeckeCharacter make_character(const FieldData& fd, const FractionalIdeal& cond,
                              const InfinityType& inf,
                              std::vector<std::pair<felem, cyc>> fin = {},
                              int zeta_order = 0);

// exact value chi((lambda)); lambda must generate an ideal coprime to cond
cyc chi_value(const HeckeCharacter& chi, const felem& lambda);

// element of a cyclotomic power-basis field as an exact value in Q(zeta_N)
cyc element_as_cyc(const NumberFieldSpec& nf, const felem& x, int N);

struct LValue {
    cplx value;
    real error_bound;
};

// partial L-value at s = 0 attached to the class of (b_gen); conductor (1)
// uses the unit-quotient parametrization of ideals in the class, a nontrivial
// conductor sums over the ray coset of 1
LValue partial_L(const HeckeCharacter& chi, const felem& b_gen);
LValue total_L(const HeckeCharacter& chi,
               const std::vector<felem>& class_gens = {});

struct PeriodData {
    cvec Omega;      // periods on the CM embeddings
    cvec OmegaDual;  // dual periods on the conjugate embeddings
    cvec pairing;    // polarization pairing values
    std::string provenance;
};

// lemniscatic preset: Omega = lemniscate constant, pairing = Omega^2 / pi
PeriodData preset_periods(const std::string& name);
void verify_periods(const PeriodData& p); // duality invariant

struct Recognition {
    bool found = false;
    rational re, im;
    real residual;
};

// continued-fraction reconstruction of x as (gaussian) rational
Recognition recognize_algebraic(const cplx& x, const bigint& denom_bound,
                                bool gaussian);

struct NormalizedLValue {
    cplx raw;            // L(chi, 0)
    cplx normalized;     // factorial/period factor * regularizer * raw
    real error_bound;
    cyc regularizer;     // exact (chi(c)Nc - 1) [* (1 - chi(c'))]
    std::string regularizer_descriptor;
    Recognition recognition;
};

// c_gen coprime to the conductor; cprime_gen optional (empty = absent),
// allowed only for trivial conductor
NormalizedLValue normalized_L(const HeckeCharacter& chi, const PeriodData& periods,
                              const felem& c_gen, const felem& cprime_gen = {},
                              const bigint& denom_bound = bigint(1) << 64);

} // namespace ekl
