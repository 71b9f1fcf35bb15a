#pragma once
// Totally imaginary number fields ingested from config or built-in presets:
// integral basis + multiplication table + complex embeddings, CM types,
// fractional ideals in Hermite normal form, unit groups, class reps.

#include "ekl/exact.hpp"
#include "ekl/lattice.hpp"
#include <string>
#include <vector>

namespace ekl {

using felem = qvec; // coordinates over the integral basis

struct NumberFieldSpec {
    std::string name;
    int degree = 2;                              // 2d
    std::vector<std::vector<ivec>> mult;         // mult[i][j] = coords of e_i e_j
    std::vector<cvec> embeddings;                // embeddings[s][i] = sigma_s(e_i), 1-dim entries
    std::vector<int> conj_pair;                  // fixed-point-free involution on embeddings
    bigint discriminant;
    int cyclotomic_conductor = 0;                // n when the basis is the power
                                                 // basis of Q(zeta_n), else 0

    int n() const { return degree; }
};

struct CMTypeSpec {
    std::vector<int> sigma;                      // d embedding indices
    // optional lifting data: partition of sigma into fibers over the CM subfield
    std::vector<std::vector<int>> fibers;
};

struct FractionalIdeal {
    imat num;      // n x n, rows = numerator basis in HNF
    bigint den = 1;
    std::string label;
};

struct UnitGroupSpec {
    std::vector<felem> gens;   // torsion generator first by convention
    long torsion_order = 1;
    long index_in_full = 1;
    bool full = true;          // congruence level: full units or O_f^*
    FractionalIdeal level;     // f when not full
};

struct ClassRepSet {
    std::vector<FractionalIdeal> reps;
};

// a field bundle as shipped by presets / configs
struct FieldData {
    NumberFieldSpec nf;
    CMTypeSpec cm;
    UnitGroupSpec units;
    ClassRepSet cls;
    // prime data for the padic module: primes above p with Sigma-membership
    struct PrimeInfo {
        long p;
        FractionalIdeal ideal;
        bool in_sigma;      // true if induced by Sigma
        int residue_degree;
    };
    std::vector<PrimeInfo> primes;
};

// ---- element arithmetic (exact) ----
felem fe_zero(const NumberFieldSpec& f);
felem fe_one(const NumberFieldSpec& f);
felem fe_from_int(const NumberFieldSpec& f, long v);
felem fe_add(const felem& a, const felem& b);
felem fe_sub(const felem& a, const felem& b);
felem fe_neg(const felem& a);
felem fe_mul(const NumberFieldSpec& f, const felem& a, const felem& b);
felem fe_inv(const NumberFieldSpec& f, const felem& a);
rational fe_norm(const NumberFieldSpec& f, const felem& a);   // field norm
bool fe_is_zero(const felem& a);
bool fe_eq(const felem& a, const felem& b);
cplx fe_embed(const NumberFieldSpec& f, const felem& a, int sigma);
cvec fe_embed_cm(const NumberFieldSpec& f, const CMTypeSpec& cm, const felem& a);

// ---- ideals (exact HNF arithmetic) ----
FractionalIdeal ideal_from_basis(const NumberFieldSpec& f, const qmat& rows,
                                 const std::string& label = "");
FractionalIdeal ideal_principal(const NumberFieldSpec& f, const felem& g,
                                const std::string& label = "");
FractionalIdeal ideal_unit(const NumberFieldSpec& f);
FractionalIdeal ideal_mul(const NumberFieldSpec& f, const FractionalIdeal& a,
                          const FractionalIdeal& b);
FractionalIdeal ideal_sum(const NumberFieldSpec& f, const FractionalIdeal& a,
                          const FractionalIdeal& b);
rational ideal_norm(const NumberFieldSpec& f, const FractionalIdeal& a);
bool ideal_contains(const NumberFieldSpec& f, const FractionalIdeal& a, const felem& x);
bool ideal_subset(const NumberFieldSpec& f, const FractionalIdeal& sub,
                  const FractionalIdeal& super);
bool ideal_eq(const NumberFieldSpec& f, const FractionalIdeal& a, const FractionalIdeal& b);
bool ideal_coprime(const NumberFieldSpec& f, const FractionalIdeal& a,
                   const FractionalIdeal& b);
qmat ideal_basis(const FractionalIdeal& a); // rows over the integral basis
felem fe_mod(const NumberFieldSpec& f, const felem& x, const FractionalIdeal& I);

// ---- spec operations ----
NumberFieldSpec load_field(const std::string& json_text); // throws MalformedConfig/...
FieldData load_field_data(const std::string& json_text);  // full bundle (preset or inline)
FieldData preset_field(const std::string& name);           // "Qi", "Eisenstein", "Qzeta5"
void verify_field(const NumberFieldSpec& f);                // InvariantViolation on failure

ComplexLattice embed_ideal(const NumberFieldSpec& f, const FractionalIdeal& I,
                           const CMTypeSpec& cm, const cvec& scale);

std::vector<felem> coset_reps(const NumberFieldSpec& f, const FractionalIdeal& sub,
                              const FractionalIdeal& super);

struct OrbitRep {
    felem rep;
    long size;
};
std::vector<OrbitRep> unit_orbit_reps(const NumberFieldSpec& f,
                                      const std::vector<felem>& points,
                                      const FractionalIdeal& mod_ideal,
                                      const UnitGroupSpec& gamma);

} // namespace ekl
