#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ekl/field.hpp"

using namespace ekl;

TEST_CASE("preset fields validate") {
    set_precision_bits(128);
    for (const char* name : {"Qi", "Eisenstein", "Qzeta5"}) {
        FieldData fd = preset_field(name);
        verify_field(fd.nf);
        CHECK(fd.cm.sigma.size() == static_cast<size_t>(fd.nf.n() / 2));
    }
}

TEST_CASE("element arithmetic in Q(i)") {
    set_precision_bits(128);
    FieldData fd = preset_field("Qi");
    const auto& nf = fd.nf;
    felem i = {rational(0), rational(1)};
    felem x = fe_mul(nf, i, i);
    CHECK(fe_eq(x, fe_from_int(nf, -1)));
    felem a = {rational(2), rational(1)}; // 2 + i
    CHECK(fe_norm(nf, a) == rational(5));
    felem ai = fe_inv(nf, a);
    CHECK(fe_eq(fe_mul(nf, a, ai), fe_one(nf)));
    cplx e = fe_embed(nf, a, fd.cm.sigma[0]);
    CHECK(abs(e - cplx(real(2), real(1))) < pow2(-120));
}

TEST_CASE("ideal arithmetic in Q(i)") {
    FieldData fd = preset_field("Qi");
    const auto& nf = fd.nf;
    felem a = {rational(2), rational(1)};
    felem ab = {rational(2), rational(-1)};
    FractionalIdeal A = ideal_principal(nf, a);
    FractionalIdeal B = ideal_principal(nf, ab);
    CHECK(ideal_norm(nf, A) == rational(5));
    CHECK(ideal_coprime(nf, A, B));
    FractionalIdeal P = ideal_mul(nf, A, B);
    CHECK(ideal_eq(nf, P, ideal_principal(nf, fe_from_int(nf, 5))));
    CHECK(ideal_contains(nf, A, a));
    CHECK(!ideal_contains(nf, A, fe_one(nf)));
    CHECK(ideal_subset(nf, P, A));
    CHECK(!ideal_subset(nf, A, P));
    // fractional: (1/5)(2+i) has norm 1/5
    felem f = {rational(2, 5), rational(1, 5)};
    CHECK(ideal_norm(nf, ideal_principal(nf, f)) == rational(1, 5));
}

TEST_CASE("coset representatives") {
    FieldData fd = preset_field("Qi");
    const auto& nf = fd.nf;
    felem a = {rational(2), rational(1)};
    auto reps = coset_reps(nf, ideal_principal(nf, a), ideal_unit(nf));
    CHECK(reps.size() == 5);
    auto reps3 = coset_reps(nf, ideal_principal(nf, fe_from_int(nf, 3)), ideal_unit(nf));
    CHECK(reps3.size() == 9);
}

TEST_CASE("unit orbits mod (3) in Q(i)") {
    FieldData fd = preset_field("Qi");
    const auto& nf = fd.nf;
    FractionalIdeal I3 = ideal_principal(nf, fe_from_int(nf, 3));
    auto reps = coset_reps(nf, I3, ideal_unit(nf));
    auto orb = unit_orbit_reps(nf, reps, I3, fd.units);
    // 9 residues: {0} alone, 8 units/nonzero split into orbits of size 4
    long total = 0;
    for (auto& o : orb) total += o.size;
    CHECK(total == 9);
    CHECK(orb.size() == 3);
}

TEST_CASE("embedding an ideal gives a full-rank lattice with the right covolume") {
    set_precision_bits(128);
    FieldData fd = preset_field("Qi");
    cvec scale(1, cplx(1));
    ComplexLattice L = embed_ideal(fd.nf, ideal_unit(fd.nf), fd.cm, scale);
    HermitianForm H = std_form(1);
    CHECK(abs(covolume(L, H) - 1) < pow2(-120));
    felem a = {rational(2), rational(1)};
    ComplexLattice L5 = embed_ideal(fd.nf, ideal_principal(fd.nf, a), fd.cm, scale);
    CHECK(abs(covolume(L5, H) - 5) < pow2(-118));
}

TEST_CASE("inline field config loads and validates") {
    set_precision_bits(128);
    FieldData fd = load_field_data("{\"preset\": \"Qi\"}");
    CHECK(fd.nf.degree == 2);
    CHECK_THROWS_AS(preset_field("nosuch"), ekl_error);
}
