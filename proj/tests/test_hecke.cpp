#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ekl/hecke.hpp"

using namespace ekl;

namespace {

HeckeCharacter hurwitz_like(const FieldData& fd, int k) {
    InfinityType inf;
    inf.beta = {0};
    inf.alpha = {k};
    return make_character(fd, ideal_unit(fd.nf), inf);
}

} // namespace

TEST_CASE("criticality classification") {
    FieldData fd = preset_field("Qi");
    InfinityType inf;
    inf.beta = {0};
    inf.alpha = {4};
    CHECK(is_critical(inf, fd.cm).cls == Criticality::critical);
    inf.alpha = {0};
    CHECK(is_critical(inf, fd.cm).cls != Criticality::critical);
    inf.beta = {2};
    inf.alpha = {1};
    CHECK(is_critical(inf, fd.cm).cls == Criticality::critical);
}

TEST_CASE("character well-definedness over the units is enforced") {
    FieldData fd = preset_field("Qi");
    InfinityType inf;
    inf.beta = {0};
    inf.alpha = {3}; // i^-3 != 1 on the trivial conductor
    CHECK_THROWS_AS(make_character(fd, ideal_unit(fd.nf), inf), ekl_error);
}

TEST_CASE("exact character values multiply") {
    FieldData fd = preset_field("Qi");
    HeckeCharacter chi = hurwitz_like(fd, 4);
    felem a = {rational(2), rational(1)};
    felem b = {rational(1), rational(1)};
    cyc va = chi_value(chi, a);
    cyc vb = chi_value(chi, b);
    cyc vab = chi_value(chi, fe_mul(fd.nf, a, b));
    CHECK(vab == va * vb);
    // chi((2+i)) = (2+i)^-4 as a gaussian rational: (-7-24i)/625
    cyc ref = cyc_gaussian(chi.zeta_order, rational(-7, 625), rational(-24, 625));
    CHECK(va == ref);
}

TEST_CASE("weight-4 L-value at 0 recognizes 1/10 after normalization") {
    set_precision_bits(160);
    FieldData fd = preset_field("Qi");
    HeckeCharacter chi = hurwitz_like(fd, 4);
    LValue L = total_L(chi);
    real lem = lemniscate_constant();
    // 3! L / lem^4 = 1/10
    cplx core = cplx(real(6)) * L.value / cplx(pow(lem, real(4)));
    Recognition r = recognize_algebraic(core, bigint(1) << 32, true);
    REQUIRE(r.found);
    CHECK(r.re == rational(1, 10));
    CHECK(r.im == 0);
}

TEST_CASE("periods validate and normalized value is exact for c = 2+i") {
    set_precision_bits(160);
    FieldData fd = preset_field("Qi");
    PeriodData per = preset_periods("lemniscatic");
    verify_periods(per);
    HeckeCharacter chi = hurwitz_like(fd, 4);
    felem c = {rational(2), rational(1)};
    NormalizedLValue v = normalized_L(chi, per, c);
    REQUIRE(v.recognition.found);
    // (chi(c)Nc - 1) * 3! L / lem^4 = -6(11+2i)/625
    CHECK(v.recognition.re == rational(-66, 625));
    CHECK(v.recognition.im == rational(-12, 625));
}

TEST_CASE("ray L-value over conductor (2-i)") {
    set_precision_bits(160);
    FieldData fd = preset_field("Qi");
    InfinityType inf;
    inf.beta = {0};
    inf.alpha = {4};
    felem pb = {rational(2), rational(-1)};
    HeckeCharacter chi = make_character(fd, ideal_principal(fd.nf, pb), inf);
    LValue L = total_L(chi);
    CHECK(isfinite(L.value));
    CHECK(L.error_bound < pow2(-130));
}

TEST_CASE("algebraic recognition round-trips simple rationals") {
    set_precision_bits(128);
    cplx x(parse_decimal("0.1"), parse_decimal("-0.04"));
    Recognition r = recognize_algebraic(x, bigint(1000), true);
    REQUIRE(r.found);
    CHECK(r.re == rational(1, 10));
    CHECK(r.im == rational(-1, 25));
    // garbage does not get recognized with a small denominator bound
    cplx y(const_pi() / 7, real(0));
    Recognition bad = recognize_algebraic(y, bigint(1000), true);
    CHECK(!bad.found);
}
