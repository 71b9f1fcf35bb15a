#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ekl/exact.hpp"
#include "ekl/cyclotomic.hpp"

using namespace ekl;

TEST_CASE("hnf is upper triangular with reduced columns and unimodular U") {
    imat M = {{bigint(4), bigint(6)}, {bigint(2), bigint(5)}};
    imat U;
    imat H = hnf(M, &U);
    REQUIRE(H.size() == 2);
    CHECK(H[1][0] == 0);
    CHECK(H[0][0] > 0);
    CHECK(H[1][1] > 0);
    CHECK(H[0][1] >= 0);
    CHECK(H[0][1] < H[1][1]);
    CHECK(abs(det(U)) == 1);
    // U * M == H
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            bigint s = 0;
            for (int k = 0; k < 2; ++k) s += U[i][k] * M[k][j];
            CHECK(s == H[i][j]);
        }
    CHECK(det(M) == bigint(8));
}

TEST_CASE("solve_left and inverse") {
    qmat M = {{rational(2), rational(1)}, {rational(1), rational(3)}};
    qvec v = {rational(5), rational(5)};
    qvec x = solve_left(M, v);
    CHECK(x[0] * M[0][0] + x[1] * M[1][0] == v[0]);
    CHECK(x[0] * M[0][1] + x[1] * M[1][1] == v[1]);
    qmat Mi = inverse(M);
    CHECK(Mi[0][0] * M[0][0] + Mi[0][1] * M[1][0] == rational(1));
    CHECK(Mi[0][0] * M[0][1] + Mi[0][1] * M[1][1] == rational(0));
    CHECK(det(M) == rational(5));
}

TEST_CASE("mod_floor") {
    CHECK(mod_floor(bigint(-7), bigint(5)) == 3);
    CHECK(mod_floor(bigint(12), bigint(5)) == 2);
    CHECK(mod_floor(bigint(0), bigint(5)) == 0);
}

TEST_CASE("cyclotomic arithmetic in Q(zeta_4) and Q(zeta_5)") {
    set_precision_bits(128);
    // i^2 = -1
    cyc i4 = cyc_zeta_pow(4, 1);
    CHECK(i4 * i4 == -cyc_rational(4, 1));
    CHECK(inv(i4) == cyc_zeta_pow(4, 3));
    CHECK(conj_cyc(i4) == cyc_zeta_pow(4, -1));
    // 1 + z + z^2 + z^3 + z^4 = 0 in Q(zeta_5)
    cyc s(5);
    for (int k = 0; k < 5; ++k) s = s + cyc_zeta_pow(5, k);
    CHECK(is_zero(s));
    // numeric embedding agrees
    cplx v = to_cplx(cyc_zeta_pow(5, 2));
    real ang = 4 * const_pi() / 5;
    CHECK(abs(v - cplx(cos(ang), sin(ang))) < pow2(-120));
}

TEST_CASE("cyclotomic lift and powers") {
    cyc a = cyc_zeta_pow(4, 1);
    cyc b = cyc_lift(a, 20);
    CHECK(b == cyc_zeta_pow(20, 5));
    CHECK(cyc_pow(a, -3) == cyc_zeta_pow(4, 1));
    CHECK(cyc_pow(b, 10) == -cyc_rational(20, 1));
}

TEST_CASE("gaussian rationals as cyclotomic elements") {
    cyc g = cyc_gaussian(4, rational(2), rational(-3)); // 2 - 3i
    cyc gc = conj_cyc(g);                               // 2 + 3i
    cyc n = g * gc;
    CHECK(n == cyc_rational(4, 13));
}
