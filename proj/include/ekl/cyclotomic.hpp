#pragma once
// Exact arithmetic in the cyclotomic field Q(zeta_n), represented over the
// power basis 1, z, ..., z^{phi(n)-1} modulo the n-th cyclotomic polynomial.
// Used for character tables and partial Fourier transforms, where values
// live in E(zeta_{p^m}) and must stay exact.

#include "ekl/exact.hpp"
#include "ekl/complex.hpp"

namespace ekl {

struct cyc {
    int n = 1;            // conductor of the ambient Q(zeta_n)
    qvec c;               // phi(n) coefficients

    cyc() : c(1, rational(0)) {}
    explicit cyc(int n_) : n(n_), c(phi_deg(n_), rational(0)) {}
    static int phi_deg(int n);
};

cyc cyc_rational(int n, const rational& q);
cyc cyc_zeta_pow(int n, long k);          // zeta_n^k
bool is_zero(const cyc& a);
bool operator==(const cyc& a, const cyc& b);
cyc operator+(const cyc& a, const cyc& b);
cyc operator-(const cyc& a, const cyc& b);
cyc operator-(const cyc& a);
cyc operator*(const cyc& a, const cyc& b);
cyc operator*(const rational& q, const cyc& a);
cyc inv(const cyc& a);
cyc galois(const cyc& a, long k);         // zeta -> zeta^k, gcd(k,n)=1
cyc conj_cyc(const cyc& a);               // zeta -> zeta^{-1}
cplx to_cplx(const cyc& a);               // evaluate at e^{2 pi i / n}

// gaussian rational q = x + y*i embedded as a cyc over Q(zeta_n), 4 | n
cyc cyc_gaussian(int n, const rational& x, const rational& y);

// lift from Q(zeta_{a.n}) into Q(zeta_N), a.n | N, via zeta_n = zeta_N^{N/n}
cyc cyc_lift(const cyc& a, int N);

// integer power (negative allowed through inv)
cyc cyc_pow(const cyc& a, long k);

} // namespace ekl
