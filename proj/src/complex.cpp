#include "ekl/complex.hpp"
#include <mpfr.h>

namespace ekl {

cplx exp(const cplx& z) {
    real m = exp(z.re);
    real s(0), c(0);
    mpfr_sin_cos(s.backend().data(), c.backend().data(), z.im.backend().data(), MPFR_RNDN);
    return {m * c, m * s};
}

cplx expi(const real& t) {
    real s(0), c(0);
    mpfr_sin_cos(s.backend().data(), c.backend().data(), t.backend().data(), MPFR_RNDN);
    return {c, s};
}

cplx log(const cplx& z) { return {log(norm(z)) / 2, arg(z)}; }

cplx pow(const cplx& z, const cplx& s) {
    if (s.im == 0 && s.re == floor(s.re) && abs(s.re) < real(1000000))
        return pow_int(z, static_cast<long>(s.re));
    return exp(s * log(z));
}

cplx pow_int(const cplx& z, long n) {
    if (n == 0) return cplx(1);
    bool inv = n < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    cplx base = z, acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    if (inv) {
        real nn = norm(acc);
        return {acc.re / nn, -acc.im / nn};
    }
    return acc;
}

cplx sqrt(const cplx& z) {
    real r = abs(z);
    if (r == 0) return cplx(0);
    // principal root via half-angle
    real x = sqrt((r + z.re) / 2);
    real y = sqrt((r - z.re) / 2);
    if (z.im < 0) y = -y;
    return {x, y};
}

bool isfinite(const cplx& z) {
    return mpfr_number_p(z.re.backend().data()) && mpfr_number_p(z.im.backend().data());
}

} // namespace ekl
