#pragma once
// Minimal complex type over ekl::real. std::complex is not usable with
// mpfr_float (it assumes a trivial value type), so we roll our own.

#include "ekl/real.hpp"
#include <vector>

namespace ekl {

struct cplx {
    real re, im;
    cplx() : re(0), im(0) {}
    cplx(real r) : re(std::move(r)), im(0) {}
    cplx(real r, real i) : re(std::move(r)), im(std::move(i)) {}
    cplx(int r) : re(r), im(0) {}
    cplx(long r) : re(r), im(0) {}
    cplx(double r) : re(r), im(0) {}
};

inline cplx operator+(const cplx& a, const cplx& b) { return {a.re + b.re, a.im + b.im}; }
inline cplx operator-(const cplx& a, const cplx& b) { return {a.re - b.re, a.im - b.im}; }
inline cplx operator-(const cplx& a) { return {-a.re, -a.im}; }
inline cplx operator*(const cplx& a, const cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cplx operator*(const real& s, const cplx& a) { return {s * a.re, s * a.im}; }
inline cplx operator*(const cplx& a, const real& s) { return {s * a.re, s * a.im}; }
inline cplx& operator+=(cplx& a, const cplx& b) { a.re += b.re; a.im += b.im; return a; }
inline cplx& operator-=(cplx& a, const cplx& b) { a.re -= b.re; a.im -= b.im; return a; }
inline cplx& operator*=(cplx& a, const cplx& b) { a = a * b; return a; }

inline cplx conj(const cplx& a) { return {a.re, -a.im}; }
inline real norm(const cplx& a) { return a.re * a.re + a.im * a.im; }
inline real abs(const cplx& a) { return hypot(a.re, a.im); }
inline real arg(const cplx& a) { return atan2(a.im, a.re); }

inline cplx operator/(const cplx& a, const cplx& b) {
    real n = norm(b);
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline cplx operator/(const cplx& a, const real& s) { return {a.re / s, a.im / s}; }

cplx exp(const cplx& z);
cplx log(const cplx& z);              // principal branch
cplx pow(const cplx& z, const cplx& s);
cplx pow_int(const cplx& z, long n);  // exact-exponent power, n may be negative
cplx sqrt(const cplx& z);
cplx expi(const real& t);             // e^{i t}

bool isfinite(const cplx& z);

using cvec = std::vector<cplx>;

} // namespace ekl
