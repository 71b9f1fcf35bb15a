#include "ekl/real.hpp"
#include <mpfr.h>
#include <cmath>
#include <stdexcept>

namespace ekl {

namespace {
// boost's default_precision is in decimal digits; keep our own bit count so
// callers can reason in bits exactly.
thread_local unsigned g_bits = 128;

unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.3010299956639812)) + 2;
}
} // namespace

void set_precision_bits(unsigned bits) {
    if (bits < 24) bits = 24;
    g_bits = bits;
    real::default_precision(bits_to_digits10(bits));
}

unsigned precision_bits() { return g_bits; }

namespace {
// sync boost's default precision with the documented 128-bit default at load
struct prec_init {
    prec_init() { set_precision_bits(g_bits); }
} g_prec_init;
} // namespace

prec_guard::prec_guard(unsigned extra) : saved(g_bits) {
    set_precision_bits(saved + extra);
}
prec_guard::~prec_guard() { set_precision_bits(saved); }

real const_pi() {
    real x(0);
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

real const_euler() {
    real x(0);
    mpfr_const_euler(x.backend().data(), MPFR_RNDN);
    return x;
}

real const_log2() {
    real x(0);
    mpfr_const_log2(x.backend().data(), MPFR_RNDN);
    return x;
}

real pow2(long e) {
    real x(1);
    mpfr_mul_2si(x.backend().data(), x.backend().data(), e, MPFR_RNDN);
    return x;
}

real parse_decimal(const std::string& s) { return real(s); }

std::string to_decimal(const real& x, unsigned digits) {
    return x.str(digits, std::ios_base::scientific);
}

} // namespace ekl
