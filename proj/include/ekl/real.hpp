#pragma once
// Arbitrary-precision real numbers on top of boost.multiprecision/mpfr.
// Precision is a process-global (thread-local in boost) default measured in
// bits; every routine in this library works at the caller's precision plus a
// guard margin it sets up itself.

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace ekl {

using real = boost::multiprecision::mpfr_float;
using bigint = boost::multiprecision::mpz_int;
using rational = boost::multiprecision::mpq_rational;

// set the working precision (bits) for the current thread
void set_precision_bits(unsigned bits);
unsigned precision_bits();

// RAII: bump precision by `extra` bits, restore on scope exit
struct prec_guard {
    unsigned saved;
    explicit prec_guard(unsigned extra);
    ~prec_guard();
    prec_guard(const prec_guard&) = delete;
};

// cached constants at the current precision
real const_pi();
real const_euler();   // Euler-Mascheroni gamma
real const_log2();

real pow2(long e);                      // 2^e
real parse_decimal(const std::string&); // full current precision
std::string to_decimal(const real&, unsigned digits);

using std::abs;
using boost::multiprecision::floor;
using boost::multiprecision::ceil;
using boost::multiprecision::sqrt;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::sin;
using boost::multiprecision::cos;
using boost::multiprecision::atan2;
using boost::multiprecision::pow;
using boost::multiprecision::hypot;

} // namespace ekl
