#include "ekl/specfun.hpp"
#include <map>
#include <cmath>
#include <stdexcept>

namespace ekl {

namespace {

// Spouge coefficients for a given parameter a, cached per (a, precision).
struct spouge_set {
    int a;
    std::vector<real> c; // c[0] = sqrt(2 pi), c[k] for k = 1..a-1
};

thread_local std::map<std::pair<int, unsigned>, spouge_set> g_spouge;

const spouge_set& spouge_coeffs() {
    // relative error ~ a^{-1/2} (2 pi)^{-(a+1/2)}; 2.65 bits per unit of a
    unsigned bits = precision_bits();
    int a = static_cast<int>(bits / 2.65) + 4;
    auto key = std::make_pair(a, bits);
    auto it = g_spouge.find(key);
    if (it != g_spouge.end()) return it->second;

    spouge_set s;
    s.a = a;
    s.c.resize(a);
    real two_pi = 2 * const_pi();
    s.c[0] = sqrt(two_pi);
    real fact(1); // (k-1)!
    for (int k = 1; k < a; ++k) {
        if (k > 1) fact *= (k - 1);
        real ak(a - k);
        // (a-k)^{k-1/2} e^{a-k} / (k-1)!, alternating sign
        real v = exp((real(k) - real(1) / 2) * log(ak) + ak) / fact;
        s.c[k] = (k % 2 == 1) ? v : -v;
    }
    return g_spouge.emplace(key, std::move(s)).first->second;
}

// Spouge for Re z >= 0.5: Gamma(z) = (z+a-1)^{z-1/2} e^{-(z+a-1)} S(z)
cplx gamma_spouge(const cplx& z) {
    const spouge_set& sp = spouge_coeffs();
    cplx zm1 = z - cplx(1);
    cplx acc(sp.c[0]);
    for (int k = 1; k < sp.a; ++k)
        acc += cplx(sp.c[k]) / (zm1 + cplx(k));
    cplx base = zm1 + cplx(sp.a);
    return exp((zm1 + cplx(real(1) / 2)) * log(base) - base) * acc;
}

bool is_nonpos_int(const cplx& z) {
    return z.im == 0 && z.re <= 0 && z.re == floor(z.re);
}

cplx sin_c(const cplx& z) {
    // sin via exp; mpfr exponent range is wide enough for our arguments
    cplx iz(-z.im, z.re);
    cplx e1 = exp(iz), e2 = exp(-iz);
    cplx d = e1 - e2;
    return {d.im / 2, -d.re / 2};
}

} // namespace

cplx gamma(const cplx& z) {
    prec_guard g(32);
    cplx result;
    if (z.im == 0 && z.re == floor(z.re) && z.re > 0 && z.re < 256) {
        real f(1);
        for (long k = 2; k < static_cast<long>(z.re); ++k) f *= k;
        result = cplx(f);
    } else if (z.re >= real(1) / 2) {
        result = gamma_spouge(z);
    } else if (is_nonpos_int(z)) {
        throw std::domain_error("gamma: pole at nonpositive integer");
    } else {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1-z))
        real pi = const_pi();
        result = cplx(pi) / (sin_c(cplx(pi) * z) * gamma_spouge(cplx(1) - z));
    }
    return {real(result.re), real(result.im)};
}

cplx rgamma(const cplx& z) {
    prec_guard g(32);
    cplx result;
    if (is_nonpos_int(z)) {
        result = cplx(0);
    } else if (z.re >= real(1) / 2) {
        result = cplx(1) / gamma_spouge(z);
    } else {
        real pi = const_pi();
        result = sin_c(cplx(pi) * z) * gamma_spouge(cplx(1) - z) / cplx(pi);
    }
    return {real(result.re), real(result.im)};
}

namespace {

// Lentz continued fraction for Gamma(a,x), good when x dominates |a|
cplx ugamma_cf(const cplx& a, const real& x) {
    real tiny = pow2(-static_cast<long>(2 * precision_bits()));
    real eps = pow2(-static_cast<long>(precision_bits()) - 4);
    cplx b0 = cplx(x + 1) - a;
    cplx f = (norm(b0) == 0) ? cplx(tiny) : b0;
    cplx C = f, D(0);
    for (int j = 1; j < 100000; ++j) {
        cplx aj = cplx(-j) * (cplx(j) - a);
        cplx bj = cplx(x + 2 * j + 1) - a;
        D = bj + aj * D;
        if (norm(D) == 0) D = cplx(tiny);
        C = bj + aj / C;
        if (norm(C) == 0) C = cplx(tiny);
        D = cplx(1) / D;
        cplx delta = C * D;
        f *= delta;
        if (abs(delta - cplx(1)) < eps)
            return exp(a * cplx(log(x)) - cplx(x)) / f;
    }
    throw std::runtime_error("upper_gamma: continued fraction not converged");
}

// lower incomplete gamma by series; requires a not a nonpositive integer
cplx lgamma_series(const cplx& a, const real& x) {
    real eps = pow2(-static_cast<long>(precision_bits()) - 4);
    cplx term = exp(a * cplx(log(x)) - cplx(x)) / a;
    cplx sum = term;
    cplx ak = a;
    for (int k = 1; k < 100000; ++k) {
        ak += cplx(1);
        term = term * cplx(x) / ak;
        sum += term;
        if (abs(term) < eps * abs(sum)) return sum;
    }
    throw std::runtime_error("upper_gamma: series not converged");
}

// E1(x) = Gamma(0,x) for small x by the alternating series
cplx e1_series(const real& x) {
    real eps = pow2(-static_cast<long>(precision_bits()) - 4);
    real sum = -const_euler() - log(x);
    real term(1);
    for (int k = 1; k < 100000; ++k) {
        term *= -x / k;
        real add = -term / k;
        sum += add;
        if (abs(add) < eps * (abs(sum) + 1)) return cplx(sum);
    }
    throw std::runtime_error("upper_gamma: E1 series not converged");
}

} // namespace

cplx upper_gamma(const cplx& a, const real& x) {
    if (x <= 0) throw std::domain_error("upper_gamma: x must be positive");
    real absa = abs(a);
    if (x >= 2 && x >= a.re + 1 && x >= absa) {
        // the continued fraction is forward-stable: a flat guard suffices
        prec_guard g(48);
        cplx r = ugamma_cf(a, x);
        return {real(r.re), real(r.im)};
    }
    // guard grows with x: the downward recurrence can lose ~x/ln2 bits when
    // |a_k| stays below x
    long xl = static_cast<long>(static_cast<double>(x));
    prec_guard g(48 + static_cast<unsigned>(2 * xl));
    cplx result;
    if (a.re > real(1) / 2 && !is_nonpos_int(a)) {
        result = gamma(a) - lgamma_series(a, x);
    } else {
        // shift to the right half plane, then recurse back down via
        // Gamma(b-1,x) = (Gamma(b,x) - x^{b-1} e^{-x}) / (b-1)
        bool integer_line = (a.im == 0 && a.re == floor(a.re)); // a <= 0 here
        cplx top;
        long steps;
        if (integer_line) {
            top = e1_series(x);                      // Gamma(0,x)
            steps = static_cast<long>(-a.re);
        } else {
            long n = static_cast<long>(static_cast<double>(ceil(real(1) - a.re)));
            cplx ashift = a + cplx(n);               // Re in [1,2)
            top = (x >= ashift.re + 1 && x >= abs(ashift))
                      ? ugamma_cf(ashift, x)
                      : gamma(ashift) - lgamma_series(ashift, x);
            steps = n;
        }
        cplx b = integer_line ? cplx(0) : a + cplx(steps);
        cplx val = top;
        real emx = exp(-x);
        for (long k = 0; k < steps; ++k) {
            b -= cplx(1);
            val = (val - exp(b * cplx(log(x))) * cplx(emx)) / b;
        }
        result = val;
    }
    return {real(result.re), real(result.im)};
}

real agm(real a, real b) {
    prec_guard g(32);
    real eps = pow2(-static_cast<long>(precision_bits()) + 8);
    real prev(-1);
    while (true) {
        real diff = abs(a - b);
        // stop at the tolerance or once roundoff keeps the gap from shrinking
        if (diff <= eps * abs(a) || (prev >= 0 && diff >= prev)) break;
        prev = diff;
        real an = (a + b) / 2;
        b = sqrt(a * b);
        a = an;
    }
    real r = (a + b) / 2;
    return real(r);
}

real lemniscate_constant() {
    prec_guard g(32);
    real r = const_pi() / agm(real(1), sqrt(real(2)));
    return real(r);
}

void gauss_legendre(int n, std::vector<real>& nodes, std::vector<real>& weights) {
    prec_guard g(32);
    nodes.assign(n, real(0));
    weights.assign(n, real(0));
    real eps = pow2(-static_cast<long>(precision_bits()) + 8);
    real pi = const_pi();
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev initial guess, Newton refinement on P_n
        real x = cos(pi * (real(i) + real(3) / 4) / (real(n) + real(1) / 2));
        real dp(0);
        for (int iter = 0; iter < 200; ++iter) {
            real p0(1), p1 = x;
            for (int k = 2; k <= n; ++k) {
                real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            real dx = p1 / dp;
            x -= dx;
            if (abs(dx) < eps) break;
        }
        real w = 2 / ((1 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    for (auto& v : nodes) v = real(v);
    for (auto& v : weights) v = real(v);
}

} // namespace ekl
