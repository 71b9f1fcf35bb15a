#include "ekl/cyclotomic.hpp"
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ekl {

namespace {

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

// integer polynomial helpers (coefficient vectors, low degree first)
using ipoly = std::vector<bigint>;

ipoly poly_div_exact(const ipoly& num, const ipoly& den) {
    ipoly r = num, q(num.size() - den.size() + 1, bigint(0));
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        bigint f = r[i + den.size() - 1] / den.back();
        q[i] = f;
        if (f != 0)
            for (size_t j = 0; j < den.size(); ++j)
                r[i + j] -= f * den[j];
    }
    return q;
}

struct cyc_ctx {
    int n, deg;
    ipoly phi_poly;                 // cyclotomic polynomial, monic
    std::vector<qvec> zpow;        // z^k in the power basis, k = 0..n-1
};

const cyc_ctx& ctx_for(int n) {
    static std::map<int, cyc_ctx> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    cyc_ctx cx;
    cx.n = n;
    cx.deg = euler_phi(n);
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::function<ipoly(int)> cyclo = [&](int m) -> ipoly {
        ipoly num(m + 1, bigint(0));
        num[0] = -1;
        num[m] = 1;
        for (int d = 1; d < m; ++d)
            if (m % d == 0) num = poly_div_exact(num, cyclo(d));
        return num;
    };
    cx.phi_poly = cyclo(n);
    // z^k reduced mod Phi_n; table long enough for products of basis powers
    int tab = std::max(n, 2 * cx.deg);
    cx.zpow.assign(tab, qvec(cx.deg, rational(0)));
    std::vector<rational> cur(cx.deg, rational(0));
    cur[0] = 1;
    for (int k = 0; k < tab; ++k) {
        cx.zpow[k] = cur;
        // multiply by z
        rational top = cur[cx.deg - 1];
        for (int j = cx.deg - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top != 0)
            for (int j = 0; j < cx.deg; ++j)
                cur[j] -= top * rational(cx.phi_poly[j]);
    }
    return cache.emplace(n, std::move(cx)).first->second;
}

} // namespace

int cyc::phi_deg(int n) { return euler_phi(n); }

cyc cyc_rational(int n, const rational& q) {
    cyc a(n);
    a.c[0] = q;
    return a;
}

cyc cyc_zeta_pow(int n, long k) {
    const cyc_ctx& cx = ctx_for(n);
    long kk = ((k % n) + n) % n;
    cyc a(n);
    a.c = cx.zpow[kk];
    return a;
}

bool is_zero(const cyc& a) {
    for (auto& q : a.c)
        if (q != 0) return false;
    return true;
}

bool operator==(const cyc& a, const cyc& b) {
    if (a.n != b.n) throw std::runtime_error("cyc: mixed conductors");
    return a.c == b.c;
}

cyc operator+(const cyc& a, const cyc& b) {
    if (a.n != b.n) throw std::runtime_error("cyc: mixed conductors");
    cyc r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

cyc operator-(const cyc& a, const cyc& b) {
    if (a.n != b.n) throw std::runtime_error("cyc: mixed conductors");
    cyc r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

cyc operator-(const cyc& a) {
    cyc r = a;
    for (auto& q : r.c) q = -q;
    return r;
}

cyc operator*(const cyc& a, const cyc& b) {
    if (a.n != b.n) throw std::runtime_error("cyc: mixed conductors");
    const cyc_ctx& cx = ctx_for(a.n);
    int d = cx.deg;
    qvec conv(2 * d - 1, rational(0));
    for (int i = 0; i < d; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < d; ++j)
            if (b.c[j] != 0) conv[i + j] += a.c[i] * b.c[j];
    }
    cyc r(a.n);
    for (int k = 0; k < 2 * d - 1; ++k) {
        if (conv[k] == 0) continue;
        if (k < d) {
            r.c[k] += conv[k];
        } else {
            const qvec& red = cx.zpow[k];
            for (int j = 0; j < d; ++j) r.c[j] += conv[k] * red[j];
        }
    }
    return r;
}

cyc operator*(const rational& q, const cyc& a) {
    cyc r = a;
    for (auto& x : r.c) x *= q;
    return r;
}

cyc inv(const cyc& a) {
    if (is_zero(a)) throw std::runtime_error("cyc: division by zero");
    const cyc_ctx& cx = ctx_for(a.n);
    int d = cx.deg;
    // solve x * M = e0 where row i of M is z^i * a
    qmat M(d);
    for (int i = 0; i < d; ++i) {
        cyc zi = cyc_zeta_pow(a.n, i) * a;
        M[i] = zi.c;
    }
    qvec e0(d, rational(0));
    e0[0] = 1;
    qvec x = solve_left(M, e0);
    cyc r(a.n);
    r.c = x;
    return r;
}

cyc galois(const cyc& a, long k) {
    const cyc_ctx& cx = ctx_for(a.n);
    long kk = ((k % a.n) + a.n) % a.n;
    if (std::gcd(static_cast<long>(a.n), kk) != 1)
        throw std::runtime_error("cyc: galois exponent not coprime");
    cyc r(a.n);
    for (int i = 0; i < cx.deg; ++i) {
        if (a.c[i] == 0) continue;
        const qvec& red = cx.zpow[(static_cast<long>(i) * kk) % a.n];
        for (int j = 0; j < cx.deg; ++j) r.c[j] += a.c[i] * red[j];
    }
    return r;
}

cyc conj_cyc(const cyc& a) { return galois(a, a.n - 1); }

cplx to_cplx(const cyc& a) {
    real two_pi = 2 * const_pi();
    cplx z(0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        cplx zi = expi(two_pi * real(i) / a.n);
        real q(a.c[i]);
        z += q * zi;
    }
    return z;
}

cyc cyc_lift(const cyc& a, int N) {
    if (N % a.n != 0) throw std::runtime_error("cyc_lift: conductor does not divide");
    long step = N / a.n;
    cyc r(N);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        cyc z = cyc_zeta_pow(N, step * static_cast<long>(i));
        for (size_t j = 0; j < r.c.size(); ++j) r.c[j] += a.c[i] * z.c[j];
    }
    return r;
}

cyc cyc_pow(const cyc& a, long k) {
    cyc base = k < 0 ? inv(a) : a;
    long e = k < 0 ? -k : k;
    cyc r = cyc_rational(a.n, 1);
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

cyc cyc_gaussian(int n, const rational& x, const rational& y) {
    if (n % 4 != 0) throw std::runtime_error("cyc_gaussian: need 4 | n");
    cyc r = cyc_rational(n, x);
    cyc i = cyc_zeta_pow(n, n / 4);
    return r + y * i;
}

} // namespace ekl
