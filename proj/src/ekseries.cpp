#include "ekl/ekseries.hpp"
#ifdef _OPENMP
#include <omp.h>
#endif

namespace ekl {

namespace {

int mu_total(const std::vector<int>& mu) {
    int m = 0;
    for (int x : mu) {
        if (x < 0) fail("MalformedConfig", "mu exponents must be nonnegative");
        m += x;
    }
    return m;
}

// prod_i conj(p_i)^{mu_i}
cplx mu_power(const cvec& p, const std::vector<int>& mu) {
    cplx r(1);
    for (size_t i = 0; i < p.size(); ++i)
        if (mu[i] != 0) r *= pow_int(conj(p[i]), mu[i]);
    return r;
}

// sup of |conj(p)^mu| on the H-sphere of radius rho: C_mu rho^{|mu|}
real mu_sup_const(const HermitianForm& H, const std::vector<int>& mu) {
    real c(1);
    for (size_t i = 0; i < mu.size(); ++i)
        if (mu[i] != 0) c *= pow(sqrt(H.r[i]), -mu[i]);
    return c;
}

// x^{-s} for real x > 0
cplx rpow(const real& x, const cplx& s) {
    real lx = log(x);
    return exp(cplx(-s.re * lx, -s.im * lx));
}

// ordered reduction of a term vector: identical result for any thread count
cplx reduce_terms(const cvec& terms) {
    cplx s(0);
    for (auto& t : terms) s += t;
    return s;
}

real default_target() { return pow2(-static_cast<long>(precision_bits()) - 16); }

} // namespace

bool lattice_member(const ComplexLattice& L, const cvec& x) {
    // coordinates of x over the lattice basis (std form is irrelevant here;
    // membership is metric-independent)
    int n = 2 * L.d;
    // solve the real linear system for the basis coordinates of x, then
    // measure distances to the nearest integers
    std::vector<std::vector<real>> A(n, std::vector<real>(n));
    std::vector<real> rhs(n);
    for (int a = 0; a < n; ++a) {
        for (int j = 0; j < n; ++j) {
            const cplx& g = L.gens[j][a / 2];
            A[a][j] = (a % 2 == 0) ? g.re : g.im;
        }
        rhs[a] = (a % 2 == 0) ? x[a / 2].re : x[a / 2].im;
    }
    // Gaussian elimination
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int i = c + 1; i < n; ++i)
            if (abs(A[i][c]) > abs(A[piv][c])) piv = i;
        std::swap(A[piv], A[c]);
        std::swap(rhs[piv], rhs[c]);
        for (int i = c + 1; i < n; ++i) {
            real f = A[i][c] / A[c][c];
            if (f == 0) continue;
            for (int j = c; j < n; ++j) A[i][j] -= f * A[c][j];
            rhs[i] -= f * rhs[c];
        }
    }
    std::vector<real> co(n);
    for (int i = n - 1; i >= 0; --i) {
        real s = rhs[i];
        for (int j = i + 1; j < n; ++j) s -= A[i][j] * co[j];
        co[i] = s / A[i][i];
    }
    real tight = pow2(-static_cast<long>(precision_bits()) + 16);
    real loose = pow2(-24);
    real worst(0);
    for (auto& c : co) {
        real dist = abs(c - floor(c + real(1) / 2));
        if (dist > worst) worst = dist;
    }
    if (worst <= tight) return true;
    if (worst <= loose)
        fail("InvariantViolation",
             "ambiguous lattice membership (coordinate distance in the gray zone)");
    return false;
}

cplx theta(const ComplexLattice& L, const HermitianForm& H, const cvec& z,
           const cvec& w, const real& t, const std::vector<int>& mu,
           real* tail_bound, bool parallel) {
    int m = mu_total(mu);
    unsigned bits = precision_bits();
    real target = default_target();
    real R = truncation_radius(L, H, t, m, target / (mu_sup_const(H, mu) + 1));
    ShellEnumeration se = enumerate_shells(L, H, z, R);

    real two_pi = 2 * const_pi();
    real pi_t = const_pi() * t;
    size_t N = se.points.size();
    cvec terms(N);
#ifdef _OPENMP
#pragma omp parallel if (parallel)
    {
        set_precision_bits(bits); // worker threads get the caller's precision
#pragma omp for schedule(static)
        for (long i = 0; i < static_cast<long>(N); ++i) {
#else
    (void)parallel;
    {
        for (long i = 0; i < static_cast<long>(N); ++i) {
#endif
            const cvec& p = se.points[i];
            cvec lam(L.d);
            for (int k = 0; k < L.d; ++k) lam[k] = p[k] - z[k];
            cplx term = mu_power(p, mu);
            term *= exp(cplx(-pi_t * norm_H(H, p), real(0)));
            term *= expi(two_pi * pairing(H, lam, w));
            terms[i] = term;
        }
    }
    // tail: |conj(p)^mu| <= C_mu |p|_H^m and the phase is unimodular
    real tail = mu_sup_const(H, mu) * gaussian_tail(L, H, R, t, m);
    if (tail_bound) *tail_bound = tail;
    return reduce_terms(terms);
}

EKValue ek_k_direct(const EKQuery& q) {
    int d = q.L.d;
    int m = mu_total(q.mu);
    real sigma = q.s.re;
    if (sigma < real(d) + real(m) / 2 + 1)
        fail("OutsideConvergence",
             "direct summation needs Re s >= d + |mu|/2 + 1");
    real target = q.target > 0 ? q.target : default_target();
    real Cmu = mu_sup_const(q.H, q.mu);
    real qexp = real(m) - 2 * sigma;

    real R = 4 + sqrt(min_norm2(q.L, q.H));
    while (Cmu * powerlaw_tail(q.L, q.H, R, qexp) >= target / 2) {
        R *= real(3) / 2;
        if (R > 1000000) fail("BudgetExceeded", "direct-sum radius blow-up");
    }
    ShellEnumeration se = enumerate_shells(q.L, q.H, q.z, R);

    unsigned bits = precision_bits();
    real two_pi = 2 * const_pi();
    real tiny = pow2(-static_cast<long>(bits) + 16);
    size_t N = se.points.size();
    cvec terms(N, cplx(0));
#ifdef _OPENMP
#pragma omp parallel
    {
        set_precision_bits(bits);
#pragma omp for schedule(static)
        for (long i = 0; i < static_cast<long>(N); ++i) {
#else
    {
        for (long i = 0; i < static_cast<long>(N); ++i) {
#endif
            const cvec& p = se.points[i];
            real X = norm_H(q.H, p);
            if (X < tiny) continue; // the excluded point lambda = -z
            cvec lam(d);
            for (int k = 0; k < d; ++k) lam[k] = p[k] - q.z[k];
            cplx term = mu_power(p, q.mu);
            term *= expi(two_pi * pairing(q.H, lam, q.w));
            term *= rpow(X, q.s); // |z+lambda|_H^{-2s}
            terms[i] = term;
        }
    }
    EKValue v;
    v.value = reduce_terms(terms);
    v.error_bound = Cmu * powerlaw_tail(q.L, q.H, R, qexp);
    v.completed = exp(cplx(-q.s.re, -q.s.im) * cplx(log(const_pi()), real(0))) *
                  gamma(q.s) * v.value;
    v.pole_at_0 = cplx(0);
    v.pole_at_d = cplx(0);
    v.method = "direct";
    return v;
}

EKValue ek_k(const EKQuery& q) {
    int d = q.L.d;
    int m = mu_total(q.mu);
    real target = q.target > 0 ? q.target : default_target();
    real pi = const_pi();
    real two_pi = 2 * pi;

    ComplexLattice D = dual_lattice(q.L, q.H);
    real V = covolume(q.L, q.H);
    bool z_in_L = lattice_member(q.L, q.z);
    bool w_in_D = lattice_member(D, q.w);
    cplx E = expi(two_pi * pairing(q.H, q.w, q.z));

    cplx sB = cplx(real(d + m), real(0)) - q.s; // dual-side exponent
    real sigA = q.s.re, sigB = sB.re;

    // K has a genuine pole at s = d when mu = 0 and w is in the dual lattice
    if (m == 0 && w_in_D && abs(q.s - cplx(real(d), real(0))) == 0)
        fail("PoleRequested", "K^0 has a pole at s = d when w lies in the dual");
    // when G itself has a pole at s = 0, K(0) is still finite and equals the
    // residue; otherwise s = 0 goes through the general splitting (rgamma(0)
    // kills the prefactor, G(0) is finite)
    if (abs(q.s) == 0 && m == 0 && z_in_L) {
        EKValue v;
        v.pole_at_0 = -E;
        v.pole_at_d = w_in_D ? cplx(1 / V, real(0)) : cplx(0);
        v.value = v.pole_at_0; // K(0) = lim pi^s rgamma(s) G(s) = Res_0 G
        v.completed = cplx(0);
        v.error_bound = real(0);
        v.method = "pole-limit";
        return v;
    }

    // truncation radius: both incomplete-gamma kernels must be in the
    // dominated regime pi R^2 >= max(4, 2 sigma + 4), then the certified
    // Gaussian tails must clear the target
    real need = real(4);
    if (2 * sigA + 4 > need) need = 2 * sigA + 4;
    if (2 * sigB + 4 > need) need = 2 * sigB + 4;
    real R = sqrt(need / pi) + 1;
    real CA = mu_sup_const(q.H, q.mu), CB = mu_sup_const(q.H, q.mu);
    auto tails = [&](const real& r) -> real {
        // |term_A| <= 2 C_mu rho^m e^{-pi rho^2} / (pi rho^2)
        real tA = (2 * CA / pi) * gaussian_tail(q.L, q.H, r, real(1), m - 2);
        real tB = (2 * CB / pi) * gaussian_tail(D, q.H, r, real(1), m - 2) / V;
        return tA + tB;
    };
    real Rmin = R;
    while (tails(R) >= target) {
        R *= real(5) / 4;
        if (R > 10000) fail("BudgetExceeded", "continuation radius blow-up");
    }
    // shrink back on a quarter-unit grid: the point count grows like R^{2d}
    real lo = R / (real(5) / 4) < Rmin ? Rmin : R / (real(5) / 4);
    while (R - lo > real(1) / 4) {
        real mid = (R + lo) / 2;
        if (tails(mid) < target) R = mid;
        else lo = mid;
    }
    R = ceil(R * 4) / 4;
    real err = tails(R);

    unsigned bits = precision_bits();
    real tiny = pow2(-static_cast<long>(bits) + 16);

    auto half_sum = [&](const ComplexLattice& Lat, const cvec& z, const cvec& w,
                        const cplx& s) -> cplx {
        ShellEnumeration se = enumerate_shells(Lat, q.H, z, R);
        size_t N = se.points.size();
        cvec terms(N, cplx(0));
#ifdef _OPENMP
#pragma omp parallel
        {
            set_precision_bits(bits);
#pragma omp for schedule(static)
            for (long i = 0; i < static_cast<long>(N); ++i) {
#else
        {
            for (long i = 0; i < static_cast<long>(N); ++i) {
#endif
                const cvec& p = se.points[i];
                real X = norm_H(q.H, p);
                if (X < tiny) continue;
                cvec lam(d);
                for (int k = 0; k < d; ++k) lam[k] = p[k] - z[k];
                cplx term = mu_power(p, q.mu);
                term *= expi(two_pi * pairing(q.H, lam, w));
                real x = pi * X;
                term *= rpow(x, s) * upper_gamma(s, x); // (pi X)^{-s} Gamma(s, pi X)
                terms[i] = term;
            }
        }
        return reduce_terms(terms);
    };

    cplx A = half_sum(q.L, q.z, q.w, q.s);
    cplx B = half_sum(D, q.w, q.z, sB);

    cplx G = A + (E / cplx(V, real(0))) * B;
    if (m == 0 && w_in_D) G += cplx(1 / V, real(0)) / (q.s - cplx(real(d), real(0)));
    if (m == 0 && z_in_L) G -= E / q.s;

    EKValue v;
    v.completed = G;
    v.error_bound = err;
    // K = pi^s rgamma(s) G
    cplx pis = exp(q.s * cplx(log(pi), real(0)));
    v.value = pis * rgamma(q.s) * G;
    v.pole_at_0 = (m == 0 && z_in_L) ? -E : cplx(0);
    v.pole_at_d = (m == 0 && w_in_D) ? cplx(1 / V, real(0)) : cplx(0);
    v.method = "incomplete-gamma";
    return v;
}

} // namespace ekl
