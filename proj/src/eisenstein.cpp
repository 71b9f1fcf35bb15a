#include "ekl/eisenstein.hpp"
#ifdef _OPENMP
#include <omp.h>
#endif

namespace ekl {

namespace {

int vec_total(const std::vector<int>& v) {
    int s = 0;
    for (int x : v) {
        if (x < 0) fail("MalformedConfig", "exponent vectors must be nonnegative");
        s += x;
    }
    return s;
}

real default_target() { return pow2(-static_cast<long>(precision_bits()) - 16); }

// conj(x)^beta / x^alpha / N(x)^s
cplx eis_term(const cvec& x, const std::vector<int>& beta,
              const std::vector<int>& alpha, const cplx& s) {
    cplx t(1);
    real N(1);
    for (size_t i = 0; i < x.size(); ++i) {
        if (beta[i] != 0) t *= pow_int(conj(x[i]), beta[i]);
        if (alpha[i] != 0) t *= pow_int(x[i], -alpha[i]);
        N *= norm(x[i]);
    }
    real lN = log(N);
    return t * exp(cplx(-s.re * lN, -s.im * lN));
}

// the unit u must fix the summand: prod conj(u)^beta u^{-alpha} = 1, N(u) = 1;
// for the flow unfolding prod conj(u)^{beta+alpha} = 1 must hold as well
void check_unit_invariance(const EisQuery& q, const cvec& u, bool for_flow) {
    real tol = pow2(-static_cast<long>(precision_bits()) + 24);
    cplx f1(1), f2(1);
    real N(1);
    for (size_t i = 0; i < u.size(); ++i) {
        f1 *= pow_int(conj(u[i]), q.beta[i]) * pow_int(u[i], -q.alpha[i]);
        f2 *= pow_int(conj(u[i]), q.beta[i] + q.alpha[i]);
        N *= norm(u[i]);
    }
    if (abs(N - 1) > tol)
        fail("NotStable", "unit generator does not have norm 1");
    if (abs(f1 - cplx(1)) > tol)
        fail("NotStable", "summand is not invariant under a unit generator");
    if (for_flow && abs(f2 - cplx(1)) > tol)
        fail("NotStable", "flow unfolding weight is not unit-invariant");
}

void check_orbit_stability(const EisQuery& q, const cvec& u) {
    for (auto& t : q.O.points) {
        cvec ut(q.L.d);
        for (int i = 0; i < q.L.d; ++i) ut[i] = u[i] * t[i];
        bool found = false;
        for (auto& t2 : q.O.points) {
            cvec diff(q.L.d);
            for (int i = 0; i < q.L.d; ++i) diff[i] = ut[i] - t2[i];
            if (lattice_member(q.L, diff)) {
                found = true;
                break;
            }
        }
        if (!found) fail("NotStable", "orbit set is not stable under the unit group");
    }
}

void validate_query(const EisQuery& q, bool for_flow) {
    if (static_cast<int>(q.beta.size()) != q.L.d ||
        static_cast<int>(q.alpha.size()) != q.L.d)
        fail("MalformedConfig", "exponent vectors must have length d");
    if (q.O.points.empty()) fail("MalformedConfig", "empty orbit set");
    if (q.finite_index < 1) fail("MalformedConfig", "finite_index must be >= 1");
    for (auto& u : q.unit_gens) {
        check_unit_invariance(q, u, for_flow);
        check_orbit_stability(q, u);
    }
    if (!q.fund_unit.empty()) {
        check_unit_invariance(q, q.fund_unit, for_flow);
        check_orbit_stability(q, q.fund_unit);
    }
}

} // namespace

OrbitSet orbit_points(const FieldData& fd, const felem& t, const FractionalIdeal& I) {
    std::vector<felem> orbit{fe_mod(fd.nf, t, I)};
    size_t head = 0;
    while (head < orbit.size()) {
        felem x = orbit[head++];
        for (auto& g : fd.units.gens) {
            felem y = fe_mod(fd.nf, fe_mul(fd.nf, g, x), I);
            if (std::find(orbit.begin(), orbit.end(), y) == orbit.end())
                orbit.push_back(y);
        }
    }
    std::sort(orbit.begin(), orbit.end());
    OrbitSet O;
    for (auto& x : orbit) O.points.push_back(fe_embed_cm(fd.nf, fd.cm, x));
    return O;
}

EisValue e_series_direct(const EisQuery& q) {
    int d = q.L.d;
    int b = vec_total(q.beta), a = vec_total(q.alpha);
    real sigma = q.s.re;
    if (sigma <= real(b - a) / 2 + d + real(1) / 2)
        fail("OutsideConvergence",
             "direct orbit summation needs Re s > (|beta|-|alpha|)/2 + d");
    validate_query(q, false);
    real target = q.target > 0 ? q.target : default_target();

    bool flow = !q.fund_unit.empty();
    real T(0), delta = real(1) / 8;
    if (flow) {
        if (d != 2) fail("MalformedConfig", "unit flow summation implemented for d = 2");
        T = log(abs(q.fund_unit[0]) / abs(q.fund_unit[1]));
        if (T < 0) fail("MalformedConfig", "fundamental unit must expand coordinate 0");
    }

    // per-coordinate degree of |term| as a power of |x|_H
    std::vector<real> e(d);
    real etot(0);
    real C(1);
    for (int i = 0; i < d; ++i) {
        e[i] = real(q.beta[i] - q.alpha[i]) - 2 * sigma;
        etot += e[i];
        if (e[i] >= 0) {
            C *= pow(sqrt(q.H.r[i]), -e[i]);
        } else if (!flow) {
            if (d != 1)
                fail("MalformedConfig",
                     "negative coordinate degrees need d = 1 or the unit flow cone");
            C *= pow(sqrt(q.H.r[i]), -e[i]); // |x_0| = |x|_H / sqrt(r) exactly
        }
    }
    if (flow) {
        // cone tau in [-delta, T-delta): two-sided coordinate comparability
        real c1 = 1 / sqrt(q.H.r[0] + q.H.r[1] * exp(2 * delta));
        real c2 = 1 / sqrt(q.H.r[1] + q.H.r[0] * exp(2 * (T - delta)));
        if (e[0] < 0) C *= pow(c1, e[0]);
        if (e[1] < 0) C *= pow(c2, e[1]);
    }

    auto tail_at = [&](const real& R) -> real {
        return real(q.O.points.size()) * C * powerlaw_tail(q.L, q.H, R, etot);
    };
    real R = 4 + sqrt(min_norm2(q.L, q.H));
    while (tail_at(R) >= target / 2) {
        R *= real(3) / 2;
        if (R > 1000000) fail("BudgetExceeded", "orbit-sum radius blow-up");
    }

    unsigned bits = precision_bits();
    real tiny = pow2(-static_cast<long>(bits) + 16);
    cplx total(0);
    for (auto& t : q.O.points) {
        ShellEnumeration se = enumerate_shells(q.L, q.H, t, R);
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
                if (norm_H(q.H, p) < tiny) continue;
                if (flow) {
                    real tau = log(abs(p[0]) / abs(p[1]));
                    if (tau < -delta || tau >= T - delta) continue;
                }
                terms[i] = eis_term(p, q.beta, q.alpha, q.s);
            }
        }
        for (auto& x : terms) total += x;
    }
    EisValue v;
    v.value = total / cplx(real(q.finite_index), real(0));
    v.error_bound = tail_at(R) / q.finite_index;
    v.method = flow ? "direct-cone" : "direct-orbit";
    return v;
}

EisValue e_series(const EisQuery& q) {
    int d = q.L.d;
    vec_total(q.beta);
    int a = vec_total(q.alpha);
    bool flow = !q.fund_unit.empty();
    validate_query(q, flow);
    real target = q.target > 0 ? q.target : default_target();

    std::vector<int> mu(d);
    for (int i = 0; i < d; ++i) mu[i] = q.beta[i] + q.alpha[i];

    if (d == 1) {
        // term-by-term identity: N(x) = |x|^2 turns the orbit sum into the
        // lattice series at shifted s
        if (flow) fail("MalformedConfig", "no unit flow in d = 1");
        EKQuery kq;
        kq.L = q.L;
        kq.H = q.H;
        kq.w = cvec(1, cplx(0));
        kq.mu = mu;
        kq.s = q.s + cplx(real(a), real(0));
        kq.target = target;
        cplx total(0);
        real err(0);
        for (auto& t : q.O.points) {
            kq.z = t;
            EKValue kv = ek_k(kq);
            total += kv.value;
            err += kv.error_bound;
        }
        EisValue v;
        v.value = total / cplx(real(q.finite_index), real(0));
        v.error_bound = err / q.finite_index;
        v.method = "k-reduction";
        return v;
    }

    if (d != 2 || !flow)
        fail("MalformedConfig", "continuation needs d = 1 or d = 2 with a unit flow");
    for (auto& r : q.H.r)
        if (r != 1) fail("MalformedConfig", "unit-flow continuation needs the standard form");

    // Mellin unfolding over the unit flow:
    //   prod_i Gamma(alpha_i + s) E = d * sum_t integral over tau in [0,T] of
    //     Gamma(a + ds) K^{beta+alpha}(H_tau, t, 0, a + ds) e^{tau(a_1 - a_2)}
    // with H_tau = diag(e^tau, e^{-tau}) and T the flow period of the unit.
    real T = log(abs(q.fund_unit[0]) / abs(q.fund_unit[1]));
    if (T <= 0) fail("MalformedConfig", "fundamental unit must expand coordinate 0");
    cplx sp = cplx(real(a), real(0)) + cplx(real(d), real(0)) * q.s;

    auto integrand = [&](const real& tau, real& err) {
        HermitianForm Hr;
        Hr.r = {exp(tau), exp(-tau)};
        EKQuery kq;
        kq.L = q.L;
        kq.H = Hr;
        kq.w = cvec(2, cplx(0));
        kq.mu = mu;
        kq.s = sp;
        kq.target = target;
        cplx sum(0);
        for (auto& t : q.O.points) {
            kq.z = t;
            EKValue kv = ek_k(kq);
            sum += kv.value;
            err += kv.error_bound;
        }
        return sum * exp(cplx(tau * (q.alpha[0] - q.alpha[1]), real(0)));
    };

    real conv_tol = pow2(-static_cast<long>(precision_bits()) + 16);
    cplx prev(0), cur(0);
    real node_err(0);
    bool converged = false;
    for (int n = 8; n <= 256; n *= 2) {
        std::vector<real> xs, ws;
        gauss_legendre(n, xs, ws); // nodes on [-1, 1]
        cplx acc(0);
        real err(0);
        for (int j = 0; j < n; ++j) {
            real tau = (xs[j] + 1) / 2 * T;
            acc += cplx(ws[j] * T / 2, real(0)) * integrand(tau, err);
        }
        prev = cur;
        cur = acc;
        node_err = err * T;
        if (n > 8 && abs(cur - prev) < conv_tol * (1 + abs(cur))) {
            converged = true;
            break;
        }
    }
    if (!converged)
        fail("QuadratureNotConverged", "unit-flow quadrature did not stabilize");

    cplx gam_a(1);
    for (int i = 0; i < d; ++i) gam_a *= gamma(cplx(real(q.alpha[i]), real(0)) + q.s);
    cplx gs = gamma(sp);
    EisValue v;
    v.value = cplx(real(d), real(0)) * gs * cur /
              (gam_a * cplx(real(q.finite_index), real(0)));
    v.error_bound = (abs(cur - prev) + node_err * abs(gs)) * real(d) /
                    (abs(gam_a) * q.finite_index);
    v.method = "unit-flow-quadrature";
    return v;
}

DistResult verify_distribution(const FieldData& fd, const felem& c_gen,
                               const felem& f_gen, const felem& b_gen,
                               const std::vector<int>& beta,
                               const std::vector<int>& alpha) {
    const NumberFieldSpec& nf = fd.nf;
    felem fb = fe_mul(nf, f_gen, fe_inv(nf, b_gen));          // f / b
    felem fbc = fe_mul(nf, fb, fe_inv(nf, c_gen));            // f / (b c)
    FractionalIdeal I1 = ideal_principal(nf, fb, "f/b");
    FractionalIdeal I2 = ideal_principal(nf, fbc, "f/(bc)");
    if (!ideal_coprime(nf, ideal_principal(nf, c_gen), ideal_principal(nf, f_gen)))
        fail("CoprimalityViolation", "c must be coprime to f");

    auto base_query = [&](const FractionalIdeal& I, const felem& t) {
        EisQuery q;
        q.beta = beta;
        q.alpha = alpha;
        q.s = cplx(0);
        q.L = embed_ideal(nf, I, fd.cm, cvec(nf.n() / 2, cplx(1)));
        q.H = std_form(nf.n() / 2);
        for (auto& g : fd.units.gens)
            q.unit_gens.push_back(fe_embed_cm(nf, fd.cm, g));
        q.finite_index = fd.units.torsion_order;
        q.O = orbit_points(fd, t, I);
        return q;
    };

    cplx lhs(0);
    real err(0);
    for (auto& t : coset_reps(nf, I1, I2)) {
        EisValue v = e_series(base_query(I1, fe_add(fe_one(nf), t)));
        lhs += v.value;
        err += v.error_bound;
    }
    EisValue rhs = e_series(base_query(I2, fe_one(nf)));
    err += rhs.error_bound;

    EisValue base = e_series(base_query(I1, fe_one(nf)));
    rational Nc = abs(fe_norm(nf, c_gen));

    DistResult r;
    r.lhs = lhs;
    r.rhs = rhs.value;
    r.residual = abs(lhs - rhs.value);
    r.error_bound = err;
    r.weighted = cplx(real(Nc), real(0)) * base.value - rhs.value;
    return r;
}

} // namespace ekl
