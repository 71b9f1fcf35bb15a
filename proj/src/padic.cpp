#include "ekl/padic.hpp"
#include <numeric>

namespace ekl {

namespace {

long ipow_l(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

FractionalIdeal ideal_pow(const NumberFieldSpec& nf, const FractionalIdeal& I, int k) {
    FractionalIdeal r = ideal_unit(nf);
    for (int i = 0; i < k; ++i) r = ideal_mul(nf, r, I);
    return r;
}

int valuation_at(const NumberFieldSpec& nf, const FractionalIdeal& I,
                 const FractionalIdeal& P, int cap) {
    int v = 0;
    while (v < cap && ideal_subset(nf, I, ideal_pow(nf, P, v + 1))) ++v;
    return v;
}

// small-generator search for a principal ideal (class number one presets)
felem find_generator(const NumberFieldSpec& nf, const FractionalIdeal& I) {
    rational nrm = ideal_norm(nf, I);
    long B = 2;
    {
        real b = sqrt(real(nrm)) + 2;
        B = static_cast<long>(static_cast<double>(b)) + 1;
    }
    int n = nf.n();
    if (n != 2) fail("MalformedConfig", "generator search implemented for degree 2");
    for (long a = -B; a <= B; ++a)
        for (long b = -B; b <= B; ++b) {
            if (a == 0 && b == 0) continue;
            felem x = {rational(a), rational(b)};
            if (abs(fe_norm(nf, x)) != nrm) continue;
            if (ideal_eq(nf, ideal_principal(nf, x), I)) return x;
        }
    fail("NoDecompositionFound", "no small generator found for the ideal");
}

// determinant of a small cyc matrix (pairing perfectness check)
bool cyc_matrix_invertible(std::vector<std::vector<cyc>> M) {
    int n = static_cast<int>(M.size());
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!is_zero(M[i][c])) {
                piv = i;
                break;
            }
        if (piv < 0) return false;
        std::swap(M[piv], M[c]);
        cyc ic = inv(M[c][c]);
        for (int i = c + 1; i < n; ++i) {
            if (is_zero(M[i][c])) continue;
            cyc f = M[i][c] * ic;
            for (int j = c; j < n; ++j) M[i][j] = M[i][j] - f * M[c][j];
        }
    }
    return true;
}

long residue_index(const std::vector<felem>& res, const felem& x) {
    for (size_t i = 0; i < res.size(); ++i)
        if (fe_eq(res[i], x)) return static_cast<long>(i);
    return -1;
}

long modinv(long a, long m) {
    long t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) fail("InvariantViolation", "residue not invertible");
    return ((t % m) + m) % m;
}

} // namespace

PStructure check_ordinary(const FieldData& fd, long p, int m) {
    const NumberFieldSpec& nf = fd.nf;
    PStructure ps;
    ps.fd = fd;
    ps.p = p;
    ps.m = m;
    ps.pm = ipow_l(p, m);

    const FieldData::PrimeInfo* above_sigma = nullptr;
    const FieldData::PrimeInfo* above_bar = nullptr;
    int count = 0;
    for (auto& pi : fd.primes)
        if (pi.p == p) {
            ++count;
            if (pi.in_sigma) above_sigma = &pi;
            else above_bar = &pi;
        }
    if (count == 0) {
        // diagnose for quadratic fields without supplied factorization
        if (nf.n() == 2) {
            if (nf.discriminant % p == 0)
                fail("NotOrdinary", "p ramifies (divides the discriminant)");
            for (long a = -p; a <= p; ++a)
                for (long b = -p; b <= p; ++b) {
                    felem x = {rational(a), rational(b)};
                    if (!fe_is_zero(x) && abs(fe_norm(nf, x)) == p)
                        fail("BadFactorization",
                             "p splits but the config supplies no CM-side assignment");
                }
            fail("NotOrdinary", "p is inert (single prime above p)");
        }
        fail("BadFactorization", "no factorization data for p");
    }
    if (!above_sigma || !above_bar)
        fail("NotOrdinary", "factorization does not split across the CM type");
    ps.pSigma = above_sigma->ideal;
    ps.pBar = above_bar->ideal;
    if (above_sigma->residue_degree != 1 || above_bar->residue_degree != 1)
        fail("MalformedConfig", "residue degree 1 supported");
    if (ideal_eq(nf, ps.pSigma, ps.pBar))
        fail("NotOrdinary", "the two residue towers coincide");
    FractionalIdeal pI = ideal_principal(nf, fe_from_int(nf, p));
    if (!ideal_eq(nf, ideal_mul(nf, ps.pSigma, ps.pBar), pI))
        fail("BadFactorization", "supplied primes do not multiply to (p)");
    if (!ideal_coprime(nf, ps.pSigma, ps.pBar))
        fail("BadFactorization", "supplied primes are not coprime");

    ps.gSigma = find_generator(nf, ps.pSigma);
    ps.gBar = find_generator(nf, ps.pBar);
    ps.pSigmaM = ideal_pow(nf, ps.pSigma, m);
    ps.pBarM = ideal_pow(nf, ps.pBar, m);
    ps.pM = ideal_principal(nf, fe_from_int(nf, ps.pm));

    ps.res_sigma = coset_reps(nf, ps.pSigmaM, ideal_unit(nf));
    ps.res_bar = coset_reps(nf, ps.pBarM, ideal_unit(nf));
    if (static_cast<long>(ps.res_sigma.size()) != ps.pm ||
        static_cast<long>(ps.res_bar.size()) != ps.pm)
        fail("BadFactorization", "residue systems do not have size p^m");

    auto lifts = [&](const std::vector<felem>& res, const FractionalIdeal& P) {
        std::vector<long> L;
        for (auto& r : res) {
            long found = -1;
            for (long k = 0; k < ps.pm; ++k)
                if (ideal_contains(nf, P, fe_sub(r, fe_from_int(nf, k)))) {
                    found = k;
                    break;
                }
            if (found < 0) fail("BadFactorization", "residue has no integer lift");
            L.push_back(found);
        }
        return L;
    };
    ps.lift_sigma = lifts(ps.res_sigma, ps.pSigmaM);
    ps.lift_bar = lifts(ps.res_bar, ps.pBarM);

    // CRT idempotent: 1 mod the sigma tower, 0 mod the bar tower
    bool found = false;
    for (auto& r : coset_reps(nf, ps.pM, ideal_unit(nf))) {
        if (ideal_contains(nf, ps.pSigmaM, fe_sub(r, fe_one(nf))) &&
            ideal_contains(nf, ps.pBarM, r)) {
            ps.eSigma = r;
            found = true;
            break;
        }
    }
    if (!found) fail("BadFactorization", "no CRT idempotent (towers not coprime)");
    ps.eBar = fe_mod(nf, fe_sub(fe_one(nf), ps.eSigma), ps.pM);

    // pairing perfectness: the p^m x p^m root-of-unity matrix is invertible
    int pm = static_cast<int>(ps.pm);
    std::vector<std::vector<cyc>> P(pm, std::vector<cyc>(pm));
    for (int i = 0; i < pm; ++i)
        for (int j = 0; j < pm; ++j)
            P[i][j] = cyc_zeta_pow(pm > 1 ? pm : 2, (static_cast<long>(i) * j) % ps.pm);
    if (!cyc_matrix_invertible(P))
        fail("BadFactorization", "Oda pairing matrix is singular");
    return ps;
}

PTable partial_fourier(const PStructure& ps, const PTable& rho) {
    long pm = ps.pm;
    if (static_cast<long>(rho.size()) != pm)
        fail("MalformedConfig", "table must cover the full residue system");
    int d = ps.fd.nf.n() / 2;
    int NT = static_cast<int>(pm);
    for (auto& row : rho)
        for (auto& v : row) NT = std::lcm(NT, v.n);
    rational scale(1);
    for (int i = 0; i < d * ps.m; ++i) scale /= ps.p;

    PTable out(pm, std::vector<cyc>(pm, cyc(NT)));
    for (long fs = 0; fs < pm; ++fs)
        for (long s = 0; s < pm; ++s) {
            cyc acc(NT);
            for (long t = 0; t < pm; ++t) {
                if (is_zero(rho[t][s])) continue;
                long e = -(ps.lift_sigma[t] * ps.lift_sigma[fs]) % pm;
                cyc root = cyc_zeta_pow(NT, e * (NT / pm));
                acc = acc + root * cyc_lift(rho[t][s], NT);
            }
            out[fs][s] = scale * acc;
        }
    return out;
}

PTable extract_chi_fin(const HeckeCharacter& chi, const PStructure& ps) {
    const NumberFieldSpec& nf = chi.fd.nf;
    long pm = ps.pm;
    int vs = valuation_at(nf, chi.cond, ps.pSigma, ps.m + 1);
    int vb = valuation_at(nf, chi.cond, ps.pBar, ps.m + 1);
    if (vs > ps.m || vb > ps.m)
        fail("LevelTooSmall", "conductor p-part exceeds the level");

    // prime-to-p part of the conductor via exact generator division
    felem cond_gen = find_generator(nf, chi.cond);
    felem gp = fe_one(nf);
    for (int i = 0; i < vs; ++i) gp = fe_mul(nf, gp, ps.gSigma);
    for (int i = 0; i < vb; ++i) gp = fe_mul(nf, gp, ps.gBar);
    felem f0_gen = fe_mul(nf, cond_gen, fe_inv(nf, gp));
    FractionalIdeal f0 = ideal_principal(nf, f0_gen, "cond/p-part");
    FractionalIdeal lift_mod = ideal_mul(nf, ps.pM, f0);
    std::vector<felem> lift_res = coset_reps(nf, lift_mod, ideal_unit(nf));
    qmat lift_basis = ideal_basis(lift_mod);

    int NT = std::lcm(chi.zeta_order, static_cast<int>(pm));
    PTable out(pm, std::vector<cyc>(pm, cyc(NT)));

    for (long i = 0; i < pm; ++i)
        for (long j = 0; j < pm; ++j) {
            if (ps.lift_sigma[i] % ps.p == 0 || ps.lift_bar[j] % ps.p == 0)
                continue; // not a unit: zero extension
            felem u = fe_mod(
                nf,
                fe_add(fe_mul(nf, ps.eSigma, ps.res_sigma[i]),
                       fe_mul(nf, ps.eBar, ps.res_bar[j])),
                ps.pM);
            // CRT lift: lambda = u mod p^m, lambda = 1 mod the prime-to-p part
            felem lam;
            bool found = false;
            for (auto& r : lift_res)
                if (ideal_contains(nf, ps.pM, fe_sub(r, u)) &&
                    ideal_contains(nf, f0, fe_sub(r, fe_one(nf)))) {
                    lam = r;
                    found = true;
                    break;
                }
            if (!found) fail("InvariantViolation", "CRT lift missing");
            auto chifin_at = [&](const felem& l) {
                cyc lc = element_as_cyc(nf, l, NT);
                return cyc_lift(chi_value(chi, l), NT) *
                       cyc_pow(lc, chi.inf.alpha[0]) *
                       cyc_pow(conj_cyc(lc), -chi.inf.beta[0]);
            };
            cyc v = chifin_at(lam);
            // independence of the lift: shift by a basis vector of the modulus
            felem lam2 = lam;
            for (int k = 0; k < nf.n(); ++k) lam2[k] += lift_basis[0][k];
            if (!(chifin_at(lam2) == v))
                fail("InvariantViolation", "chi_fin depends on the CRT lift");
            out[i][j] = v;
        }
    return out;
}

Decomposition decompose_conductor(const HeckeCharacter& chi, const PStructure& ps,
                                  const felem& cond_gen) {
    const NumberFieldSpec& nf = chi.fd.nf;
    Decomposition dec;
    dec.a_sigma = valuation_at(nf, chi.cond, ps.pSigma, ps.m + 2);
    dec.b_bar = valuation_at(nf, chi.cond, ps.pBar, ps.m + 2);
    felem gp = fe_one(nf);
    for (int i = 0; i < dec.a_sigma; ++i) gp = fe_mul(nf, gp, ps.gSigma);
    for (int i = 0; i < dec.b_bar; ++i) gp = fe_mul(nf, gp, ps.gBar);
    felem f0_gen = fe_mul(nf, cond_gen, fe_inv(nf, gp));
    FractionalIdeal f0 = ideal_principal(nf, f0_gen);

    felem u = fe_one(nf);
    for (long k = 0; k < chi.fd.units.torsion_order; ++k) {
        felem c = fe_mul(nf, u, gp);
        if (ideal_contains(nf, f0, fe_sub(c, fe_one(nf)))) {
            dec.c = c;
            dec.b_gen = fe_one(nf);
            return dec;
        }
        u = fe_mul(nf, u, chi.fd.units.gens[0]);
    }
    fail("NoDecompositionFound",
         "no torsion unit makes the p-part generator 1 mod the conductor");
}

cyc local_factor(const HeckeCharacter& chi, const PStructure& ps,
                 const Decomposition& dec) {
    const NumberFieldSpec& nf = chi.fd.nf;
    PTable chifin = extract_chi_fin(chi, ps);
    long pm = ps.pm;
    int NT = 0;
    for (auto& row : chifin)
        for (auto& v : row) NT = NT == 0 ? v.n : std::lcm(NT, v.n);

    // F(t, s) = chi_fin(t, s^{-1}), zero off the units
    PTable F(pm, std::vector<cyc>(pm, cyc(NT)));
    for (long i = 0; i < pm; ++i)
        for (long j = 0; j < pm; ++j) {
            if (ps.lift_sigma[i] % ps.p == 0 || ps.lift_bar[j] % ps.p == 0) continue;
            long inv_lift = modinv(ps.lift_bar[j], pm);
            long jj = -1;
            for (long k = 0; k < pm; ++k)
                if (ps.lift_bar[k] == inv_lift) jj = k;
            F[i][j] = chifin[i][jj];
        }
    PTable PF = partial_fourier(ps, F);
    NT = PF[0][0].n;

    // evaluate at y = c^{-1}: residues of y on both towers (zero extension
    // when y is not p-integral, i.e. for genuinely ramified decompositions)
    felem y = fe_inv(nf, dec.c);
    long iy = residue_index(ps.res_sigma, fe_mod(nf, y, ps.pSigmaM));
    long jy = residue_index(ps.res_bar, fe_mod(nf, y, ps.pBarM));
    cyc val = (iy >= 0 && jy >= 0) ? PF[iy][jy] : cyc(NT);

    cyc cc = element_as_cyc(nf, dec.c, NT);
    cyc num = cyc_pow(cc, chi.inf.alpha[0]) * val;
    cyc den = cyc_pow(conj_cyc(cc), chi.inf.beta[0]) *
              cyc_lift(chi_value(chi, dec.b_gen), NT);
    return num * inv(den);
}

std::pair<cyc, cyc> euler_factors(const HeckeCharacter& chi, const PStructure& ps) {
    const NumberFieldSpec& nf = chi.fd.nf;
    int NT = std::lcm(chi.zeta_order, 2);
    cyc one = cyc_rational(NT, 1);
    cyc f1 = one, f2 = one;
    if (!ideal_subset(nf, chi.cond, ps.pSigma)) {
        cyc cv = cyc_lift(chi_value(chi, ps.gSigma), NT);
        rational invNq = rational(1) / rational(abs(fe_norm(nf, ps.gSigma)));
        f1 = one - invNq * inv(cv);
    }
    if (!ideal_subset(nf, chi.cond, ps.pBar))
        f2 = one - cyc_lift(chi_value(chi, ps.gBar), NT);
    return {f1, f2};
}

InterpolatedValue interpolated_value(const HeckeCharacter& chi,
                                     const PeriodData& periods,
                                     const PStructure& ps) {
    const NumberFieldSpec& nf = chi.fd.nf;
    felem cond_gen = find_generator(nf, chi.cond);
    Decomposition dec = decompose_conductor(chi, ps, cond_gen);
    InterpolatedValue out;
    out.local = local_factor(chi, ps, dec);
    auto [e1, e2] = euler_factors(chi, ps);
    out.euler_sigma = e1;
    out.euler_bar = e2;
    // count torsion units congruent to 1 mod the conductor
    long fixed = 0;
    felem u = fe_one(nf);
    for (long k = 0; k < chi.fd.units.torsion_order; ++k) {
        if (ideal_contains(nf, chi.cond, fe_sub(u, fe_one(nf)))) ++fixed;
        u = fe_mul(nf, u, chi.fd.units.gens[0]);
    }
    out.unit_index = chi.fd.units.torsion_order / fixed;

    LValue raw = total_L(chi);
    int d = nf.n() / 2;
    real factnum(1);
    int btot = 0;
    cplx perden(1);
    for (int i = 0; i < d; ++i) {
        for (int k = 2; k < chi.inf.alpha[i]; ++k) factnum *= k;
        btot += chi.inf.beta[i];
        perden *= pow_int(periods.Omega[i], chi.inf.alpha[i]);
        perden *= pow_int(periods.OmegaDual[i], chi.inf.beta[i]);
    }
    cplx factor = cplx(factnum, real(0)) *
                  pow_int(cplx(real(0), 2 * const_pi()), btot) / perden;
    int NT = std::lcm(out.local.n, std::lcm(e1.n, e2.n));
    cyc exact = cyc_lift(out.local, NT) * cyc_lift(e1, NT) * cyc_lift(e2, NT);
    cplx exact_c = to_cplx(exact) * cplx(real(out.unit_index), real(0));
    out.value = factor * exact_c * raw.value;
    out.error_bound = abs(factor) * abs(exact_c) * raw.error_bound * (1 + pow2(-40));
    out.recognition = recognize_algebraic(out.value, bigint(1) << 64, true);
    return out;
}

MeasureReport measure_consistency_check(const PStructure& ps, RhoKind kind,
                                        long param) {
    const FieldData& fd = ps.fd;
    const NumberFieldSpec& nf = fd.nf;
    if (nf.n() != 2) fail("MalformedConfig", "measure check implemented for d = 1");
    long pm = ps.pm;
    int NT = std::lcm(static_cast<int>(pm), nf.cyclotomic_conductor);

    // rho on the sigma residues, constant along the bar direction, pushed
    // through the actual transform
    PTable rho(pm, std::vector<cyc>(pm, cyc(NT)));
    for (long t = 0; t < pm; ++t) {
        cyc v(NT);
        long lt = ps.lift_sigma[t];
        if (kind == RhoKind::one) v = cyc_rational(NT, 1);
        if (kind == RhoKind::pairing)
            v = cyc_zeta_pow(NT, (lt * param % pm) * (NT / pm));
        if (kind == RhoKind::delta)
            v = lt == ((param % pm) + pm) % pm ? cyc_rational(NT, 1) : cyc(NT);
        for (long s = 0; s < pm; ++s) rho[t][s] = v;
    }
    PTable PF = partial_fourier(ps, rho);

    HermitianForm H = std_form(1);
    cvec one_scale(1, cplx(1));
    ComplexLattice L = embed_ideal(nf, ideal_unit(nf), fd.cm, one_scale);
    felem gbm_inv = fe_one(nf);
    for (int i = 0; i < ps.m; ++i) gbm_inv = fe_mul(nf, gbm_inv, ps.gBar);
    gbm_inv = fe_inv(nf, gbm_inv);
    FractionalIdeal I2 = ideal_principal(nf, gbm_inv, "pbar^-m");
    ComplexLattice L2 = embed_ideal(nf, I2, fd.cm, one_scale);

    cvec gE = fe_embed_cm(nf, fd.cm, ps.eBar);
    for (auto& c : gE) c = c / cplx(real(pm), real(0));
    felem xf = {rational(1, 3), rational(1, 3)};
    cvec x = fe_embed_cm(nf, fd.cm, xf);

    EKQuery q;
    q.H = H;
    q.mu = {4};
    q.s = cplx(4);
    q.w = cvec(1, cplx(0));

    cplx lhs(0);
    real err(0);
    for (long fs = 0; fs < pm; ++fs) {
        if (is_zero(PF[fs][0])) continue;
        q.L = L;
        q.z = x;
        q.z[0] = q.z[0] + cplx(real(ps.lift_sigma[fs]), real(0)) * gE[0];
        EKValue kv = ek_k(q);
        lhs += to_cplx(PF[fs][0]) * kv.value;
        err += kv.error_bound * 4; // |pi^s rgamma(s)| at s = 4 is < 4
    }

    // w_t in the dual of L with <g, w_t> = -t/p^m mod 1
    ComplexLattice D = dual_lattice(L, H);
    std::vector<long> kappa(2);
    for (int i = 0; i < 2; ++i) {
        real v = real(pm) * pairing(H, gE, D.gens[i]);
        real r = floor(v + real(1) / 2);
        if (abs(v - r) > pow2(-40))
            fail("InvariantViolation", "dual pairing with the torsion point not 1/p^m-rational");
        kappa[i] = static_cast<long>(static_cast<double>(r)) % pm;
    }
    cplx rhs(0);
    for (long t = 0; t < pm; ++t) {
        if (is_zero(rho[t][0])) continue;
        long lt = ps.lift_sigma[t];
        long n1 = -1, n2 = -1;
        for (long a = 0; a < pm && n1 < 0; ++a)
            for (long b = 0; b < pm; ++b)
                if (((a * kappa[0] + b * kappa[1] + lt) % pm + pm) % pm == 0) {
                    n1 = a;
                    n2 = b;
                    break;
                }
        if (n1 < 0) fail("InvariantViolation", "no dual vector matches the pairing value");
        q.L = L2;
        q.z = x;
        q.w = cvec(1, cplx(real(n1), real(0)) * D.gens[0][0] +
                          cplx(real(n2), real(0)) * D.gens[1][0]);
        EKValue kv = ek_k(q);
        rhs += to_cplx(rho[t][0]) * kv.value;
        err += kv.error_bound * 4 / pm;
    }
    rhs = rhs / cplx(real(pm), real(0));

    MeasureReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = abs(lhs - rhs);
    rep.error_bound = err;
    if (rep.residual > pow2(-40) * (1 + abs(lhs)) && rep.residual > 100 * err)
        fail("OracleMismatch",
             "translation identity contradicts the implemented normalization");
    return rep;
}

StripReport euler_strip_check(const HeckeCharacter& chi, const PStructure& ps) {
    const NumberFieldSpec& nf = chi.fd.nf;
    if (!chi.fin.empty())
        fail("MalformedConfig", "stripping check implemented for trivial finite part");
    auto [e1, e2] = euler_factors(chi, ps);
    LValue base = total_L(chi);

    HeckeCharacter chi2 = make_character(
        chi.fd, ideal_mul(nf, chi.cond, ps.pBar), chi.inf, {}, chi.zeta_order);
    LValue enlarged = total_L(chi2);

    StripReport r;
    r.lhs = to_cplx(e2) * base.value;
    r.rhs = enlarged.value;
    r.residual = abs(r.lhs - r.rhs);
    r.error_bound = base.error_bound + enlarged.error_bound;
    return r;
}

} // namespace ekl
