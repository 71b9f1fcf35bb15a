#include "ekl/hecke.hpp"
#include <numeric>

namespace ekl {

namespace {

cyc felem_to_cyc(const NumberFieldSpec& nf, const felem& x) {
    if (nf.cyclotomic_conductor <= 0)
        fail("MalformedConfig", "characters need a cyclotomic power-basis field");
    cyc a(nf.cyclotomic_conductor);
    if (a.c.size() != x.size())
        fail("InvariantViolation", "basis size mismatch");
    a.c = x;
    return a;
}

std::vector<felem> torsion_units(const FieldData& fd) {
    if (fd.units.gens.empty()) fail("MalformedConfig", "no unit generators");
    std::vector<felem> us;
    felem u = fe_one(fd.nf);
    for (long k = 0; k < fd.units.torsion_order; ++k) {
        us.push_back(u);
        u = fe_mul(fd.nf, u, fd.units.gens[0]);
    }
    if (!fe_eq(u, fe_one(fd.nf)))
        fail("InvariantViolation", "torsion generator order mismatch");
    return us;
}

bigint floor_to_int(const real& x) {
    bigint r;
    mpfr_get_z(r.backend().data(), x.backend().data(), MPFR_RNDD);
    return r;
}

// best continued-fraction convergent with denominator <= bound
bool cf_rational(const real& x, const bigint& bound, rational& out) {
    real cur = x;
    bigint p0(1), q0(0), p1(0), q1(1); // convergent recurrences
    real tiny = pow2(-static_cast<long>(precision_bits()) + 8);
    for (int it = 0; it < 256; ++it) {
        bigint a = floor_to_int(cur);
        bigint p = a * p0 + p1, q = a * q0 + q1;
        if (q > bound) break;
        p1 = p0; q1 = q0; p0 = p; q0 = q;
        real rem = cur - real(a);
        if (rem < tiny) break;
        cur = 1 / rem;
    }
    if (q0 == 0) return false;
    out = rational(p0, q0);
    return true;
}

} // namespace

cyc element_as_cyc(const NumberFieldSpec& nf, const felem& x, int N) {
    return cyc_lift(felem_to_cyc(nf, x), N);
}

CritResult is_critical(const InfinityType& inf, const CMTypeSpec& cm) {
    int d = static_cast<int>(inf.alpha.size());
    CritResult r{Criticality::invalid, 0, -1};
    if (static_cast<int>(inf.beta.size()) != d) return r;
    std::vector<std::vector<int>> fibers = cm.fibers;
    if (fibers.empty())
        for (int i = 0; i < d; ++i) fibers.push_back({i});
    bool have_w = false;
    int w = 0;
    for (size_t fi = 0; fi < fibers.size(); ++fi) {
        const auto& F = fibers[fi];
        int a0 = inf.alpha[F[0]], b0 = inf.beta[F[0]];
        for (int i : F)
            if (inf.alpha[i] != a0 || inf.beta[i] != b0) {
                r.failing_fiber = static_cast<int>(fi);
                return r;
            }
        int wf = b0 - a0;
        if (!have_w) { w = wf; have_w = true; }
        else if (wf != w) {
            r.failing_fiber = static_cast<int>(fi);
            return r;
        }
    }
    r.weight = w;
    bool crit = true;
    for (int i = 0; i < d; ++i)
        if (inf.alpha[i] < 1 || inf.beta[i] < 0) crit = false;
    r.cls = crit ? Criticality::critical : Criticality::hecke_type_only;
    return r;
}

cyc chi_value(const HeckeCharacter& chi, const felem& lambda) {
    const NumberFieldSpec& nf = chi.fd.nf;
    if (nf.n() != 2)
        fail("MalformedConfig", "character evaluation implemented for degree-2 fields");
    if (fe_is_zero(lambda)) fail("MalformedConfig", "chi of the zero ideal");
    if (!ideal_coprime(nf, ideal_principal(nf, lambda), chi.cond))
        fail("CoprimalityViolation", "generator not coprime to the conductor");
    int N = chi.zeta_order;
    cyc lc = cyc_lift(felem_to_cyc(nf, lambda), N);
    cyc v = cyc_pow(lc, -chi.inf.alpha[0]) * cyc_pow(conj_cyc(lc), chi.inf.beta[0]);
    if (!chi.fin.empty()) {
        felem res = fe_mod(nf, lambda, chi.cond);
        bool found = false;
        for (auto& [r, val] : chi.fin)
            if (fe_eq(r, res)) {
                v = v * val;
                found = true;
                break;
            }
        if (!found)
            fail("MalformedConfig", "finite-part table misses a unit residue");
    }
    return v;
}

HeckeCharacter make_character(const FieldData& fd, const FractionalIdeal& cond,
                              const InfinityType& inf,
                              std::vector<std::pair<felem, cyc>> fin,
                              int zeta_order) {
    HeckeCharacter chi;
    chi.fd = fd;
    chi.cond = cond;
    chi.inf = inf;
    int n0 = fd.nf.cyclotomic_conductor;
    if (zeta_order == 0) {
        zeta_order = n0;
        for (auto& [r, v] : fin) zeta_order = std::lcm(zeta_order, v.n);
    }
    if (zeta_order % n0 != 0)
        fail("MalformedConfig", "zeta order must absorb the field conductor");
    chi.zeta_order = zeta_order;
    for (auto& [r, v] : fin)
        chi.fin.emplace_back(fe_mod(fd.nf, r, cond), cyc_lift(v, zeta_order));

    // well-definedness: the value must not depend on the generator choice,
    // i.e. chi is 1 on every torsion unit
    cyc one = cyc_rational(zeta_order, 1);
    for (auto& u : torsion_units(fd)) {
        cyc v = chi_value(chi, u);
        if (!(v == one))
            fail("InconsistentCharacter",
                 "character value depends on the generator (fails on a unit)");
    }
    // finite part: normalized at 1 and multiplicative
    if (!chi.fin.empty()) {
        felem one_res = fe_mod(fd.nf, fe_one(fd.nf), cond);
        for (auto& [r, v] : chi.fin)
            if (fe_eq(r, one_res) && !(v == one))
                fail("InconsistentCharacter", "finite part is not 1 at 1");
        for (auto& [x, vx] : chi.fin)
            for (auto& [y, vy] : chi.fin) {
                felem xy = fe_mod(fd.nf, fe_mul(fd.nf, x, y), cond);
                for (auto& [z, vz] : chi.fin)
                    if (fe_eq(z, xy) && !(vz == vx * vy))
                        fail("InconsistentCharacter", "finite part not multiplicative");
            }
    }
    return chi;
}

namespace {

EisQuery l_value_query(const HeckeCharacter& chi, const felem& b_gen) {
    const FieldData& fd = chi.fd;
    const NumberFieldSpec& nf = fd.nf;
    int d = nf.n() / 2;
    EisQuery q;
    q.beta = chi.inf.beta;
    q.alpha = chi.inf.alpha;
    q.s = cplx(0);
    q.H = std_form(d);
    felem binv = fe_inv(nf, b_gen);
    bool trivial_cond = ideal_eq(nf, chi.cond, ideal_unit(nf));
    if (trivial_cond) {
        // ideals in the class of (b) correspond to unit orbits of b^{-1}\{0}
        FractionalIdeal I = ideal_principal(nf, binv, "b^-1");
        q.L = embed_ideal(nf, I, fd.cm, cvec(d, cplx(1)));
        q.O.points = {cvec(d, cplx(0))};
        for (auto& g : fd.units.gens) q.unit_gens.push_back(fe_embed_cm(nf, fd.cm, g));
        q.finite_index = fd.units.torsion_order;
    } else {
        // ray coset of 1 modulo f b^{-1}, averaged over units congruent
        // to 1 mod the conductor
        qmat rows;
        for (auto& r : ideal_basis(chi.cond)) rows.push_back(fe_mul(nf, r, binv));
        FractionalIdeal I = ideal_from_basis(nf, rows, "f b^-1");
        q.L = embed_ideal(nf, I, fd.cm, cvec(d, cplx(1)));
        q.O.points = {fe_embed_cm(nf, fd.cm, fe_one(nf))};
        long cnt = 0;
        for (auto& u : torsion_units(fd))
            if (ideal_contains(nf, chi.cond, fe_sub(u, fe_one(nf)))) {
                ++cnt;
                if (!fe_eq(u, fe_one(nf)))
                    q.unit_gens.push_back(fe_embed_cm(nf, fd.cm, u));
            }
        q.finite_index = cnt;
    }
    return q;
}

} // namespace

LValue partial_L(const HeckeCharacter& chi, const felem& b_gen) {
    CritResult cr = is_critical(chi.inf, chi.fd.cm);
    if (cr.cls != Criticality::critical)
        fail("NotCritical", "L-value assembly needs a critical infinity type");
    EisQuery q = l_value_query(chi, b_gen);
    EisValue e = e_series(q);
    cplx cb = to_cplx(chi_value(chi, b_gen));
    LValue v;
    v.value = cb * e.value;
    v.error_bound = e.error_bound; // |chi(b)| = 1 in absolute value on units
    return v;
}

LValue total_L(const HeckeCharacter& chi, const std::vector<felem>& class_gens) {
    std::vector<felem> gens = class_gens;
    if (gens.empty()) gens.push_back(fe_one(chi.fd.nf));
    LValue total{cplx(0), real(0)};
    for (auto& g : gens) {
        LValue p = partial_L(chi, g);
        total.value += p.value;
        total.error_bound += p.error_bound;
    }
    return total;
}

PeriodData preset_periods(const std::string& name) {
    if (name != "lemniscatic")
        fail("MalformedConfig", "unknown period preset: " + name);
    PeriodData p;
    real pi = const_pi();
    real om = lemniscate_constant();
    p.Omega = {cplx(om, real(0))};
    p.pairing = {cplx(om * om / pi, real(0))};
    // dual period from the polarization: 2 pi i <.,.> / conj(Omega)
    p.OmegaDual = {cplx(real(0), 2 * om)};
    p.provenance = "lemniscatic curve y^2 = 4x^3 - 4x; Omega from the AGM; "
                   "dual fixed by the polarization identity (convention, not "
                   "a canonicity claim)";
    verify_periods(p);
    return p;
}

void verify_periods(const PeriodData& p) {
    real tol = pow2(-static_cast<long>(precision_bits()) + 16);
    cplx two_pi_i(real(0), 2 * const_pi());
    for (size_t i = 0; i < p.Omega.size(); ++i) {
        cplx expect = two_pi_i * p.pairing[i] / conj(p.Omega[i]);
        if (abs(p.OmegaDual[i] - expect) > tol * (1 + abs(expect)))
            fail("InvariantViolation", "period duality relation fails");
    }
}

Recognition recognize_algebraic(const cplx& x, const bigint& denom_bound,
                                bool gaussian) {
    Recognition r;
    r.residual = real(0);
    if (!isfinite(x)) return r;
    rational re, im(0);
    if (!cf_rational(x.re, denom_bound, re)) return r;
    if (gaussian) {
        if (!cf_rational(x.im, denom_bound, im)) return r;
    } else {
        im = 0;
    }
    real dr = abs(x.re - real(re));
    real di = abs(x.im - real(im));
    real res = dr > di ? dr : di;
    if (res >= pow2(-static_cast<long>(precision_bits()) / 2)) return r;
    r.found = true;
    r.re = re;
    r.im = im;
    r.residual = res;
    return r;
}

NormalizedLValue normalized_L(const HeckeCharacter& chi, const PeriodData& periods,
                              const felem& c_gen, const felem& cprime_gen,
                              const bigint& denom_bound) {
    const NumberFieldSpec& nf = chi.fd.nf;
    if (!ideal_coprime(nf, ideal_principal(nf, c_gen), chi.cond))
        fail("CoprimalityViolation", "c must be coprime to the conductor");
    bool trivial_cond = ideal_eq(nf, chi.cond, ideal_unit(nf));
    bool has_cprime = !cprime_gen.empty();
    if (has_cprime) {
        if (!trivial_cond)
            fail("CoprimalityViolation",
                 "the auxiliary factor is only defined for trivial conductor");
        if (!ideal_coprime(nf, ideal_principal(nf, cprime_gen),
                           ideal_principal(nf, c_gen)))
            fail("CoprimalityViolation", "c' must be coprime to c");
    }

    LValue raw = total_L(chi);

    // (alpha - 1)! (2 pi i)^{|beta|} / (Omega^alpha OmegaDual^beta)
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

    // exact regularizer (chi(c) Nc - 1) [* (1 - chi(c'))]
    int N = chi.zeta_order;
    rational Nc = abs(fe_norm(nf, c_gen));
    cyc reg = cyc_rational(N, Nc) * chi_value(chi, c_gen) - cyc_rational(N, 1);
    std::string desc = "(chi(c)Nc-1)";
    if (has_cprime) {
        reg = reg * (cyc_rational(N, 1) - chi_value(chi, cprime_gen));
        desc += "(1-chi(c'))";
    }

    NormalizedLValue out;
    out.raw = raw.value;
    cplx regc = to_cplx(reg);
    out.normalized = factor * regc * raw.value;
    out.error_bound = abs(factor) * abs(regc) * raw.error_bound * (1 + pow2(-40));
    out.regularizer = reg;
    out.regularizer_descriptor = desc;
    out.recognition = recognize_algebraic(out.normalized, denom_bound, true);
    return out;
}

} // namespace ekl
