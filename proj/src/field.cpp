#include "ekl/field.hpp"
#include "ekl/cyclotomic.hpp"
#include "../vendor/json.hpp"
#include <algorithm>
#include <map>
#include <set>

namespace ekl {

using nlohmann::json;

// ---------------- element arithmetic ----------------

felem fe_zero(const NumberFieldSpec& f) { return felem(f.n(), rational(0)); }

felem fe_one(const NumberFieldSpec& f) {
    felem a = fe_zero(f);
    a[0] = 1;
    return a;
}

felem fe_from_int(const NumberFieldSpec& f, long v) {
    felem a = fe_zero(f);
    a[0] = v;
    return a;
}

felem fe_add(const felem& a, const felem& b) {
    felem r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

felem fe_sub(const felem& a, const felem& b) {
    felem r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

felem fe_neg(const felem& a) {
    felem r = a;
    for (auto& x : r) x = -x;
    return r;
}

felem fe_mul(const NumberFieldSpec& f, const felem& a, const felem& b) {
    int n = f.n();
    felem r(n, rational(0));
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            rational c = a[i] * b[j];
            const ivec& m = f.mult[i][j];
            for (int k = 0; k < n; ++k)
                if (m[k] != 0) r[k] += c * rational(m[k]);
        }
    }
    return r;
}

namespace {

// rows of the multiplication-by-a matrix: row i = coords of e_i * a
qmat mul_matrix(const NumberFieldSpec& f, const felem& a) {
    int n = f.n();
    qmat M(n, qvec(n, rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (a[j] == 0) continue;
            const ivec& m = f.mult[i][j];
            for (int k = 0; k < n; ++k)
                if (m[k] != 0) M[i][k] += a[j] * rational(m[k]);
        }
    }
    return M;
}

} // namespace

felem fe_inv(const NumberFieldSpec& f, const felem& a) {
    if (fe_is_zero(a)) fail("InvariantViolation", "inverse of zero");
    qmat M = mul_matrix(f, a);
    qvec e0(f.n(), rational(0));
    e0[0] = 1;
    return solve_left(M, e0);
}

rational fe_norm(const NumberFieldSpec& f, const felem& a) {
    return det(mul_matrix(f, a));
}

bool fe_is_zero(const felem& a) {
    for (auto& x : a)
        if (x != 0) return false;
    return true;
}

bool fe_eq(const felem& a, const felem& b) { return a == b; }

cplx fe_embed(const NumberFieldSpec& f, const felem& a, int sigma) {
    cplx z(0);
    for (int i = 0; i < f.n(); ++i) {
        if (a[i] == 0) continue;
        z += real(a[i]) * f.embeddings[sigma][i];
    }
    return z;
}

cvec fe_embed_cm(const NumberFieldSpec& f, const CMTypeSpec& cm, const felem& a) {
    cvec v;
    v.reserve(cm.sigma.size());
    for (int s : cm.sigma) v.push_back(fe_embed(f, a, s));
    return v;
}

// ---------------- ideals ----------------

namespace {

// clear denominators: rows -> integer matrix plus common denominator
void to_int_rows(const qmat& rows, imat& M, bigint& den) {
    den = 1;
    for (auto& r : rows)
        for (auto& q : r)
            den = lcm(den, denominator(q));
    M.clear();
    for (auto& r : rows) {
        ivec iv;
        for (auto& q : r)
            iv.push_back(numerator(q) * (den / denominator(q)));
        M.push_back(iv);
    }
}

void normalize_ideal(const NumberFieldSpec& f, FractionalIdeal& I) {
    I.num = hnf(I.num);
    if (static_cast<int>(I.num.size()) != f.n())
        fail("RankDeficient", "ideal basis does not have full rank");
    // reduce common content against the denominator
    bigint g = I.den;
    for (auto& r : I.num)
        for (auto& x : r) g = gcd(g, abs(x));
    if (g > 1) {
        I.den /= g;
        for (auto& r : I.num)
            for (auto& x : r) x /= g;
    }
}

} // namespace

FractionalIdeal ideal_from_basis(const NumberFieldSpec& f, const qmat& rows,
                                 const std::string& label) {
    FractionalIdeal I;
    I.label = label;
    to_int_rows(rows, I.num, I.den);
    normalize_ideal(f, I);
    return I;
}

FractionalIdeal ideal_principal(const NumberFieldSpec& f, const felem& g,
                                const std::string& label) {
    if (fe_is_zero(g)) fail("InvariantViolation", "zero ideal");
    return ideal_from_basis(f, mul_matrix(f, g), label);
}

FractionalIdeal ideal_unit(const NumberFieldSpec& f) {
    FractionalIdeal I;
    I.num = identity_imat(f.n());
    I.den = 1;
    I.label = "O";
    return I;
}

qmat ideal_basis(const FractionalIdeal& a) {
    qmat rows;
    for (auto& r : a.num) {
        qvec q;
        for (auto& x : r) q.push_back(rational(x, a.den));
        rows.push_back(q);
    }
    return rows;
}

FractionalIdeal ideal_mul(const NumberFieldSpec& f, const FractionalIdeal& a,
                          const FractionalIdeal& b) {
    qmat arows = ideal_basis(a), brows = ideal_basis(b);
    qmat prod;
    for (auto& x : arows)
        for (auto& y : brows) prod.push_back(fe_mul(f, x, y));
    return ideal_from_basis(f, prod,
                            a.label.empty() || b.label.empty() ? "" : a.label + "*" + b.label);
}

FractionalIdeal ideal_sum(const NumberFieldSpec& f, const FractionalIdeal& a,
                          const FractionalIdeal& b) {
    qmat rows = ideal_basis(a);
    for (auto& r : ideal_basis(b)) rows.push_back(r);
    return ideal_from_basis(f, rows);
}

rational ideal_norm(const NumberFieldSpec& f, const FractionalIdeal& a) {
    bigint d = det(a.num);
    rational n(abs(d));
    rational dd(1);
    for (int i = 0; i < f.n(); ++i) dd *= rational(a.den);
    return n / dd;
}

namespace {

// coordinates of x over the ideal basis
qvec ideal_coords(const FractionalIdeal& I, const felem& x) {
    return solve_left(ideal_basis(I), x);
}

bool is_integral_vec(const qvec& v) {
    for (auto& q : v)
        if (denominator(q) != 1) return false;
    return true;
}

rational qfloor(const rational& q) {
    bigint n = numerator(q), d = denominator(q);
    bigint fl;
    if (n >= 0) fl = n / d;
    else fl = -((-n + d - 1) / d);
    return rational(fl);
}

} // namespace

bool ideal_contains(const NumberFieldSpec& f, const FractionalIdeal& a, const felem& x) {
    (void)f;
    return is_integral_vec(ideal_coords(a, x));
}

bool ideal_subset(const NumberFieldSpec& f, const FractionalIdeal& sub,
                  const FractionalIdeal& super) {
    for (auto& r : ideal_basis(sub))
        if (!ideal_contains(f, super, r)) return false;
    return true;
}

bool ideal_eq(const NumberFieldSpec& f, const FractionalIdeal& a, const FractionalIdeal& b) {
    return ideal_subset(f, a, b) && ideal_subset(f, b, a);
}

bool ideal_coprime(const NumberFieldSpec& f, const FractionalIdeal& a,
                   const FractionalIdeal& b) {
    return ideal_eq(f, ideal_sum(f, a, b), ideal_unit(f));
}

felem fe_mod(const NumberFieldSpec& f, const felem& x, const FractionalIdeal& I) {
    qvec y = ideal_coords(I, x);
    for (auto& q : y) q -= qfloor(q);
    // map back to integral-basis coordinates
    felem r = fe_zero(f);
    qmat B = ideal_basis(I);
    for (int i = 0; i < f.n(); ++i) {
        if (y[i] == 0) continue;
        for (int k = 0; k < f.n(); ++k) r[k] += y[i] * B[i][k];
    }
    return r;
}

// ---------------- presets ----------------

namespace {

// cyclotomic preset over the power basis of Q(zeta_n), degree phi(n)
NumberFieldSpec cyclotomic_nf(const std::string& name, int n, long disc,
                              const std::vector<int>& emb_exponents) {
    NumberFieldSpec f;
    f.name = name;
    f.degree = cyc::phi_deg(n);
    f.discriminant = disc;
    f.cyclotomic_conductor = n;
    int deg = f.degree;
    f.mult.assign(deg, std::vector<ivec>(deg));
    for (int i = 0; i < deg; ++i)
        for (int j = 0; j < deg; ++j) {
            cyc z = cyc_zeta_pow(n, i + j);
            ivec m;
            for (auto& q : z.c) {
                if (denominator(q) != 1)
                    fail("InvariantViolation", "non-integral multiplication table");
                m.push_back(numerator(q));
            }
            f.mult[i][j] = m;
        }
    real two_pi = 2 * const_pi();
    for (int k : emb_exponents) {
        cvec row;
        for (int i = 0; i < deg; ++i)
            row.push_back(expi(two_pi * real(k) * real(i) / n));
        f.embeddings.push_back(row);
    }
    // conjugate embedding: exponent n - k
    int ne = static_cast<int>(emb_exponents.size());
    f.conj_pair.assign(ne, -1);
    for (int s = 0; s < ne; ++s)
        for (int t = 0; t < ne; ++t)
            if ((emb_exponents[s] + emb_exponents[t]) % n == 0) f.conj_pair[s] = t;
    return f;
}

felem coords_to_felem(std::initializer_list<long> v) {
    felem a;
    for (long x : v) a.push_back(rational(x));
    return a;
}

} // namespace

FieldData preset_field(const std::string& name) {
    FieldData fd;
    if (name == "Qi") {
        fd.nf = cyclotomic_nf("Qi", 4, -4, {1, 3});
        fd.cm.sigma = {0};
        fd.cm.fibers = {{0}};
        fd.units.gens = {coords_to_felem({0, 1})}; // i
        fd.units.torsion_order = 4;
        fd.cls.reps = {ideal_unit(fd.nf)};
        // p = 5 splits: (2+i) is the Sigma prime, (2-i) its conjugate
        FieldData::PrimeInfo ps{5, ideal_principal(fd.nf, coords_to_felem({2, 1}), "(2+i)"), true, 1};
        FieldData::PrimeInfo pb{5, ideal_principal(fd.nf, coords_to_felem({2, -1}), "(2-i)"), false, 1};
        fd.primes = {ps, pb};
    } else if (name == "Eisenstein") {
        fd.nf = cyclotomic_nf("Eisenstein", 3, -3, {1, 2});
        fd.cm.sigma = {0};
        fd.cm.fibers = {{0}};
        fd.units.gens = {coords_to_felem({1, 1})}; // zeta_6 = 1 + omega
        fd.units.torsion_order = 6;
        fd.cls.reps = {ideal_unit(fd.nf)};
        // p = 7 splits in Q(omega); Sigma prime (3 + omega)
        FieldData::PrimeInfo ps{7, ideal_principal(fd.nf, coords_to_felem({3, 1}), "(3+w)"), true, 1};
        FieldData::PrimeInfo pb{7, ideal_principal(fd.nf, coords_to_felem({2, -1}), "(2-w)"), false, 1};
        fd.primes = {ps, pb};
    } else if (name == "Qzeta5") {
        fd.nf = cyclotomic_nf("Qzeta5", 5, 125, {1, 2, 3, 4});
        fd.cm.sigma = {0, 1}; // zeta -> e^{2 pi i/5}, e^{4 pi i/5}
        fd.cm.fibers = {{0}, {1}};
        // torsion zeta_10 = -zeta^3, fundamental unit phi = -zeta^2 - zeta^3
        fd.units.gens = {coords_to_felem({0, 0, 0, -1}),
                         coords_to_felem({0, 0, -1, -1})};
        fd.units.torsion_order = 10;
        fd.cls.reps = {ideal_unit(fd.nf)};
    } else {
        fail("MalformedConfig", "unknown field preset: " + name);
    }
    fd.units.index_in_full = 1;
    fd.units.full = true;
    fd.units.level = ideal_unit(fd.nf);
    verify_field(fd.nf);
    return fd;
}

// ---------------- verification ----------------

void verify_field(const NumberFieldSpec& f) {
    int n = f.n();
    if (n <= 0 || n % 2 != 0) fail("InvariantViolation", "degree must be even positive");
    if (static_cast<int>(f.mult.size()) != n)
        fail("InvariantViolation", "multiplication table size");
    int ne = static_cast<int>(f.embeddings.size());
    if (ne != n) fail("InvariantViolation", "need one embedding row per degree");
    // conj_pair is a fixed-point-free involution
    if (static_cast<int>(f.conj_pair.size()) != ne)
        fail("InvariantViolation", "conj_pair size");
    for (int s = 0; s < ne; ++s) {
        int t = f.conj_pair[s];
        if (t < 0 || t >= ne || t == s || f.conj_pair[t] != s)
            fail("InvariantViolation", "conj_pair is not a fixed-point-free involution");
    }
    real tol = pow2(-static_cast<long>(precision_bits()) + 8);
    for (int s = 0; s < ne; ++s) {
        int t = f.conj_pair[s];
        // embeddings respect the multiplication table and complex conjugation
        for (int i = 0; i < n; ++i) {
            cplx ci = f.embeddings[s][i];
            if (abs(ci - conj(f.embeddings[t][i])) > tol * (1 + abs(ci)))
                fail("InvariantViolation", "conjugate embeddings inconsistent");
            for (int j = 0; j < n; ++j) {
                cplx prod = ci * f.embeddings[s][j];
                cplx tab(0);
                for (int k = 0; k < n; ++k)
                    if (f.mult[i][j][k] != 0)
                        tab += real(f.mult[i][j][k]) * f.embeddings[s][k];
                if (abs(prod - tab) > tol * (1 + abs(prod)))
                    fail("InvariantViolation", "multiplication table vs embeddings");
            }
        }
    }
    // e_0 must be the identity
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (f.mult[0][j][k] != (j == k ? 1 : 0))
                fail("InvariantViolation", "basis element 0 is not the identity");
    // exact discriminant: det of the trace form Tr(e_i e_j)
    qmat T(n, qvec(n, rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            felem ei = fe_zero(f), ej = fe_zero(f);
            ei[i] = 1;
            ej[j] = 1;
            felem p = fe_mul(f, ei, ej);
            qmat M = mul_matrix(f, p);
            rational tr(0);
            for (int k = 0; k < n; ++k) tr += M[k][k];
            T[i][j] = tr;
        }
    rational d = det(T);
    if (d != rational(f.discriminant))
        fail("InvariantViolation", "declared discriminant does not match trace form");
}

// ---------------- config loading ----------------

namespace {

rational json_rational(const json& j) {
    if (j.is_number_integer()) return rational(j.get<long long>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        try {
            return rational(s);
        } catch (...) {
            fail("MalformedConfig", "bad rational literal: " + s);
        }
    }
    fail("MalformedConfig", "expected integer or rational string");
}

cplx json_cplx(const json& j) {
    if (!j.is_array() || j.size() != 2)
        fail("MalformedConfig", "complex values are [re, im] decimal strings");
    auto part = [](const json& x) -> real {
        if (x.is_string()) return parse_decimal(x.get<std::string>());
        if (x.is_number()) return real(x.get<double>());
        fail("MalformedConfig", "bad complex component");
    };
    return cplx(part(j[0]), part(j[1]));
}

NumberFieldSpec nf_from_json(const json& j) {
    NumberFieldSpec f;
    f.name = j.value("name", "custom");
    if (!j.contains("degree") || !j["degree"].is_number_integer())
        fail("MalformedConfig", "field spec needs integer degree");
    f.degree = j["degree"].get<int>();
    int n = f.degree;
    if (n <= 0 || n > 16) fail("MalformedConfig", "unsupported degree");
    const json& m = j.at("mult");
    if (!m.is_array() || static_cast<int>(m.size()) != n)
        fail("MalformedConfig", "mult must be an n x n x n integer table");
    f.mult.assign(n, std::vector<ivec>(n));
    for (int i = 0; i < n; ++i) {
        if (!m[i].is_array() || static_cast<int>(m[i].size()) != n)
            fail("MalformedConfig", "mult row size");
        for (int jj = 0; jj < n; ++jj) {
            if (!m[i][jj].is_array() || static_cast<int>(m[i][jj].size()) != n)
                fail("MalformedConfig", "mult entry size");
            ivec v;
            for (auto& x : m[i][jj]) {
                if (!x.is_number_integer()) fail("MalformedConfig", "mult entries are integers");
                v.push_back(bigint(x.get<long long>()));
            }
            f.mult[i][jj] = v;
        }
    }
    const json& e = j.at("embeddings");
    if (!e.is_array() || static_cast<int>(e.size()) != n)
        fail("MalformedConfig", "need n embedding rows");
    for (auto& row : e) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            fail("MalformedConfig", "embedding row size");
        cvec r;
        for (auto& x : row) r.push_back(json_cplx(x));
        f.embeddings.push_back(r);
    }
    const json& cp = j.at("conj_pair");
    if (!cp.is_array() || static_cast<int>(cp.size()) != n)
        fail("MalformedConfig", "conj_pair size");
    for (auto& x : cp) f.conj_pair.push_back(x.get<int>());
    if (j.contains("discriminant")) {
        rational d = json_rational(j["discriminant"]);
        if (denominator(d) != 1) fail("MalformedConfig", "discriminant must be an integer");
        f.discriminant = numerator(d);
    } else {
        fail("MalformedConfig", "field spec needs discriminant");
    }
    verify_field(f);
    return f;
}

felem felem_from_json(const json& j, int n) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        fail("MalformedConfig", "element coordinate size");
    felem a;
    for (auto& x : j) a.push_back(json_rational(x));
    return a;
}

FractionalIdeal ideal_from_json(const NumberFieldSpec& f, const json& j) {
    if (j.is_array()) {
        // rows of rationals
        qmat rows;
        for (auto& r : j) {
            qvec row;
            for (auto& x : r) row.push_back(json_rational(x));
            rows.push_back(row);
        }
        return ideal_from_basis(f, rows);
    }
    if (j.is_object() && j.contains("principal"))
        return ideal_principal(f, felem_from_json(j["principal"], f.n()),
                               j.value("label", ""));
    fail("MalformedConfig", "ideal must be a basis matrix or {principal: coords}");
}

} // namespace

NumberFieldSpec load_field(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        fail("MalformedConfig", std::string("bad JSON: ") + e.what());
    }
    if (j.contains("preset")) return preset_field(j["preset"].get<std::string>()).nf;
    return nf_from_json(j);
}

FieldData load_field_data(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        fail("MalformedConfig", std::string("bad JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("preset"))
        return preset_field(j["preset"].get<std::string>());

    FieldData fd;
    fd.nf = nf_from_json(j.at("field"));
    int n = fd.nf.n();
    const json& cm = j.at("cm_type");
    for (auto& s : cm.at("sigma")) fd.cm.sigma.push_back(s.get<int>());
    if (static_cast<int>(fd.cm.sigma.size()) != n / 2)
        fail("MalformedConfig", "CM type must pick d = n/2 embeddings");
    if (cm.contains("fibers"))
        for (auto& fb : cm["fibers"]) {
            std::vector<int> v;
            for (auto& x : fb) v.push_back(x.get<int>());
            fd.cm.fibers.push_back(v);
        }
    // CM type: one embedding from each conjugate pair
    std::set<int> seen;
    for (int s : fd.cm.sigma) {
        if (s < 0 || s >= n) fail("MalformedConfig", "CM embedding index out of range");
        if (seen.count(s) || seen.count(fd.nf.conj_pair[s]))
            fail("MalformedConfig", "CM type picks both embeddings of a pair");
        seen.insert(s);
    }
    const json& u = j.at("units");
    for (auto& g : u.at("gens")) fd.units.gens.push_back(felem_from_json(g, n));
    fd.units.torsion_order = u.value("torsion_order", 1);
    fd.units.index_in_full = u.value("index_in_full", 1);
    fd.units.full = u.value("full", true);
    fd.units.level = u.contains("level") ? ideal_from_json(fd.nf, u["level"])
                                         : ideal_unit(fd.nf);
    if (j.contains("class_reps"))
        for (auto& r : j["class_reps"]) fd.cls.reps.push_back(ideal_from_json(fd.nf, r));
    else
        fd.cls.reps = {ideal_unit(fd.nf)};
    if (j.contains("primes"))
        for (auto& p : j["primes"]) {
            FieldData::PrimeInfo pi;
            pi.p = p.at("p").get<long>();
            pi.ideal = ideal_from_json(fd.nf, p.at("ideal"));
            pi.in_sigma = p.at("in_sigma").get<bool>();
            pi.residue_degree = p.value("residue_degree", 1);
            fd.primes.push_back(pi);
        }
    return fd;
}

// ---------------- geometry / combinatorics ----------------

ComplexLattice embed_ideal(const NumberFieldSpec& f, const FractionalIdeal& I,
                           const CMTypeSpec& cm, const cvec& scale) {
    int d = f.n() / 2;
    if (static_cast<int>(cm.sigma.size()) != d)
        fail("MalformedConfig", "CM type size mismatch");
    std::vector<cvec> gens;
    for (auto& row : ideal_basis(I)) {
        cvec v = fe_embed_cm(f, cm, row);
        for (int i = 0; i < d; ++i) v[i] = scale[i] * v[i];
        gens.push_back(v);
    }
    std::string prov = "ideal:" + (I.label.empty() ? std::string("?") : I.label) +
                       "@" + f.name;
    return make_lattice(d, std::move(gens), prov);
}

std::vector<felem> coset_reps(const NumberFieldSpec& f, const FractionalIdeal& sub,
                              const FractionalIdeal& super) {
    if (!ideal_subset(f, sub, super))
        fail("NotContained", "sub ideal is not contained in super ideal");
    int n = f.n();
    // sub basis in super coordinates is an integer matrix; HNF diagonal
    // gives the elementary divisor box
    qmat sup_basis = ideal_basis(super);
    imat M;
    {
        qmat coords;
        for (auto& r : ideal_basis(sub)) coords.push_back(solve_left(sup_basis, r));
        bigint den;
        to_int_rows(coords, M, den);
        if (den != 1) fail("InvariantViolation", "non-integral containment coordinates");
    }
    imat H = hnf(M);
    std::vector<long> diag(n);
    long total = 1;
    for (int i = 0; i < n; ++i) {
        diag[i] = static_cast<long>(H[i][i]);
        total *= diag[i];
        if (total > 4000000) fail("BudgetExceeded", "coset index too large");
    }
    std::vector<felem> reps;
    std::vector<long> c(n, 0);
    for (long idx = 0; idx < total; ++idx) {
        felem x = fe_zero(f);
        for (int i = 0; i < n; ++i)
            if (c[i] != 0)
                for (int k = 0; k < n; ++k) x[k] += rational(c[i]) * sup_basis[i][k];
        reps.push_back(fe_mod(f, x, sub));
        for (int i = 0; i < n; ++i) {
            if (++c[i] < diag[i]) break;
            c[i] = 0;
        }
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    if (static_cast<long>(reps.size()) != total)
        fail("InvariantViolation", "coset representatives collide");
    return reps;
}

std::vector<OrbitRep> unit_orbit_reps(const NumberFieldSpec& f,
                                      const std::vector<felem>& points,
                                      const FractionalIdeal& mod_ideal,
                                      const UnitGroupSpec& gamma) {
    // canonical residues of the input set
    std::set<felem> pool;
    for (auto& p : points) pool.insert(fe_mod(f, p, mod_ideal));

    std::vector<OrbitRep> out;
    std::set<felem> done;
    for (auto& p : pool) {
        if (done.count(p)) continue;
        // orbit closure under all generators (and inverses via repeated action,
        // since the action on a finite quotient has finite order)
        std::set<felem> orbit{p};
        std::vector<felem> frontier{p};
        while (!frontier.empty()) {
            std::vector<felem> next;
            for (auto& x : frontier)
                for (auto& g : gamma.gens) {
                    felem y = fe_mod(f, fe_mul(f, g, x), mod_ideal);
                    if (!pool.count(y))
                        fail("NotStable", "unit action leaves the point set");
                    if (orbit.insert(y).second) next.push_back(y);
                }
            frontier = std::move(next);
        }
        OrbitRep r;
        r.rep = *orbit.begin(); // lexicographically smallest residue
        r.size = static_cast<long>(orbit.size());
        out.push_back(r);
        for (auto& x : orbit) done.insert(x);
    }
    return out;
}

} // namespace ekl
