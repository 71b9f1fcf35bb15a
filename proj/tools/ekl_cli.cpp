// Batch job runner: one job per invocation, dispatched to the library,
// emitting a single deterministic JSON report.
//
// Exit codes: 0 pass, 1 verification fail, 2 config error, 3 budget exceeded.

#include "CLI11.hpp"
#include "ekl/padic.hpp"
#include "ekl/report.hpp"
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

using namespace ekl;

namespace {

rational parse_rat(const ojson& j) {
    if (j.is_number_integer()) return rational(j.get<long>());
    if (j.is_string()) return rational(j.get<std::string>());
    fail("MalformedConfig", "expected integer or rational string");
}

felem parse_felem(const ojson& j, int n) {
    if (!j.is_array()) fail("MalformedConfig", "field element must be an array");
    felem x(n, rational(0));
    if (static_cast<int>(j.size()) > n)
        fail("MalformedConfig", "field element has too many coordinates");
    for (size_t i = 0; i < j.size(); ++i) x[i] = parse_rat(j[i]);
    return x;
}

cplx parse_cplx(const ojson& j) {
    auto one = [](const ojson& v) {
        if (v.is_string()) return parse_decimal(v.get<std::string>());
        return parse_decimal(ojson(v).dump());
    };
    if (j.is_array() && j.size() == 2) return cplx(one(j[0]), one(j[1]));
    return cplx(one(j), real(0));
}

std::vector<int> parse_ints(const ojson& j) {
    std::vector<int> v;
    for (auto& e : j) v.push_back(e.get<int>());
    return v;
}

struct Job {
    FieldData fd;
    ojson cfg;
    std::string config_text;
    unsigned long long seed = 0;
    real tol;
};

FractionalIdeal ideal_of(const Job& job, const std::string& key,
                         const felem& dflt) {
    felem g = job.cfg.contains(key) ? parse_felem(job.cfg[key], job.fd.nf.n())
                                    : dflt;
    return ideal_principal(job.fd.nf, g, key);
}

// lattice of the ideal (key, default (1)) embedded through the CM type
ComplexLattice lattice_of(const Job& job, const std::string& key) {
    int d = job.fd.nf.n() / 2;
    cvec scale(d, cplx(1));
    return embed_ideal(job.fd.nf, ideal_of(job, key, fe_one(job.fd.nf)),
                       job.fd.cm, scale);
}

cvec embedded_point(const Job& job, const std::string& key) {
    felem x = job.cfg.contains(key) ? parse_felem(job.cfg[key], job.fd.nf.n())
                                    : fe_zero(job.fd.nf);
    return fe_embed_cm(job.fd.nf, job.fd.cm, x);
}

// deterministic small rational field element from the seeded generator
felem random_felem(const NumberFieldSpec& nf, std::mt19937_64& gen, long den) {
    felem x(nf.n(), rational(0));
    for (int i = 0; i < nf.n(); ++i) {
        long a = static_cast<long>(gen() % (2 * den + 1)) - den;
        x[i] = rational(a, den);
    }
    return x;
}

HeckeCharacter character_of(const Job& job) {
    if (!job.cfg.contains("character"))
        fail("MalformedConfig", "missing field: character");
    const ojson& c = job.cfg["character"];
    const NumberFieldSpec& nf = job.fd.nf;
    int d = nf.n() / 2;
    InfinityType inf;
    if (!c.contains("alpha")) fail("MalformedConfig", "missing field: character.alpha");
    inf.alpha = parse_ints(c["alpha"]);
    inf.beta = c.contains("beta") ? parse_ints(c["beta"]) : std::vector<int>(d, 0);
    felem cg = c.contains("conductor_gen") ? parse_felem(c["conductor_gen"], nf.n())
                                           : fe_one(nf);
    int zo = c.value("zeta_order", 0);
    std::vector<std::pair<felem, cyc>> fin;
    if (c.contains("fin")) {
        int n = zo ? zo : 4;
        for (auto& e : c["fin"])
            fin.emplace_back(parse_felem(e["rep"], nf.n()),
                             cyc_zeta_pow(n, e["zeta_pow"].get<long>()));
    }
    return make_character(job.fd, ideal_principal(nf, cg, "conductor"), inf, fin, zo);
}

EisQuery eis_query_of(const Job& job) {
    const FieldData& fd = job.fd;
    int d = fd.nf.n() / 2;
    EisQuery q;
    q.alpha = parse_ints(job.cfg.at("alpha"));
    q.beta = job.cfg.contains("beta") ? parse_ints(job.cfg["beta"])
                                      : std::vector<int>(d, 0);
    q.s = job.cfg.contains("s") ? parse_cplx(job.cfg["s"]) : cplx(0);
    q.H = std_form(d);
    FractionalIdeal I = ideal_of(job, "ideal_gen", fe_one(fd.nf));
    cvec scale(d, cplx(1));
    q.L = embed_ideal(fd.nf, I, fd.cm, scale);
    felem t = job.cfg.contains("orbit_of") ? parse_felem(job.cfg["orbit_of"], fd.nf.n())
                                           : fe_zero(fd.nf);
    if (fe_is_zero(t)) q.O.points = {cvec(d, cplx(0))};
    else q.O = orbit_points(fd, t, I);
    for (auto& u : fd.units.gens)
        q.unit_gens.push_back(fe_embed_cm(fd.nf, fd.cm, u));
    q.finite_index = fd.units.torsion_order;
    if (static_cast<int>(fd.units.gens.size()) > 1)
        q.fund_unit = fe_embed_cm(fd.nf, fd.cm, fd.units.gens[1]);
    return q;
}

// ---- job handlers: fill `out`, return pass verdict (true = exit 0) ----

bool job_ek_eval(const Job& job, ojson& out) {
    EKQuery q;
    int d = job.fd.nf.n() / 2;
    q.H = std_form(d);
    q.L = lattice_of(job, "ideal_gen");
    q.z = embedded_point(job, "z");
    q.w = embedded_point(job, "w");
    q.mu = job.cfg.contains("mu") ? parse_ints(job.cfg["mu"])
                                  : std::vector<int>(d, 0);
    q.s = parse_cplx(job.cfg.at("s"));
    EKValue v = ek_k(q);
    out["value"] = value_block(v.value, v.error_bound);
    out["completed"] = value_block(v.completed, v.error_bound);
    out["method"] = v.method;
    return true;
}

bool job_e_eval(const Job& job, ojson& out) {
    EisValue v = e_series(eis_query_of(job));
    out["value"] = value_block(v.value, v.error_bound);
    out["method"] = v.method;
    return true;
}

bool job_lvalue(const Job& job, ojson& out) {
    HeckeCharacter chi = character_of(job);
    LValue v = total_L(chi);
    out["L_at_0"] = value_block(v.value, v.error_bound);
    if (job.cfg.value("recognize_core", false)) {
        // core = (alpha-1)! L / Omega^alpha for the lemniscatic periods
        PeriodData per = preset_periods(job.cfg.value("periods", "lemniscatic"));
        real fact(1);
        cplx den(1);
        for (size_t i = 0; i < chi.inf.alpha.size(); ++i) {
            for (int k = 2; k < chi.inf.alpha[i]; ++k) fact *= k;
            den *= pow_int(per.Omega[i], chi.inf.alpha[i]);
        }
        cplx core = cplx(fact, real(0)) * v.value / den;
        real err = fact * v.error_bound / abs(den) * 2;
        out["core"] = value_block(core, err);
        out["core_recognition"] =
            recognition_block(recognize_algebraic(core, bigint(1) << 64, true));
    }
    return true;
}

bool job_normalize(const Job& job, ojson& out) {
    HeckeCharacter chi = character_of(job);
    PeriodData per = preset_periods(job.cfg.value("periods", "lemniscatic"));
    felem c = parse_felem(job.cfg.at("c_gen"), job.fd.nf.n());
    felem cp;
    if (job.cfg.contains("cprime_gen"))
        cp = parse_felem(job.cfg["cprime_gen"], job.fd.nf.n());
    int bits = job.cfg.value("denom_bound_bits", 64);
    NormalizedLValue v = normalized_L(chi, per, c, cp, bigint(1) << bits);
    out["raw"] = value_block(v.raw, v.error_bound);
    out["normalized"] = value_block(v.normalized, v.error_bound);
    out["regularizer"] = v.regularizer_descriptor;
    out["recognition"] = recognition_block(v.recognition);
    return true;
}

bool job_verify_fe(const Job& job, ojson& out) {
    int d = job.fd.nf.n() / 2;
    EKQuery q;
    q.H = std_form(d);
    q.L = lattice_of(job, "ideal_gen");
    q.mu = job.cfg.contains("mu") ? parse_ints(job.cfg["mu"])
                                  : std::vector<int>(d, 0);
    int abs_mu = 0;
    for (int m : q.mu) abs_mu += m;
    long samples = job.cfg.value("samples", 4);
    std::vector<cplx> s_list;
    if (job.cfg.contains("s_list"))
        for (auto& e : job.cfg["s_list"]) s_list.push_back(parse_cplx(e));
    else s_list = {cplx(real(1) / 2), cplx(2)};

    ComplexLattice Ld = dual_lattice(q.L, q.H);
    real V = covolume(q.L, q.H);
    std::mt19937_64 gen(job.seed);
    real worst(0);
    for (long i = 0; i < samples; ++i) {
        q.z = fe_embed_cm(job.fd.nf, job.fd.cm, random_felem(job.fd.nf, gen, 7));
        q.w = fe_embed_cm(job.fd.nf, job.fd.cm, random_felem(job.fd.nf, gen, 7));
        for (auto& s : s_list) {
            q.s = s;
            EKValue lhs = ek_k(q);
            EKQuery qd = q;
            qd.L = Ld;
            qd.z = q.w;
            qd.w = q.z;
            qd.s = cplx(real(d + abs_mu), real(0)) - s;
            EKValue rhs = ek_k(qd);
            cplx E = expi(2 * const_pi() * pairing(q.H, q.w, q.z));
            real res = abs(lhs.completed - E * rhs.completed / V);
            if (res > worst) worst = res;
        }
    }
    out["max_residual"] = to_decimal(worst, 6);
    out["tolerance"] = to_decimal(job.tol, 6);
    return worst <= job.tol;
}

bool job_verify_theta_fe(const Job& job, ojson& out) {
    int d = job.fd.nf.n() / 2;
    HermitianForm H = std_form(d);
    ComplexLattice L = lattice_of(job, "ideal_gen");
    ComplexLattice Ld = dual_lattice(L, H);
    real V = covolume(L, H);
    real t = job.cfg.contains("t") ? parse_cplx(job.cfg["t"]).re : real(1);
    std::vector<int> mu = job.cfg.contains("mu") ? parse_ints(job.cfg["mu"])
                                                 : std::vector<int>(d, 0);
    int abs_mu = 0;
    for (int m : mu) abs_mu += m;
    long samples = job.cfg.value("samples", 6);
    std::mt19937_64 gen(job.seed);
    real worst(0);
    for (long i = 0; i < samples; ++i) {
        cvec z = fe_embed_cm(job.fd.nf, job.fd.cm, random_felem(job.fd.nf, gen, 7));
        cvec w = fe_embed_cm(job.fd.nf, job.fd.cm, random_felem(job.fd.nf, gen, 7));
        real tb1, tb2;
        cplx lhs = theta(L, H, z, w, t, mu, &tb1);
        cplx rhs = theta(Ld, H, w, z, 1 / t, mu, &tb2);
        cplx E = expi(2 * const_pi() * pairing(H, w, z));
        rhs = rhs * E / (pow_int(cplx(t), d + abs_mu) * V);
        real res = abs(lhs - rhs);
        if (res > worst) worst = res;
    }
    out["max_residual"] = to_decimal(worst, 6);
    out["tolerance"] = to_decimal(job.tol, 6);
    return worst <= job.tol;
}

bool job_verify_dist(const Job& job, ojson& out) {
    int n = job.fd.nf.n(), d = n / 2;
    felem c = parse_felem(job.cfg.at("c_gen"), n);
    felem f = parse_felem(job.cfg.at("f_gen"), n);
    felem b = job.cfg.contains("b_gen") ? parse_felem(job.cfg["b_gen"], n)
                                        : fe_one(job.fd.nf);
    std::vector<int> alpha = job.cfg.contains("alpha") ? parse_ints(job.cfg["alpha"])
                                                       : std::vector<int>(d, 1);
    std::vector<int> beta = job.cfg.contains("beta") ? parse_ints(job.cfg["beta"])
                                                     : std::vector<int>(d, 0);
    DistResult r = verify_distribution(job.fd, c, f, b, beta, alpha);
    out["lhs"] = value_block(r.lhs, r.error_bound);
    out["rhs"] = value_block(r.rhs, r.error_bound);
    out["residual"] = to_decimal(r.residual, 6);
    out["tolerance"] = to_decimal(job.tol, 6);
    return r.residual <= job.tol;
}

bool job_verify_euler(const Job& job, ojson& out) {
    HeckeCharacter chi = character_of(job);
    PStructure ps = check_ordinary(job.fd, job.cfg.value("p", 5L),
                                   job.cfg.value("m", 1));
    StripReport r = euler_strip_check(chi, ps);
    out["lhs"] = value_block(r.lhs, r.error_bound);
    out["rhs"] = value_block(r.rhs, r.error_bound);
    out["residual"] = to_decimal(r.residual, 6);
    out["tolerance"] = to_decimal(job.tol, 6);
    return r.residual <= job.tol;
}

bool job_padic_check(const Job& job, ojson& out) {
    PStructure ps = check_ordinary(job.fd, job.cfg.value("p", 5L),
                                   job.cfg.value("m", 1));
    out["p"] = ps.p;
    out["m"] = ps.m;
    out["structure"] = "verified";
    bool ok = true;
    ojson measures = ojson::array();
    const std::pair<RhoKind, const char*> kinds[] = {
        {RhoKind::one, "one"}, {RhoKind::pairing, "pairing"}, {RhoKind::delta, "delta"}};
    for (auto& [kind, name] : kinds) {
        MeasureReport r = measure_consistency_check(ps, kind, 1);
        ojson e;
        e["rho"] = name;
        e["residual"] = to_decimal(r.residual, 6);
        measures.push_back(e);
        if (r.residual > job.tol) ok = false;
    }
    out["measure_checks"] = measures;
    out["tolerance"] = to_decimal(job.tol, 6);
    return ok;
}

bool job_recognize(const Job& job, ojson& out) {
    cplx x = parse_cplx(job.cfg.at("value"));
    int bits = job.cfg.value("denom_bound_bits", 64);
    Recognition r = recognize_algebraic(x, bigint(1) << bits,
                                        job.cfg.value("gaussian", true));
    out["recognition"] = recognition_block(r);
    return r.found;
}

int run(const std::string& command, const std::string& config_path,
        unsigned precision, unsigned long long seed, const std::string& out_path,
        const std::string& cache_dir) {
    set_precision_bits(precision);
    if (!cache_dir.empty()) set_shell_cache_dir(cache_dir);

    ojson rep;
    int code = 0;
    std::string config_text;
    try {
        std::ifstream f(config_path);
        if (!f) fail("MalformedConfig", "cannot read config " + config_path);
        std::stringstream ss;
        ss << f.rdbuf();
        config_text = ss.str();

        Job job;
        try {
            job.cfg = ojson::parse(config_text);
        } catch (const std::exception& e) {
            fail("MalformedConfig", std::string("config is not valid JSON: ") + e.what());
        }
        if (!job.cfg.contains("field")) fail("MalformedConfig", "missing field: field");
        job.fd = job.cfg["field"].is_string()
                     ? preset_field(job.cfg["field"].get<std::string>())
                     : load_field_data(job.cfg["field"].dump());
        job.config_text = config_text;
        job.seed = job.cfg.value("seed", seed);
        int tol_bits = job.cfg.value("tolerance_bits",
                                     static_cast<int>(precision) - 24);
        job.tol = pow2(-tol_bits);

        rep = report_root(command, config_path, config_text, precision, job.seed);
        rep["inputs"] = job.cfg;
        ojson out;
        bool pass;
        if (command == "ek-eval") pass = job_ek_eval(job, out);
        else if (command == "e-eval") pass = job_e_eval(job, out);
        else if (command == "lvalue") pass = job_lvalue(job, out);
        else if (command == "normalize") pass = job_normalize(job, out);
        else if (command == "verify-fe") pass = job_verify_fe(job, out);
        else if (command == "verify-theta-fe") pass = job_verify_theta_fe(job, out);
        else if (command == "verify-dist") pass = job_verify_dist(job, out);
        else if (command == "verify-euler") pass = job_verify_euler(job, out);
        else if (command == "padic-check") pass = job_padic_check(job, out);
        else if (command == "recognize") pass = job_recognize(job, out);
        else fail("MalformedConfig", "unknown command " + command);
        rep["results"] = out;
        rep["verdict"] = pass ? "pass" : "fail";
        code = pass ? 0 : 1;
    } catch (const ekl_error& e) {
        if (rep.empty())
            rep = report_root(command, config_path, config_text, precision, seed);
        rep["error"] = error_block(e);
        rep["verdict"] = "error";
        code = e.code == "MalformedConfig" ? 2
               : e.code == "BudgetExceeded" ? 3
                                            : 1;
    }
    write_report(rep, out_path);
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eisenstein-Kronecker lattice series evaluator"};
    app.require_subcommand(1);

    std::string config_path, out_path, cache_dir;
    unsigned precision = 128;
    unsigned long long seed = 1;

    app.add_option("--config", config_path, "job config JSON")->required();
    app.add_option("--precision", precision, "working precision in bits");
    app.add_option("--seed", seed, "seed for randomized verification jobs");
    app.add_option("--out", out_path, "report path (default stdout)");
    app.add_option("--cache-dir", cache_dir, "shell enumeration cache directory");

    const char* cmds[] = {"ek-eval", "e-eval",        "lvalue",      "normalize",
                          "verify-fe", "verify-theta-fe", "verify-dist", "verify-euler",
                          "padic-check", "recognize"};
    for (auto* c : cmds) app.add_subcommand(c)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (const char* env = std::getenv("EKL_CACHE_DIR")) cache_dir = env;

    return run(app.get_subcommands()[0]->get_name(), config_path, precision, seed,
               out_path, cache_dir);
}
