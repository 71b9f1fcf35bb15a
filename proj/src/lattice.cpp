#include "ekl/lattice.hpp"
#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace ekl {

HermitianForm std_form(int d) {
    HermitianForm H;
    H.r.assign(d, real(1));
    return H;
}

cplx herm(const HermitianForm& H, const cvec& x, const cvec& y) {
    cplx s(0);
    for (size_t i = 0; i < x.size(); ++i) s += H.r[i] * (x[i] * conj(y[i]));
    return s;
}

real pairing(const HermitianForm& H, const cvec& x, const cvec& y) {
    real s(0);
    for (size_t i = 0; i < x.size(); ++i)
        s += H.r[i] * (x[i].im * y[i].re - x[i].re * y[i].im);
    return s;
}

real norm_H(const HermitianForm& H, const cvec& x) {
    real s(0);
    for (size_t i = 0; i < x.size(); ++i) s += H.r[i] * norm(x[i]);
    return s;
}

namespace {

using rmat = std::vector<std::vector<real>>;
using rvec = std::vector<real>;

// real coordinates of a complex vector: (re_0, im_0, re_1, im_1, ...)
rvec real_coords(const cvec& v) {
    rvec r;
    r.reserve(2 * v.size());
    for (auto& c : v) {
        r.push_back(c.re);
        r.push_back(c.im);
    }
    return r;
}

real rdet(rmat M) {
    int n = static_cast<int>(M.size());
    real d(1);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int i = c + 1; i < n; ++i)
            if (abs(M[i][c]) > abs(M[piv][c])) piv = i;
        if (M[piv][c] == 0) return real(0);
        if (piv != c) { std::swap(M[piv], M[c]); d = -d; }
        d *= M[c][c];
        for (int i = c + 1; i < n; ++i) {
            real f = M[i][c] / M[c][c];
            for (int j = c; j < n; ++j) M[i][j] -= f * M[c][j];
        }
    }
    return d;
}

rvec rsolve(rmat A, rvec b) {
    int n = static_cast<int>(A.size());
    real scale(0);
    for (auto& row : A)
        for (auto& x : row) {
            real a = abs(x);
            if (a > scale) scale = a;
        }
    real tol = scale * pow2(-static_cast<long>(precision_bits()) + 16);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int i = c + 1; i < n; ++i)
            if (abs(A[i][c]) > abs(A[piv][c])) piv = i;
        if (abs(A[piv][c]) <= tol) fail("IllConditioned", "pivot below tolerance");
        std::swap(A[piv], A[c]);
        std::swap(b[piv], b[c]);
        for (int i = c + 1; i < n; ++i) {
            real f = A[i][c] / A[c][c];
            if (f == 0) continue;
            for (int j = c; j < n; ++j) A[i][j] -= f * A[c][j];
            b[i] -= f * b[c];
        }
    }
    rvec x(n, real(0));
    for (int i = n - 1; i >= 0; --i) {
        real s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

// upper-triangular Cholesky factor of a positive definite matrix
rmat cholesky_upper(const rmat& G) {
    int n = static_cast<int>(G.size());
    rmat U(n, rvec(n, real(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            real s = G[i][j];
            for (int k = 0; k < i; ++k) s -= U[k][i] * U[k][j];
            if (i == j) {
                if (s <= 0) fail("IllConditioned", "Gram matrix not positive definite");
                U[i][i] = sqrt(s);
            } else {
                U[i][j] = s / U[i][i];
            }
        }
    }
    return U;
}

// B[alpha][j]: column j = real coords of generator j, rows scaled by sqrt(r)
rmat basis_matrix(const ComplexLattice& L, const HermitianForm& H) {
    int n = 2 * L.d;
    rmat B(n, rvec(n, real(0)));
    for (int j = 0; j < n; ++j) {
        rvec col = real_coords(L.gens[j]);
        for (int a = 0; a < n; ++a) B[a][j] = sqrt(H.r[a / 2]) * col[a];
    }
    return B;
}

} // namespace

ComplexLattice make_lattice(int d, std::vector<cvec> gens, std::string prov) {
    if (static_cast<int>(gens.size()) != 2 * d)
        fail("RankDeficient", "expected 2d generators");
    ComplexLattice L;
    L.d = d;
    L.gens = std::move(gens);
    L.provenance = std::move(prov);
    // full real rank check via the standard-form Gram determinant
    HermitianForm H = std_form(d);
    rmat B = basis_matrix(L, H);
    real dt = rdet(B);
    if (abs(dt) <= pow2(-static_cast<long>(precision_bits()) + 16))
        fail("RankDeficient", "generators do not span R^{2d}");
    return L;
}

real covolume(const ComplexLattice& L, const HermitianForm& H) {
    rmat B = basis_matrix(L, H);
    real v = abs(rdet(B));
    return v;
}

ComplexLattice dual_lattice(const ComplexLattice& L, const HermitianForm& H) {
    int n = 2 * L.d;
    // P[k][a] = Im H(unit vector a, gen k); solve P x_j = e_j
    rmat P(n, rvec(n, real(0)));
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a) {
            cvec e(L.d, cplx(0));
            if (a % 2 == 0) e[a / 2] = cplx(1);
            else e[a / 2] = cplx(real(0), real(1));
            P[k][a] = pairing(H, e, L.gens[k]);
        }
    std::vector<cvec> dgens;
    for (int j = 0; j < n; ++j) {
        rvec rhs(n, real(0));
        rhs[j] = 1;
        rvec x = rsolve(P, rhs);
        cvec g(L.d);
        for (int i = 0; i < L.d; ++i) g[i] = cplx(x[2 * i], x[2 * i + 1]);
        dgens.push_back(g);
    }
    ComplexLattice D = make_lattice(L.d, std::move(dgens),
                                    "dual(" + L.provenance + ")");
    return D;
}

real min_norm2(const ComplexLattice& L, const HermitianForm& H) {
    // cache only under the standard form to keep the key simple
    bool std_H = true;
    for (auto& r : H.r)
        if (r != 1) std_H = false;
    if (std_H && L.cached_min_norm2) return *L.cached_min_norm2;

    real R(0);
    for (auto& g : L.gens) {
        real n2 = norm_H(H, g);
        if (R == 0 || n2 < R) R = n2;
    }
    real Rr = sqrt(R);
    cvec zero(L.d, cplx(0));
    ShellEnumeration se = enumerate_shells(L, H, zero, Rr);
    real best = R;
    for (auto& p : se.points) {
        real n2 = norm_H(H, p);
        if (n2 > 0 && n2 < best) best = n2;
    }
    if (std_H) L.cached_min_norm2 = best;
    return best;
}

// ---------------- enumeration ----------------

namespace {

struct fp_ctx {
    int n;
    const rmat* U;       // Cholesky upper factor
    rvec y;              // target offset in basis coordinates
    real R2;
    long budget;
    std::vector<std::vector<long>>* out;
    std::vector<long> cur;
};

// enumerate levels from the last coordinate down, |U (x + y)|^2 <= R2
void fp_rec(fp_ctx& c, int level, const rvec& partial, const real& rem) {
    const rmat& U = *c.U;
    // x_level range: U[l][l] (x_l + y_l) + sum_{j>l} U[l][j](x_j+y_j) = partial_l
    real center = -c.y[level] - partial[level] / U[level][level];
    real width = sqrt(rem) / U[level][level];
    long lo = static_cast<long>(static_cast<double>(floor(center - width))) - 1;
    long hi = static_cast<long>(static_cast<double>(ceil(center + width))) + 1;
    for (long v = lo; v <= hi; ++v) {
        real t = U[level][level] * (real(v) + c.y[level]) + partial[level];
        real used = t * t;
        if (used > rem) continue;
        c.cur[level] = v;
        if (level == 0) {
            c.out->push_back(c.cur);
            if (static_cast<long>(c.out->size()) > c.budget)
                fail("BudgetExceeded", "enumeration point budget exceeded");
        } else {
            rvec p2 = partial;
            for (int l2 = 0; l2 < level; ++l2)
                p2[l2] += U[l2][level] * (real(v) + c.y[level]);
            fp_rec(c, level - 1, p2, rem - used);
        }
    }
}

std::string g_cache_dir;

uint64_t fnv1a(const std::string& s, uint64_t h = 1469598103934665603ULL) {
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string key_string(const real& x) { return x.str(30, std::ios_base::scientific); }

} // namespace

void set_shell_cache_dir(const std::string& dir) {
    g_cache_dir = dir;
    if (!dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
    }
}

std::string lattice_fingerprint(const ComplexLattice& L, const HermitianForm& H) {
    std::string s = "d=" + std::to_string(L.d) + ";";
    for (auto& g : L.gens)
        for (auto& c : g) s += key_string(c.re) + "," + key_string(c.im) + ";";
    for (auto& r : H.r) s += key_string(r) + ";";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(s)));
    return buf;
}

namespace {

const char CACHE_MAGIC[8] = {'E', 'K', 'L', 'S', 'H', 'L', 'v', '1'};

bool cache_load(const std::string& file, std::vector<std::vector<long>>& coords, int n) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return false;
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, CACHE_MAGIC, 8) != 0) return false;
    int64_t count = 0, dim = 0;
    in.read(reinterpret_cast<char*>(&count), 8);
    in.read(reinterpret_cast<char*>(&dim), 8);
    if (!in || dim != n || count < 0) return false;
    coords.assign(count, std::vector<long>(n));
    for (auto& row : coords)
        for (auto& v : row) {
            int64_t x;
            in.read(reinterpret_cast<char*>(&x), 8);
            if (!in) return false;
            v = static_cast<long>(x);
        }
    return true;
}

void cache_store(const std::string& file, const std::vector<std::vector<long>>& coords, int n) {
    std::string tmp = file + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;
        out.write(CACHE_MAGIC, 8);
        int64_t count = coords.size(), dim = n;
        out.write(reinterpret_cast<char*>(&count), 8);
        out.write(reinterpret_cast<char*>(&dim), 8);
        for (auto& row : coords)
            for (auto v : row) {
                int64_t x = v;
                out.write(reinterpret_cast<char*>(&x), 8);
            }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, file, ec); // atomic publish; ignore races
}

} // namespace

ShellEnumeration enumerate_shells(const ComplexLattice& L, const HermitianForm& H,
                                  const cvec& z, const real& R, long budget) {
    if (R < 0) fail("MalformedConfig", "negative radius");
    int n = 2 * L.d;
    ShellEnumeration se;
    se.center = z;
    se.radius = R;

    std::string cache_file;
    bool from_cache = false;
    if (!g_cache_dir.empty()) {
        std::string key = lattice_fingerprint(L, H) + ";z=";
        for (auto& c : z) key += key_string(c.re) + "," + key_string(c.im) + ";";
        key += "R=" + key_string(R);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a(key)));
        cache_file = g_cache_dir + "/shell_" + buf + ".bin";
        from_cache = cache_load(cache_file, se.coords, n);
    }

    if (!from_cache) {
        rmat B = basis_matrix(L, H);
        rmat G(n, rvec(n, real(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                real s(0);
                for (int a = 0; a < n; ++a) s += B[a][i] * B[a][j];
                G[i][j] = s;
            }
        rmat U = cholesky_upper(G);
        // y = B^{-1} (scaled z)
        rvec zc = real_coords(z);
        rvec zs(n);
        for (int a = 0; a < n; ++a) zs[a] = sqrt(H.r[a / 2]) * zc[a];
        rvec y = rsolve(B, zs);

        fp_ctx c;
        c.n = n;
        c.U = &U;
        c.y = y;
        // tiny inflation; exact filter below keeps only |z+v|_H <= R
        c.R2 = R * R * (1 + pow2(-40)) + pow2(-40);
        c.budget = budget;
        std::vector<std::vector<long>> raw;
        c.out = &raw;
        c.cur.assign(n, 0);
        fp_rec(c, n - 1, rvec(n, real(0)), c.R2);
        std::sort(raw.begin(), raw.end());
        se.coords = std::move(raw);
        if (!cache_file.empty()) cache_store(cache_file, se.coords, n);
    }

    se.points.reserve(se.coords.size());
    std::vector<std::vector<long>> kept;
    kept.reserve(se.coords.size());
    for (auto& co : se.coords) {
        cvec p = z;
        for (int j = 0; j < n; ++j) {
            if (co[j] == 0) continue;
            for (int i = 0; i < L.d; ++i) p[i] += real(co[j]) * L.gens[j][i];
        }
        if (norm_H(H, p) <= R * R) {
            se.points.push_back(std::move(p));
            kept.push_back(co);
        }
    }
    se.coords = std::move(kept);
    return se;
}

// ---------------- certified tails ----------------
//
// Packing argument: open balls of radius rho0 = (shortest vector)/2 around
// the points z+v are pairwise disjoint, so the number of points with
// |z+v|_H in [a, a+rho0] is at most 6d ((a+2 rho0)/rho0)^{2d-1}. For a
// decreasing radial weight g this gives
//   sum_{|z+v|>R} g(|z+v|) <= (6d / rho0^{2d-1})
//        * sum_{k>=0} (R+(k+2) rho0)^{2d-1} g(R + k rho0).

real gaussian_tail(const ComplexLattice& L, const HermitianForm& H,
                   const real& R, const real& t, int m) {
    prec_guard g(32);
    real pi = const_pi();
    real rho0 = sqrt(min_norm2(L, H)) / 2;
    // require g decreasing beyond R
    real mono = sqrt(real(2 * L.d + m) / (2 * pi * t));
    real Rlo = R < mono ? mono : R;
    real C = real(6 * L.d) / pow(rho0, 2 * L.d - 1);
    real sum(0);
    for (int k = 0; k < 200000; ++k) {
        real a = Rlo + k * rho0;
        real term = pow(Rlo + (k + 2) * rho0, 2 * L.d - 1 + m) * exp(-pi * t * a * a);
        sum += term;
        if (term < sum * pow2(-static_cast<long>(precision_bits()))) break;
    }
    real out = C * sum * (1 + pow2(-20)); // rounding slack
    if (Rlo > R) {
        // points in [R, Rlo] contribute at most count * max weight
        real cnt = C * pow(Rlo + 2 * rho0, 2 * L.d - 1) * (Rlo - R + rho0) / rho0;
        real mx = pow(mono, m) * exp(-pi * t * R * R);
        out += cnt * mx;
    }
    return out;
}

real powerlaw_tail(const ComplexLattice& L, const HermitianForm& H,
                   const real& R, const real& q) {
    prec_guard g(32);
    real beta = real(2 * L.d - 1) + q;
    if (beta >= -1) fail("OutsideConvergence", "power-law tail does not converge");
    real rho0 = sqrt(min_norm2(L, H)) / 2;
    real C = real(6 * L.d) / pow(rho0, 2 * L.d - 1);
    real base = R + 2 * rho0;
    // sum_k (R+(k+2) rho0)^beta <= f(0) + integral
    real s = pow(base, beta) + pow(base, beta + 1) / (rho0 * (-beta - 1));
    return C * s * (1 + pow2(-20));
}

real truncation_radius(const ComplexLattice& L, const HermitianForm& H,
                       const real& t, int mu_degree, const real& target) {
    prec_guard g(32);
    real pi = const_pi();
    real rho0 = sqrt(min_norm2(L, H)) / 2;
    real R = sqrt(real(2 * L.d + mu_degree) / (2 * pi * t)) + 2 * rho0 + 1;
    while (gaussian_tail(L, H, R, t, mu_degree) >= target) {
        R *= real(3) / 2;
        if (R > real(1) * 1000000) fail("BudgetExceeded", "truncation radius blow-up");
    }
    // shrink back on a quarter-unit grid
    real lo = R / 2 < rho0 ? rho0 : R / 2;
    while (R - lo > real(1) / 4) {
        real mid = (R + lo) / 2;
        if (gaussian_tail(L, H, mid, t, mu_degree) < target) R = mid;
        else lo = mid;
    }
    return ceil(R * 4) / 4;
}

} // namespace ekl
