#include "ekl/exact.hpp"
#include <stdexcept>

namespace ekl {

bigint mod_floor(const bigint& a, const bigint& m) {
    bigint r = a % m;
    if (r < 0) r += abs(m);
    return r;
}

imat identity_imat(int n) {
    imat I(n, ivec(n, 0));
    for (int i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

imat hnf(const imat& M, imat* U) {
    imat A = M;
    int rows = static_cast<int>(A.size());
    int cols = rows ? static_cast<int>(A[0].size()) : 0;
    imat T = identity_imat(rows);

    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        // clear column c below row r by gcd steps
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (A[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(A[r], A[piv]);
        std::swap(T[r], T[piv]);
        for (int i = r + 1; i < rows; ++i) {
            while (A[i][c] != 0) {
                bigint q = A[r][c] / A[i][c];
                for (int j = 0; j < cols; ++j) A[r][j] -= q * A[i][j];
                for (int j = 0; j < rows; ++j) T[r][j] -= q * T[i][j];
                std::swap(A[r], A[i]);
                std::swap(T[r], T[i]);
            }
        }
        if (A[r][c] < 0) {
            for (auto& x : A[r]) x = -x;
            for (auto& x : T[r]) x = -x;
        }
        // reduce entries above the pivot
        for (int i = 0; i < r; ++i) {
            bigint q = A[i][c] - mod_floor(A[i][c], A[r][c]);
            q /= A[r][c];
            if (q != 0) {
                for (int j = 0; j < cols; ++j) A[i][j] -= q * A[r][j];
                for (int j = 0; j < rows; ++j) T[i][j] -= q * T[r][j];
            }
        }
        ++r;
    }
    if (U) *U = T;
    A.resize(r);
    return A;
}

rational det(const qmat& Min) {
    qmat M = Min;
    int n = static_cast<int>(M.size());
    rational d(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (M[i][c] != 0) { piv = i; break; }
        if (piv < 0) return rational(0);
        if (piv != c) { std::swap(M[piv], M[c]); d = -d; }
        d *= M[c][c];
        rational inv = 1 / M[c][c];
        for (int i = c + 1; i < n; ++i) {
            rational f = M[i][c] * inv;
            if (f == 0) continue;
            for (int j = c; j < n; ++j) M[i][j] -= f * M[c][j];
        }
    }
    return d;
}

bigint det(const imat& M) {
    qmat Q(M.size());
    for (size_t i = 0; i < M.size(); ++i)
        Q[i] = qvec(M[i].begin(), M[i].end());
    rational d = det(Q);
    return numerator(d) / denominator(d);
}

qvec solve_left(const qmat& M, const qvec& v) {
    // transpose to the usual Ax = b with A = M^T
    int n = static_cast<int>(M.size());
    qmat A(n, qvec(n + 1, rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A[i][j] = M[j][i];
        A[i][n] = v[i];
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (A[i][c] != 0) { piv = i; break; }
        if (piv < 0) throw std::runtime_error("solve_left: singular matrix");
        std::swap(A[piv], A[c]);
        rational inv = 1 / A[c][c];
        for (int j = c; j <= n; ++j) A[c][j] *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || A[i][c] == 0) continue;
            rational f = A[i][c];
            for (int j = c; j <= n; ++j) A[i][j] -= f * A[c][j];
        }
    }
    qvec x(n);
    for (int i = 0; i < n; ++i) x[i] = A[i][n];
    return x;
}

qmat inverse(const qmat& M) {
    int n = static_cast<int>(M.size());
    qmat A(n, qvec(2 * n, rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A[i][j] = M[i][j];
        A[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (A[i][c] != 0) { piv = i; break; }
        if (piv < 0) throw std::runtime_error("inverse: singular matrix");
        std::swap(A[piv], A[c]);
        rational inv = 1 / A[c][c];
        for (int j = 0; j < 2 * n; ++j) A[c][j] *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || A[i][c] == 0) continue;
            rational f = A[i][c];
            for (int j = 0; j < 2 * n; ++j) A[i][j] -= f * A[c][j];
        }
    }
    qmat R(n, qvec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R[i][j] = A[i][n + j];
    return R;
}

} // namespace ekl
