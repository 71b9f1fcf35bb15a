#pragma once
// Exact integer/rational linear algebra: Hermite normal form, solving,
// determinants. Sizes here are tiny (2..8), so plain Euclid-style
// elimination with bignums is entirely adequate.

#include "ekl/real.hpp"
#include <vector>

namespace ekl {

using ivec = std::vector<bigint>;
using imat = std::vector<ivec>;
using qvec = std::vector<rational>;
using qmat = std::vector<qvec>;

// Row-style HNF: unimodular row operations bring M to upper-triangular form
// with positive pivots and entries above each pivot reduced into [0, pivot).
// Zero rows are dropped. If U != nullptr it receives the transform with
// hnf = U * M (U square over the original row count, |det U| = 1).
imat hnf(const imat& M, imat* U = nullptr);

bigint det(const imat& M);          // by fraction-free elimination
rational det(const qmat& M);

// solve x * M = v over the rationals (row-vector convention; M square
// invertible). Throws std::runtime_error if singular.
qvec solve_left(const qmat& M, const qvec& v);

qmat inverse(const qmat& M);

imat identity_imat(int n);

// least nonnegative residue
bigint mod_floor(const bigint& a, const bigint& m);

} // namespace ekl
