#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperb/f2poly.hpp"

namespace hyperb {

using BigInt = boost::multiprecision::cpp_int;

/// j-th elementary symmetric polynomial in x_1..x_{n-1} (zero for j > n-1).
SquareFreePoly sigma(int j, int n);

/// j-th total mod-2 class of the n-dimensional diagonal flat manifold with
/// presentation ideal I(n): sigma_j reduced mod I(n) (already square-free).
SquareFreePoly w_ls(int n, int j);

/// Least s with k = sum of s terms of the form 2^r - 1.
int s_of(int k);

/// Closed-form criterion for w_k^2 != 0: n >= 2k + s(k).
bool w_square_criterion(int n, int k);

/// Direct computation: square(w_ls(n,k)) != 0.
bool w_square_oracle(int n, int k);

/// Strictly increasing index tuple (i_1,...,i_k), 1 <= i_j <= n-1.
struct TupleI {
    std::vector<int> indices;
    bool operator==(const TupleI&) const = default;
};

/// Tuples with i_k <= n-2 and consecutive gaps >= 2, listed lexicographically
/// (a linear extension of the componentwise order).
std::vector<TupleI> imax_tuples(int n, int k);

/// Split of a gap->=2 tuple into blocks of consecutive gap-exactly-2 entries,
/// separated by gaps >= 3.
struct CanonicalDecomposition {
    std::vector<TupleI> blocks;
    std::vector<int> block_lengths;
};
CanonicalDecomposition canonical_decomposition(const TupleI& I);

/// Size of the equivalence class of I under the squared-tuple rewriting
/// moves (..,a,a+1,..) <-> (..,a,a+2,..), enumerated exhaustively.
/// Requires I in the gap->=2, i_k <= n-2 family.
unsigned long long class_size(const TupleI& I, int n);

/// Product of Catalan numbers over the canonical decomposition block lengths.
BigInt lambda_of(const TupleI& I);
bool lambda_is_odd(const TupleI& I);

/// Exact m-th Catalan number binom(2m,m) - binom(2m,m+1).
BigInt catalan(int m);
/// Parity shortcut: C_m is odd iff m+1 is a power of two.
bool catalan_is_odd(int m);
/// Independent enumerator: number of Dyck paths with 2m steps (DP count).
BigInt dyck_path_count(int m);

/// Structural value of w_k^2: sum over gap->=2 tuples I with lambda_I odd of
/// nf(x_I^2). Must coincide with square(w_ls(n,k)).
SquareFreePoly w_square_structural(int n, int k);

/// Verdicts for the class sigma_j of the orientable double cover, decided in
/// the quotient by (I(n), x_1+...+x_{n-1}) via per-degree span tests.
struct WHatVerdict {
    bool nonzero = false;           // class of sigma_j mod (I(n), L)
    bool squared_nonzero = false;   // class of sigma_j^2
    SquareFreePoly representative;  // sigma_j mod I(n)
    SquareFreePoly square_representative;
};
WHatVerdict w_hat(int n, int j);

enum class Variant { ls, ls_cover };
std::string variant_name(Variant v);

/// Per-k square verdict with its two provenance routes. Whenever both are
/// set they must agree.
struct SquareVerdict {
    int k = 0;
    std::optional<bool> criterion;
    std::optional<bool> oracle;
    bool nonzero() const { return oracle ? *oracle : criterion.value_or(false); }
};

struct ClassReport {
    int n = 0;
    Variant variant = Variant::ls;
    std::vector<bool> w_nonzero;            // index j-1, j = 1..n
    std::vector<SquareVerdict> squares;     // k = 1..n/2
    std::vector<bool> p_nonzero;            // index i-1, i = 1..n/4 (p_i = w_{2i}^2 mod 2)
    bool cross_checks_ok = true;
};
ClassReport report(int n, Variant variant);

struct ConjectureRow {
    int n = 0;
    int i = 0;
    bool nonzero = false;  // verdict for the squared class of sigma_{2i} mod (I(n), L)
    bool proven = false;   // true where non-vanishing is a theorem, not just predicted
};
struct ConjectureScan {
    std::vector<ConjectureRow> rows;
    bool proven_confirmed = true;   // no row contradicts a theorem
    bool evidence_gap = false;      // some predicted-but-unproven row came out zero
};
/// Scans i = 1..i_max, n = 8i..n_max. Throws cap_exceeded past n_cap.
ConjectureScan conjecture_scan(int n_max, int i_max, int n_cap = 24);

} // namespace hyperb
