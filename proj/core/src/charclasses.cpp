#include "hyperb/charclasses.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "hyperb/errors.hpp"

namespace hyperb {

SquareFreePoly sigma(int j, int n) {
    if (n < 2) throw std::invalid_argument("sigma: n must be >= 2");
    if (j < 0) throw std::invalid_argument("sigma: j must be >= 0");
    if (j > n - 1) return SquareFreePoly::zero(n); // sigma_j of n-1 variables
    return {n, degree_monomials(n, j)};
}

SquareFreePoly w_ls(int n, int j) {
    if (j < 0 || j > n) throw std::invalid_argument("w_ls: need 0 <= j <= n");
    return sigma(j, n); // square-free already; reduction mod I(n) is a no-op
}

int s_of(int k) {
    if (k <= 0) throw std::invalid_argument("s_of: k must be positive");
    constexpr int kInf = std::numeric_limits<int>::max() / 2;
    std::vector<int> best(k + 1, kInf);
    best[0] = 0;
    for (int v = 1; v <= k; ++v) {
        for (long long summand = 1; summand <= v; summand = 2 * summand + 1) {
            best[v] = std::min(best[v], best[v - summand] + 1);
        }
    }
    return best[k];
}

bool w_square_criterion(int n, int k) {
    if (k < 1) throw std::invalid_argument("w_square_criterion: k must be >= 1");
    return n >= 2 * k + s_of(k);
}

bool w_square_oracle(int n, int k) {
    if (k < 1) throw std::invalid_argument("w_square_oracle: k must be >= 1");
    if (k > n) throw std::invalid_argument("w_square_oracle: need k <= n");
    return !square(w_ls(n, k)).is_zero();
}

namespace {
void extend_imax(int n, int k, std::vector<int>& cur, std::vector<TupleI>& out) {
    if ((int)cur.size() == k) {
        out.push_back({cur});
        return;
    }
    const int lo = cur.empty() ? 1 : cur.back() + 2;
    for (int i = lo; i <= n - 2; ++i) {
        cur.push_back(i);
        extend_imax(n, k, cur, out);
        cur.pop_back();
    }
}

void validate_imax_member(const TupleI& I, int n) {
    const auto& v = I.indices;
    if (v.empty()) throw precondition_error("tuple must be nonempty");
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] < 1 || v[j] > n - 2)
            throw precondition_error("tuple entry out of range [1, n-2]");
        if (j > 0 && v[j] - v[j - 1] < 2)
            throw precondition_error("tuple gaps must be >= 2");
    }
}

uint32_t tuple_mask(const TupleI& I) {
    uint32_t m = 0;
    for (int i : I.indices) m |= uint32_t(1) << (i - 1);
    return m;
}
} // namespace

std::vector<TupleI> imax_tuples(int n, int k) {
    if (k < 1) throw std::invalid_argument("imax_tuples: k must be >= 1");
    std::vector<TupleI> out;
    if (2 * k - 1 > n - 2) return out; // family is empty below that bound
    std::vector<int> cur;
    extend_imax(n, k, cur, out);
    return out;
}

CanonicalDecomposition canonical_decomposition(const TupleI& I) {
    const auto& v = I.indices;
    if (v.empty()) throw precondition_error("tuple must be nonempty");
    CanonicalDecomposition out;
    std::vector<int> block{v.front()};
    for (std::size_t j = 1; j < v.size(); ++j) {
        const int gap = v[j] - v[j - 1];
        if (gap < 2) throw precondition_error("tuple gaps must be >= 2");
        if (gap == 2) {
            block.push_back(v[j]);
        } else {
            out.blocks.push_back({block});
            out.block_lengths.push_back((int)block.size());
            block = {v[j]};
        }
    }
    out.blocks.push_back({block});
    out.block_lengths.push_back((int)block.size());
    return out;
}

unsigned long long class_size(const TupleI& I, int n) {
    validate_imax_member(I, n);
    // Moves act on a consecutive pair of entries: (.., a, a+1, ..) <-> (.., a, a+2, ..),
    // subject to the result staying strictly increasing and below n.
    const int k = (int)I.indices.size();
    std::set<std::vector<int>> seen{I.indices};
    std::vector<std::vector<int>> queue{I.indices};
    while (!queue.empty()) {
        std::vector<int> t = std::move(queue.back());
        queue.pop_back();
        for (int j = 0; j + 1 < k; ++j) {
            if (t[j + 1] == t[j] + 1) {
                const int up = t[j] + 2;
                if (up <= n - 1 && (j + 2 >= k || up < t[j + 2])) {
                    std::vector<int> next = t;
                    next[j + 1] = up;
                    if (seen.insert(next).second) queue.push_back(next);
                }
            } else if (t[j + 1] == t[j] + 2) {
                std::vector<int> next = t;
                next[j + 1] = t[j] + 1;
                if (seen.insert(next).second) queue.push_back(next);
            }
        }
    }
    return seen.size();
}

BigInt catalan(int m) {
    if (m < 0) throw std::invalid_argument("catalan: m must be >= 0");
    auto binom = [](int a, int b) -> BigInt {
        if (b < 0 || b > a) return 0;
        BigInt r = 1;
        for (int i = 1; i <= b; ++i) {
            r *= (a - b + i);
            r /= i;
        }
        return r;
    };
    return binom(2 * m, m) - binom(2 * m, m + 1);
}

bool catalan_is_odd(int m) {
    if (m < 0) throw std::invalid_argument("catalan_is_odd: m must be >= 0");
    const unsigned v = unsigned(m) + 1;
    return (v & (v - 1)) == 0; // odd iff m+1 is a power of two
}

BigInt dyck_path_count(int m) {
    if (m < 0) throw std::invalid_argument("dyck_path_count: m must be >= 0");
    // heights[h] = number of prefixes ending at height h, stepping +-1 and
    // never dipping below zero.
    std::vector<BigInt> heights(2 * m + 2, 0);
    heights[0] = 1;
    for (int step = 0; step < 2 * m; ++step) {
        std::vector<BigInt> next(heights.size(), 0);
        for (std::size_t h = 0; h < heights.size(); ++h) {
            if (heights[h] == 0) continue;
            if (h + 1 < next.size()) next[h + 1] += heights[h];
            if (h >= 1) next[h - 1] += heights[h];
        }
        heights = std::move(next);
    }
    return heights[0];
}

BigInt lambda_of(const TupleI& I) {
    const auto dec = canonical_decomposition(I);
    BigInt out = 1;
    for (int m : dec.block_lengths) out *= catalan(m);
    return out;
}

bool lambda_is_odd(const TupleI& I) {
    const auto dec = canonical_decomposition(I);
    for (int m : dec.block_lengths)
        if (!catalan_is_odd(m)) return false;
    return true;
}

SquareFreePoly w_square_structural(int n, int k) {
    if (k < 1) throw std::invalid_argument("w_square_structural: k must be >= 1");
    std::vector<Mono> masks;
    for (const TupleI& I : imax_tuples(n, k)) {
        if (!lambda_is_odd(I)) continue;
        if (auto sq = mono_square(tuple_mask(I), n)) masks.push_back(*sq);
    }
    return SquareFreePoly::from_masks(n, std::move(masks));
}

WHatVerdict w_hat(int n, int j) {
    if (n < 3) throw std::invalid_argument("w_hat: n must be >= 3");
    if (j < 1 || j > n) throw std::invalid_argument("w_hat: need 1 <= j <= n");
    WHatVerdict out;
    out.representative = w_ls(n, j);
    out.square_representative = square(out.representative);
    out.nonzero = !out.representative.is_zero() && !vanishes_mod_L(out.representative);
    out.squared_nonzero =
        !out.square_representative.is_zero() && !vanishes_mod_L(out.square_representative);
    return out;
}

std::string variant_name(Variant v) { return v == Variant::ls ? "ls" : "ls-cover"; }

ClassReport report(int n, Variant variant) {
    if (variant == Variant::ls && n < 2)
        throw std::invalid_argument("report: ls variant needs n >= 2");
    if (variant == Variant::ls_cover && n < 3)
        throw std::invalid_argument("report: ls-cover variant needs n >= 3");

    ClassReport rep;
    rep.n = n;
    rep.variant = variant;
    for (int j = 1; j <= n; ++j) {
        if (variant == Variant::ls)
            rep.w_nonzero.push_back(!w_ls(n, j).is_zero());
        else
            rep.w_nonzero.push_back(w_hat(n, j).nonzero);
    }
    for (int k = 1; 2 * k <= n; ++k) {
        SquareVerdict sv;
        sv.k = k;
        if (variant == Variant::ls) {
            sv.criterion = w_square_criterion(n, k);
            sv.oracle = w_square_oracle(n, k);
            if (*sv.criterion != *sv.oracle) rep.cross_checks_ok = false;
        } else {
            sv.oracle = w_hat(n, k).squared_nonzero;
        }
        rep.squares.push_back(sv);
    }
    for (int i = 1; 4 * i <= n; ++i) {
        rep.p_nonzero.push_back(rep.squares[2 * i - 1].nonzero()); // p_i = w_{2i}^2 mod 2
    }
    if (variant == Variant::ls_cover && rep.w_nonzero[0]) {
        rep.cross_checks_ok = false; // the cover is orientable: its w_1 must vanish
    }
    return rep;
}

ConjectureScan conjecture_scan(int n_max, int i_max, int n_cap) {
    if (n_max > n_cap)
        throw cap_exceeded("conjecture_scan: n_max exceeds cap " + std::to_string(n_cap));
    if (i_max < 1) throw std::invalid_argument("conjecture_scan: i_max must be >= 1");
    ConjectureScan scan;
    for (int i = 1; i <= i_max; ++i) {
        for (int n = 8 * i; n <= n_max; ++n) {
            ConjectureRow row;
            row.n = n;
            row.i = i;
            const SquareFreePoly sq = square(sigma(2 * i, n));
            row.nonzero = !sq.is_zero() && !vanishes_mod_L(sq);
            row.proven = (i == 1 && n >= 8) || (i == 2 && n == 16);
            if (row.proven && !row.nonzero) scan.proven_confirmed = false;
            if (!row.proven && !row.nonzero) scan.evidence_gap = true;
            scan.rows.push_back(row);
        }
    }
    return scan;
}

} // namespace hyperb
