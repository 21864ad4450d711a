#include "hyperb/f2poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "hyperb/errors.hpp"
#include "hyperb/f2matrix.hpp"

namespace hyperb {

bool mono_less(Mono a, Mono b) {
    const int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return a < b;
}

namespace {
void canonicalize(std::vector<Mono>& masks) {
    std::sort(masks.begin(), masks.end(), mono_less);
    // XOR semantics: pairs of equal monomials cancel.
    std::vector<Mono> out;
    out.reserve(masks.size());
    std::size_t i = 0;
    while (i < masks.size()) {
        std::size_t j = i;
        while (j < masks.size() && masks[j] == masks[i]) ++j;
        if ((j - i) % 2 == 1) out.push_back(masks[i]);
        i = j;
    }
    masks = std::move(out);
}

void check_n(int n) {
    if (n < 2) throw std::invalid_argument("ring parameter n must be >= 2");
    if (n > 32) throw cap_exceeded("ring parameter n capped at 32 (bitmask encoding)");
}
} // namespace

SquareFreePoly SquareFreePoly::from_masks(int n, std::vector<Mono> masks) {
    check_n(n);
    const Mono allowed = (n - 1 == 32) ? ~Mono(0) : ((Mono(1) << (n - 1)) - 1);
    for (Mono m : masks)
        if (m & ~allowed) throw std::invalid_argument("monomial uses variables beyond x_{n-1}");
    canonicalize(masks);
    return {n, std::move(masks)};
}

std::optional<int> SquareFreePoly::homogeneous_degree() const {
    if (support.empty()) return -1;
    const int d = mono_degree(support.front());
    for (Mono m : support)
        if (mono_degree(m) != d) return std::nullopt;
    return d;
}

SquareFreePoly add(const SquareFreePoly& a, const SquareFreePoly& b) {
    if (a.n != b.n) throw std::invalid_argument("add: mismatched ring parameter n");
    std::vector<Mono> masks = a.support;
    masks.insert(masks.end(), b.support.begin(), b.support.end());
    canonicalize(masks);
    return {a.n, std::move(masks)};
}

std::optional<Mono> mono_times_var(Mono m, int var, int n) {
    // var is 1-based; bit var-1 carries x_var.
    if (var < 1 || var > n - 1) throw std::invalid_argument("variable index out of range");
    int t = var;
    while (t <= n - 1 && (m >> (t - 1)) & 1) ++t;
    if (t > n - 1) return std::nullopt; // run falls off x_{n-1}: x_{n-1}^2 = 0
    return m | (Mono(1) << (t - 1));
}

std::optional<Mono> mono_product(Mono a, Mono b, int n) {
    Mono cur = a;
    for (int v = 1; v <= n - 1; ++v) {
        if ((b >> (v - 1)) & 1) {
            auto next = mono_times_var(cur, v, n);
            if (!next) return std::nullopt;
            cur = *next;
        }
    }
    return cur;
}

std::optional<Mono> mono_square(Mono m, int n) { return mono_product(m, m, n); }

std::optional<Mono> normal_form_monomial(ExpVec e, int n) {
    check_n(n);
    if ((int)e.size() != n - 1)
        throw std::invalid_argument("exponent vector must have length n-1");
    for (int x : e)
        if (x < 0) throw std::invalid_argument("negative exponent");
    // Rewrite the smallest index with exponent >= 2. Each step drops the
    // potential sum(e_i * (n-i)) by exactly one.
    for (int i = 0; i < n - 1;) {
        if (e[i] < 2) { ++i; continue; }
        if (i == n - 2) return std::nullopt; // x_{n-1}^2 = 0
        e[i] -= 1;
        e[i + 1] += 1;
        // only positions i, i+1 changed; i may still have exponent >= 2
    }
    Mono m = 0;
    for (int i = 0; i < n - 1; ++i)
        if (e[i] == 1) m |= Mono(1) << i;
    return m;
}

SquareFreePoly normal_form(const std::vector<ExpVec>& monomials, int n) {
    check_n(n);
    std::vector<Mono> masks;
    masks.reserve(monomials.size());
    for (const auto& e : monomials) {
        if (auto m = normal_form_monomial(e, n)) masks.push_back(*m);
    }
    canonicalize(masks);
    return {n, std::move(masks)};
}

SquareFreePoly multiply(const SquareFreePoly& a, const SquareFreePoly& b) {
    if (a.n != b.n) throw std::invalid_argument("multiply: mismatched ring parameter n");
    std::vector<Mono> masks;
    masks.reserve(a.support.size() * b.support.size());
    for (Mono ma : a.support)
        for (Mono mb : b.support)
            if (auto m = mono_product(ma, mb, a.n)) masks.push_back(*m);
    canonicalize(masks);
    return {a.n, std::move(masks)};
}

SquareFreePoly square(const SquareFreePoly& a) {
    std::vector<Mono> masks;
    masks.reserve(a.support.size());
    for (Mono m : a.support)
        if (auto s = mono_square(m, a.n)) masks.push_back(*s);
    canonicalize(masks);
    return {a.n, std::move(masks)};
}

std::vector<Mono> degree_monomials(int n, int d) {
    check_n(n);
    std::vector<Mono> out;
    if (d < 0 || d > n - 1) return out;
    if (d == 0) { out.push_back(0); return out; }
    // Enumerate popcount-d masks over n-1 bits in increasing numeric order.
    Mono m = (Mono(1) << d) - 1;
    const Mono limit = (n - 1 == 32) ? ~Mono(0) : ((Mono(1) << (n - 1)) - 1);
    while (m <= limit) {
        out.push_back(m);
        // Gosper's hack: next mask with the same popcount.
        Mono c = m & -m;
        Mono r = m + c;
        Mono next = (((r ^ m) >> 2) / c) | r;
        if (next <= m) break;
        m = next;
    }
    return out;
}

bool vanishes_mod_L(const SquareFreePoly& a) {
    const auto deg = a.homogeneous_degree();
    if (!deg) throw std::invalid_argument("vanishes_mod_L: input must be homogeneous");
    if (a.is_zero()) return true;
    const int n = a.n, d = *deg;
    if (d == 0) return false; // nonzero constants survive in the quotient

    const std::vector<Mono> basis = degree_monomials(n, d);
    std::unordered_map<Mono, std::size_t> index;
    index.reserve(basis.size() * 2);
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);

    const std::vector<Mono> lower = degree_monomials(n, d - 1);
    F2Matrix M(lower.size(), basis.size());
    for (std::size_t r = 0; r < lower.size(); ++r) {
        // Row r is nf(m * L) = sum_v nf(x_v * m); colliding terms cancel.
        for (int v = 1; v <= n - 1; ++v) {
            if (auto t = mono_times_var(lower[r], v, n)) M.flip(r, index.at(*t));
        }
    }
    M.reduce();

    std::vector<uint64_t> vec(M.words_per_row(), 0);
    for (Mono m : a.support) {
        const std::size_t c = index.at(m);
        vec[c / 64] ^= uint64_t(1) << (c & 63);
    }
    return M.in_span(std::move(vec));
}

std::string to_string(const SquareFreePoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.support.size(); ++i) {
        if (i) out += " + ";
        Mono m = p.support[i];
        if (m == 0) { out += "1"; continue; }
        bool first = true;
        for (int v = 1; v <= p.n - 1; ++v) {
            if ((m >> (v - 1)) & 1) {
                if (!first) out += "*";
                out += "x" + std::to_string(v);
                first = false;
            }
        }
    }
    return out;
}

} // namespace hyperb
