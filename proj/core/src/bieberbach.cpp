#include "hyperb/bieberbach.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>

#include "hyperb/errors.hpp"

namespace hyperb {

Dyadic::Dyadic(long long n, int e) : num(n), exp2(e) {
    if (exp2 < 0) {
        num <<= -exp2;
        exp2 = 0;
    }
    while (exp2 > 0 && num % 2 == 0) {
        num /= 2;
        --exp2;
    }
    if (num == 0) exp2 = 0;
}

long long Dyadic::integer_value() const {
    if (exp2 != 0) throw precondition_error("dyadic value is not an integer");
    return num;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    const int e = std::max(a.exp2, b.exp2);
    return Dyadic((a.num << (e - a.exp2)) + (b.num << (e - b.exp2)), e);
}

Dyadic operator-(const Dyadic& a) { return Dyadic(-a.num, a.exp2); }

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic scale_pow2(const Dyadic& a, int k) { return Dyadic(a.num, a.exp2 - k); }

std::string to_string(const Dyadic& a) {
    if (a.exp2 == 0) return std::to_string(a.num);
    return std::to_string(a.num) + "/" + std::to_string(1ll << a.exp2);
}

AffineIsometry AffineIsometry::identity(int n) {
    AffineIsometry a;
    a.signs.assign(n, 1);
    a.trans.assign(n, Dyadic());
    return a;
}

AffineIsometry AffineIsometry::translation(std::vector<Dyadic> t) {
    AffineIsometry a;
    a.signs.assign(t.size(), 1);
    a.trans = std::move(t);
    return a;
}

AffineIsometry compose(const AffineIsometry& a, const AffineIsometry& b) {
    if (a.dim() != b.dim()) throw precondition_error("isometry dimension mismatch");
    AffineIsometry c;
    c.signs.resize(a.dim());
    c.trans.resize(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        c.signs[i] = int8_t(a.signs[i] * b.signs[i]);
        c.trans[i] = (a.signs[i] < 0 ? -b.trans[i] : b.trans[i]) + a.trans[i];
    }
    return c;
}

AffineIsometry inverse(const AffineIsometry& a) {
    AffineIsometry c;
    c.signs = a.signs;
    c.trans.resize(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        c.trans[i] = a.signs[i] < 0 ? a.trans[i] : -a.trans[i];
    return c;
}

std::vector<Dyadic> apply(const AffineIsometry& a, const std::vector<Dyadic>& x) {
    if ((int)x.size() != a.dim()) throw precondition_error("isometry dimension mismatch");
    std::vector<Dyadic> y(x.size());
    for (int i = 0; i < a.dim(); ++i)
        y[i] = (a.signs[i] < 0 ? -x[i] : x[i]) + a.trans[i];
    return y;
}

bool is_translation(const AffineIsometry& a) {
    return std::all_of(a.signs.begin(), a.signs.end(), [](int8_t s) { return s > 0; });
}

bool is_orientation_preserving(const AffineIsometry& a) {
    int p = 1;
    for (int8_t s : a.signs) p *= s;
    return p > 0;
}

DiagonalBieberbachGroup lee_szczarba_group(int n) {
    if (n < 2) throw std::invalid_argument("lee_szczarba_group: n must be >= 2");
    if (n > 20) throw cap_exceeded("lee_szczarba_group: n capped at 20");
    DiagonalBieberbachGroup g;
    g.n = n;
    std::vector<Dyadic> t(n);
    t[0] = Dyadic(1);
    g.generators.push_back(AffineIsometry::translation(t));
    for (int i = 1; i < n; ++i) {
        AffineIsometry a = AffineIsometry::identity(n);
        a.signs[i - 1] = -1;
        a.trans[i] = Dyadic(1, 1);
        g.generators.push_back(a);
    }
    return g;
}

namespace {
DiagonalBieberbachGroup lattice_group(int n, long long step) {
    if (n < 1) throw std::invalid_argument("torus group needs n >= 1");
    if (n > 20) throw cap_exceeded("torus group: n capped at 20");
    DiagonalBieberbachGroup g;
    g.n = n;
    for (int i = 0; i < n; ++i) {
        std::vector<Dyadic> t(n);
        t[i] = Dyadic(step);
        g.generators.push_back(AffineIsometry::translation(t));
    }
    return g;
}
} // namespace

DiagonalBieberbachGroup torus_group(int n) { return lattice_group(n, 1); }

DiagonalBieberbachGroup hat_torus_group(int n) { return lattice_group(n, 2); }

DiagonalBieberbachGroup normalize_even(const DiagonalBieberbachGroup& g) {
    int k = 0;
    for (const AffineIsometry& a : g.generators)
        for (const Dyadic& t : a.trans)
            if (t.num != 0 && t.num % 2 != 0) k = std::max(k, t.exp2 + 1);
    DiagonalBieberbachGroup out;
    out.n = g.n;
    for (const AffineIsometry& a : g.generators) {
        AffineIsometry b = a;
        for (Dyadic& t : b.trans) t = scale_pow2(t, k);
        out.generators.push_back(std::move(b));
    }
    return out;
}

bool group_is_orientable(const DiagonalBieberbachGroup& g) {
    return std::all_of(g.generators.begin(), g.generators.end(), is_orientation_preserving);
}

DiagonalBieberbachGroup orientable_double_cover(const DiagonalBieberbachGroup& g) {
    auto reversing = std::find_if_not(g.generators.begin(), g.generators.end(),
                                      is_orientation_preserving);
    if (reversing == g.generators.end())
        throw precondition_error("group is orientable; it has no orientation double cover");
    const AffineIsometry r0 = *reversing;
    DiagonalBieberbachGroup out;
    out.n = g.n;
    for (const AffineIsometry& a : g.generators) {
        std::vector<AffineIsometry> two;
        if (is_orientation_preserving(a)) {
            two = {a, compose(compose(r0, a), inverse(r0))};
        } else {
            two = {compose(r0, a), compose(a, inverse(r0))};
        }
        for (AffineIsometry& b : two)
            if (std::find(out.generators.begin(), out.generators.end(), b) ==
                out.generators.end())
                out.generators.push_back(std::move(b));
    }
    return out;
}

namespace {

uint32_t sign_mask(const AffineIsometry& a) {
    uint32_t m = 0;
    for (int i = 0; i < a.dim(); ++i)
        if (a.signs[i] < 0) m |= uint32_t(1) << i;
    return m;
}

// One group element per holonomy sign pattern.
std::map<uint32_t, AffineIsometry> sign_reps(const DiagonalBieberbachGroup& g) {
    std::map<uint32_t, AffineIsometry> reps;
    reps[0] = AffineIsometry::identity(g.n);
    std::vector<uint32_t> queue{0};
    while (!queue.empty()) {
        const AffineIsometry t = reps.at(queue.back());
        queue.pop_back();
        for (const AffineIsometry& a : g.generators) {
            const AffineIsometry u = compose(a, t);
            const uint32_t m = sign_mask(u);
            if (!reps.count(m)) {
                reps.emplace(m, u);
                queue.push_back(m);
            }
        }
    }
    return reps;
}

} // namespace

std::vector<uint32_t> sign_image(const DiagonalBieberbachGroup& g) {
    std::vector<uint32_t> out;
    for (const auto& [m, rep] : sign_reps(g)) out.push_back(m);
    return out;
}

std::vector<std::vector<long long>> translation_lattice(const DiagonalBieberbachGroup& g) {
    const int n = g.n;
    const auto reps = sign_reps(g);
    std::vector<AffineIsometry> words;
    for (const AffineIsometry& a : g.generators) {
        words.push_back(a);
        words.push_back(inverse(a));
    }
    std::vector<std::vector<long long>> cols;
    for (const auto& [m, t] : reps) {
        for (const AffineIsometry& a : words) {
            const AffineIsometry u = compose(a, t);
            const AffineIsometry& r = reps.at(sign_mask(u));
            std::vector<long long> w(n);
            bool zero = true;
            for (int i = 0; i < n; ++i) {
                const Dyadic d = u.trans[i] - r.trans[i];
                if (!d.is_integer())
                    throw precondition_error(
                        "translation lattice is not integral; apply normalize_even");
                w[i] = d.integer_value();
                if (w[i] != 0) zero = false;
            }
            if (!zero) cols.push_back(std::move(w));
        }
    }

    // Column Hermite form, pivots on the diagonal.
    std::vector<std::vector<long long>> basis;
    int pivot = 0;
    for (int r = 0; r < n; ++r) {
        while (true) {
            int best = -1;
            for (int j = pivot; j < (int)cols.size(); ++j)
                if (cols[j][r] != 0 &&
                    (best < 0 || std::llabs(cols[j][r]) < std::llabs(cols[best][r])))
                    best = j;
            if (best < 0) break;
            std::swap(cols[pivot], cols[best]);
            bool done = true;
            for (int j = pivot + 1; j < (int)cols.size(); ++j) {
                if (cols[j][r] == 0) continue;
                const long long q = cols[j][r] / cols[pivot][r];
                for (int i = 0; i < n; ++i) cols[j][i] -= q * cols[pivot][i];
                if (cols[j][r] != 0) done = false;
            }
            if (done) break;
        }
        if (pivot >= (int)cols.size() || cols[pivot][r] == 0)
            throw precondition_error("translation lattice is not full rank");
        if (cols[pivot][r] < 0)
            for (long long& x : cols[pivot]) x = -x;
        basis.push_back(cols[pivot]);
        ++pivot;
    }
    return basis;
}

long long lattice_determinant(const std::vector<std::vector<long long>>& basis) {
    long long det = 1;
    for (std::size_t j = 0; j < basis.size(); ++j) det *= basis[j][j];
    return det;
}

bool lattice_contains(const std::vector<std::vector<long long>>& basis,
                      const std::vector<long long>& w) {
    std::vector<long long> x = w;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (x[j] % basis[j][j] != 0) return false;
        const long long q = x[j] / basis[j][j];
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= q * basis[j][i];
    }
    return std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; });
}

Dyadic covolume(const DiagonalBieberbachGroup& g) {
    const long long det = lattice_determinant(translation_lattice(g));
    const std::size_t order = sign_reps(g).size();
    int e = 0;
    while ((std::size_t(1) << e) < order) ++e;
    if ((std::size_t(1) << e) != order)
        throw verification_error("holonomy order is not a power of two");
    return Dyadic(det, e);
}

uint64_t encode_cell(const std::vector<int>& v, uint32_t axes, int n) {
    uint64_t code = 0;
    for (int a = 0; a < n; ++a) code |= uint64_t(v[a] & 0xf) << (4 * a);
    code |= uint64_t(axes) << (4 * n);
    return code;
}

BoxCell decode_cell(uint64_t code, int n) {
    BoxCell cell;
    cell.v.resize(n);
    for (int a = 0; a < n; ++a) cell.v[a] = int(code >> (4 * a) & 0xf);
    cell.axes = uint32_t(code >> (4 * n));
    return cell;
}

namespace {

// Coset group element with integer translation reduced into [0, L).
struct BoxOp {
    std::vector<int8_t> signs;
    std::vector<int> trans;
    bool ident = false;
    bool even = true;
};

struct BoxAction {
    int n = 0;
    int L = 0;
    std::vector<BoxOp> ops;
};

BoxOp make_box_op(const AffineIsometry& a, int L) {
    BoxOp op;
    op.signs = a.signs;
    op.trans.resize(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        const long long t = a.trans[i].integer_value();
        op.trans[i] = int(((t % L) + L) % L);
        if (op.trans[i] % 2 != 0) op.even = false;
    }
    op.ident = is_translation(a) &&
               std::all_of(op.trans.begin(), op.trans.end(), [](int t) { return t == 0; });
    return op;
}

void act_cell(const BoxOp& op, const std::vector<int>& v, uint32_t axes, int L,
              std::vector<int>& out) {
    const int n = (int)v.size();
    for (int a = 0; a < n; ++a) {
        int w = op.signs[a] < 0 ? -v[a] : v[a];
        w += op.trans[a];
        if (op.signs[a] < 0 && (axes >> a & 1)) w -= 1;
        w %= L;
        if (w < 0) w += L;
        out[a] = w;
    }
}

std::string describe_op(const BoxOp& op) {
    std::string s = "signs(";
    for (int8_t x : op.signs) s += x < 0 ? '-' : '+';
    s += ") trans(";
    for (std::size_t i = 0; i < op.trans.size(); ++i)
        s += (i ? "," : "") + std::to_string(op.trans[i]);
    return s + ")";
}

// Minimal encode over the orbit of a box cell, with the achieving element.
std::pair<uint64_t, int> canonical_encode(const BoxAction& act, const std::vector<int>& v,
                                          uint32_t axes) {
    std::vector<int> w(act.n);
    uint64_t best = ~uint64_t(0);
    int who = -1;
    for (int qi = 0; qi < (int)act.ops.size(); ++qi) {
        act_cell(act.ops[qi], v, axes, act.L, w);
        const uint64_t code = encode_cell(w, axes, act.n);
        if (code < best) {
            best = code;
            who = qi;
        }
    }
    return {best, who};
}

int find_rep(const std::vector<uint64_t>& reps, uint64_t code) {
    const auto it = std::lower_bound(reps.begin(), reps.end(), code);
    if (it == reps.end() || *it != code)
        throw verification_error("orbit representative missing from cell table");
    return (int)(it - reps.begin());
}

} // namespace

QuotientComplex quotient_cube_complex(const DiagonalBieberbachGroup& g) {
    const int n = g.n;
    if (n < 1) throw std::invalid_argument("quotient_cube_complex: n must be >= 1");
    if (n > 12) throw cap_exceeded("quotient_cube_complex: n capped at 12");
    for (const AffineIsometry& a : g.generators) {
        if (a.dim() != n) throw precondition_error("generator dimension mismatch");
        for (int8_t s : a.signs)
            if (s != 1 && s != -1) throw precondition_error("generator signs must be +-1");
        for (const Dyadic& t : a.trans)
            if (!t.is_integer())
                throw precondition_error(
                    "generator translations must be integers; apply normalize_even");
    }

    const auto lattice = translation_lattice(g);
    const long long det = lattice_determinant(lattice);
    long long L = 4;
    for (int i = 0; i < n; ++i) {
        int c = 0;
        for (int cc = 1; cc <= 16; ++cc) {
            std::vector<long long> w(n, 0);
            w[i] = cc;
            if (lattice_contains(lattice, w)) {
                c = cc;
                break;
            }
        }
        if (c == 0) throw cap_exceeded("quotient box side exceeds 16");
        L = std::lcm(L, (long long)c);
        if (L > 16) throw cap_exceeded("quotient box side exceeds 16");
    }

    long long total_cells = 1;
    for (int a = 0; a < n; ++a) total_cells *= 2 * L;
    if (total_cells > (1ll << 27)) throw cap_exceeded("quotient box has too many cells");

    // Coset group Q = G/(LZ)^n by closure of the generator images.
    std::map<uint64_t, AffineIsometry> elems;
    const auto op_key = [&](const AffineIsometry& a) {
        std::vector<int> t(n);
        for (int i = 0; i < n; ++i) {
            const long long x = a.trans[i].integer_value();
            t[i] = int(((x % L) + L) % L);
        }
        return encode_cell(t, sign_mask(a), n);
    };
    const auto reduce_mod = [&](const AffineIsometry& a) {
        AffineIsometry b = a;
        for (int i = 0; i < n; ++i) {
            const long long x = b.trans[i].integer_value();
            b.trans[i] = Dyadic(((x % L) + L) % L);
        }
        return b;
    };
    {
        const AffineIsometry id = AffineIsometry::identity(n);
        elems[op_key(id)] = id;
        std::vector<uint64_t> queue{op_key(id)};
        while (!queue.empty()) {
            const AffineIsometry t = elems.at(queue.back());
            queue.pop_back();
            for (const AffineIsometry& a : g.generators) {
                const AffineIsometry u = reduce_mod(compose(a, t));
                const uint64_t key = op_key(u);
                if (!elems.count(key)) {
                    elems[key] = u;
                    queue.push_back(key);
                }
            }
        }
    }

    QuotientComplex out;
    out.group = g;
    out.box_side = (int)L;
    for (const auto& [key, a] : elems) out.coset_group.push_back(a);

    const long long holonomy = (long long)sign_reps(g).size();
    long long box_volume = 1;
    for (int a = 0; a < n; ++a) box_volume *= L;
    if ((long long)elems.size() * det != box_volume * holonomy)
        throw verification_error("coset group order mismatch");

    BoxAction act;
    act.n = n;
    act.L = (int)L;
    for (const AffineIsometry& a : out.coset_group) act.ops.push_back(make_box_op(a, (int)L));

    CubeComplex C;
    C.dim = n;
    C.counts.assign(n + 1, 0);
    C.facets.resize(n + 1);
    out.reps.resize(n + 1);

    std::vector<long long> powL(n + 1, 1);
    for (int a = 0; a < n; ++a) powL[a + 1] = powL[a] * L;

    for (int k = 0; k <= n; ++k) {
        std::vector<uint64_t> canon;
        // Axis masks of popcount k in increasing order.
        std::vector<uint32_t> masks;
        if (k == 0) {
            masks.push_back(0);
        } else {
            for (uint32_t m = (uint32_t(1) << k) - 1; m < (uint32_t(1) << n);) {
                masks.push_back(m);
                const uint32_t c = m & -m, r = m + c;
                m = (((r ^ m) >> 2) / c) | r;
                if (c == 0) break;
            }
        }
        std::vector<char> visited(masks.size() * powL[n], 0);
        std::vector<int> v(n, 0), w(n, 0);
        for (std::size_t mi = 0; mi < masks.size(); ++mi) {
            const uint32_t S = masks[mi];
            std::fill(v.begin(), v.end(), 0);
            long long vcode = 0;
            while (true) {
                if (!visited[mi * powL[n] + vcode]) {
                    uint64_t best = ~uint64_t(0);
                    for (const BoxOp& op : act.ops) {
                        act_cell(op, v, S, (int)L, w);
                        long long wcode = 0;
                        for (int a = n - 1; a >= 0; --a) wcode = wcode * L + w[a];
                        visited[mi * powL[n] + wcode] = 1;
                        if (!op.ident && wcode == vcode)
                            throw precondition_error("group has torsion: " + describe_op(op) +
                                                     " fixes a cell");
                        best = std::min(best, encode_cell(w, S, n));
                    }
                    canon.push_back(best);
                }
                int a = 0;
                for (; a < n; ++a) {
                    if (++v[a] < L) {
                        vcode += powL[a];
                        break;
                    }
                    v[a] = 0;
                    vcode -= (L - 1) * powL[a];
                }
                if (a == n) break;
            }
        }
        std::sort(canon.begin(), canon.end());
        out.reps[k] = std::move(canon);
        C.counts[k] = (int)out.reps[k].size();
        C.facets[k].assign(C.counts[k], std::vector<FacetRecord>(2 * k));
    }

    for (int k = 1; k <= n; ++k) {
        for (int c = 0; c < C.counts[k]; ++c) {
            const BoxCell cell = decode_cell(out.reps[k][c], n);
            std::vector<int> axes;
            for (int a = 0; a < n; ++a)
                if (cell.axes >> a & 1) axes.push_back(a);
            for (int p = 0; p < k; ++p) {
                for (int s = 0; s < 2; ++s) {
                    std::vector<int> base = cell.v;
                    if (s) base[axes[p]] = (base[axes[p]] + 1) % (int)L;
                    const uint32_t sub = cell.axes & ~(uint32_t(1) << axes[p]);
                    const auto [code, qi] = canonical_encode(act, base, sub);
                    FacetRecord rec;
                    rec.cell = find_rep(out.reps[k - 1], code);
                    const BoxOp& op = act.ops[qi];
                    int j = 0;
                    for (int a = 0; a < n; ++a) {
                        if (!(sub >> a & 1)) continue;
                        if (op.signs[a] < 0) rec.flips |= uint32_t(1) << j;
                        ++j;
                    }
                    C.facets[k][c][2 * p + s] = rec;
                }
            }
        }
    }

    const bool parity_ok = std::all_of(act.ops.begin(), act.ops.end(),
                                       [](const BoxOp& op) { return op.even; });
    if (parity_ok) {
        FoldingMap F;
        F.faces.resize(n + 1);
        for (int k = 0; k <= n; ++k) {
            F.faces[k].resize(C.counts[k]);
            for (int c = 0; c < C.counts[k]; ++c) {
                const BoxCell cell = decode_cell(out.reps[k][c], n);
                CellFace f;
                for (int a = 0; a < n; ++a) {
                    if (cell.axes >> a & 1) {
                        if (cell.v[a] & 1)
                            f.axis_flip |= uint32_t(1) << f.axis_image.size();
                        f.axis_image.push_back(a);
                    } else if (cell.v[a] & 1) {
                        f.fixed_side |= uint32_t(1) << a;
                    }
                }
                F.faces[k][c] = std::move(f);
            }
        }
        C.folding = std::move(F);
        C.flags["foldable"] = true;
    }
    C.flags["orientable"] = group_is_orientable(g);
    out.complex = std::move(C);
    verify(out.complex);
    if (!parity_ok) out.complex.flags["foldable"] = folding(out.complex).has_value();
    return out;
}

int quotient_cell_id(const QuotientComplex& q, const std::vector<int>& v, uint32_t axes) {
    const int n = q.group.n;
    if ((int)v.size() != n) throw precondition_error("quotient_cell_id: dimension mismatch");
    BoxAction act;
    act.n = n;
    act.L = q.box_side;
    for (const AffineIsometry& a : q.coset_group) act.ops.push_back(make_box_op(a, q.box_side));
    std::vector<int> vv(n);
    for (int a = 0; a < n; ++a) vv[a] = ((v[a] % q.box_side) + q.box_side) % q.box_side;
    const auto [code, qi] = canonical_encode(act, vv, axes);
    return find_rep(q.reps[std::popcount(axes)], code);
}

CellAutomorphism induced_automorphism(const QuotientComplex& q, const AffineIsometry& g) {
    const int n = q.group.n;
    if (g.dim() != n) throw precondition_error("induced_automorphism: dimension mismatch");
    const BoxOp gop = make_box_op(g, q.box_side);
    BoxAction act;
    act.n = n;
    act.L = q.box_side;
    for (const AffineIsometry& a : q.coset_group) act.ops.push_back(make_box_op(a, q.box_side));

    CellAutomorphism out;
    out.cell_map.resize(n + 1);
    out.flips.resize(n + 1);
    std::vector<int> w(n);
    for (int k = 0; k <= n; ++k) {
        const int count = (int)q.reps[k].size();
        out.cell_map[k].resize(count);
        out.flips[k].resize(count);
        std::vector<char> hit(count, 0);
        for (int c = 0; c < count; ++c) {
            const BoxCell cell = decode_cell(q.reps[k][c], n);
            act_cell(gop, cell.v, cell.axes, q.box_side, w);
            const auto [code, qi] = canonical_encode(act, w, cell.axes);
            out.cell_map[k][c] = find_rep(q.reps[k], code);
            const BoxOp& op = act.ops[qi];
            uint32_t flips = 0;
            int j = 0;
            for (int a = 0; a < n; ++a) {
                if (!(cell.axes >> a & 1)) continue;
                if (op.signs[a] * gop.signs[a] < 0) flips |= uint32_t(1) << j;
                ++j;
            }
            out.flips[k][c] = flips;
            hit[out.cell_map[k][c]] = 1;
        }
        for (char h : hit)
            if (!h) throw verification_error("isometry does not induce a cell bijection");
    }
    return out;
}

CoveredComplex cover(const QuotientComplex& base, const CoverSpec& spec) {
    const int n = base.group.n;
    DiagonalBieberbachGroup H;
    if (spec.orientation_kernel) {
        if (!spec.sublattice.empty())
            throw precondition_error("cover spec must pick one of kernel or sublattice");
        H = orientable_double_cover(base.group);
    } else if (!spec.sublattice.empty()) {
        const auto lattice = translation_lattice(base.group);
        H.n = n;
        for (const auto& w : spec.sublattice) {
            if ((int)w.size() != n)
                throw precondition_error("sublattice vector dimension mismatch");
            if (!lattice_contains(lattice, w))
                throw precondition_error("sublattice vector is outside the translation lattice");
            std::vector<Dyadic> t(n);
            for (int i = 0; i < n; ++i) t[i] = Dyadic(w[i]);
            H.generators.push_back(AffineIsometry::translation(std::move(t)));
        }
    } else {
        throw precondition_error("cover spec selects neither kernel nor sublattice");
    }

    CoveredComplex out;
    out.total = quotient_cube_complex(H);

    const Dyadic covol_base = covolume(base.group);
    const Dyadic covol_total = covolume(H);
    const long long num = covol_total.num << covol_base.exp2;
    const long long den = covol_base.num << covol_total.exp2;
    if (den == 0 || num % den != 0) throw verification_error("cover degree is not integral");
    out.degree = num / den;

    if (out.total.box_side % base.box_side != 0)
        throw verification_error("cover box is incompatible with the base box");

    out.cell_map.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        const int total_count = (int)out.total.reps[k].size();
        if (total_count != out.degree * (long long)base.reps[k].size())
            throw verification_error("cover cell counts are not degree-multiplicative");
        out.cell_map[k].resize(total_count);
        std::vector<long long> fibre(base.reps[k].size(), 0);
        for (int c = 0; c < total_count; ++c) {
            const BoxCell cell = decode_cell(out.total.reps[k][c], n);
            out.cell_map[k][c] = quotient_cell_id(base, cell.v, cell.axes);
            ++fibre[out.cell_map[k][c]];
        }
        for (long long f : fibre)
            if (f != out.degree)
                throw verification_error("cover fibre size differs from the degree");
    }
    return out;
}

} // namespace hyperb
