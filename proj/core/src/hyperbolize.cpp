#include "hyperb/hyperbolize.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include <json.hpp>

#include "hyperb/errors.hpp"

namespace hyperb {

namespace {

bool bit_of(uint32_t m, int i) { return (m >> i) & 1u; }

void check_dim(const CubeSym& s) {
    const int n = s.dim();
    if (n > 31) throw cap_exceeded("cube symmetry dimension exceeds 31");
    std::vector<char> hit(n, 0);
    for (int a = 0; a < n; ++a) {
        if (s.perm[a] < 0 || s.perm[a] >= n || hit[s.perm[a]])
            throw precondition_error("cube symmetry permutation is not a bijection");
        hit[s.perm[a]] = 1;
    }
    if (n < 32 && (s.flips >> n) != 0)
        throw precondition_error("cube symmetry flips exceed the dimension");
}

} // namespace

CubeSym CubeSym::identity(int n) {
    CubeSym s;
    s.perm.resize(n);
    std::iota(s.perm.begin(), s.perm.end(), 0);
    return s;
}

CubeSym compose(const CubeSym& a, const CubeSym& b) {
    if (a.dim() != b.dim()) throw precondition_error("cube symmetry dimensions differ");
    const int n = a.dim();
    CubeSym c;
    c.perm.resize(n);
    for (int x = 0; x < n; ++x) {
        c.perm[x] = a.perm[b.perm[x]];
        if (bit_of(b.flips, x) ^ bit_of(a.flips, b.perm[x])) c.flips |= uint32_t(1) << x;
    }
    return c;
}

CubeSym inverse(const CubeSym& s) {
    const int n = s.dim();
    CubeSym r;
    r.perm.resize(n);
    for (int a = 0; a < n; ++a) r.perm[s.perm[a]] = a;
    for (int x = 0; x < n; ++x)
        if (bit_of(s.flips, r.perm[x])) r.flips |= uint32_t(1) << x;
    return r;
}

int map_facet(const CubeSym& s, int facet) {
    const int a = facet / 2, side = facet % 2;
    if (a < 0 || a >= s.dim()) throw precondition_error("facet index out of range");
    return 2 * s.perm[a] + (side ^ (bit_of(s.flips, a) ? 1 : 0));
}

std::vector<std::vector<int>> cube_sym_matrix(const CubeSym& s) {
    const int n = s.dim();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (int a = 0; a < n; ++a) m[s.perm[a]][a] = bit_of(s.flips, a) ? -1 : 1;
    return m;
}

CubeSym cube_sym_from_matrix(const std::vector<std::vector<int>>& m) {
    const int n = (int)m.size();
    if (n > 31) throw cap_exceeded("cube symmetry dimension exceeds 31");
    CubeSym s;
    s.perm.assign(n, -1);
    std::vector<char> used(n, 0);
    for (int r = 0; r < n; ++r)
        if ((int)m[r].size() != n)
            throw precondition_error("cube symmetry matrix is not square");
    for (int a = 0; a < n; ++a) {
        int row = -1, val = 0;
        for (int r = 0; r < n; ++r) {
            if (m[r][a] == 0) continue;
            if (row >= 0 || (m[r][a] != 1 && m[r][a] != -1))
                throw precondition_error("matrix is not a signed permutation");
            row = r;
            val = m[r][a];
        }
        if (row < 0 || used[row]) throw precondition_error("matrix is not a signed permutation");
        used[row] = 1;
        s.perm[a] = row;
        if (val < 0) s.flips |= uint32_t(1) << a;
    }
    return s;
}

namespace {

Gluing ordered_gluing(int pa, int fa, int pb, int fb, CubeSym label) {
    if (std::make_pair(pb, fb) < std::make_pair(pa, fa)) {
        std::swap(pa, pb);
        std::swap(fa, fb);
        label = inverse(label);
    }
    return Gluing{pa, fa, pb, fb, std::move(label)};
}

std::vector<long long> sym_key(const CubeSym& s) {
    std::vector<long long> k;
    k.reserve(s.perm.size() + 1);
    for (int p : s.perm) k.push_back(p);
    k.push_back((long long)s.flips);
    return k;
}

std::vector<long long> gluing_key(const Gluing& g) {
    CubeSym label = g.label;
    if (g.piece_a == g.piece_b && g.facet_a == g.facet_b) {
        // Self-paired facet: the two transport directions differ by inversion.
        CubeSym inv = inverse(label);
        if (sym_key(inv) < sym_key(label)) label = std::move(inv);
    }
    std::vector<long long> k{g.piece_a, g.facet_a, g.piece_b, g.facet_b};
    const auto s = sym_key(label);
    k.insert(k.end(), s.begin(), s.end());
    return k;
}

// Expand flip bits indexed over the facet's own axes back to cube axes,
// skipping the dropped axis a.
uint32_t expand_flips(uint32_t f, int a, int n) {
    uint32_t out = 0;
    int j = 0;
    for (int axis = 0; axis < n; ++axis) {
        if (axis == a) continue;
        if (bit_of(f, j)) out |= uint32_t(1) << axis;
        ++j;
    }
    return out;
}

void check_gluing_shape(const Gluing& g, long long pieces, int n, bool as_input) {
    const auto fail = [&](const char* msg) -> void {
        if (as_input) throw precondition_error(msg);
        throw verification_error(msg);
    };
    if (g.piece_a < 0 || g.piece_a >= pieces || g.piece_b < 0 || g.piece_b >= pieces)
        fail("gluing references a missing piece");
    if (g.facet_a < 0 || g.facet_a >= 2 * n || g.facet_b < 0 || g.facet_b >= 2 * n)
        fail("gluing facet index out of range");
    if (g.label.dim() != n) fail("gluing label dimension mismatch");
    check_dim(g.label);
    if (map_facet(g.label, g.facet_a) != g.facet_b)
        fail("gluing label does not carry the source facet to the target facet");
    if (g.piece_a == g.piece_b && g.facet_a == g.facet_b &&
        !(compose(g.label, g.label) == CubeSym::identity(n)))
        fail("self-glued facet needs an involutive label");
}

// Each piece facet may appear in at most one gluing; standalone boundary
// facets stay unglued.
std::map<std::pair<int, int>, int> facet_coverage(const std::vector<Gluing>& gluings,
                                                  bool as_input) {
    std::map<std::pair<int, int>, int> cov;
    for (const Gluing& g : gluings) {
        std::set<std::pair<int, int>> ends{{g.piece_a, g.facet_a}, {g.piece_b, g.facet_b}};
        for (const auto& e : ends) {
            if (++cov[e] > 1) {
                if (as_input) throw precondition_error("a piece facet is glued twice");
                throw verification_error("a piece facet is glued twice");
            }
        }
    }
    return cov;
}

} // namespace

HyperbolizedComplex hyperbolize(const CubeComplex& C, const PieceModel& X) {
    verify(C);
    const int n = C.dim;
    if (X.facet_connectivity != 1)
        throw precondition_error("piece models with facet connectivity above one are not supported");
    if (X.dim != 0 && X.dim != n)
        throw precondition_error("piece model dimension does not match the complex");
    if (n < 1 || C.counts[n] <= 0)
        throw precondition_error("hyperbolization needs top cells of positive dimension");
    if (!is_pure(C)) throw precondition_error("hyperbolization requires a pure complex");

    FoldingMap F;
    if (C.folding) {
        F = *C.folding;
    } else {
        auto found = folding(C);
        if (!found) throw precondition_error("complex is not foldable");
        F = std::move(*found);
    }

    HyperbolizedComplex H;
    H.dim = n;
    H.piece_count = C.counts[n];
    H.piece = X;
    H.piece.dim = n;
    H.input_hash = cube_complex_hash(C);

    const auto inc = facet_incidences(C, n);
    for (int tau = 0; tau < C.counts[n - 1]; ++tau) {
        const auto& at = inc[tau];
        if (at.empty()) continue; // unreachable for a pure complex
        if (at.size() == 1) continue; // boundary facet stays free
        if (at.size() > 2)
            throw precondition_error("a facet is shared by more than two top cells");
        const auto [s1, slot1] = at[0];
        const auto [s2, slot2] = at[1];
        const int a = slot1 / 2;
        if (slot2 / 2 != a)
            throw verification_error("folded complex glues a facet across different axes");
        const uint32_t phi1 = F.faces[n][s1].axis_flip;
        const uint32_t phi2 = F.faces[n][s2].axis_flip;
        const uint32_t f1 = expand_flips(C.facets[n][s1][slot1].flips, a, n);
        const uint32_t f2 = expand_flips(C.facets[n][s2][slot2].flips, a, n);

        CubeSym label = CubeSym::identity(n);
        label.flips = (phi1 ^ f1 ^ f2 ^ phi2) & ~(uint32_t(1) << a);
        const int ea = (slot1 % 2) ^ (bit_of(phi1, a) ? 1 : 0);
        const int eb = (slot2 % 2) ^ (bit_of(phi2, a) ? 1 : 0);
        if (ea != eb) label.flips |= uint32_t(1) << a;

        Gluing g = ordered_gluing(s1, 2 * a + ea, s2, 2 * a + eb, std::move(label));
        check_gluing_shape(g, H.piece_count, n, false);
        H.gluings.push_back(std::move(g));
    }
    facet_coverage(H.gluings, false);
    std::sort(H.gluings.begin(), H.gluings.end(), [](const Gluing& x, const Gluing& y) {
        return gluing_key(x) < gluing_key(y);
    });
    return H;
}

PieceAction compose(const PieceAction& a, const PieceAction& b) {
    if (a.piece_perm.size() != b.piece_perm.size())
        throw precondition_error("piece action sizes differ");
    const int m = (int)a.piece_perm.size();
    PieceAction c;
    c.piece_perm.resize(m);
    c.labels.resize(m);
    for (int p = 0; p < m; ++p) {
        c.piece_perm[p] = a.piece_perm[b.piece_perm[p]];
        c.labels[p] = compose(a.labels[b.piece_perm[p]], b.labels[p]);
    }
    return c;
}

PieceAction lift_deck_action(const QuotientComplex& total, const AffineIsometry& g) {
    const CubeComplex& C = total.complex;
    const int n = C.dim;
    if (n < 1) throw precondition_error("deck lift needs positive dimension");

    FoldingMap F;
    if (C.folding) {
        F = *C.folding;
    } else {
        auto found = folding(C);
        if (!found) throw precondition_error("quotient complex is not foldable");
        F = std::move(*found);
    }

    const CellAutomorphism aut = induced_automorphism(total, g);
    PieceAction act;
    act.piece_perm = aut.cell_map[n];
    act.labels.resize(C.counts[n]);
    for (int p = 0; p < C.counts[n]; ++p) {
        CubeSym s = CubeSym::identity(n);
        s.flips = F.faces[n][p].axis_flip ^ aut.flips[n][p] ^
                  F.faces[n][act.piece_perm[p]].axis_flip;
        act.labels[p] = std::move(s);
    }
    return act;
}

HyperbolizedComplex quotient_pieces(const HyperbolizedComplex& H,
                                    const std::vector<PieceAction>& deck_generators) {
    const int n = H.dim;
    const int pieces = (int)H.piece_count;
    if (pieces <= 0) throw precondition_error("quotient needs at least one piece");
    for (const Gluing& g : H.gluings) check_gluing_shape(g, pieces, n, true);
    facet_coverage(H.gluings, true);

    const auto action_key = [&](const PieceAction& a) {
        std::vector<long long> k;
        for (int p = 0; p < pieces; ++p) {
            k.push_back(a.piece_perm[p]);
            const auto s = sym_key(a.labels[p]);
            k.insert(k.end(), s.begin(), s.end());
        }
        return k;
    };

    PieceAction ident;
    ident.piece_perm.resize(pieces);
    std::iota(ident.piece_perm.begin(), ident.piece_perm.end(), 0);
    ident.labels.assign(pieces, CubeSym::identity(n));

    for (const PieceAction& a : deck_generators) {
        if ((int)a.piece_perm.size() != pieces || (int)a.labels.size() != pieces)
            throw precondition_error("deck action size does not match the piece count");
        std::vector<char> hit(pieces, 0);
        for (int p = 0; p < pieces; ++p) {
            const int q = a.piece_perm[p];
            if (q < 0 || q >= pieces || hit[q])
                throw precondition_error("deck action is not a piece bijection");
            hit[q] = 1;
            if (a.labels[p].dim() != n)
                throw precondition_error("deck action label dimension mismatch");
            check_dim(a.labels[p]);
        }
    }

    // Gluing set as normalized keys, for the automorphism check.
    std::set<std::vector<long long>> gset;
    for (const Gluing& g : H.gluings) gset.insert(gluing_key(g));
    for (const PieceAction& a : deck_generators) {
        for (const Gluing& g : H.gluings) {
            const CubeSym& l1 = a.labels[g.piece_a];
            const CubeSym& l2 = a.labels[g.piece_b];
            Gluing img = ordered_gluing(a.piece_perm[g.piece_a], map_facet(l1, g.facet_a),
                                        a.piece_perm[g.piece_b], map_facet(l2, g.facet_b),
                                        compose(l2, compose(g.label, inverse(l1))));
            if (!gset.count(gluing_key(img)))
                throw verification_error("deck action does not preserve the gluings");
        }
    }

    // Closure under composition; the group is finite so inverses appear.
    std::vector<PieceAction> group{ident};
    std::map<std::vector<long long>, int> seen{{action_key(ident), 0}};
    for (std::size_t i = 0; i < group.size(); ++i) {
        for (const PieceAction& gen : deck_generators) {
            PieceAction next = compose(gen, group[i]);
            auto k = action_key(next);
            if (seen.emplace(std::move(k), (int)group.size()).second)
                group.push_back(std::move(next));
            if (group.size() > (1u << 20)) throw cap_exceeded("deck group exceeds 2^20 elements");
        }
    }

    for (std::size_t i = 1; i < group.size(); ++i)
        for (int p = 0; p < pieces; ++p)
            if (group[i].piece_perm[p] == p)
                throw precondition_error("deck action has a fixed piece: the quotient is not free");

    // Orbit transversal: rep_of[p] and the symmetry carrying the rep onto p.
    std::vector<int> rep_of(pieces, -1), rep_index(pieces, -1);
    std::vector<CubeSym> carry(pieces);
    std::vector<int> reps;
    for (int p = 0; p < pieces; ++p) {
        if (rep_of[p] >= 0) continue;
        rep_index[p] = (int)reps.size();
        reps.push_back(p);
        for (const PieceAction& e : group) {
            const int q = e.piece_perm[p];
            if (rep_of[q] < 0) {
                rep_of[q] = p;
                carry[q] = e.labels[p];
            }
        }
    }

    HyperbolizedComplex out;
    out.dim = n;
    out.piece_count = (long long)reps.size();
    out.piece = H.piece;
    out.input_hash = H.input_hash;

    std::set<std::vector<long long>> dedup;
    for (const Gluing& g : H.gluings) {
        const int r1 = rep_of[g.piece_a], r2 = rep_of[g.piece_b];
        const CubeSym& l1 = carry[g.piece_a];
        const CubeSym& l2 = carry[g.piece_b];
        Gluing t = ordered_gluing(rep_index[r1], map_facet(inverse(l1), g.facet_a),
                                  rep_index[r2], map_facet(inverse(l2), g.facet_b),
                                  compose(inverse(l2), compose(g.label, l1)));
        check_gluing_shape(t, out.piece_count, n, false);
        if (dedup.insert(gluing_key(t)).second) out.gluings.push_back(std::move(t));
    }
    std::sort(out.gluings.begin(), out.gluings.end(), [](const Gluing& x, const Gluing& y) {
        return gluing_key(x) < gluing_key(y);
    });

    // Coverage must agree with the input on each representative piece.
    const auto cov_in = facet_coverage(H.gluings, true);
    const auto cov_out = facet_coverage(out.gluings, false);
    for (int r = 0; r < (int)reps.size(); ++r) {
        for (int f = 0; f < 2 * n; ++f) {
            const auto in = cov_in.find({reps[r], f});
            const auto ot = cov_out.find({r, f});
            const int ci = in == cov_in.end() ? 0 : in->second;
            const int co = ot == cov_out.end() ? 0 : ot->second;
            if (ci != co)
                throw verification_error("quotient gluings do not cover the piece facets");
        }
    }
    return out;
}

DegreeChain covering_degree_chain(const DiagonalBieberbachGroup& g) {
    const int n = g.n;
    if (n < 1) throw std::invalid_argument("covering chain needs dimension at least 1");
    if (n > 12) throw cap_exceeded("covering chain dimension exceeds 12");
    const auto basis = translation_lattice(g);
    const long long det = lattice_determinant(basis);
    const long long holonomy = (long long)sign_image(g).size();

    long long L = 1;
    for (int i = 0; i < n; ++i) {
        std::vector<long long> e(n, 0);
        long long c = 0;
        for (long long cc = 1; cc <= 16; ++cc) {
            e[i] = cc;
            if (lattice_contains(basis, e)) {
                c = cc;
                break;
            }
        }
        if (c == 0) throw cap_exceeded("covering box side exceeds 16");
        L = std::lcm(L, c);
    }
    if (L % 2) L *= 2;
    if (L > 16) throw cap_exceeded("covering box side exceeds 16");

    long long Ln = 1, d2 = 1;
    for (int i = 0; i < n; ++i) {
        Ln *= L;
        d2 *= L / 2;
    }
    if ((Ln * holonomy) % det != 0)
        throw verification_error("covering degree is not integral");
    DegreeChain chain;
    chain.box_side = L;
    chain.d1 = Ln * holonomy / det;
    chain.d2 = d2;
    chain.to_piece_source = d2 << n;
    return chain;
}

Rational injrad_bound(long long d2, int n) {
    if (d2 <= 0 || n < 0) throw std::invalid_argument("injrad_bound needs d2 > 0 and n >= 0");
    if (n > 40 || d2 > (std::numeric_limits<long long>::max() >> n))
        throw cap_exceeded("injectivity radius denominator overflows");
    return Rational{1, d2 << n};
}

namespace {

using json = nlohmann::ordered_json;

std::string hash_hex(uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

} // namespace

std::string hyperbolized_to_json(const HyperbolizedComplex& H) {
    json j;
    j["version"] = 1;
    j["dim"] = H.dim;
    j["pieces"] = H.piece_count;
    j["piece"] = {{"tag", H.piece.tag},
                  {"dim", H.piece.dim},
                  {"facet_connectivity", H.piece.facet_connectivity},
                  {"stably_parallelizable", H.piece.stably_parallelizable}};
    json rows = json::array();
    for (const Gluing& g : H.gluings) {
        json m = json::array();
        for (const auto& row : cube_sym_matrix(g.label)) m.push_back(row);
        rows.push_back(json::array({g.piece_a, g.facet_a, g.piece_b, g.facet_b, m}));
    }
    j["gluings"] = std::move(rows);
    j["provenance"] = {{"input_hash", hash_hex(H.input_hash)}, {"piece_tag", H.piece.tag}};
    return j.dump(2) + "\n";
}

HyperbolizedComplex hyperbolized_from_json(const std::string& text) {
    const json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw precondition_error("invalid JSON");
    try {
        if (!j.is_object() || j.at("version").get<int>() != 1)
            throw precondition_error("unsupported hyperbolized complex version");
        HyperbolizedComplex H;
        H.dim = j.at("dim").get<int>();
        if (H.dim < 0 || H.dim > 31) throw precondition_error("dimension out of range");
        H.piece_count = j.at("pieces").get<long long>();
        if (H.piece_count < 0 || H.piece_count > (1ll << 24))
            throw precondition_error("piece count out of range");
        const json& p = j.at("piece");
        H.piece.tag = p.at("tag").get<std::string>();
        H.piece.dim = p.at("dim").get<int>();
        H.piece.facet_connectivity = p.at("facet_connectivity").get<int>();
        H.piece.stably_parallelizable = p.at("stably_parallelizable").get<bool>();
        if (H.piece.dim != H.dim) throw precondition_error("piece dimension mismatch");
        if (j.contains("provenance")) {
            const std::string hex = j.at("provenance").at("input_hash").get<std::string>();
            std::size_t used = 0;
            H.input_hash = std::stoull(hex, &used, 16);
            if (used != hex.size()) throw precondition_error("malformed input hash");
        }
        for (const json& row : j.at("gluings")) {
            if (!row.is_array() || row.size() != 5)
                throw precondition_error("gluing row must be [pa, fa, pb, fb, matrix]");
            Gluing g;
            g.piece_a = row[0].get<int>();
            g.facet_a = row[1].get<int>();
            g.piece_b = row[2].get<int>();
            g.facet_b = row[3].get<int>();
            g.label = cube_sym_from_matrix(row[4].get<std::vector<std::vector<int>>>());
            check_gluing_shape(g, H.piece_count, H.dim, true);
            H.gluings.push_back(std::move(g));
        }
        facet_coverage(H.gluings, true);
        return H;
    } catch (const json::exception& e) {
        throw precondition_error(std::string("malformed hyperbolized complex JSON: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw precondition_error("malformed input hash");
    } catch (const std::out_of_range&) {
        throw precondition_error("malformed input hash");
    }
}

} // namespace hyperb
