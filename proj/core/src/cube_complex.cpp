#include "hyperb/cube_complex.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "hyperb/errors.hpp"

namespace hyperb {

namespace {

int bit_of(uint32_t m, int p) { return (m >> p) & 1; }

// Remove bit p, shifting higher bits down.
uint32_t drop_bit(uint32_t m, int p) {
    const uint32_t low = m & ((uint32_t(1) << p) - 1);
    return low | ((m >> (p + 1)) << p);
}

CellFace top_face(int n, uint32_t phi) {
    CellFace f;
    f.axis_image.resize(n);
    std::iota(f.axis_image.begin(), f.axis_image.end(), 0);
    f.axis_flip = phi;
    return f;
}

std::string cell_name(int k, int c) {
    return std::to_string(k) + "-cell " + std::to_string(c);
}

} // namespace

void verify(const CubeComplex& C) {
    if (C.dim < 0) throw verification_error("negative dimension");
    if ((int)C.counts.size() != C.dim + 1)
        throw verification_error("counts must have dim+1 entries");
    for (int k = 0; k <= C.dim; ++k)
        if (C.counts[k] < 0) throw verification_error("negative cell count");
    if ((int)C.facets.size() != C.dim + 1)
        throw verification_error("facets must have dim+1 entries");
    for (int k = 0; k <= C.dim; ++k) {
        if ((int)C.facets[k].size() != C.counts[k])
            throw verification_error("facet table size mismatch in dimension " +
                                     std::to_string(k));
        for (int c = 0; c < C.counts[k]; ++c) {
            if ((int)C.facets[k][c].size() != 2 * k)
                throw verification_error(cell_name(k, c) + " must have " +
                                         std::to_string(2 * k) + " facet slots");
            for (const FacetRecord& rec : C.facets[k][c]) {
                if (rec.cell < 0 || rec.cell >= C.counts[k - 1])
                    throw verification_error(cell_name(k, c) + " has facet cell out of range");
                if (k >= 1 && (rec.flips >> (k - 1)) != 0)
                    throw verification_error(cell_name(k, c) + " has facet flips out of range");
            }
        }
    }

    // Two descent routes through each codimension-2 face must land on the
    // same cell with the same composite corner correspondence.
    for (int k = 2; k <= C.dim; ++k) {
        for (int c = 0; c < C.counts[k]; ++c) {
            for (int p = 0; p < k; ++p) {
                for (int q = p + 1; q < k; ++q) {
                    for (int s = 0; s < 2; ++s) {
                        for (int t = 0; t < 2; ++t) {
                            const FacetRecord& r1 = C.facets[k][c][2 * p + s];
                            const FacetRecord& ra =
                                C.facets[k - 1][r1.cell]
                                        [2 * (q - 1) + (t ^ bit_of(r1.flips, q - 1))];
                            const FacetRecord& r2 = C.facets[k][c][2 * q + t];
                            const FacetRecord& rb =
                                C.facets[k - 1][r2.cell][2 * p + (s ^ bit_of(r2.flips, p))];
                            const uint32_t fa = drop_bit(r1.flips, q - 1) ^ ra.flips;
                            const uint32_t fb = drop_bit(r2.flips, p) ^ rb.flips;
                            if (ra.cell != rb.cell || fa != fb)
                                throw verification_error(
                                    "boundary routes disagree at " + cell_name(k, c) +
                                    " positions " + std::to_string(p) + "," +
                                    std::to_string(q) + " sides " + std::to_string(s) + "," +
                                    std::to_string(t));
                        }
                    }
                }
            }
        }
    }

    if (C.folding) {
        if (auto why = folding_violation(C, *C.folding))
            throw verification_error("attached folding invalid: " + *why);
    }
}

CellFace induced_face(const CellFace& parent, int p, int s, uint32_t f) {
    CellFace child;
    const int k = (int)parent.axis_image.size();
    child.axis_image.reserve(k - 1);
    for (int j = 0; j < k; ++j)
        if (j != p) child.axis_image.push_back(parent.axis_image[j]);
    for (int j = 0; j + 1 < k; ++j) {
        const int jp = j < p ? j : j + 1;
        child.axis_flip |= uint32_t(bit_of(parent.axis_flip, jp) ^ bit_of(f, j)) << j;
    }
    child.fixed_side = parent.fixed_side;
    if (s ^ bit_of(parent.axis_flip, p))
        child.fixed_side |= uint32_t(1) << parent.axis_image[p];
    return child;
}

std::optional<std::string> folding_violation(const CubeComplex& C, const FoldingMap& F) {
    if ((int)F.faces.size() != C.dim + 1) return "folding must label dim+1 dimensions";
    for (int k = 0; k <= C.dim; ++k) {
        if ((int)F.faces[k].size() != C.counts[k])
            return "folding label count mismatch in dimension " + std::to_string(k);
        for (int c = 0; c < C.counts[k]; ++c) {
            const CellFace& f = F.faces[k][c];
            if ((int)f.axis_image.size() != k)
                return cell_name(k, c) + " label has wrong axis count";
            uint32_t image_mask = 0;
            for (int j = 0; j < k; ++j) {
                if (f.axis_image[j] < 0 || f.axis_image[j] >= C.dim)
                    return cell_name(k, c) + " label has axis out of range";
                if (j > 0 && f.axis_image[j] <= f.axis_image[j - 1])
                    return cell_name(k, c) + " label axes must increase";
                image_mask |= uint32_t(1) << f.axis_image[j];
            }
            if (k > 0 && (f.axis_flip >> k) != 0)
                return cell_name(k, c) + " label flip out of range";
            if (C.dim < 32 && (f.fixed_side >> C.dim) != 0)
                return cell_name(k, c) + " label fixed side out of range";
            if (f.fixed_side & image_mask)
                return cell_name(k, c) + " label fixes an image axis";
        }
    }
    for (int k = 1; k <= C.dim; ++k) {
        for (int c = 0; c < C.counts[k]; ++c) {
            for (int p = 0; p < k; ++p) {
                for (int s = 0; s < 2; ++s) {
                    const FacetRecord& rec = C.facets[k][c][2 * p + s];
                    const CellFace want = induced_face(F.faces[k][c], p, s, rec.flips);
                    if (!(want == F.faces[k - 1][rec.cell]))
                        return "labels do not commute at " + cell_name(k, c) + " slot " +
                               std::to_string(2 * p + s);
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<std::vector<std::pair<int, int>>> facet_incidences(const CubeComplex& C, int k) {
    if (k < 1 || k > C.dim) throw precondition_error("facet_incidences: bad dimension");
    std::vector<std::vector<std::pair<int, int>>> out(C.counts[k - 1]);
    for (int c = 0; c < C.counts[k]; ++c)
        for (int slot = 0; slot < 2 * k; ++slot)
            out[C.facets[k][c][slot].cell].push_back({c, slot});
    return out;
}

bool is_pure(const CubeComplex& C) {
    std::vector<std::vector<char>> reach(C.dim + 1);
    for (int k = 0; k <= C.dim; ++k) reach[k].assign(C.counts[k], 0);
    reach[C.dim].assign(C.counts[C.dim], 1);
    for (int k = C.dim; k >= 1; --k)
        for (int c = 0; c < C.counts[k]; ++c)
            if (reach[k][c])
                for (const FacetRecord& rec : C.facets[k][c]) reach[k - 1][rec.cell] = 1;
    for (int k = 0; k <= C.dim; ++k)
        for (char r : reach[k])
            if (!r) return false;
    return true;
}

namespace {

// XOR shift of a whole component's top labels, pushed through a face label.
CellFace shift_face(const CellFace& f, uint32_t delta) {
    CellFace out = f;
    uint32_t image_mask = 0;
    for (std::size_t j = 0; j < f.axis_image.size(); ++j) {
        out.axis_flip ^= uint32_t(bit_of(delta, f.axis_image[j])) << j;
        image_mask |= uint32_t(1) << f.axis_image[j];
    }
    out.fixed_side ^= delta & ~image_mask;
    return out;
}

// Delta with shift_face(a, delta) == b, if the labels are reconcilable.
std::optional<uint32_t> face_delta(const CellFace& a, const CellFace& b) {
    if (a.axis_image != b.axis_image) return std::nullopt;
    uint32_t delta = 0;
    for (std::size_t j = 0; j < a.axis_image.size(); ++j)
        delta |= uint32_t(bit_of(a.axis_flip ^ b.axis_flip, (int)j)) << a.axis_image[j];
    delta |= a.fixed_side ^ b.fixed_side;
    return delta;
}

struct XorUnionFind {
    std::vector<int> parent;
    std::vector<uint32_t> offset; // xor shift from node to its parent

    explicit XorUnionFind(int n) : parent(n), offset(n, 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::pair<int, uint32_t> find(int x) {
        uint32_t acc = 0;
        while (parent[x] != x) {
            acc ^= offset[x];
            x = parent[x];
        }
        return {x, acc};
    }
    // Requires shift from a's frame to b's frame to be delta. False on clash.
    bool relate(int a, int b, uint32_t delta) {
        auto [ra, oa] = find(a);
        auto [rb, ob] = find(b);
        if (ra == rb) return (oa ^ ob) == delta;
        parent[ra] = rb;
        offset[ra] = oa ^ delta ^ ob;
        return true;
    }
};

} // namespace

std::optional<FoldingMap> folding(const CubeComplex& C) {
    if (C.folding) {
        if (auto why = folding_violation(C, *C.folding))
            throw verification_error("attached folding invalid: " + *why);
        return C.folding;
    }
    const int n = C.dim;
    FoldingMap F;
    F.faces.resize(n + 1);
    if (n == 0) {
        F.faces[0].assign(C.counts[0], CellFace{});
        return F;
    }
    if (!is_pure(C)) throw precondition_error("folding search requires a pure complex");

    // Phase 1: flip labels on top cells, propagated through shared facets.
    // Components of the facet-adjacency graph are pinned independently; the
    // relative shift between components is resolved in phase 2.
    const auto incid = facet_incidences(C, n);
    std::vector<int> comp(C.counts[n], -1);
    std::vector<uint32_t> phi(C.counts[n], 0);
    int comp_count = 0;
    for (int start = 0; start < C.counts[n]; ++start) {
        if (comp[start] >= 0) continue;
        comp[start] = comp_count;
        phi[start] = 0;
        std::vector<int> queue{start};
        while (!queue.empty()) {
            const int c = queue.back();
            queue.pop_back();
            for (int slot = 0; slot < 2 * n; ++slot) {
                const int a = slot / 2, s = slot % 2;
                const FacetRecord& rec = C.facets[n][c][slot];
                const CellFace tau = induced_face(top_face(n, phi[c]), a, s, rec.flips);
                for (const auto& [c2, slot2] : incid[rec.cell]) {
                    const int a2 = slot2 / 2, s2 = slot2 % 2;
                    if (a2 != a) return std::nullopt; // axis sets of the shared facet clash
                    const uint32_t f2 = C.facets[n][c2][slot2].flips;
                    uint32_t forced = 0;
                    for (int j = 0; j + 1 < n; ++j) {
                        const int axis = tau.axis_image[j];
                        forced |= uint32_t(bit_of(tau.axis_flip ^ f2, j)) << axis;
                    }
                    forced |= uint32_t(bit_of(tau.fixed_side, a) ^ s2) << a;
                    if (comp[c2] < 0) {
                        comp[c2] = comp[c];
                        phi[c2] = forced;
                        queue.push_back(c2);
                    } else if (phi[c2] != forced) {
                        return std::nullopt;
                    }
                }
            }
        }
        ++comp_count;
    }

    // Phase 2: descend labels, reconciling components that meet at a cell.
    std::vector<std::vector<CellFace>> raw(n + 1);
    std::vector<std::vector<int>> owner(n + 1);
    for (int k = 0; k <= n; ++k) owner[k].assign(C.counts[k], -1);
    raw[n].resize(C.counts[n]);
    for (int c = 0; c < C.counts[n]; ++c) {
        raw[n][c] = top_face(n, phi[c]);
        owner[n][c] = comp[c];
    }
    XorUnionFind uf(comp_count);
    for (int k = n; k >= 1; --k) {
        raw[k - 1].resize(C.counts[k - 1]);
        for (int c = 0; c < C.counts[k]; ++c) {
            if (owner[k][c] < 0) return std::nullopt; // unreachable under purity
            for (int slot = 0; slot < 2 * k; ++slot) {
                const FacetRecord& rec = C.facets[k][c][slot];
                const CellFace want = induced_face(raw[k][c], slot / 2, slot % 2, rec.flips);
                if (owner[k - 1][rec.cell] < 0) {
                    owner[k - 1][rec.cell] = owner[k][c];
                    raw[k - 1][rec.cell] = want;
                } else {
                    const auto delta = face_delta(want, raw[k - 1][rec.cell]);
                    if (!delta) return std::nullopt;
                    if (!uf.relate(owner[k][c], owner[k - 1][rec.cell], *delta))
                        return std::nullopt;
                }
            }
        }
    }

    for (int k = 0; k <= n; ++k) {
        F.faces[k].resize(C.counts[k]);
        for (int c = 0; c < C.counts[k]; ++c)
            F.faces[k][c] = shift_face(raw[k][c], uf.find(owner[k][c]).second);
    }
    if (folding_violation(C, F)) return std::nullopt;
    return F;
}

int corner_vertex(const CubeComplex& C, int k, int c, uint32_t u) {
    while (k > 0) {
        const int p = k - 1;
        const FacetRecord& rec = C.facets[k][c][2 * p + bit_of(u, p)];
        u = drop_bit(u, p) ^ rec.flips;
        c = rec.cell;
        --k;
    }
    return c;
}

std::pair<int, int> corner_edge_end(const CubeComplex& C, int k, int c, uint32_t u, int p) {
    while (k > 1) {
        const int q = (k - 1 == p) ? k - 2 : k - 1;
        const FacetRecord& rec = C.facets[k][c][2 * q + bit_of(u, q)];
        u = drop_bit(u, q) ^ rec.flips;
        c = rec.cell;
        if (q < p) --p;
        --k;
    }
    return {c, (int)(u & 1)};
}

namespace {

struct LinkData {
    std::vector<std::pair<int, int>> verts;
    std::map<std::pair<int, int>, int> vid;
    std::map<std::vector<int>, int> simplex_count;
    bool simplicial = true;
};

std::vector<LinkData> all_links(const CubeComplex& C) {
    std::vector<LinkData> links(C.counts[0]);
    if (C.dim < 1) return links;
    for (int e = 0; e < C.counts[1]; ++e) {
        for (int s = 0; s < 2; ++s) {
            const int v = C.facets[1][e][s].cell;
            links[v].vid[{e, s}] = (int)links[v].verts.size();
            links[v].verts.push_back({e, s});
        }
    }
    std::vector<int> simplex;
    for (int k = 2; k <= C.dim; ++k) {
        for (int c = 0; c < C.counts[k]; ++c) {
            for (uint32_t u = 0; u < (uint32_t(1) << k); ++u) {
                const int v = corner_vertex(C, k, c, u);
                simplex.clear();
                for (int p = 0; p < k; ++p)
                    simplex.push_back(links[v].vid.at(corner_edge_end(C, k, c, u, p)));
                std::sort(simplex.begin(), simplex.end());
                if (std::adjacent_find(simplex.begin(), simplex.end()) != simplex.end()) {
                    links[v].simplicial = false;
                    continue;
                }
                if (++links[v].simplex_count[simplex] > 1) links[v].simplicial = false;
            }
        }
    }
    return links;
}

void bron_kerbosch(uint64_t r, uint64_t p, uint64_t x, const std::vector<uint64_t>& adj,
                   std::vector<uint64_t>& out) {
    if (p == 0 && x == 0) {
        out.push_back(r);
        return;
    }
    const uint64_t px = p | x;
    const int pivot = std::countr_zero(px);
    uint64_t cand = p & ~adj[pivot];
    while (cand) {
        const int v = std::countr_zero(cand);
        cand &= cand - 1;
        const uint64_t bit = uint64_t(1) << v;
        bron_kerbosch(r | bit, p & adj[v], x & adj[v], adj, out);
        p &= ~bit;
        x |= bit;
    }
}

// Link must be flag: every maximal clique of its 1-skeleton is a simplex.
// Returns the adjacency masks for reuse by the flat check.
bool link_is_flag(const LinkData& link, std::vector<uint64_t>* adj_out) {
    const int m = (int)link.verts.size();
    if (m > 64) throw cap_exceeded("vertex link has more than 64 vertices");
    std::vector<uint64_t> adj(m, 0);
    std::set<std::vector<int>> simplices;
    for (const auto& [simplex, cnt] : link.simplex_count) {
        simplices.insert(simplex);
        for (std::size_t i = 0; i < simplex.size(); ++i)
            for (std::size_t j = i + 1; j < simplex.size(); ++j) {
                adj[simplex[i]] |= uint64_t(1) << simplex[j];
                adj[simplex[j]] |= uint64_t(1) << simplex[i];
            }
    }
    std::vector<uint64_t> cliques;
    const uint64_t all = m == 64 ? ~uint64_t(0) : (uint64_t(1) << m) - 1;
    if (m > 0) bron_kerbosch(0, all, 0, adj, cliques);
    bool ok = true;
    for (uint64_t clique : cliques) {
        if (std::popcount(clique) <= 1) continue;
        std::vector<int> want;
        for (uint64_t c = clique; c; c &= c - 1) want.push_back(std::countr_zero(c));
        if (!simplices.count(want)) {
            ok = false;
            break;
        }
    }
    if (adj_out) *adj_out = std::move(adj);
    return ok;
}

} // namespace

VertexLink vertex_link(const CubeComplex& C, int v) {
    if (v < 0 || v >= C.counts[0]) throw precondition_error("vertex_link: bad vertex");
    const auto links = all_links(C);
    VertexLink out;
    out.vertices = links[v].verts;
    out.not_simplicial = !links[v].simplicial;
    for (const auto& [simplex, cnt] : links[v].simplex_count) out.simplices.push_back(simplex);
    return out;
}

bool is_npc(const CubeComplex& C) {
    const auto links = all_links(C);
    for (const LinkData& link : links) {
        if (!link.simplicial) return false;
        if (!link_is_flag(link, nullptr)) return false;
    }
    return true;
}

bool is_connected(const CubeComplex& C) {
    if (C.counts[0] <= 1) return true;
    if (C.dim < 1) return false;
    std::vector<std::vector<int>> nbr(C.counts[0]);
    for (int e = 0; e < C.counts[1]; ++e) {
        const int a = C.facets[1][e][0].cell;
        const int b = C.facets[1][e][1].cell;
        nbr[a].push_back(b);
        nbr[b].push_back(a);
    }
    std::vector<char> seen(C.counts[0], 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        const int v = queue.back();
        queue.pop_back();
        for (int w : nbr[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                queue.push_back(w);
            }
    }
    return reached == C.counts[0];
}

long long euler_characteristic(const CubeComplex& C) {
    long long chi = 0;
    for (int k = 0; k <= C.dim; ++k) chi += (k % 2 == 0) ? C.counts[k] : -C.counts[k];
    return chi;
}

bool is_flat(const CubeComplex& C) {
    const int n = C.dim;
    if (n < 1 || C.counts[n] == 0) return false;
    if (!is_connected(C)) return false;
    const auto links = all_links(C);
    for (const LinkData& link : links) {
        if (!link.simplicial) return false;
        std::vector<uint64_t> adj;
        if (!link_is_flag(link, &adj)) return false;
        if ((int)link.verts.size() != 2 * n) return false;
        // Octahedral 1-skeleton: each link vertex misses exactly its antipode.
        const uint64_t all = (uint64_t(1) << (2 * n)) - 1;
        std::vector<int> antipode(2 * n, -1);
        for (int v = 0; v < 2 * n; ++v) {
            const uint64_t missing = all & ~adj[v] & ~(uint64_t(1) << v);
            if (std::popcount(missing) != 1) return false;
            antipode[v] = std::countr_zero(missing);
        }
        for (int v = 0; v < 2 * n; ++v)
            if (antipode[antipode[v]] != v) return false;
    }
    return true;
}

CubeComplex single_cube_complex(int n) {
    if (n < 0) throw precondition_error("single_cube_complex: n must be >= 0");
    if (n > 12) throw cap_exceeded("single_cube_complex: n > 12");
    CubeComplex C;
    C.dim = n;
    C.counts.assign(n + 1, 0);
    C.facets.resize(n + 1);
    // Cell = (axis set S, fixed sides t on the complement), id in (S, t) order.
    std::vector<std::map<std::pair<uint32_t, uint32_t>, int>> id(n + 1);
    for (uint32_t S = 0; S < (uint32_t(1) << n); ++S) {
        const int k = std::popcount(S);
        const uint32_t comp = ~S & ((uint32_t(1) << n) - 1);
        // Enumerate t as subsets of the complement.
        uint32_t t = 0;
        while (true) {
            id[k][{S, t}] = C.counts[k]++;
            if (t == comp) break;
            t = (t - comp) & comp;
        }
    }
    FoldingMap F;
    F.faces.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        C.facets[k].resize(C.counts[k]);
        F.faces[k].resize(C.counts[k]);
    }
    for (const auto& per_dim : id) {
        for (const auto& [key, cell] : per_dim) {
            const auto [S, t] = key;
            const int k = std::popcount(S);
            std::vector<int> axes;
            for (int a = 0; a < n; ++a)
                if (S >> a & 1) axes.push_back(a);
            F.faces[k][cell] = CellFace{axes, 0, t};
            C.facets[k][cell].resize(2 * k);
            for (int p = 0; p < k; ++p) {
                for (int s = 0; s < 2; ++s) {
                    const uint32_t S2 = S & ~(uint32_t(1) << axes[p]);
                    const uint32_t t2 = t | (uint32_t(s) << axes[p]);
                    C.facets[k][cell][2 * p + s] = FacetRecord{id[k - 1].at({S2, t2}), 0};
                }
            }
        }
    }
    C.folding = std::move(F);
    C.flags["foldable"] = true;
    return C;
}

} // namespace hyperb
