#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hyperb {

// One facet attachment of a k-cell. The facet is a (k-1)-cell; corners of the
// parent facet correspond to corners of that cell by XOR with `flips`, bit j
// referring to the j-th axis of the (k-1)-cell. The correspondence preserves
// axis order, so a bitmask is enough.
struct FacetRecord {
    int cell = -1;
    uint32_t flips = 0;

    bool operator==(const FacetRecord&) const = default;
};

// Embedding of a k-cell into the model cube [0,1]^n as a face. Corner u of
// the cell maps to the model corner x with x[axis_image[j]] = u[j] ^ bit j of
// axis_flip, and x[b] = bit b of fixed_side for axes b outside axis_image.
// axis_image is strictly increasing; fixed_side has no bits on image axes.
struct CellFace {
    std::vector<int> axis_image;
    uint32_t axis_flip = 0;
    uint32_t fixed_side = 0;

    bool operator==(const CellFace&) const = default;
};

// Face labels for every cell, indexed as faces[k][cell].
struct FoldingMap {
    std::vector<std::vector<CellFace>> faces;

    bool operator==(const FoldingMap&) const = default;
};

// Combinatorial cube complex. counts[k] is the number of k-cells,
// 0 <= k <= dim. facets[k][c] lists the 2k facet records of k-cell c in slot
// order, slot = 2*axis_position + side. Cell ids are dense and per-dimension.
struct CubeComplex {
    int dim = 0;
    std::vector<int> counts;
    std::vector<std::vector<std::vector<FacetRecord>>> facets;
    std::optional<FoldingMap> folding;
    std::map<std::string, bool> flags;

    bool operator==(const CubeComplex&) const = default;
};

// Structural soundness: array shapes, facet ranges, agreement of the two
// descent routes through every codimension-2 face (cells and correspondence
// flips), and validity of an attached folding. Throws verification_error.
void verify(const CubeComplex& C);

// Face label a facet inherits from its parent's label through one record.
// p and s are the parent's axis position and side, f the record flips.
CellFace induced_face(const CellFace& parent, int p, int s, uint32_t f);

// Validates an attached folding against every facet record.
// Returns an explanation for the first violation, or nullopt if valid.
std::optional<std::string> folding_violation(const CubeComplex& C, const FoldingMap& F);

// Returns the attached folding after validation, or searches for one: top
// cells get flip labels (first cell of each component pinned to the identity),
// every lower cell's label is forced by descent. Requires a pure complex when
// searching. Returns nullopt iff the complex is not foldable.
std::optional<FoldingMap> folding(const CubeComplex& C);

// For each (k-1)-cell, the list of (k-cell, slot) incidences.
std::vector<std::vector<std::pair<int, int>>> facet_incidences(const CubeComplex& C, int k);

// Vertex id of corner u of k-cell c, resolved by facet descent.
int corner_vertex(const CubeComplex& C, int k, int c, uint32_t u);

// Edge reached from corner u of k-cell c by keeping only axis position p,
// together with the edge end lying at that corner.
std::pair<int, int> corner_edge_end(const CubeComplex& C, int k, int c, uint32_t u, int p);

// Link of a vertex as an abstract simplicial complex. Vertices are edge ends
// (edge, end); simplices come from cell corners. not_simplicial is set when a
// corner has repeated vertices or two corners span the same vertex set.
struct VertexLink {
    std::vector<std::pair<int, int>> vertices;
    std::vector<std::vector<int>> simplices; // sorted link-vertex indices, deduplicated
    bool not_simplicial = false;
};

VertexLink vertex_link(const CubeComplex& C, int v);

// Nonpositive curvature: every vertex link is a flag simplicial complex.
bool is_npc(const CubeComplex& C);

// Flat check: NPC, connected, and every vertex link is the boundary of the
// dim-dimensional cross-polytope.
bool is_flat(const CubeComplex& C);

long long euler_characteristic(const CubeComplex& C);

bool is_connected(const CubeComplex& C);

// Every cell is a face of a top-dimensional cell.
bool is_pure(const CubeComplex& C);

// The full face complex of a single n-cube, with its natural folding.
CubeComplex single_cube_complex(int n);

// JSON v1 round-trip. Serialization uses global cell ids (per-dimension
// offsets); parse failures throw precondition_error.
std::string cube_complex_to_json(const CubeComplex& C);
CubeComplex cube_complex_from_json(const std::string& text);

// FNV-1a hash of the canonical serialization.
uint64_t cube_complex_hash(const CubeComplex& C);

} // namespace hyperb
