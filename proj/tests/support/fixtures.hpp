#pragma once

// Hand-built cube complexes and broken JSON inputs shared across tests.

#include <string>

#include "hyperb/cube_complex.hpp"

namespace fixtures {

inline hyperb::CubeComplex empty_shell(int dim, std::vector<int> counts) {
    hyperb::CubeComplex C;
    C.dim = dim;
    C.counts = std::move(counts);
    C.facets.resize(dim + 1);
    for (int k = 0; k <= dim; ++k)
        C.facets[k].assign(C.counts[k], std::vector<hyperb::FacetRecord>(2 * k));
    return C;
}

// Three squares spanning the corner of a cube with no 3-cell filling it.
// The link of the corner vertex is an empty triangle, so the complex is
// simplicial-linked but not flag, hence not NPC.
//
// Vertices: 0=O 1=X 2=Y 3=Z 4=XY 5=YZ 6=XZ.
// Edges (tail->head): 0:O-X 1:O-Y 2:O-Z 3:X-XY 4:Y-XY 5:Y-YZ 6:Z-YZ 7:X-XZ 8:Z-XZ.
inline hyperb::CubeComplex corner_fixture() {
    auto C = empty_shell(2, {7, 9, 3});
    const int tails[9] = {0, 0, 0, 1, 2, 2, 3, 1, 3};
    const int heads[9] = {1, 2, 3, 4, 4, 5, 5, 6, 6};
    for (int e = 0; e < 9; ++e) {
        C.facets[1][e][0] = {tails[e], 0};
        C.facets[1][e][1] = {heads[e], 0};
    }
    const auto square = [&](int s, int left, int right, int bottom, int top) {
        C.facets[2][s][0] = {left, 0};
        C.facets[2][s][1] = {right, 0};
        C.facets[2][s][2] = {bottom, 0};
        C.facets[2][s][3] = {top, 0};
    };
    square(0, 1, 3, 0, 4); // OXY: axes X,Y
    square(1, 2, 5, 1, 6); // OYZ: axes Y,Z
    square(2, 2, 7, 0, 8); // OXZ: axes X,Z
    return C;
}

// Two squares glued along the same four edges (a pillowcase). Links have
// repeated corner simplices on the same vertex pair, so they fail to be
// simplicial complexes.
inline hyperb::CubeComplex pillow_fixture() {
    auto C = empty_shell(2, {4, 4, 2});
    const int tails[4] = {0, 2, 0, 1};
    const int heads[4] = {1, 3, 2, 3};
    for (int e = 0; e < 4; ++e) {
        C.facets[1][e][0] = {tails[e], 0};
        C.facets[1][e][1] = {heads[e], 0};
    }
    for (int s = 0; s < 2; ++s) {
        C.facets[2][s][0] = {2, 0};
        C.facets[2][s][1] = {3, 0};
        C.facets[2][s][2] = {0, 0};
        C.facets[2][s][3] = {1, 0};
    }
    return C;
}

// Two disjoint unit squares; connectivity and the cross-component folding
// reconciliation have to handle it.
inline hyperb::CubeComplex disjoint_squares_fixture() {
    auto C = empty_shell(2, {8, 8, 2});
    for (int s = 0; s < 2; ++s) {
        const int v = 4 * s, e = 4 * s;
        C.facets[1][e + 0][0] = {v + 0, 0};
        C.facets[1][e + 0][1] = {v + 1, 0};
        C.facets[1][e + 1][0] = {v + 2, 0};
        C.facets[1][e + 1][1] = {v + 3, 0};
        C.facets[1][e + 2][0] = {v + 0, 0};
        C.facets[1][e + 2][1] = {v + 2, 0};
        C.facets[1][e + 3][0] = {v + 1, 0};
        C.facets[1][e + 3][1] = {v + 3, 0};
        C.facets[2][s][0] = {e + 2, 0};
        C.facets[2][s][1] = {e + 3, 0};
        C.facets[2][s][2] = {e + 0, 0};
        C.facets[2][s][3] = {e + 1, 0};
    }
    return C;
}

// Three squares sharing one edge (a T-joint); foldable, but no facet may be
// shared by more than two top cells when hyperbolizing.
inline hyperb::CubeComplex tjoint_fixture() {
    auto C = empty_shell(2, {8, 10, 3});
    // Edge 0 is the shared spine from vertex 0 to vertex 1. Square s uses
    // spine + its own three edges through vertices 2s+2, 2s+3.
    C.facets[1][0][0] = {0, 0};
    C.facets[1][0][1] = {1, 0};
    for (int s = 0; s < 3; ++s) {
        const int a = 2 * s + 2, b = 2 * s + 3, e = 3 * s + 1;
        C.facets[1][e + 0][0] = {a, 0}; // top edge a-b
        C.facets[1][e + 0][1] = {b, 0};
        C.facets[1][e + 1][0] = {0, 0}; // left edge 0-a
        C.facets[1][e + 1][1] = {a, 0};
        C.facets[1][e + 2][0] = {1, 0}; // right edge 1-b
        C.facets[1][e + 2][1] = {b, 0};
        C.facets[2][s][0] = {e + 1, 0};
        C.facets[2][s][1] = {e + 2, 0};
        C.facets[2][s][2] = {0, 0};
        C.facets[2][s][3] = {e + 0, 0};
    }
    return C;
}

// A circle made of one edge glued to itself at a single vertex; the two
// facet slots hit the same cell, which defeats any folding.
inline hyperb::CubeComplex small_circle_fixture() {
    auto C = empty_shell(1, {1, 1});
    C.facets[1][0][0] = {0, 0};
    C.facets[1][0][1] = {0, 0};
    return C;
}

// A circle made of two edges; foldable.
inline hyperb::CubeComplex two_edge_circle_fixture() {
    auto C = empty_shell(1, {2, 2});
    C.facets[1][0][0] = {0, 0};
    C.facets[1][0][1] = {1, 0};
    C.facets[1][1][0] = {0, 0};
    C.facets[1][1][1] = {1, 0};
    return C;
}

inline std::string truncated_json() { return "{\"version\": 1, \"dim\": 2"; }

// Structurally valid JSON whose facet rows disagree on the second descent.
inline std::string broken_boundary_json() {
    return R"({
  "version": 1,
  "dim": 2,
  "cells": [4, 4, 1],
  "facets": [
    [4, 0, 0], [4, 1, 2],
    [5, 0, 1], [5, 1, 3],
    [6, 0, 0], [6, 1, 1],
    [7, 0, 2], [7, 1, 2],
    [8, 0, 4], [8, 1, 5], [8, 2, 6], [8, 3, 7]
  ],
  "flags": {}
})";
}

} // namespace fixtures
