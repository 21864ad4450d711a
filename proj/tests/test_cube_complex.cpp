#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperb/bieberbach.hpp"
#include "hyperb/cube_complex.hpp"
#include "hyperb/errors.hpp"
#include "fixtures.hpp"

using namespace hyperb;

namespace {

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST_CASE("single cube complexes") {
    for (int n = 0; n <= 4; ++n) {
        const auto C = single_cube_complex(n);
        CHECK(C.dim == n);
        for (int k = 0; k <= n; ++k)
            CHECK((long long)C.counts[k] == binom(n, k) * (1ll << (n - k)));
        CHECK_NOTHROW(verify(C));
        REQUIRE(C.folding.has_value());
        CHECK(!folding_violation(C, *C.folding).has_value());
        CHECK(euler_characteristic(C) == 1);
        CHECK(is_connected(C));
        CHECK(is_pure(C));
        CHECK(is_npc(C));
        if (n >= 1) CHECK(!is_flat(C)); // boundary corners have simplex links
    }
}

TEST_CASE("verify accepts the hand-built fixtures") {
    CHECK_NOTHROW(verify(fixtures::corner_fixture()));
    CHECK_NOTHROW(verify(fixtures::pillow_fixture()));
    CHECK_NOTHROW(verify(fixtures::disjoint_squares_fixture()));
    CHECK_NOTHROW(verify(fixtures::tjoint_fixture()));
    CHECK_NOTHROW(verify(fixtures::small_circle_fixture()));
    CHECK_NOTHROW(verify(fixtures::two_edge_circle_fixture()));
}

TEST_CASE("verify rejects structural damage") {
    auto C = fixtures::pillow_fixture();
    C.facets[2][1][3].cell = 0; // top edge swapped: the two descents disagree
    CHECK_THROWS_AS(verify(C), verification_error);

    auto D = fixtures::two_edge_circle_fixture();
    D.facets[1][0][1].cell = 7; // out of range
    CHECK_THROWS_AS(verify(D), verification_error);

    auto E = single_cube_complex(2);
    E.folding->faces[0][0].fixed_side ^= 1u;
    CHECK_THROWS_AS(verify(E), verification_error);
    CHECK_THROWS_AS((void)folding(E), verification_error);
}

TEST_CASE("induced face bookkeeping") {
    CellFace parent;
    parent.axis_image = {0, 1, 2};
    const auto f1 = induced_face(parent, 1, 1, 0);
    CHECK(f1.axis_image == std::vector<int>{0, 2});
    CHECK(f1.axis_flip == 0);
    CHECK(f1.fixed_side == 0b010u);

    CellFace flipped;
    flipped.axis_image = {0, 2};
    flipped.axis_flip = 0b01u;  // model axis 0 reversed
    flipped.fixed_side = 0b010u;
    const auto f2 = induced_face(flipped, 0, 1, 0);
    CHECK(f2.axis_image == std::vector<int>{2});
    CHECK(f2.axis_flip == 0);
    CHECK(f2.fixed_side == 0b010u); // side 1 through the reversed axis lands at 0

    const auto f3 = induced_face(flipped, 0, 0, 0b1u);
    CHECK(f3.axis_image == std::vector<int>{2});
    CHECK(f3.axis_flip == 0b1u); // record flip carries onto the surviving axis
    CHECK(f3.fixed_side == 0b011u);
}

TEST_CASE("folding search outcomes") {
    CHECK(!folding(fixtures::small_circle_fixture()).has_value());
    CHECK(folding(fixtures::two_edge_circle_fixture()).has_value());
    // the corner forces three distinct model directions onto two axes
    CHECK(!folding(fixtures::corner_fixture()).has_value());
    CHECK(folding(fixtures::pillow_fixture()).has_value());
    CHECK(folding(fixtures::tjoint_fixture()).has_value());

    const auto D = fixtures::disjoint_squares_fixture();
    const auto F = folding(D);
    REQUIRE(F.has_value());
    CHECK(!folding_violation(D, *F).has_value());
    CHECK(!is_connected(D));
    CHECK(euler_characteristic(D) == 2);

    auto nonpure = fixtures::two_edge_circle_fixture();
    nonpure.counts[0] += 1; // isolated vertex
    nonpure.facets[0].push_back({});
    CHECK_THROWS_AS((void)folding(nonpure), precondition_error);
}

TEST_CASE("folding_violation pinpoints a corrupted label") {
    const auto C = single_cube_complex(2);
    auto F = *C.folding;
    F.faces[1][0].axis_flip ^= 1u;
    CHECK(folding_violation(C, F).has_value());
}

TEST_CASE("curvature and flatness flags") {
    CHECK(!is_npc(fixtures::corner_fixture()));  // empty triangle in the corner link
    CHECK(!is_npc(fixtures::pillow_fixture()));  // doubled corner simplices
    CHECK(is_npc(fixtures::disjoint_squares_fixture()));
    CHECK(is_npc(fixtures::tjoint_fixture()));
    CHECK(!is_flat(fixtures::tjoint_fixture()));
    // circles are flat regardless of foldability
    CHECK(is_flat(fixtures::small_circle_fixture()));
    CHECK(is_flat(fixtures::two_edge_circle_fixture()));
    CHECK(is_flat(quotient_cube_complex(hat_torus_group(2)).complex));
    CHECK(is_flat(quotient_cube_complex(torus_group(3)).complex));
}

TEST_CASE("vertex links") {
    const auto link = vertex_link(fixtures::corner_fixture(), 0);
    CHECK(!link.not_simplicial);
    CHECK(link.vertices.size() == 3);  // ends of edges O-X, O-Y, O-Z
    int edges = 0;
    for (const auto& s : link.simplices) edges += s.size() == 2 ? 1 : 0;
    CHECK(edges == 3); // the empty triangle
    CHECK(vertex_link(fixtures::pillow_fixture(), 0).not_simplicial);
}

TEST_CASE("corner resolution") {
    const auto C = fixtures::corner_fixture();
    CHECK(corner_vertex(C, 2, 0, 0b00u) == 0);
    CHECK(corner_vertex(C, 2, 0, 0b01u) == 1);
    CHECK(corner_vertex(C, 2, 0, 0b10u) == 2);
    CHECK(corner_vertex(C, 2, 0, 0b11u) == 4);
    CHECK(corner_edge_end(C, 2, 0, 0b00u, 0) == std::pair<int, int>{0, 0});
    CHECK(corner_edge_end(C, 2, 0, 0b11u, 1) == std::pair<int, int>{3, 1});
}

TEST_CASE("facet incidences") {
    const auto inc = facet_incidences(fixtures::tjoint_fixture(), 2);
    CHECK(inc[0].size() == 3); // the spine edge carries all three squares
    for (const auto& [cell, slot] : inc[0]) CHECK(slot == 2);
    const auto C = single_cube_complex(2);
    const auto inc1 = facet_incidences(C, 1);
    for (const auto& node : inc1) CHECK(node.size() >= 1);
}

TEST_CASE("JSON round trips are lossless and deterministic") {
    const CubeComplex cases[] = {single_cube_complex(2), single_cube_complex(3),
                                 quotient_cube_complex(normalize_even(lee_szczarba_group(2))).complex,
                                 quotient_cube_complex(hat_torus_group(3)).complex,
                                 fixtures::tjoint_fixture()};
    for (const auto& C : cases) {
        const std::string text = cube_complex_to_json(C);
        CHECK(cube_complex_to_json(C) == text); // byte identical on repeat
        const auto back = cube_complex_from_json(text);
        CHECK(back == C);
        CHECK(cube_complex_to_json(back) == text);
        CHECK(cube_complex_hash(back) == cube_complex_hash(C));
    }
}

TEST_CASE("canonical hash is pinned") {
    CHECK(cube_complex_hash(single_cube_complex(2)) == 10594000635811300985ull);
    CHECK(cube_complex_hash(single_cube_complex(3)) == 15713662747002030427ull);
}

TEST_CASE("JSON parse failures") {
    CHECK_THROWS_AS((void)cube_complex_from_json(fixtures::truncated_json()), precondition_error);
    CHECK_THROWS_AS((void)cube_complex_from_json("[1,2,3]"), precondition_error);
    CHECK_THROWS_AS((void)cube_complex_from_json(R"({"version": 2, "dim": 0, "cells": [1]})"),
                    precondition_error);
    CHECK_THROWS_AS(
        (void)cube_complex_from_json(R"({"version": 1, "dim": 1, "cells": [2]})"),
        precondition_error); // cells must list dim+1 counts
    const std::string base = R"({"version": 1, "dim": 1, "cells": [2, 1], "facets": )";
    CHECK_THROWS_AS((void)cube_complex_from_json(base + "[[0, 0, 1]]}"),
                    precondition_error); // vertex listed with a facet
    CHECK_THROWS_AS((void)cube_complex_from_json(base + "[[2, 0, 0], [2, 0, 1]]}"),
                    precondition_error); // duplicate slot
    CHECK_THROWS_AS((void)cube_complex_from_json(base + "[[2, 5, 0]]}"),
                    precondition_error); // slot out of range
    CHECK_THROWS_AS((void)cube_complex_from_json(base + "[[2, 0, 9]]}"),
                    precondition_error); // facet id out of range
    CHECK_THROWS_AS((void)cube_complex_from_json(base + "[[2, 0]]}"),
                    precondition_error); // short row
    CHECK_THROWS_AS(
        (void)cube_complex_from_json(
            R"({"version": 1, "dim": 0, "cells": [2], "folding": {"axis_image": [[]], "axis_flip": [0], "fixed_side": [0]}})"),
        precondition_error); // folding arrays must cover every cell
}

TEST_CASE("a parsed complex can still fail verification") {
    const auto C = cube_complex_from_json(fixtures::broken_boundary_json());
    CHECK_THROWS_AS(verify(C), verification_error);
}
