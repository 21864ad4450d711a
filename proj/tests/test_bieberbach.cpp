#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyperb/bieberbach.hpp"
#include "hyperb/errors.hpp"

using namespace hyperb;

namespace {

AffineIsometry random_isometry(std::mt19937& rng, int n) {
    AffineIsometry a = AffineIsometry::identity(n);
    for (int i = 0; i < n; ++i) {
        a.signs[i] = (rng() & 1) ? 1 : -1;
        a.trans[i] = Dyadic((long long)(rng() % 9) - 4, (int)(rng() % 3));
    }
    return a;
}

std::vector<Dyadic> random_point(std::mt19937& rng, int n) {
    std::vector<Dyadic> x(n);
    for (int i = 0; i < n; ++i) x[i] = Dyadic((long long)(rng() % 17) - 8, (int)(rng() % 3));
    return x;
}

DiagonalBieberbachGroup klein_group() {
    DiagonalBieberbachGroup g;
    g.n = 2;
    g.generators.push_back(AffineIsometry::translation({Dyadic(4), Dyadic(0)}));
    AffineIsometry glide = AffineIsometry::identity(2);
    glide.signs[0] = -1;
    glide.trans[1] = Dyadic(2);
    g.generators.push_back(glide);
    return g;
}

} // namespace

TEST_CASE("dyadic normalization and arithmetic") {
    CHECK(Dyadic(4, 2) == Dyadic(1));
    CHECK(Dyadic(6, 1) == Dyadic(3));
    CHECK(Dyadic(0, 7) == Dyadic(0));
    CHECK(Dyadic(3, 1).exp2 == 1);
    CHECK(Dyadic(1, 1) + Dyadic(1, 1) == Dyadic(1));
    CHECK(Dyadic(1, 1) - Dyadic(3, 2) == Dyadic(-1, 2));
    CHECK(-Dyadic(5, 3) == Dyadic(-5, 3));
    CHECK(scale_pow2(Dyadic(1, 2), 2) == Dyadic(1));
    CHECK(scale_pow2(Dyadic(3, 1), 3) == Dyadic(12));
    CHECK(to_string(Dyadic(-7)) == "-7");
    CHECK(to_string(Dyadic(3, 2)) == "3/4");
    CHECK(Dyadic(2).integer_value() == 2);
    CHECK_THROWS_AS((void)Dyadic(1, 1).integer_value(), precondition_error);
}

TEST_CASE("isometry group laws on seeded samples") {
    std::mt19937 rng(17u);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + (int)(rng() % 5);
        const auto a = random_isometry(rng, n);
        const auto b = random_isometry(rng, n);
        const auto c = random_isometry(rng, n);
        const auto x = random_point(rng, n);
        CHECK(compose(a, inverse(a)) == AffineIsometry::identity(n));
        CHECK(compose(inverse(a), a) == AffineIsometry::identity(n));
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        CHECK(hyperb::apply(compose(a, b), x) == hyperb::apply(a, hyperb::apply(b, x)));
        CHECK(is_orientation_preserving(compose(a, a)));
    }
    CHECK(is_translation(AffineIsometry::translation({Dyadic(1), Dyadic(2)})));
    CHECK(!is_translation(klein_group().generators[1]));
    CHECK_THROWS_AS((void)compose(AffineIsometry::identity(2), AffineIsometry::identity(3)),
                    precondition_error);
}

TEST_CASE("lee_szczarba generators") {
    const auto g = lee_szczarba_group(4);
    REQUIRE(g.n == 4);
    REQUIRE(g.generators.size() == 4);
    CHECK(g.generators[0] == AffineIsometry::translation(
                                 {Dyadic(1), Dyadic(0), Dyadic(0), Dyadic(0)}));
    for (int i = 1; i < 4; ++i) {
        const auto& a = g.generators[i];
        for (int c = 0; c < 4; ++c) CHECK(a.signs[c] == (c == i - 1 ? -1 : 1));
        for (int c = 0; c < 4; ++c) CHECK(a.trans[c] == (c == i ? Dyadic(1, 1) : Dyadic(0)));
    }
    CHECK_THROWS_AS((void)lee_szczarba_group(1), std::invalid_argument);
    CHECK_THROWS_AS((void)lee_szczarba_group(21), cap_exceeded);
}

TEST_CASE("orientability and sign images") {
    for (int n = 2; n <= 6; ++n) {
        CHECK(!group_is_orientable(lee_szczarba_group(n)));
        CHECK(group_is_orientable(torus_group(n)));
        CHECK(group_is_orientable(hat_torus_group(n)));
        CHECK(sign_image(lee_szczarba_group(n)).size() == (std::size_t)1 << (n - 1));
        CHECK(sign_image(torus_group(n)) == std::vector<uint32_t>{0});
        const auto cov = orientable_double_cover(lee_szczarba_group(n));
        CHECK(group_is_orientable(cov));
        CHECK(sign_image(cov).size() == (std::size_t)1 << (n - 2));
    }
    CHECK_THROWS_AS((void)orientable_double_cover(torus_group(3)), precondition_error);
}

TEST_CASE("normalize_even scales to even integer translations") {
    const auto g = normalize_even(lee_szczarba_group(3));
    CHECK(g.generators[0].trans[0] == Dyadic(4));
    CHECK(g.generators[1].trans[1] == Dyadic(2));
    // already-even groups are fixed
    CHECK(normalize_even(g).generators == g.generators);
    CHECK(normalize_even(hat_torus_group(3)).generators == hat_torus_group(3).generators);
    // the torus lattice gets doubled
    CHECK(normalize_even(torus_group(3)).generators == hat_torus_group(3).generators);
}

TEST_CASE("translation lattices and covolume") {
    for (int n = 2; n <= 5; ++n) {
        CHECK(lattice_determinant(translation_lattice(lee_szczarba_group(n))) == 1);
        CHECK(lattice_determinant(translation_lattice(normalize_even(lee_szczarba_group(n)))) ==
              (1ll << (2 * n)));
        CHECK(lattice_determinant(translation_lattice(torus_group(n))) == 1);
        CHECK(lattice_determinant(translation_lattice(hat_torus_group(n))) == (1ll << n));
        CHECK(covolume(lee_szczarba_group(n)) == Dyadic(1, n - 1));
        CHECK(covolume(normalize_even(lee_szczarba_group(n))) == Dyadic(1ll << (n + 1)));
        CHECK(covolume(torus_group(n)) == Dyadic(1));
    }
    const auto basis = translation_lattice(hat_torus_group(3));
    CHECK(lattice_contains(basis, {2, -4, 6}));
    CHECK(!lattice_contains(basis, {2, 1, 0}));

    DiagonalBieberbachGroup frac;
    frac.n = 2;
    frac.generators.push_back(AffineIsometry::translation({Dyadic(1, 1), Dyadic(0)}));
    frac.generators.push_back(AffineIsometry::translation({Dyadic(0), Dyadic(1)}));
    CHECK_THROWS_AS((void)translation_lattice(frac), precondition_error);

    DiagonalBieberbachGroup thin;
    thin.n = 2;
    thin.generators.push_back(AffineIsometry::translation({Dyadic(1), Dyadic(0)}));
    CHECK_THROWS_AS((void)translation_lattice(thin), precondition_error);
}

TEST_CASE("quotient complexes: tori") {
    for (int n = 1; n <= 4; ++n) {
        // the quotient box side is lcm(4, lattice steps)
        const auto q = quotient_cube_complex(torus_group(n));
        CHECK(q.box_side == 4);
        CHECK(q.coset_group.size() == (std::size_t)1 << (2 * n));
        for (int k = 0; k <= n; ++k) {
            long long expect = 1; // C(n,k) cells of each dimension
            for (int i = 1; i <= k; ++i) expect = expect * (n - k + i) / i;
            CHECK((long long)q.complex.counts[k] == expect);
        }
        CHECK(euler_characteristic(q.complex) == 0);
        CHECK(!folding(q.complex).has_value());

        const auto qh = quotient_cube_complex(hat_torus_group(n));
        CHECK(qh.box_side == 4);
        CHECK(qh.coset_group.size() == (std::size_t)1 << n);
        CHECK((long long)qh.complex.counts[0] == 1ll << n);
        CHECK(folding(qh.complex).has_value());
        CHECK(is_flat(qh.complex));
    }
}

TEST_CASE("quotient complexes: Lee-Szczarba") {
    for (int n = 2; n <= 5; ++n) {
        const auto q = quotient_cube_complex(normalize_even(lee_szczarba_group(n)));
        CHECK(q.box_side == 4);
        CHECK(q.coset_group.size() == (std::size_t)1 << (n - 1));
        CHECK((long long)q.complex.counts[0] == 1ll << (n + 1));
        CHECK((long long)q.complex.counts[n] == 1ll << (n + 1));
        CHECK(euler_characteristic(q.complex) == 0);
        CHECK(folding(q.complex).has_value());
        CHECK(is_npc(q.complex));
        CHECK(is_flat(q.complex));
        for (const auto& a : q.coset_group) CHECK(a.dim() == n);
    }
}

TEST_CASE("quotient preconditions") {
    // raw half-integer translations
    CHECK_THROWS_AS((void)quotient_cube_complex(lee_szczarba_group(3)), precondition_error);
    // point reflection has a fixed point
    DiagonalBieberbachGroup refl;
    refl.n = 1;
    AffineIsometry r = AffineIsometry::identity(1);
    r.signs[0] = -1;
    refl.generators.push_back(AffineIsometry::translation({Dyadic(2)}));
    refl.generators.push_back(r);
    CHECK_THROWS_AS((void)quotient_cube_complex(refl), precondition_error);
    CHECK_THROWS_AS((void)quotient_cube_complex(torus_group(13)), cap_exceeded);
}

TEST_CASE("box cell codec round trips") {
    std::mt19937 rng(5u);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + (int)(rng() % 8);
        std::vector<int> v(n);
        for (int& c : v) c = (int)(rng() % 16);
        const uint32_t axes = rng() & ((1u << n) - 1);
        const auto cell = decode_cell(encode_cell(v, axes, n), n);
        CHECK(cell.v == v);
        CHECK(cell.axes == axes);
    }
}

TEST_CASE("quotient ids are orbit invariants") {
    const auto q = quotient_cube_complex(normalize_even(lee_szczarba_group(2)));
    const int n = 2, L = q.box_side;
    std::mt19937 rng(31u);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> v(n);
        const uint32_t axes = rng() & 3u;
        for (int i = 0; i < n; ++i) {
            v[i] = (int)(rng() % L);
            if ((axes >> i) & 1 && v[i] == L - 1) v[i] = 0; // keep the cube in the box grid
        }
        const int id = quotient_cell_id(q, v, axes);
        CHECK(id >= 0);
        for (const auto& op : q.coset_group) {
            // translate the cell's base vertex through the box isometry
            std::vector<Dyadic> x(n);
            for (int i = 0; i < n; ++i) x[i] = Dyadic(v[i]);
            const auto y = hyperb::apply(op, x);
            std::vector<int> w(n);
            for (int i = 0; i < n; ++i) {
                long long c = y[i].integer_value();
                if ((axes >> i) & 1 && op.signs[i] < 0) c -= 1; // flipped cube base moves down
                w[i] = (int)(((c % L) + L) % L);
            }
            CHECK(quotient_cell_id(q, w, axes) == id);
        }
    }
}

TEST_CASE("induced automorphisms") {
    const auto q = quotient_cube_complex(hat_torus_group(2));
    const auto id_auto = induced_automorphism(q, AffineIsometry::identity(2));
    for (int k = 0; k <= 2; ++k) {
        for (std::size_t c = 0; c < id_auto.cell_map[k].size(); ++c) {
            CHECK(id_auto.cell_map[k][c] == (int)c);
            CHECK(id_auto.flips[k][c] == 0);
        }
    }
    // unit shift acts as a fixed-point-free involution on vertices
    const auto shift =
        induced_automorphism(q, AffineIsometry::translation({Dyadic(1), Dyadic(0)}));
    for (std::size_t c = 0; c < shift.cell_map[0].size(); ++c) {
        const int d = shift.cell_map[0][c];
        CHECK(d != (int)c);
        CHECK(shift.cell_map[0][d] == (int)c);
    }
    CHECK_THROWS_AS((void)induced_automorphism(q, AffineIsometry::identity(3)),
                    precondition_error);
}

TEST_CASE("orientation covers") {
    for (int n = 2; n <= 4; ++n) {
        const auto base = quotient_cube_complex(normalize_even(lee_szczarba_group(n)));
        const auto cov = cover(base, CoverSpec{true, {}});
        CHECK(cov.degree == 2);
        for (int k = 0; k <= n; ++k) {
            CHECK(cov.total.complex.counts[k] == 2 * base.complex.counts[k]);
            for (int c : cov.cell_map[k]) {
                CHECK(c >= 0);
                CHECK(c < (int)base.complex.counts[k]);
            }
        }
        CHECK(group_is_orientable(cov.total.group));
        CHECK(euler_characteristic(cov.total.complex) == 0);
    }
}

TEST_CASE("sublattice covers") {
    const auto base = quotient_cube_complex(hat_torus_group(3));
    CoverSpec spec;
    spec.sublattice = {{4, 0, 0}, {0, 2, 0}, {0, 0, 4}};
    const auto cov = cover(base, spec);
    CHECK(cov.degree == 4);
    for (int k = 0; k <= 3; ++k)
        CHECK(cov.total.complex.counts[k] == 4 * base.complex.counts[k]);
}

TEST_CASE("cover spec validation") {
    const auto base = quotient_cube_complex(hat_torus_group(2));
    CHECK_THROWS_AS((void)cover(base, CoverSpec{}), precondition_error);
    CoverSpec both;
    both.orientation_kernel = true;
    both.sublattice = {{2, 0}, {0, 2}};
    CHECK_THROWS_AS((void)cover(base, both), precondition_error);
    CHECK_THROWS_AS((void)cover(base, CoverSpec{true, {}}), precondition_error); // orientable
    CoverSpec outside;
    outside.sublattice = {{1, 0}, {0, 2}}; // e_1 is not in (2Z)^2
    CHECK_THROWS_AS((void)cover(base, outside), precondition_error);
    CoverSpec skew;
    skew.sublattice = {{2, 0, 0}, {0, 2, 0}};
    CHECK_THROWS_AS((void)cover(base, skew), precondition_error);
}
