#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperb/cube_complex.hpp"

namespace hyperb {

// Exact dyadic rational num / 2^exp2 with exp2 >= 0 minimal.
struct Dyadic {
    long long num = 0;
    int exp2 = 0;

    Dyadic() = default;
    Dyadic(long long n, int e = 0);

    bool is_integer() const { return exp2 == 0; }
    long long integer_value() const;

    bool operator==(const Dyadic&) const = default;
};

Dyadic operator+(const Dyadic& a, const Dyadic& b);
Dyadic operator-(const Dyadic& a);
Dyadic operator-(const Dyadic& a, const Dyadic& b);
Dyadic scale_pow2(const Dyadic& a, int k); // a * 2^k, k >= 0
std::string to_string(const Dyadic& a);

// Isometry x -> diag(signs) * x + trans with diagonal linear part.
struct AffineIsometry {
    std::vector<int8_t> signs;
    std::vector<Dyadic> trans;

    int dim() const { return (int)signs.size(); }
    static AffineIsometry identity(int n);
    static AffineIsometry translation(std::vector<Dyadic> t);

    bool operator==(const AffineIsometry&) const = default;
};

AffineIsometry compose(const AffineIsometry& a, const AffineIsometry& b); // a after b
AffineIsometry inverse(const AffineIsometry& a);
std::vector<Dyadic> apply(const AffineIsometry& a, const std::vector<Dyadic>& x);
bool is_translation(const AffineIsometry& a);
bool is_orientation_preserving(const AffineIsometry& a);

struct DiagonalBieberbachGroup {
    int n = 0;
    std::vector<AffineIsometry> generators;
};

// gamma_0 = e_1 and gamma_i = (flip of coordinate i, e_{i+1}/2), i < n.
DiagonalBieberbachGroup lee_szczarba_group(int n);

// Integer translation lattice Z^n resp. (2Z)^n.
DiagonalBieberbachGroup torus_group(int n);
DiagonalBieberbachGroup hat_torus_group(int n);

// Homothety by the smallest power of two making every generator translation
// an even integer.
DiagonalBieberbachGroup normalize_even(const DiagonalBieberbachGroup& g);

bool group_is_orientable(const DiagonalBieberbachGroup& g);

// Index-two orientation kernel, generated via a Schreier transversal.
DiagonalBieberbachGroup orientable_double_cover(const DiagonalBieberbachGroup& g);

// Sign masks of the holonomy image, mask bit i set when coordinate i flips.
std::vector<uint32_t> sign_image(const DiagonalBieberbachGroup& g);

// Column Hermite basis (lower triangular, positive diagonal) of the pure
// translation subgroup. Requires integral translations and full rank.
std::vector<std::vector<long long>> translation_lattice(const DiagonalBieberbachGroup& g);

long long lattice_determinant(const std::vector<std::vector<long long>>& basis);

// Is w an integer combination of the basis columns?
bool lattice_contains(const std::vector<std::vector<long long>>& basis,
                      const std::vector<long long>& w);

// det(translation lattice) / |holonomy|.
Dyadic covolume(const DiagonalBieberbachGroup& g);

// Quotient of the cubulated torus [0,L)^n by the coset group Q = G/(LZ)^n.
// reps[k] holds the packed canonical cell of every k-cell id; coset_group
// lists Q as box isometries with translations reduced mod L.
struct QuotientComplex {
    CubeComplex complex;
    DiagonalBieberbachGroup group;
    int box_side = 0;
    std::vector<std::vector<uint64_t>> reps;
    std::vector<AffineIsometry> coset_group;
};

QuotientComplex quotient_cube_complex(const DiagonalBieberbachGroup& g);

// Packed box cell: 4 bits per coordinate, then the axis mask.
uint64_t encode_cell(const std::vector<int>& v, uint32_t axes, int n);
struct BoxCell {
    std::vector<int> v;
    uint32_t axes = 0;
};
BoxCell decode_cell(uint64_t code, int n);

// Cell id of the orbit of a box cell, per dimension popcount(axes).
int quotient_cell_id(const QuotientComplex& q, const std::vector<int>& v, uint32_t axes);

// Automorphism of the quotient induced by an isometry normalizing the group.
// flips[k][c] records the orientation bits over the cell's axes in sorted
// order, for the map carrying cell c to cell_map[k][c].
struct CellAutomorphism {
    std::vector<std::vector<int>> cell_map;
    std::vector<std::vector<uint32_t>> flips;
};

CellAutomorphism induced_automorphism(const QuotientComplex& q, const AffineIsometry& g);

struct CoverSpec {
    bool orientation_kernel = false;
    std::vector<std::vector<long long>> sublattice; // column vectors, used when nonempty
};

struct CoveredComplex {
    QuotientComplex total;
    long long degree = 0;
    std::vector<std::vector<int>> cell_map; // total cell -> base cell, per dimension
};

CoveredComplex cover(const QuotientComplex& base, const CoverSpec& spec);

} // namespace hyperb
