#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperb/bieberbach.hpp"
#include "hyperb/cube_complex.hpp"

namespace hyperb {

// Symmetry of the model cube. Corner u maps to the corner v with
// v[perm[a]] = u[a] ^ bit a of flips.
struct CubeSym {
    std::vector<int> perm;
    uint32_t flips = 0;

    int dim() const { return (int)perm.size(); }
    static CubeSym identity(int n);

    bool operator==(const CubeSym&) const = default;
};

CubeSym compose(const CubeSym& a, const CubeSym& b); // a after b
CubeSym inverse(const CubeSym& s);

// Facets are numbered 2*axis + side.
int map_facet(const CubeSym& s, int facet);

// Signed permutation matrix with column a carrying +-1 in row perm[a]; the
// affine offset putting [0,1]^n back onto itself is implied by the signs.
std::vector<std::vector<int>> cube_sym_matrix(const CubeSym& s);
CubeSym cube_sym_from_matrix(const std::vector<std::vector<int>>& m);

// Hyperbolizing piece. Facets are indexed like cube facets; only connectivity
// one per facet is supported.
struct PieceModel {
    int dim = 0;
    int facet_connectivity = 1;
    bool stably_parallelizable = true;
    std::string tag = "gamma-cube";
};

struct Gluing {
    int piece_a = 0;
    int facet_a = 0;
    int piece_b = 0;
    int facet_b = 0;
    CubeSym label;

    bool operator==(const Gluing&) const = default;
};

struct HyperbolizedComplex {
    int dim = 0;
    long long piece_count = 0;
    PieceModel piece;
    uint64_t input_hash = 0;
    std::vector<Gluing> gluings;
};

// One piece per top cube of a foldable pure complex; facets shared by two top
// cubes become gluings whose label extends the facet correspondence.
HyperbolizedComplex hyperbolize(const CubeComplex& C, const PieceModel& X);

// Deck transformation acting on pieces: p goes to piece_perm[p], conjugating
// the model by labels[p].
struct PieceAction {
    std::vector<int> piece_perm;
    std::vector<CubeSym> labels;

    bool operator==(const PieceAction&) const = default;
};

PieceAction compose(const PieceAction& a, const PieceAction& b);

// Lift of an isometry normalizing the group of the quotient to an action on
// the hyperbolized pieces.
PieceAction lift_deck_action(const QuotientComplex& total, const AffineIsometry& g);

// Quotient by the group generated by free deck actions; gluings transport to
// orbit representatives.
HyperbolizedComplex quotient_pieces(const HyperbolizedComplex& H,
                                    const std::vector<PieceAction>& deck_generators);

// Covers in the piece-source chain: the quotient is covered with degree d1 by
// the torus of the smallest even box side L, which covers the half-side torus
// with degree d2 = (L/2)^n; that torus hyperbolizes into d2 * 2^n pieces.
struct DegreeChain {
    long long box_side = 0;
    long long d1 = 0;
    long long d2 = 0;
    long long to_piece_source = 0;
};

DegreeChain covering_degree_chain(const DiagonalBieberbachGroup& g);

struct Rational {
    long long num = 0;
    long long den = 1;

    bool operator==(const Rational&) const = default;
};

// Lower bound 1 / (d2 * 2^n) for the normalized systole scale of the chain.
Rational injrad_bound(long long d2, int n);

std::string hyperbolized_to_json(const HyperbolizedComplex& H);
HyperbolizedComplex hyperbolized_from_json(const std::string& text);

} // namespace hyperb
