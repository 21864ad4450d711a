#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperb {

/// Square-free monomial in x_1..x_{n-1}, encoded as a bitmask: bit i-1 <-> x_i.
using Mono = uint32_t;

/// General monomial as an exponent vector of length n-1 (index i <-> x_{i+1}).
using ExpVec = std::vector<int>;

inline int mono_degree(Mono m) { return __builtin_popcount(m); }

/// Element of F2[x_1..x_{n-1}] / I(n) on the square-free monomial basis,
/// where I(n) = (x_1^2 + x_1x_2, ..., x_{n-2}^2 + x_{n-2}x_{n-1}, x_{n-1}^2).
///
/// Support is kept sorted by (degree, bitmask value) with no duplicates;
/// coefficients live in GF(2) so membership in the support is the coefficient.
struct SquareFreePoly {
    int n = 2;
    std::vector<Mono> support;

    static SquareFreePoly zero(int n) { return {n, {}}; }
    static SquareFreePoly one(int n) { return {n, {Mono(0)}}; }
    static SquareFreePoly monomial(int n, Mono m) { return {n, {m}}; }
    /// Builds from an arbitrary (possibly unsorted, duplicated) mask list;
    /// duplicates cancel mod 2.
    static SquareFreePoly from_masks(int n, std::vector<Mono> masks);

    bool is_zero() const { return support.empty(); }
    /// Degree if homogeneous (zero counts as homogeneous of degree -1).
    std::optional<int> homogeneous_degree() const;

    bool operator==(const SquareFreePoly&) const = default;
};

/// Canonical support order: degree first, then numeric bitmask.
bool mono_less(Mono a, Mono b);

SquareFreePoly add(const SquareFreePoly& a, const SquareFreePoly& b);

/// Normal form of x_i * m in F2[x]/I(n), for square-free m. The rewriting
/// x_j^2 -> x_j x_{j+1} (j < n-1), x_{n-1}^2 -> 0 pushes a repeated variable
/// to the first free slot at or above i, so the result is a single square-free
/// monomial, or zero when the run falls off the last variable.
std::optional<Mono> mono_times_var(Mono m, int var, int n);

/// Normal form of the product of two square-free monomials (single term or zero).
std::optional<Mono> mono_product(Mono a, Mono b, int n);

/// Normal form of m^2 (single square-free term or zero, by iterating
/// mono_times_var over the variables of m).
std::optional<Mono> mono_square(Mono m, int n);

/// Reduces a polynomial given as a multiset of exponent vectors to the unique
/// square-free representative mod I(n). Deterministic strategy: always rewrite
/// the smallest variable index with exponent >= 2; terminates because the
/// potential sum(e_i * (n-i)) drops by one per rewrite.
SquareFreePoly normal_form(const std::vector<ExpVec>& monomials, int n);

/// Single-monomial version; nullopt means the monomial reduced to zero.
std::optional<Mono> normal_form_monomial(ExpVec e, int n);

SquareFreePoly multiply(const SquareFreePoly& a, const SquareFreePoly& b);

/// Frobenius square: equals multiply(a, a) but costs one slide per support
/// monomial (cross terms cancel over GF(2)).
SquareFreePoly square(const SquareFreePoly& a);

/// All square-free monomials of the given degree over x_1..x_{n-1}, in
/// canonical (numeric bitmask) order.
std::vector<Mono> degree_monomials(int n, int d);

/// True iff a lies in the ideal (I(n), L) with L = x_1+...+x_{n-1}, i.e. the
/// class of a vanishes in F2[x]/Î(n). Decided per graded piece as membership
/// of a in span{ nf(m*L) : m square-free of degree d-1 }. Requires a
/// homogeneous input.
bool vanishes_mod_L(const SquareFreePoly& a);

/// Human-readable rendering ("x1*x3 + x2", "0", "1"), canonical order.
std::string to_string(const SquareFreePoly& p);

} // namespace hyperb
