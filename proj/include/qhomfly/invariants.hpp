/// @file invariants.hpp
/// Exact colored HOMFLY invariants for the twist-knot family (including the
/// named members 5_2 and 6_1) and the Whitehead link, as closed multi-sums
/// over the coefficient families in coefficients.hpp.
///
/// Every value is produced as a RationalFn over the structural common
/// denominator (q - q^{-1})^n [n]! (squared and augmented for the Whitehead
/// link); reduce_invariant / reduce_with_clearing recover the underlying
/// Laurent polynomial exactly.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qhomfly/laurent.hpp"

namespace qhomfly {

/// Identifies a knot or link family supported by the engine.
///
/// Twist(p) is the p-fold twist construction, defined here for p >= 3;
/// Twist(3) and Twist(4) are the knots 5_2 and 6_1 respectively, but remain
/// distinct identifiers so the independently coded closed forms can be
/// cross-checked against the general construction.
struct KnotId {
    enum class Family { FigureEight, FiveTwo, SixOne, Whitehead, Twist };

    Family family = Family::FigureEight;
    /// Twist parameter; meaningful only when family == Family::Twist.
    std::int64_t twist_p = 0;

    static KnotId figure_eight() { return {Family::FigureEight, 0}; }
    static KnotId five_two() { return {Family::FiveTwo, 0}; }
    static KnotId six_one() { return {Family::SixOne, 0}; }
    static KnotId whitehead() { return {Family::Whitehead, 0}; }
    /// @throws std::domain_error unless p >= 3.
    static KnotId twist(std::int64_t p);

    bool operator==(const KnotId&) const = default;
};

/// Parses "4_1", "5_2", "6_1", "wh" (or "whitehead"), "twist:<p>".
/// @throws std::invalid_argument for anything else.
KnotId knot_from_string(const std::string& s);

/// Inverse of knot_from_string (canonical spelling).
std::string knot_name(const KnotId& k);

/// Exponent w of the framing prefactor {a^n q^{n(n-1)}}^w carried by the
/// colored invariant: 6 for 5_2, 2 for 6_1 and the Whitehead link,
/// p - 2 / p + 3 for even / odd twist parameter p.
/// @throws std::domain_error for the figure-eight knot (no symbolic form).
std::int64_t writhe_prefactor_power(const KnotId& k);

/// n-colored invariant of the knot 5_2, n >= 1:
///
///   {a^n q^{n(n-1)}}^6 sum_{i=0}^{n} sum_{j=0}^{i} sum_{k=0}^{i-j}
///     a^{-2(2n-2i+j)} q^{-2(2n^2-2n-2i^2+2i+2ij-j^2-j)}
///     alpha(n,n,i) alpha(i,i,j) alpha(i-j,i-j,k)
///     * [n-1;a]...[n-i+j+k;a] / ([n]...[n+1-i+j+k])
///
/// @throws std::domain_error unless n >= 1.
RationalFn h_52(std::int64_t n);

/// n-colored invariant of the knot 6_1, n >= 1: same sum as h_52 with the
/// outer factor replaced by alpha_mirror(n,n,i) and prefactor exponent 2.
/// @throws std::domain_error unless n >= 1.
RationalFn h_61(std::int64_t n);

/// n-colored invariant of the p-fold twist knot, p >= 3, n >= 1.
///
/// With p' = floor((p+1)/2), and (w, eps) = (p-2, -1) for even p,
/// (p+3, +1) for odd p:
///
///   {a^n q^{n(n-1)}}^w sum_{i=0}^{n} sum_{j_1,...,j_{p'} >= 0, J_{p'} <= i}
///     alpha(n,n,i)            [mirrored when eps = -1]
///     * prod_{l=1}^{p'} alpha(i-J_{l-1}, i-J_{l-1}, j_l)
///     * prod_{l=0}^{p'-1} E(n-i+J_l, i-J_l)
///     * [n-1;a]...[n-i+J_{p'};a] / ([n]...[n+1-i+J_{p'}])
///
/// where J_l = j_1 + ... + j_l (J_0 = 0) and
/// E(s,t) = a^{-2s} q^{-2s(s-1)-4st}.
///
/// @throws std::domain_error unless p >= 3 and n >= 1.
RationalFn h_twist(std::int64_t p, std::int64_t n);

/// n-colored invariant of the Whitehead link, n >= 1:
///
///   {a^n q^{n(n-1)}}^2 { sum_{i=1}^{n-1} sum_{j=0}^{i}
///         alpha(n,n,i) gamma(n-i,i,i,j) S(n,i-j) S~(n,i-j)
///     + alpha(n,n,n) S(n,n) S~(n,n)
///     + [n-1;a]...[0;a] / ([n]...[1]) }
///
/// where S(n,s) = s_coeff(n,s) from coefficients.hpp and S~ is its image
/// under invert_vars.
/// @throws std::domain_error unless n >= 1.
RationalFn h_whitehead(std::int64_t n);

/// Dispatches to the closed form for the given knot.
/// @throws std::domain_error for FigureEight (its colored invariant is only
/// available through the dedicated sine-product evaluator) and for n < 1.
RationalFn colored_invariant(const KnotId& k, std::int64_t n);

/// Exact polynomial reduction of an invariant value: the numerator divided
/// by the denominator in Z[a^{±1}, q^{±1}].
/// @throws internal_error if the division leaves a remainder (for the knot
/// families above the reduction always exists).
BiLaurent reduce_invariant(const RationalFn& v);

/// Reduction allowing a residual q-only clearing factor, for values (such as
/// the colored Whitehead invariants) that are not polynomial:
/// v == reduced / clearing with clearing a normalized polynomial in q
/// (integer primitive, lowest exponent 0, positive leading coefficient).
/// When v is already polynomial, clearing == 1 and reduced is the polynomial.
struct Reduction {
    BiLaurent reduced;
    BiLaurent clearing;
};
Reduction reduce_with_clearing(const RationalFn& v);

/// Specialization a = q^2 of a reduced invariant (the classical sl_2 /
/// Jones direction). Result is a polynomial in q alone.
BiLaurent jones_specialize(const BiLaurent& p);

/// A fully assembled invariant: family, color, exact rational value, and the
/// reduced polynomial with its clearing factor (clearing == 1 for knots).
struct ColoredInvariant {
    KnotId knot;
    std::int64_t color = 0;
    RationalFn value;
    std::optional<BiLaurent> reduced;
    BiLaurent clearing = BiLaurent::one();
};

/// colored_invariant + reduce_with_clearing in one call.
ColoredInvariant compute_invariant(const KnotId& k, std::int64_t n);

namespace detail {

/// Core of h_twist without the public p >= 3 precondition; p = 2 yields the
/// figure-eight column and is used by the test-suite as a cross-check
/// against the sine-product evaluator. Requires p >= 2, n >= 1.
RationalFn h_twist_any(std::int64_t p, std::int64_t n);

}  // namespace detail

}  // namespace qhomfly
