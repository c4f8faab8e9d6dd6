/// @file numeric_eval.hpp
/// @brief High-precision complex evaluation of the colored invariant sums at
///        the root-of-unity family q = exp(i pi / (M+N-2)), a = q^M, with
///        rational M, exact zero-factor detection, and the figure-eight
///        sine-product formula.
///
/// The evaluation point makes the framed integer [N-2;a] vanish exactly:
/// sin((M+N-2) theta) = sin(pi) = 0.  Zero factors are detected on the
/// integer data (divisibility), never by floating comparison, and any summand
/// containing one is skipped without floating work.  Surviving summands are
/// evaluated from precomputed quantum-integer tables and prefix products,
/// then combined by a fixed-shape balanced reduction tree so results are
/// bit-identical for every thread count.
#pragma once

#include <cstdint>

#include "qhomfly/invariants.hpp"
#include "qhomfly/laurent.hpp"
#include "qhomfly/mpreal.hpp"

namespace qhomfly {

/// Default working precision in bits for color N evaluations.
mpfr_prec_t default_precision(std::int64_t N);

/// One evaluation point of the root-of-unity family.
///
/// With M = M_num/M_den (reduced, M_den > 0) and D = M_num + (N-2) M_den,
/// the angle is theta = pi M_den / D, q = e^{i theta}, a = e^{i M theta}.
/// `conjugate` evaluates at the complex-conjugate point (q, a replaced by
/// their inverses); all formula coefficients are real, so this conjugates
/// every result.
struct EvalPoint {
    std::int64_t M_num = 2;
    std::int64_t M_den = 1;
    std::int64_t N = 2;
    mpfr_prec_t precision = 256;
    bool conjugate = false;
};

/// Validates and normalizes: M_den > 0 after sign transfer, fraction reduced,
/// N >= 2, and M + N - 2 > 0.  Throws std::invalid_argument otherwise.
EvalPoint make_eval_point(std::int64_t M_num, std::int64_t M_den,
                          std::int64_t N, mpfr_prec_t precision);

/// Quantum integer [k] at the point: sin(k theta)/sin(theta).
Real eval_qint(std::int64_t k, const EvalPoint& pt);

/// Framed quantum integer [k;a] at the point: sin((M+k) theta)/sin(theta).
/// When the value is an exact zero (see eval_framed_is_zero) the returned
/// Real is exact +0, not a floating residue.
Real eval_framed(std::int64_t k, const EvalPoint& pt);

/// Exact-zero flag for [k;a]: true iff (M_num + k M_den) is divisible by
/// D = M_num + (N-2) M_den.  In particular k = N-2 is always flagged.
bool eval_framed_is_zero(std::int64_t k, const EvalPoint& pt);

/// The figure-eight sine-product sum
///     sum_{i=0}^{N-1} prod_{t=0}^{i-1} {2 sin((M-1+t) theta)}^2
/// with theta = pi/(M+N-2); real and >= 1 (the i = 0 term is the empty
/// product 1).
Real fig8_sine(const EvalPoint& pt);

/// Result of one invariant evaluation.
struct EvalResult {
    Complex value;
    mpfr_prec_t precision_used = 0;
    std::int64_t terms_evaluated = 0;
    std::int64_t terms_skipped_zero = 0;
};

/// Evaluates the color-(N-1) invariant of `knot` at the point, summand by
/// summand, at the point's fixed precision.  FigureEight delegates to
/// fig8_sine.  Parallel summand evaluation with any `threads` count yields
/// bit-identical results.  Throws numeric_error when the point degenerates
/// (a vanishing quantum-integer denominator, e.g. M = 1) and
/// std::domain_error for N < 2 or unusable knots.
EvalResult eval_invariant(const KnotId& knot, const EvalPoint& pt,
                          int threads = 1);

/// Evaluation with automatic precision: starts at pinned_bits if nonzero
/// (single pass), otherwise at default_precision(N) and doubles until two
/// successive precisions agree to relative 1e-12.  Throws numeric_error on
/// escalation past 2^22 bits.
EvalResult eval_invariant_auto(const KnotId& knot, std::int64_t M_num,
                               std::int64_t M_den, std::int64_t N,
                               mpfr_prec_t pinned_bits = 0, int threads = 1);

/// Number of summands the root-of-unity evaluation of `knot` at color N-1
/// survives with (the zero-skipping lattice size).  Used for size guards;
/// exact for the triple and twist families, an upper-bound style count for
/// the Whitehead sum.  Throws std::invalid_argument if the count overflows.
std::int64_t eval_survivor_count(const KnotId& knot, std::int64_t N);

/// Value of a Laurent polynomial at arbitrary nonzero complex (a, q).
Complex eval_poly(const BiLaurent& p, const Complex& a, const Complex& q);

/// Value of a quotient at arbitrary nonzero complex (a, q); the denominator
/// must not vanish there.
Complex eval_ratio(const RationalFn& f, const Complex& a, const Complex& q);

/// Summand-wise evaluation of the color-n invariant sum at an arbitrary
/// complex point (a, q) off the root-of-unity family (no zero skipping; the
/// full summation lattice is walked, so keep n small).  FigureEight uses the
/// p = 2 twist construction.  Requires q - q^{-1} != 0 and [k] != 0 for
/// k <= n.
Complex eval_invariant_at(const KnotId& knot, std::int64_t n, const Complex& a,
                          const Complex& q);

}  // namespace qhomfly
