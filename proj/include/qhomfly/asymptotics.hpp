/// @file asymptotics.hpp
/// Convergence diagnostics built on the numeric evaluator: the sequences
/// (x_{M,N}, y_{M,N}) = 2*pi*Log(H_{M,N+1}/H_{M,N}), the exact rational grid
/// M_k keeping (M-1)/(M+N-2) fixed, the limiting angle, the figure-eight
/// comparison integral f(x), and distances to the volume / Chern-Simons
/// reference targets.
#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "qhomfly/invariants.hpp"
#include "qhomfly/mpreal.hpp"
#include "qhomfly/numeric_eval.hpp"

namespace qhomfly {

/// One point of a convergence sequence.
struct AsymSample {
    mpq_class M;
    std::int64_t N = 0;
    Real x;  ///< real part of 2*pi*Log(H_{M,N+1}/H_{M,N})
    Real y;  ///< imaginary part, in (-2*pi^2, 2*pi^2] (principal branch)
    mpfr_prec_t precision_used = 0;
};

/// Computes (x_{M,N}, y_{M,N}) from the two invariant values at N and N+1.
/// `pinned_bits` = 0 selects automatic precision escalation; a positive value
/// pins the working precision.  The ratio is formed first and the principal
/// logarithm is taken of the single quotient.
/// @throws numeric_error if either invariant value vanishes.
AsymSample xy_pair(const KnotId& knot, std::int64_t M_num, std::int64_t M_den,
                   std::int64_t N, mpfr_prec_t pinned_bits = 0,
                   int threads = 1);

/// xy_pair over N = N_from, N_from + N_step, ..., <= N_to (increasing order;
/// empty when N_from > N_to).  Shared invariant values between overlapping
/// pairs are computed once.
std::vector<AsymSample> xy_sequence(const KnotId& knot, std::int64_t M_num,
                                    std::int64_t M_den, std::int64_t N_from,
                                    std::int64_t N_to, std::int64_t N_step,
                                    mpfr_prec_t pinned_bits = 0,
                                    int threads = 1);

/// The exact rational M_k with (M_k - 1)/(M_k + N - 2) = k/divisions:
/// M_k = (divisions + k (N-2)) / (divisions - k).
/// @throws std::domain_error unless 1 <= k < divisions.
mpq_class m_grid(std::int64_t N, std::int64_t k, std::int64_t divisions = 12);

/// The exact ratio (M - 1)/(M + N - 2) with M = M_num/M_den.
/// @throws std::domain_error when M + N - 2 <= 0.
mpq_class theta_ratio(std::int64_t M_num, std::int64_t M_den, std::int64_t N);

/// The angle pi (M - 1)/(M + N - 2) at the given precision.
Real theta_m(std::int64_t M_num, std::int64_t M_den, std::int64_t N,
             mpfr_prec_t prec);

/// f(x) = 4 * integral of log(2 sin t) dt over t in [pi x, 5 pi/6],
/// for exact rational 0 <= x <= 5/6.  The logarithmic endpoint at t = 0 is
/// integrated by a convergent series; the remainder by adaptive quadrature.
/// Absolute error is below 1e-12 (well inside the 1e-10 contract).
/// @throws std::domain_error for x outside [0, 5/6].
Real f_integral(const mpq_class& x, mpfr_prec_t prec);

/// One point of the integral-analogue grid.
struct GridSample {
    std::int64_t k = 0;
    std::int64_t divisions = 12;
    mpq_class M;
    std::int64_t N = 0;
    Real x;  ///< x_{M_k, N}
    mpfr_prec_t precision_used = 0;
};

/// x_{M_k,N} for k = 1..divisions-1 with M_k from m_grid (the discrete
/// analogue of the graph of f).
std::vector<GridSample> integral_analogue(const KnotId& knot, std::int64_t N,
                                          std::int64_t divisions = 12,
                                          mpfr_prec_t pinned_bits = 0,
                                          int threads = 1);

/// Reference limit point (volume, Chern-Simons) for a knot, as exact decimal
/// fractions.  The Chern-Simons coordinate is compared modulo 2 pi^2.
struct VolumeTarget {
    mpq_class vol;
    mpq_class cs;
};

/// @throws std::domain_error for families without a stored target
/// (generic twist parameters).
VolumeTarget volume_target(const KnotId& knot);

/// Euclidean distance from (x, y) to the target, with the y difference
/// reduced modulo 2 pi^2 to the representative nearest zero.
Real cs_distance(const Real& x, const Real& y, const VolumeTarget& target);

}  // namespace qhomfly
