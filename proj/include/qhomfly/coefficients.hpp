/// @file coefficients.hpp
/// @brief Closed-form skein expansion coefficients used by the invariant
///        sums: the twist-resolution coefficients (alpha), the strand
///        deleting/slipping coefficients (beta), the annulus clasp
///        coefficients (gamma and their recursion weights c), and the
///        parallel-pairing coefficients (S).
///
/// Conventions shared by every formula here:
///   * [k] is quantum_integer(k), [k;a] is framed_integer(k);
///   * descending bracket products are empty (= 1) when the upper index lies
///     below the lower index;
///   * all values are exact (BiLaurent or RationalFn with q-only
///     denominator).
#pragma once

#include <cstdint>

#include "qhomfly/laurent.hpp"

namespace qhomfly {

/// Twist-resolution coefficient
///   alpha(m, n, i) = (-1)^i a^{-i} (q-q^{-1})^i q^{-i(i-1)}
///                    * prod_{t=0}^{i-1} [m-t choose 1]_{q^{-2}}
///                    * [n choose i]_{q^{-2}},
/// a genuine Laurent polynomial.  Defined for all m, n >= 0 with
/// 0 <= i <= min(m, n); the i = 0 value is 1 (all products empty).
BiLaurent alpha(std::int64_t m, std::int64_t n, std::int64_t i);

/// alpha with a -> a^{-1}, q -> q^{-1}; equals invert_vars(alpha(m, n, i)).
BiLaurent alpha_mirror(std::int64_t m, std::int64_t n, std::int64_t i);

/// Deleting/slipping coefficient for colors (m, n):
///   beta(i, j, k, m, n) = q^{k(k-i)}
///     * ([m-j]...[m-j-k+1] [n-j]...[n-j-k+1]) / ([m]...[m-i+1][n]...[n-i+1])
///     * [j]...[j-(i-k-1)] * [i choose k]_{q^2}
///     * [m+n-j-k-1;a]...[m+n-j-i;a].
/// Preconditions: 1 <= i <= j <= min(m, n) - 1 and 0 <= k <= i.
RationalFn beta(std::int64_t i, std::int64_t j, std::int64_t k, std::int64_t m,
                std::int64_t n);

/// Annulus clasp coefficient
///   gamma(i, j, k, l) = q^{-(i-1)l} * [i]...[1] /
///                       ([i+j]...[j+1] [i+k]...[k+1])
///                       * [i-1+l choose i-1]_{q^2}
///                       * [i+j+k-l-1;a]...[j+k-l+1;a] * [j+k-2l;a].
/// Preconditions: i, j, k >= 1 and 0 <= l <= min(j, k).
RationalFn gamma(std::int64_t i, std::int64_t j, std::int64_t k, std::int64_t l);

/// One-step weight of the clasp recursion:
///   c_coeff(l1, l2, i, j, k) = q^{-l1*l2}
///     * ([j]...[j-l2+1] [k]...[k-l2+1]) /
///       ([i+j]...[i+j-l1-l2+1] [i+k]...[i+k-l1-l2+1])
///     * [i]...[i-l1+1] * [l1+l2 choose l1]_{q^2}
///     * [i+j+k-l2-1;a]...[i+j+k-l2-l1;a].
/// Preconditions: i, j, k >= 1, 0 <= l1 <= i, 0 <= l2 <= min(j, k).
RationalFn c_coeff(std::int64_t l1, std::int64_t l2, std::int64_t i,
                   std::int64_t j, std::int64_t k);

/// Parallel-pairing coefficient S(m, n): with mn = min(m, n),
///   S(m, n) = sum_{i=0}^{mn} alpha(mn, max(m,n), i)(a^{-1}, q^{-1})
///             * [n-1;a]...[i;a] / ([n]...[i+1]).
/// Defined for m, n >= 0; S(m, 0) = 1.
RationalFn s_coeff(std::int64_t m, std::int64_t n);

namespace detail {

/// s_coeff with the branch selection forced, for boundary testing: the
/// m >= n and n >= m forms must agree at m = n.
RationalFn s_coeff_forced_branch(std::int64_t m, std::int64_t n, bool m_ge_n);

/// [hi][hi-1]...[lo] as a polynomial (1 when hi < lo).
BiLaurent qint_product(std::int64_t hi, std::int64_t lo);

/// prod_{t=lo}^{hi} (a q^t - a^{-1} q^{-t}), the numerator of
/// [hi;a][hi-1;a]...[lo;a]; 1 when hi < lo.
BiLaurent framed_num_product(std::int64_t hi, std::int64_t lo);

}  // namespace detail

}  // namespace qhomfly
