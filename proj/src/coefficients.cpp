/// @file coefficients.cpp
/// @brief Implementation of the closed-form skein coefficients.

#include "qhomfly/coefficients.hpp"

#include <algorithm>
#include <string>

namespace qhomfly {

namespace detail {

BiLaurent qint_product(std::int64_t hi, std::int64_t lo) {
    BiLaurent p = BiLaurent::one();
    for (std::int64_t t = hi; t >= lo; --t) p *= quantum_integer(t);
    return p;
}

BiLaurent framed_num_product(std::int64_t hi, std::int64_t lo) {
    BiLaurent p = BiLaurent::one();
    for (std::int64_t t = hi; t >= lo; --t) p *= framed_numerator(t);
    return p;
}

}  // namespace detail

using detail::framed_num_product;
using detail::qint_product;

BiLaurent alpha(std::int64_t m, std::int64_t n, std::int64_t i) {
    if (m < 0 || n < 0 || i < 0 || i > std::min(m, n))
        throw std::domain_error("alpha: need m, n >= 0 and 0 <= i <= min(m, n)");
    BiLaurent r = BiLaurent::one();
    for (std::int64_t t = 0; t < i; ++t) r *= gauss_binomial(m - t, 1, -2);
    r *= gauss_binomial(n, i, -2);
    r *= q_minus_qinv().pow(static_cast<std::uint64_t>(i));
    // (-1)^i a^{-i} q^{-i(i-1)}
    return r.times_monomial((i % 2 == 0) ? 1 : -1, -i, -i * (i - 1));
}

BiLaurent alpha_mirror(std::int64_t m, std::int64_t n, std::int64_t i) {
    return invert_vars(alpha(m, n, i));
}

RationalFn beta(std::int64_t i, std::int64_t j, std::int64_t k, std::int64_t m,
                std::int64_t n) {
    if (i < 1 || i > j || j > std::min(m, n) - 1)
        throw std::domain_error("beta: need 1 <= i <= j <= min(m, n) - 1");
    if (k < 0 || k > i) throw std::domain_error("beta: need 0 <= k <= i");

    BiLaurent num = BiLaurent::one();
    for (std::int64_t t = 0; t < k; ++t)
        num *= quantum_integer(m - j - t) * quantum_integer(n - j - t);
    num *= qint_product(j, j - (i - k - 1));
    num *= gauss_binomial(i, k, 2);
    num *= framed_num_product(m + n - j - k - 1, m + n - j - i);
    num = num.times_monomial(1, 0, k * (k - i));

    BiLaurent den = qint_product(m, m - i + 1) * qint_product(n, n - i + 1);
    den *= q_minus_qinv().pow(static_cast<std::uint64_t>(i - k));
    return RationalFn(std::move(num), std::move(den));
}

RationalFn gamma(std::int64_t i, std::int64_t j, std::int64_t k, std::int64_t l) {
    if (i < 1 || j < 1 || k < 1)
        throw std::domain_error("gamma: need i, j, k >= 1");
    if (l < 0 || l > std::min(j, k))
        throw std::domain_error("gamma: need 0 <= l <= min(j, k)");

    BiLaurent num = qint_product(i, 1);
    num *= gauss_binomial(i - 1 + l, i - 1, 2);
    num *= framed_num_product(i + j + k - l - 1, j + k - l + 1);
    num *= framed_numerator(j + k - 2 * l);
    num = num.times_monomial(1, 0, -(i - 1) * l);

    BiLaurent den = qint_product(i + j, j + 1) * qint_product(i + k, k + 1);
    den *= q_minus_qinv().pow(static_cast<std::uint64_t>(i));
    return RationalFn(std::move(num), std::move(den));
}

RationalFn c_coeff(std::int64_t l1, std::int64_t l2, std::int64_t i,
                   std::int64_t j, std::int64_t k) {
    if (i < 1 || j < 1 || k < 1)
        throw std::domain_error("c_coeff: need i, j, k >= 1");
    if (l1 < 0 || l1 > i || l2 < 0 || l2 > std::min(j, k))
        throw std::domain_error("c_coeff: need 0 <= l1 <= i, 0 <= l2 <= min(j, k)");

    BiLaurent num = BiLaurent::one();
    for (std::int64_t t = 0; t < l2; ++t)
        num *= quantum_integer(j - t) * quantum_integer(k - t);
    num *= qint_product(i, i - l1 + 1);
    num *= gauss_binomial(l1 + l2, l1, 2);
    num *= framed_num_product(i + j + k - l2 - 1, i + j + k - l2 - l1);
    num = num.times_monomial(1, 0, -l1 * l2);

    BiLaurent den = BiLaurent::one();
    for (std::int64_t t = 0; t < l1 + l2; ++t)
        den *= quantum_integer(i + j - t) * quantum_integer(i + k - t);
    den *= q_minus_qinv().pow(static_cast<std::uint64_t>(l1));
    return RationalFn(std::move(num), std::move(den));
}

namespace detail {

RationalFn s_coeff_forced_branch(std::int64_t m, std::int64_t n, bool m_ge_n) {
    if (m < 0 || n < 0) throw std::domain_error("s_coeff: need m, n >= 0");
    if ((m_ge_n && m < n) || (!m_ge_n && n < m))
        throw std::domain_error("s_coeff: branch does not cover these colors");
    const std::int64_t upto = std::min(m, n);
    // Both branches mirror alpha(min, max, .) and close with the ratio
    // [n-1;a]...[i;a] / ([n]...[i+1]) in the second color n.  Terms are
    // collected over the common denominator (q - q^{-1})^n [n]...[1].
    const std::int64_t lo = m_ge_n ? n : m;
    const std::int64_t hi = m_ge_n ? m : n;
    BiLaurent sum;
    for (std::int64_t t = 0; t <= upto; ++t) {
        BiLaurent term = invert_vars(alpha(lo, hi, t));
        term *= framed_num_product(n - 1, t);
        term *= q_minus_qinv().pow(static_cast<std::uint64_t>(t));
        term *= qint_product(t, 1);
        sum += term;
    }
    BiLaurent den = q_minus_qinv().pow(static_cast<std::uint64_t>(n));
    den *= qint_product(n, 1);
    return RationalFn(std::move(sum), std::move(den));
}

}  // namespace detail

RationalFn s_coeff(std::int64_t m, std::int64_t n) {
    return detail::s_coeff_forced_branch(m, n, m >= n);
}

}  // namespace qhomfly
