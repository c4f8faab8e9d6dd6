/// @file test_coefficients.cpp
/// @brief Unit tests for the closed-form skein coefficients, centred on the
///        recurrences each family satisfies (independent of the closed
///        forms, so they act as oracles for the transcription).

#include <doctest.h>

#include <algorithm>

#include "qhomfly/coefficients.hpp"

using namespace qhomfly;

namespace {

RationalFn rf(const BiLaurent& p) { return RationalFn::from_poly(p); }
RationalFn qint_rf(std::int64_t k) { return rf(quantum_integer(k)); }

/// beta with out-of-range k read as zero (the recurrence convention).
RationalFn beta_or_zero(std::int64_t i, std::int64_t j, std::int64_t k,
                        std::int64_t m, std::int64_t n) {
    if (k < 0 || k > i) return RationalFn();
    return beta(i, j, k, m, n);
}

/// c_coeff with out-of-range l1/l2 read as zero.
RationalFn c_or_zero(std::int64_t l1, std::int64_t l2, std::int64_t i,
                     std::int64_t j, std::int64_t k) {
    if (l1 < 0 || l2 < 0) return RationalFn();
    return c_coeff(l1, l2, i, j, k);
}

}  // namespace

TEST_CASE("alpha closed form") {
    for (std::int64_t m = 0; m <= 5; ++m)
        for (std::int64_t n = 0; n <= 5; ++n)
            CHECK(alpha(m, n, 0) == BiLaurent::one());

    // alpha(1,1,1) = -a^{-1}(q - q^{-1}): the one-crossing resolution weight.
    CHECK(alpha(1, 1, 1) == q_minus_qinv().times_monomial(-1, -1, 0));

    // alpha(2,1,1) = -a^{-1}(q - q^{-1})(1 + q^{-2}).
    BiLaurent one_plus = BiLaurent::constant(1) + BiLaurent::monomial(1, 0, -2);
    CHECK(alpha(2, 1, 1) ==
          (q_minus_qinv() * one_plus).times_monomial(-1, -1, 0));

    CHECK(alpha_mirror(1, 1, 1) == q_minus_qinv().times_monomial(1, 1, 0));
    for (std::int64_t m = 1; m <= 4; ++m)
        for (std::int64_t n = 1; n <= m; ++n)
            for (std::int64_t i = 0; i <= n; ++i)
                CHECK(invert_vars(alpha_mirror(m, n, i)) == alpha(m, n, i));

    CHECK_THROWS_AS(alpha(2, 1, 2), std::domain_error);
    CHECK_THROWS_AS(alpha(-1, 1, 0), std::domain_error);
}

TEST_CASE("beta base cases") {
    // beta(1, j, 0) = [j][m+n-j-1;a]/([m][n]) and
    // beta(1, j, 1) = [m-j][n-j]/([m][n]).
    for (std::int64_t m = 2; m <= 6; ++m) {
        for (std::int64_t n = 2; n <= 6; ++n) {
            for (std::int64_t j = 1; j <= std::min(m, n) - 1; ++j) {
                const RationalFn den = qint_rf(m) * qint_rf(n);
                RationalFn del = qint_rf(j) * framed_integer(m + n - j - 1);
                RationalFn slip = qint_rf(m - j) * qint_rf(n - j);
                CHECK(beta(1, j, 0, m, n) * den == del);
                CHECK(beta(1, j, 1, m, n) * den == slip);
            }
        }
    }
    CHECK_THROWS_AS(beta(0, 1, 0, 3, 3), std::domain_error);
    CHECK_THROWS_AS(beta(2, 1, 0, 3, 3), std::domain_error);
    CHECK_THROWS_AS(beta(1, 3, 0, 3, 3), std::domain_error);
    CHECK_THROWS_AS(beta(1, 1, 2, 3, 3), std::domain_error);
}

TEST_CASE("beta two-term recurrence") {
    // Peeling one strand pair off beta(i, .) must reproduce beta(i-1, .)
    // combinations:
    //   beta_i^k = [m'+n'-(k'+j)-1;a]/([m'][n']) [j'+k] beta_{i-1}^k
    //            + [m'-(j'+k-1)][n'-(j'+k-1)]/([m'][n']) beta_{i-1}^{k-1}
    // with m' = m-(i-1), n' = n-(i-1), j' = j-(i-1).
    for (std::int64_t i = 2; i <= 4; ++i) {
        for (std::int64_t j = i; j <= 4; ++j) {
            for (std::int64_t m = j + 1; m <= 6; ++m) {
                for (std::int64_t n = j + 1; n <= 6; ++n) {
                    for (std::int64_t k = 0; k <= i; ++k) {
                        const std::int64_t mp = m - (i - 1);
                        const std::int64_t np = n - (i - 1);
                        const std::int64_t jp = j - (i - 1);
                        const RationalFn den = qint_rf(mp) * qint_rf(np);
                        const RationalFn lhs = beta(i, j, k, m, n) * den;
                        const RationalFn rhs =
                            framed_integer(mp + np - (k + jp) - 1) *
                                qint_rf(jp + k) *
                                beta_or_zero(i - 1, j, k, m, n) +
                            qint_rf(mp - (jp + k - 1)) *
                                qint_rf(np - (jp + k - 1)) *
                                beta_or_zero(i - 1, j, k - 1, m, n);
                        CHECK(lhs == rhs);
                    }
                }
            }
        }
    }
}

TEST_CASE("c_coeff base cases") {
    for (std::int64_t i = 1; i <= 3; ++i) {
        for (std::int64_t j = 1; j <= 3; ++j) {
            for (std::int64_t k = 1; k <= 3; ++k) {
                CHECK(c_coeff(0, 0, i, j, k) == RationalFn::one());
                const RationalFn den = qint_rf(i + j) * qint_rf(i + k);
                CHECK(c_coeff(1, 0, i, j, k) * den ==
                      framed_integer(i + j + k - 1) * qint_rf(i));
                CHECK(c_coeff(0, 1, i, j, k) * den == qint_rf(j) * qint_rf(k));
            }
        }
    }
    CHECK_THROWS_AS(c_coeff(2, 0, 1, 1, 1), std::domain_error);
    CHECK_THROWS_AS(c_coeff(0, 2, 3, 1, 3), std::domain_error);
}

TEST_CASE("c_coeff lattice recurrence") {
    // c_{l1,l2} = [j-l2+1][k-l2+1]/([i+j-l1-l2+1][i+k-l1-l2+1]) c_{l1,l2-1}
    //           + [i+j+k-l1-2l2;a][i-l1+1]/(same denominator) c_{l1-1,l2}.
    for (std::int64_t i = 1; i <= 3; ++i) {
        for (std::int64_t j = 1; j <= 3; ++j) {
            for (std::int64_t k = 1; k <= 3; ++k) {
                for (std::int64_t l1 = 0; l1 <= i; ++l1) {
                    for (std::int64_t l2 = 0; l2 <= std::min(j, k); ++l2) {
                        if (l1 == 0 && l2 == 0) continue;
                        const RationalFn den =
                            qint_rf(i + j - l1 - l2 + 1) *
                            qint_rf(i + k - l1 - l2 + 1);
                        const RationalFn lhs = c_coeff(l1, l2, i, j, k) * den;
                        const RationalFn rhs =
                            qint_rf(j - l2 + 1) * qint_rf(k - l2 + 1) *
                                c_or_zero(l1, l2 - 1, i, j, k) +
                            framed_integer(i + j + k - l1 - 2 * l2) *
                                qint_rf(i - l1 + 1) *
                                c_or_zero(l1 - 1, l2, i, j, k);
                        CHECK(lhs == rhs);
                    }
                }
            }
        }
    }
}

TEST_CASE("gamma closed form and assembly") {
    // i = 1 leaves an empty bracket product: gamma = [j+k-2l;a]/([1+j][1+k]).
    for (std::int64_t j = 1; j <= 3; ++j)
        for (std::int64_t k = 1; k <= 3; ++k)
            CHECK(gamma(1, j, k, 0) * qint_rf(1 + j) * qint_rf(1 + k) ==
                  framed_integer(j + k));

    CHECK(gamma(1, 1, 1, 1) * qint_rf(2) * qint_rf(2) == framed_integer(0));

    // Assembly: walking the recursion straight down its l1-axis and closing
    // with the final pairing scalar reproduces gamma:
    //   gamma(i,j,k,l) = c_{i-1,l}(i,j,k) * [j+k-2l;a] / ([j-l+1][k-l+1]).
    for (std::int64_t i = 1; i <= 3; ++i) {
        for (std::int64_t j = 1; j <= 3; ++j) {
            for (std::int64_t k = 1; k <= 3; ++k) {
                for (std::int64_t l = 0; l <= std::min(j, k); ++l) {
                    const RationalFn lhs =
                        gamma(i, j, k, l) * qint_rf(j - l + 1) * qint_rf(k - l + 1);
                    const RationalFn rhs =
                        c_coeff(i - 1, l, i, j, k) * framed_integer(j + k - 2 * l);
                    CHECK(lhs == rhs);
                }
            }
        }
    }

    CHECK_THROWS_AS(gamma(0, 1, 1, 0), std::domain_error);
    CHECK_THROWS_AS(gamma(1, 1, 1, 2), std::domain_error);
}

TEST_CASE("s_coeff") {
    for (std::int64_t m = 0; m <= 4; ++m)
        CHECK(s_coeff(m, 0) == RationalFn::one());

    // S(1,1) = [0;a]/[1] + alpha(1,1,1)(a^{-1},q^{-1}).
    CHECK(s_coeff(1, 1) ==
          framed_integer(0) + rf(invert_vars(alpha(1, 1, 1))));

    // Branch agreement at m = n.
    for (std::int64_t n = 0; n <= 6; ++n)
        CHECK(detail::s_coeff_forced_branch(n, n, true) ==
              detail::s_coeff_forced_branch(n, n, false));

    CHECK_THROWS_AS(s_coeff(-1, 2), std::domain_error);
}
