/// @file laurent.hpp
/// @brief Exact sparse Laurent polynomials in two variables (a, q) over the
///        rationals, their q-only-denominator quotients, and the quantum
///        integer / framed integer / Gaussian binomial building blocks.
///
/// All symbolic computation in the library happens in the ring
/// Q[a^{±1}, q^{±1}].  Values are immutable after construction; every
/// operation is a pure function, so sharing across threads is safe.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "qhomfly/errors.hpp"

namespace qhomfly {

/// Exact rational coefficient type (GMP-backed, always canonicalized).
using Rational = mpq_class;

/// Exponent pair of one monomial a^{ea} q^{eq}.
struct Exponents {
    std::int64_t ea = 0;
    std::int64_t eq = 0;
    friend auto operator<=>(const Exponents&, const Exponents&) = default;
};

/// Sparse bivariate Laurent polynomial with rational coefficients.
///
/// Canonical form: no stored coefficient is zero; the zero polynomial is the
/// empty map; term order is lexicographic by (ea, eq), which also fixes the
/// serialization and printing order.
class BiLaurent {
public:
    using TermMap = std::map<Exponents, Rational>;

    /// The zero polynomial.
    BiLaurent() = default;

    /// The constant polynomial c (empty if c == 0).
    static BiLaurent constant(const Rational& c);

    /// The monomial c * a^{ea} q^{eq} (zero if c == 0).
    static BiLaurent monomial(const Rational& c, std::int64_t ea, std::int64_t eq);

    /// The multiplicative unit.
    static BiLaurent one() { return constant(1); }

    bool is_zero() const { return terms_.empty(); }

    /// True when every term has a-exponent zero (i.e. the value lies in
    /// Q[q^{±1}]); the zero polynomial counts as q-only.
    bool is_q_only() const;

    /// Number of stored (nonzero) terms.
    std::size_t term_count() const { return terms_.size(); }

    /// Coefficient of a^{ea} q^{eq} (zero if absent).
    Rational coeff(std::int64_t ea, std::int64_t eq) const;

    const TermMap& terms() const { return terms_; }

    BiLaurent operator-() const;
    BiLaurent& operator+=(const BiLaurent& rhs);
    BiLaurent& operator-=(const BiLaurent& rhs);
    friend BiLaurent operator+(BiLaurent lhs, const BiLaurent& rhs) { return lhs += rhs; }
    friend BiLaurent operator-(BiLaurent lhs, const BiLaurent& rhs) { return lhs -= rhs; }
    friend BiLaurent operator*(const BiLaurent& lhs, const BiLaurent& rhs);
    BiLaurent& operator*=(const BiLaurent& rhs) { return *this = *this * rhs; }

    /// Multiply by a single monomial (cheaper than a general product).
    BiLaurent times_monomial(const Rational& c, std::int64_t ea, std::int64_t eq) const;

    /// Non-negative integer power (binary exponentiation).
    BiLaurent pow(std::uint64_t e) const;

    friend bool operator==(const BiLaurent& lhs, const BiLaurent& rhs) {
        return lhs.terms_ == rhs.terms_;
    }

    /// Deterministic human-readable form, e.g. "-3/2*a^-1*q^2 + q + 1",
    /// terms in (ea, eq)-lexicographic order.
    std::string str() const;

    /// Insert (add) a term, keeping canonical form.  Building block for
    /// constructors and deserialization.
    void add_term(const Rational& c, std::int64_t ea, std::int64_t eq);

private:
    TermMap terms_;
};

/// Quotient num/den of Laurent polynomials whose denominator involves only q.
///
/// Kept unreduced: equality is cross-multiplied (num1*den2 == num2*den1), so
/// no multivariate gcd is ever required.  The denominator is guaranteed
/// nonzero and q-only by construction.
class RationalFn {
public:
    /// Zero (0/1).
    RationalFn() : num_(), den_(BiLaurent::one()) {}

    /// General quotient; throws std::domain_error unless den is nonzero and
    /// q-only.
    RationalFn(BiLaurent num, BiLaurent den);

    /// Embed a polynomial as p/1.
    static RationalFn from_poly(BiLaurent p);

    static RationalFn one() { return from_poly(BiLaurent::one()); }

    const BiLaurent& num() const { return num_; }
    const BiLaurent& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    RationalFn operator-() const;
    friend RationalFn operator+(const RationalFn& lhs, const RationalFn& rhs);
    friend RationalFn operator-(const RationalFn& lhs, const RationalFn& rhs);
    friend RationalFn operator*(const RationalFn& lhs, const RationalFn& rhs);
    RationalFn& operator+=(const RationalFn& rhs) { return *this = *this + rhs; }
    RationalFn& operator-=(const RationalFn& rhs) { return *this = *this - rhs; }
    RationalFn& operator*=(const RationalFn& rhs) { return *this = *this * rhs; }

    /// Non-negative integer power.
    RationalFn pow(std::uint64_t e) const;

    /// Cross-multiplied equality: num*rhs.den == rhs.num*den.
    bool equals(const RationalFn& rhs) const;
    friend bool operator==(const RationalFn& lhs, const RationalFn& rhs) {
        return lhs.equals(rhs);
    }

    std::string str() const;

private:
    BiLaurent num_;
    BiLaurent den_;
};

// ---------------------------------------------------------------------------
// Building blocks
// ---------------------------------------------------------------------------

/// Quantum integer [n] = (q^n - q^{-n})/(q - q^{-1}) as the Laurent
/// polynomial q^{n-1} + q^{n-3} + ... + q^{-(n-1)}.  [0] = 0 and
/// [-n] = -[n] (odd extension).
BiLaurent quantum_integer(std::int64_t n);

/// Framed quantum integer [n;a] = (a q^n - a^{-1} q^{-n})/(q - q^{-1}) as an
/// explicit quotient (it is not a Laurent polynomial).
RationalFn framed_integer(std::int64_t n);

/// Numerator of [n;a]: a q^n - a^{-1} q^{-n}.  Exposed separately because
/// invariant assembly collects these numerators over a common denominator.
BiLaurent framed_numerator(std::int64_t n);

/// The skein factor q - q^{-1} (the common denominator unit of the theory).
BiLaurent q_minus_qinv();

/// Gaussian binomial [n r] evaluated at base q^{base_exp}:
///     prod_{t=0}^{r-1} (1 - Q^{n-t}) / (1 - Q^{t+1}),  Q = q^{base_exp}.
/// Always an exact Laurent polynomial; base_exp must be one of {1, 2, -2}.
/// Preconditions: 0 <= r <= n.
BiLaurent gauss_binomial(std::int64_t n, std::int64_t r, int base_exp);

/// Exact division of num by a nonzero q-only den.  Treats num as a family of
/// univariate q-Laurent polynomials indexed by a-degree and divides each
/// slice; throws internal_error naming the first offending a-degree if any
/// slice is not divisible.
BiLaurent exact_div(const BiLaurent& num, const BiLaurent& den);

/// The involution a -> a^{-1}, q -> q^{-1} (negates every exponent pair).
BiLaurent invert_vars(const BiLaurent& p);

/// invert_vars lifted to quotients.
RationalFn invert_vars(const RationalFn& f);

/// Substitute a = q^m, collapsing each (ea, eq) term to q^{m*ea + eq}.
/// The result is q-only.  With m = 2 this is the Jones specialization.
BiLaurent substitute_a_power(const BiLaurent& p, std::int64_t m);

namespace detail {

/// Univariate Laurent polynomial in q: exponent -> coefficient, no zeros.
using QPoly = std::map<std::int64_t, Rational>;

/// View a q-only BiLaurent as a QPoly (throws std::domain_error otherwise).
QPoly to_qpoly(const BiLaurent& p);

BiLaurent from_qpoly(const QPoly& p);

/// Normalized gcd over Q[q^{±1}]: the result has lowest exponent 0, integer
/// coefficients with content 1, and positive leading coefficient.
/// gcd(0, p) = normalized p; gcd(0, 0) = 0.
QPoly qpoly_gcd(QPoly x, QPoly y);

/// The unit-normal form used by qpoly_gcd: strip the Laurent unit q^{min},
/// clear rational denominators, divide by integer content, force a positive
/// leading coefficient.
QPoly qpoly_normalize(const QPoly& p);

}  // namespace detail

}  // namespace qhomfly
