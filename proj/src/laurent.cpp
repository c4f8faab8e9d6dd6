/// @file laurent.cpp
/// @brief Implementation of the exact bivariate Laurent arithmetic core.

#include "qhomfly/laurent.hpp"

#include <sstream>
#include <vector>

namespace qhomfly {

// ---------------------------------------------------------------------------
// BiLaurent
// ---------------------------------------------------------------------------

BiLaurent BiLaurent::constant(const Rational& c) {
    BiLaurent p;
    p.add_term(c, 0, 0);
    return p;
}

BiLaurent BiLaurent::monomial(const Rational& c, std::int64_t ea, std::int64_t eq) {
    BiLaurent p;
    p.add_term(c, ea, eq);
    return p;
}

void BiLaurent::add_term(const Rational& c, std::int64_t ea, std::int64_t eq) {
    if (sgn(c) == 0) return;
    const Exponents key{ea, eq};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

bool BiLaurent::is_q_only() const {
    for (const auto& [e, c] : terms_)
        if (e.ea != 0) return false;
    return true;
}

Rational BiLaurent::coeff(std::int64_t ea, std::int64_t eq) const {
    auto it = terms_.find(Exponents{ea, eq});
    return it == terms_.end() ? Rational(0) : it->second;
}

BiLaurent BiLaurent::operator-() const {
    BiLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

BiLaurent& BiLaurent::operator+=(const BiLaurent& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(c, e.ea, e.eq);
    return *this;
}

BiLaurent& BiLaurent::operator-=(const BiLaurent& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(-c, e.ea, e.eq);
    return *this;
}

BiLaurent operator*(const BiLaurent& lhs, const BiLaurent& rhs) {
    BiLaurent r;
    // Iterate over the smaller factor outside for fewer map rebuilds.
    const BiLaurent& outer = lhs.term_count() <= rhs.term_count() ? lhs : rhs;
    const BiLaurent& inner = lhs.term_count() <= rhs.term_count() ? rhs : lhs;
    for (const auto& [eo, co] : outer.terms_)
        for (const auto& [ei, ci] : inner.terms_)
            r.add_term(co * ci, eo.ea + ei.ea, eo.eq + ei.eq);
    return r;
}

BiLaurent BiLaurent::times_monomial(const Rational& c, std::int64_t ea,
                                    std::int64_t eq) const {
    BiLaurent r;
    if (sgn(c) == 0) return r;
    for (const auto& [e, v] : terms_)
        r.terms_.emplace(Exponents{e.ea + ea, e.eq + eq}, v * c);
    return r;
}

BiLaurent BiLaurent::pow(std::uint64_t e) const {
    BiLaurent base = *this;
    BiLaurent acc = BiLaurent::one();
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc;
}

namespace {

void append_power(std::ostringstream& os, const char* var, std::int64_t e) {
    if (e == 0) return;
    os << '*' << var;
    if (e != 1) os << '^' << e;
}

}  // namespace

std::string BiLaurent::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const bool neg = sgn(c) < 0;
        Rational mag = neg ? Rational(-c) : c;
        if (first) {
            if (neg) os << '-';
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::ostringstream term;
        const bool unit_coeff = (mag == 1) && (e.ea != 0 || e.eq != 0);
        if (!unit_coeff) term << mag.get_str();
        append_power(term, "a", e.ea);
        append_power(term, "q", e.eq);
        std::string t = term.str();
        if (!t.empty() && t.front() == '*') t.erase(t.begin());
        os << t;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// RationalFn
// ---------------------------------------------------------------------------

RationalFn::RationalFn(BiLaurent num, BiLaurent den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
        throw std::domain_error("RationalFn: zero denominator");
    if (!den_.is_q_only())
        throw std::domain_error("RationalFn: denominator must involve only q");
}

RationalFn RationalFn::from_poly(BiLaurent p) {
    return RationalFn(std::move(p), BiLaurent::one());
}

RationalFn RationalFn::operator-() const { return RationalFn(-num_, den_); }

RationalFn operator+(const RationalFn& lhs, const RationalFn& rhs) {
    return RationalFn(lhs.num_ * rhs.den_ + rhs.num_ * lhs.den_,
                      lhs.den_ * rhs.den_);
}

RationalFn operator-(const RationalFn& lhs, const RationalFn& rhs) {
    return RationalFn(lhs.num_ * rhs.den_ - rhs.num_ * lhs.den_,
                      lhs.den_ * rhs.den_);
}

RationalFn operator*(const RationalFn& lhs, const RationalFn& rhs) {
    return RationalFn(lhs.num_ * rhs.num_, lhs.den_ * rhs.den_);
}

RationalFn RationalFn::pow(std::uint64_t e) const {
    return RationalFn(num_.pow(e), den_.pow(e));
}

bool RationalFn::equals(const RationalFn& rhs) const {
    return num_ * rhs.den_ == rhs.num_ * den_;
}

std::string RationalFn::str() const {
    if (den_ == BiLaurent::one()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

// ---------------------------------------------------------------------------
// Building blocks
// ---------------------------------------------------------------------------

BiLaurent quantum_integer(std::int64_t n) {
    if (n == 0) return BiLaurent();
    if (n < 0) return -quantum_integer(-n);
    BiLaurent p;
    for (std::int64_t e = n - 1; e >= -(n - 1); e -= 2) p.add_term(1, 0, e);
    return p;
}

BiLaurent framed_numerator(std::int64_t n) {
    BiLaurent p;
    p.add_term(1, 1, n);
    p.add_term(-1, -1, -n);
    return p;
}

BiLaurent q_minus_qinv() {
    BiLaurent p;
    p.add_term(1, 0, 1);
    p.add_term(-1, 0, -1);
    return p;
}

RationalFn framed_integer(std::int64_t n) {
    return RationalFn(framed_numerator(n), q_minus_qinv());
}

BiLaurent gauss_binomial(std::int64_t n, std::int64_t r, int base_exp) {
    if (base_exp != 1 && base_exp != 2 && base_exp != -2)
        throw std::domain_error("gauss_binomial: base exponent must be 1, 2 or -2");
    if (r < 0 || r > n)
        throw std::domain_error("gauss_binomial: need 0 <= r <= n");
    BiLaurent num = BiLaurent::one();
    BiLaurent den = BiLaurent::one();
    for (std::int64_t t = 0; t < r; ++t) {
        BiLaurent fn;  // 1 - Q^{n-t}
        fn.add_term(1, 0, 0);
        fn.add_term(-1, 0, base_exp * (n - t));
        num *= fn;
        BiLaurent fd;  // 1 - Q^{t+1}
        fd.add_term(1, 0, 0);
        fd.add_term(-1, 0, base_exp * (t + 1));
        den *= fd;
    }
    return exact_div(num, den);
}

BiLaurent exact_div(const BiLaurent& num, const BiLaurent& den) {
    if (den.is_zero()) throw std::domain_error("exact_div: zero divisor");
    if (!den.is_q_only())
        throw std::domain_error("exact_div: divisor must involve only q");
    if (num.is_zero()) return BiLaurent();

    const detail::QPoly d = detail::to_qpoly(den);
    const std::int64_t d_min = d.begin()->first;
    const std::int64_t d_max = d.rbegin()->first;
    const Rational d_lead = d.begin()->second;

    // Split the numerator into univariate q-slices indexed by a-degree.
    std::map<std::int64_t, detail::QPoly> slices;
    for (const auto& [e, c] : num.terms()) slices[e.ea][e.eq] = c;

    BiLaurent quotient;
    for (auto& [ea, s] : slices) {
        // Ascending synthetic division of the slice by d.
        const std::int64_t max_qe = s.rbegin()->first - d_max;
        while (!s.empty()) {
            const auto [e, c] = *s.begin();
            const std::int64_t qe = e - d_min;
            if (qe > max_qe)
                throw internal_error(
                    "exact division left a remainder in the a-degree " +
                    std::to_string(ea) + " slice");
            const Rational qc = c / d_lead;
            quotient.add_term(qc, ea, qe);
            for (const auto& [f, dc] : d) {
                const std::int64_t te = qe + f;
                auto it = s.find(te);
                if (it == s.end()) {
                    s.emplace(te, -qc * dc);
                } else {
                    it->second -= qc * dc;
                    if (sgn(it->second) == 0) s.erase(it);
                }
            }
        }
    }
    return quotient;
}

BiLaurent invert_vars(const BiLaurent& p) {
    BiLaurent r;
    for (const auto& [e, c] : p.terms())
        r.add_term(c, -e.ea, -e.eq);
    return r;
}

RationalFn invert_vars(const RationalFn& f) {
    return RationalFn(invert_vars(f.num()), invert_vars(f.den()));
}

BiLaurent substitute_a_power(const BiLaurent& p, std::int64_t m) {
    BiLaurent r;
    for (const auto& [e, c] : p.terms())
        r.add_term(c, 0, m * e.ea + e.eq);
    return r;
}

// ---------------------------------------------------------------------------
// Univariate helpers
// ---------------------------------------------------------------------------

namespace detail {

QPoly to_qpoly(const BiLaurent& p) {
    if (!p.is_q_only())
        throw std::domain_error("to_qpoly: polynomial involves a");
    QPoly r;
    for (const auto& [e, c] : p.terms()) r[e.eq] = c;
    return r;
}

BiLaurent from_qpoly(const QPoly& p) {
    BiLaurent r;
    for (const auto& [e, c] : p) r.add_term(c, 0, e);
    return r;
}

namespace {

/// Dense integer polynomial, ascending coefficients, no trailing zeros.
using ZPoly = std::vector<mpz_class>;

void strip(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Divide by content and force a positive leading coefficient.
void make_primitive(ZPoly& p) {
    strip(p);
    if (p.empty()) return;
    mpz_class g = 0;
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (sgn(p.back()) < 0) g = -g;
    for (auto& c : p) c /= g;
}

/// Strip the Laurent unit (q^{min}), clear rational denominators, reduce to
/// a primitive integer polynomial with positive leading coefficient.
ZPoly to_primitive(const QPoly& p) {
    if (p.empty()) return {};
    const std::int64_t lo = p.begin()->first;
    const std::int64_t hi = p.rbegin()->first;
    mpz_class lcm_den = 1;
    for (const auto& [e, c] : p)
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
                c.get_den().get_mpz_t());
    ZPoly r(static_cast<std::size_t>(hi - lo + 1), mpz_class(0));
    for (const auto& [e, c] : p) {
        Rational scaled = c * Rational(lcm_den);
        r[static_cast<std::size_t>(e - lo)] = scaled.get_num();
    }
    make_primitive(r);
    return r;
}

/// Pseudo-remainder step: returns the primitive part of prem(x, y).
ZPoly primitive_prem(ZPoly x, const ZPoly& y) {
    const mpz_class d = y.back();
    while (!x.empty() && x.size() >= y.size()) {
        const mpz_class lead = x.back();
        const std::size_t shift = x.size() - y.size();
        // x = d*x - lead * q^shift * y  (kills the leading term exactly)
        for (auto& c : x) c *= d;
        for (std::size_t t = 0; t < y.size(); ++t)
            x[shift + t] -= lead * y[t];
        strip(x);
    }
    make_primitive(x);
    return x;
}

}  // namespace

QPoly qpoly_gcd(QPoly xq, QPoly yq) {
    ZPoly x = to_primitive(xq);
    ZPoly y = to_primitive(yq);
    if (x.empty()) std::swap(x, y);
    if (y.empty()) {
        QPoly r;
        for (std::size_t t = 0; t < x.size(); ++t)
            if (x[t] != 0) r[static_cast<std::int64_t>(t)] = Rational(x[t]);
        return r;
    }
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        ZPoly r = primitive_prem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    QPoly r;
    for (std::size_t t = 0; t < x.size(); ++t)
        if (x[t] != 0) r[static_cast<std::int64_t>(t)] = Rational(x[t]);
    return r;
}

QPoly qpoly_normalize(const QPoly& p) {
    ZPoly z = to_primitive(p);
    QPoly r;
    for (std::size_t t = 0; t < z.size(); ++t)
        if (z[t] != 0) r[static_cast<std::int64_t>(t)] = Rational(z[t]);
    return r;
}

}  // namespace detail

}  // namespace qhomfly
