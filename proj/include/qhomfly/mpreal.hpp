/// @file mpreal.hpp
/// @brief Minimal RAII wrappers for MPFR reals and hand-rolled complex
///        arithmetic on top of them.
///
/// Only the operations the evaluation and asymptotics code actually needs are
/// wrapped.  Binary operations produce results at the larger operand
/// precision and round to nearest; every function is deterministic, so values
/// are reproducible bit-for-bit across runs and thread counts.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace qhomfly {

/// Arbitrary-precision real number (MPFR binary float, round-to-nearest).
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_zero(v_, +1);
    }
    Real(long x, mpfr_prec_t prec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    Real(const mpq_class& x, mpfr_prec_t prec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Shortest-style decimal with `digits` significant digits (printf %g).
    std::string str(int digits) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    friend Real operator+(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& o) { return *this = *this + o; }
    Real& operator-=(const Real& o) { return *this = *this - o; }
    Real& operator*=(const Real& o) { return *this = *this * o; }
    Real& operator/=(const Real& o) { return *this = *this / o; }

    friend Real operator*(const Real& a, long b) {
        Real r(a.prec());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, long b) {
        Real r(a.prec());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) {
        return mpfr_less_p(a.v_, b.v_) != 0;
    }
    friend bool operator>(const Real& a, const Real& b) {
        return mpfr_greater_p(a.v_, b.v_) != 0;
    }
    friend bool operator<=(const Real& a, const Real& b) {
        return mpfr_lessequal_p(a.v_, b.v_) != 0;
    }
    friend bool operator>=(const Real& a, const Real& b) {
        return mpfr_greaterequal_p(a.v_, b.v_) != 0;
    }
    friend bool operator==(const Real& a, const Real& b) {
        return mpfr_equal_p(a.v_, b.v_) != 0;
    }

    static mpfr_prec_t clamp(mpfr_prec_t p) {
        return p < MPFR_PREC_MIN ? MPFR_PREC_MIN : p;
    }

private:
    static mpfr_prec_t join(const Real& a, const Real& b) {
        return a.prec() > b.prec() ? a.prec() : b.prec();
    }
    mpfr_t v_;
};

inline Real abs(const Real& x) {
    Real r(x.prec());
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real sqrt(const Real& x) {
    Real r(x.prec());
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real log(const Real& x) {
    Real r(x.prec());
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real exp(const Real& x) {
    Real r(x.prec());
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real sin(const Real& x) {
    Real r(x.prec());
    mpfr_sin(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real cos(const Real& x) {
    Real r(x.prec());
    mpfr_cos(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline std::pair<Real, Real> sin_cos(const Real& x) {
    Real s(x.prec()), c(x.prec());
    mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
    return {std::move(s), std::move(c)};
}
inline Real atan2(const Real& y, const Real& x) {
    Real r(y.prec() > x.prec() ? y.prec() : x.prec());
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real hypot(const Real& x, const Real& y) {
    Real r(x.prec() > y.prec() ? x.prec() : y.prec());
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
inline Real floor(const Real& x) {
    Real r(x.prec());
    mpfr_floor(r.raw(), x.raw());
    return r;
}
inline Real pow_si(const Real& x, long e) {
    Real r(x.prec());
    mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}
inline Real const_pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}
/// Riemann zeta at a non-negative integer argument.
inline Real zeta_ui(unsigned long u, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_zeta_ui(r.raw(), u, MPFR_RNDN);
    return r;
}
inline long to_long(const Real& x) { return mpfr_get_si(x.raw(), MPFR_RNDN); }

/// Complex number with MPFR real and imaginary parts.
class Complex {
public:
    Real re, im;

    explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    static Complex zero(mpfr_prec_t prec) { return Complex(prec); }
    static Complex from_long(long x, mpfr_prec_t prec) {
        return Complex(Real(x, prec), Real(0, prec));
    }
    /// e^{i angle} = (cos angle, sin angle).
    static Complex cis(const Real& angle) {
        auto [s, c] = sin_cos(angle);
        return Complex(std::move(c), std::move(s));
    }

    mpfr_prec_t prec() const {
        return re.prec() > im.prec() ? re.prec() : im.prec();
    }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return Complex(a.re + b.re, a.im + b.im);
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return Complex(a.re - b.re, a.im - b.im);
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        const Real m = b.re * b.re + b.im * b.im;
        return Complex((a.re * b.re + a.im * b.im) / m,
                       (a.im * b.re - a.re * b.im) / m);
    }
    Complex operator-() const { return Complex(-re, -im); }
    Complex& operator+=(const Complex& o) { return *this = *this + o; }
    Complex& operator-=(const Complex& o) { return *this = *this - o; }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }

    /// Multiply by a real scalar.
    Complex scale(const Real& s) const { return Complex(re * s, im * s); }

    Complex conj() const { return Complex(re, -im); }

    Real abs() const { return hypot(re, im); }

    /// Principal logarithm: imaginary part in (-pi, pi].
    Complex log_principal() const {
        return Complex(qhomfly::log(abs()), atan2(im, re));
    }

    /// Non-negative integer power by binary exponentiation.
    Complex pow(std::uint64_t e) const {
        Complex base = *this;
        Complex acc = from_long(1, prec());
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }
};

}  // namespace qhomfly
