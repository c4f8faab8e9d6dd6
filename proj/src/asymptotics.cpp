/// @file asymptotics.cpp
/// Convergence sequences, the exact ratio grid, the comparison integral, and
/// target distances.  Everything numeric funnels through the deterministic
/// evaluator, so these outputs inherit its bit-reproducibility.

#include "qhomfly/asymptotics.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "qhomfly/errors.hpp"

namespace qhomfly {

namespace {

Real round_to(const Real& x, mpfr_prec_t prec) {
    Real r(Real::clamp(prec));
    mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

/// Both halves of one sample from the two invariant values.
AsymSample make_sample(const mpq_class& M, std::int64_t N,
                       const EvalResult& hn, const EvalResult& hn1) {
    if (hn.value.abs().is_zero() || hn1.value.abs().is_zero())
        throw numeric_error(
            "invariant value vanishes at N = " + std::to_string(N) +
            "; the log-ratio sequence is undefined there");
    const Complex ratio = hn1.value / hn.value;
    const Complex lg = ratio.log_principal();
    const mpfr_prec_t prec =
        hn.precision_used > hn1.precision_used ? hn.precision_used
                                               : hn1.precision_used;
    const Real two_pi = const_pi(lg.prec()) * 2;
    AsymSample s;
    s.M = M;
    s.N = N;
    s.x = lg.re * two_pi;
    s.y = lg.im * two_pi;
    s.precision_used = prec;
    return s;
}

mpq_class rational_m(std::int64_t M_num, std::int64_t M_den) {
    if (M_den == 0)
        throw std::invalid_argument("M denominator must be nonzero");
    const mpz_class num(M_num), den(M_den);
    mpq_class M(num, den);
    M.canonicalize();
    return M;
}

}  // namespace

AsymSample xy_pair(const KnotId& knot, std::int64_t M_num, std::int64_t M_den,
                   std::int64_t N, mpfr_prec_t pinned_bits, int threads) {
    const EvalResult hn =
        eval_invariant_auto(knot, M_num, M_den, N, pinned_bits, threads);
    const EvalResult hn1 =
        eval_invariant_auto(knot, M_num, M_den, N + 1, pinned_bits, threads);
    return make_sample(rational_m(M_num, M_den), N, hn, hn1);
}

std::vector<AsymSample> xy_sequence(const KnotId& knot, std::int64_t M_num,
                                    std::int64_t M_den, std::int64_t N_from,
                                    std::int64_t N_to, std::int64_t N_step,
                                    mpfr_prec_t pinned_bits, int threads) {
    if (N_step < 1) throw std::invalid_argument("N_step must be >= 1");
    std::vector<AsymSample> out;
    if (N_from > N_to) return out;
    const mpq_class M = rational_m(M_num, M_den);
    std::map<std::int64_t, EvalResult> cache;
    const auto value_at = [&](std::int64_t N) -> const EvalResult& {
        auto it = cache.find(N);
        if (it == cache.end())
            it = cache
                     .emplace(N, eval_invariant_auto(knot, M_num, M_den, N,
                                                     pinned_bits, threads))
                     .first;
        return it->second;
    };
    for (std::int64_t N = N_from; N <= N_to; N += N_step)
        out.push_back(make_sample(M, N, value_at(N), value_at(N + 1)));
    return out;
}

mpq_class m_grid(std::int64_t N, std::int64_t k, std::int64_t divisions) {
    if (k < 1 || k >= divisions)
        throw std::domain_error(
            "grid index must satisfy 1 <= k < divisions");
    const mpz_class num = mpz_class(divisions) + mpz_class(k) * (N - 2);
    const mpz_class den = mpz_class(divisions) - k;
    mpq_class M(num, den);
    M.canonicalize();
    return M;
}

mpq_class theta_ratio(std::int64_t M_num, std::int64_t M_den,
                      std::int64_t N) {
    if (M_den == 0)
        throw std::invalid_argument("M denominator must be nonzero");
    if (M_den < 0) {
        M_den = -M_den;
        M_num = -M_num;
    }
    // (M - 1)/(M + N - 2) = (p - r)/(p + (N-2) r) with M = p/r
    const mpz_class num = mpz_class(M_num) - M_den;
    const mpz_class den = mpz_class(M_num) + mpz_class(N - 2) * M_den;
    if (den <= 0)
        throw std::domain_error("the angle needs M + N - 2 > 0");
    mpq_class ratio(num, den);
    ratio.canonicalize();
    return ratio;
}

Real theta_m(std::int64_t M_num, std::int64_t M_den, std::int64_t N,
             mpfr_prec_t prec) {
    return const_pi(prec) * Real(theta_ratio(M_num, M_den, N), prec);
}

namespace {

/// Integral of log(2 sin t) from 0 to s for 0 <= s <= 1/2, by the absolutely
/// convergent expansion
///     s (log(2s) - 1) - sum_{j>=1} zeta(2j) s^{2j+1} / (j (2j+1) pi^{2j}).
Real log2sin_primitive(const Real& s, const Real& pi, mpfr_prec_t wp) {
    if (s.is_zero()) return Real(0, wp);
    Real out = s * (log(s * 2) - Real(1, wp));
    const Real ratio = (s * s) / (pi * pi);  // < 1/39 for s <= 1/2
    const Real eps = pow_si(Real(2, wp), -static_cast<long>(wp));
    Real sr = s;  // s * ratio^j, maintained incrementally
    Real acc(0, wp);
    for (long j = 1; j <= 4000; ++j) {
        sr *= ratio;
        const Real term =
            zeta_ui(static_cast<unsigned long>(2 * j), wp) * sr /
            (j * (2 * j + 1));
        acc += term;
        if (term < eps) break;
    }
    return out - acc;
}

/// Adaptive Simpson with the Richardson correction term; tolerance halves on
/// each split.  The integrand is smooth on every interval this file feeds in.
Real adaptive_simpson(const std::function<Real(const Real&)>& g, const Real& a,
                      const Real& b, const Real& fa, const Real& fm,
                      const Real& fb, const Real& whole, const Real& tol,
                      int depth) {
    const Real m = (a + b) / 2;
    const Real lm = (a + m) / 2;
    const Real rm = (m + b) / 2;
    const Real flm = g(lm);
    const Real frm = g(rm);
    const Real left = (m - a) / 6 * (fa + flm * 4 + fm);
    const Real right = (b - m) / 6 * (fm + frm * 4 + fb);
    const Real diff = left + right - whole;
    if (depth <= 0 || abs(diff) <= tol * 15)
        return left + right + diff / 15;
    return adaptive_simpson(g, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(g, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

Real integrate_log2sin(const Real& lo, const Real& hi, mpfr_prec_t wp) {
    const auto g = [wp](const Real& t) { return log(sin(t) * 2); };
    const Real fa = g(lo);
    const Real fb = g(hi);
    const Real mid = (lo + hi) / 2;
    const Real fm = g(mid);
    const Real whole = (hi - lo) / 6 * (fa + fm * 4 + fb);
    const Real tol(mpq_class("1/10000000000000"), wp);  // 1e-13 absolute
    return adaptive_simpson(g, lo, hi, fa, fm, fb, whole, tol, 48);
}

}  // namespace

Real f_integral(const mpq_class& x_in, mpfr_prec_t prec) {
    mpq_class x = x_in;
    x.canonicalize();
    if (x < 0 || x > mpq_class(5, 6))
        throw std::domain_error("f is defined for 0 <= x <= 5/6");
    if (x == mpq_class(5, 6)) return Real(0, prec);
    const mpfr_prec_t wp = Real::clamp(prec) + 64;
    const Real pi = const_pi(wp);
    const Real lo = Real(x, wp) * pi;
    const Real hi = pi * 5 / 6;
    const Real delta = Real(mpq_class(1, 2), wp);
    Real total(0, wp);
    if (lo < delta) {
        // series on [lo, delta], quadrature on [delta, hi]
        total = log2sin_primitive(delta, pi, wp) -
                log2sin_primitive(lo, pi, wp) +
                integrate_log2sin(delta, hi, wp);
    } else {
        total = integrate_log2sin(lo, hi, wp);
    }
    return round_to(total * 4, prec);
}

std::vector<GridSample> integral_analogue(const KnotId& knot, std::int64_t N,
                                          std::int64_t divisions,
                                          mpfr_prec_t pinned_bits,
                                          int threads) {
    if (divisions < 2)
        throw std::domain_error("the grid needs divisions >= 2");
    std::vector<GridSample> out;
    out.reserve(static_cast<std::size_t>(divisions) - 1);
    for (std::int64_t k = 1; k < divisions; ++k) {
        const mpq_class M = m_grid(N, k, divisions);
        if (!M.get_num().fits_slong_p() || !M.get_den().fits_slong_p())
            throw std::invalid_argument("grid ratio out of supported range");
        const AsymSample s =
            xy_pair(knot, M.get_num().get_si(), M.get_den().get_si(), N,
                    pinned_bits, threads);
        GridSample g;
        g.k = k;
        g.divisions = divisions;
        g.M = M;
        g.N = N;
        g.x = s.x;
        g.precision_used = s.precision_used;
        out.push_back(std::move(g));
    }
    return out;
}

VolumeTarget volume_target(const KnotId& knot) {
    const auto q = [](const char* s) {
        mpq_class v(s);
        v.canonicalize();
        return v;
    };
    switch (knot.family) {
        case KnotId::Family::FigureEight:
            return {q("20298832128193072/10000000000000000"), q("0")};
        case KnotId::Family::FiveTwo:
            return {q("282812/100000"), q("-302413/100000")};
        case KnotId::Family::SixOne:
            return {q("316396/100000"), q("-679074/100000")};
        case KnotId::Family::Whitehead:
            return {q("366386/100000"), q("246742/100000")};
        case KnotId::Family::Twist:
            break;
    }
    throw std::domain_error(
        "no stored limit target for this knot; targets exist for 4_1, 5_2, "
        "6_1 and the Whitehead link");
}

Real cs_distance(const Real& x, const Real& y, const VolumeTarget& target) {
    const mpfr_prec_t prec =
        x.prec() > y.prec() ? x.prec() : y.prec();
    const Real pi = const_pi(prec);
    const Real period = pi * pi * 2;
    const Real dx = x - Real(target.vol, prec);
    Real dy = y - Real(target.cs, prec);
    const Real shift = floor(dy / period + Real(mpq_class(1, 2), prec));
    dy -= shift * period;
    return hypot(dx, dy);
}

}  // namespace qhomfly
