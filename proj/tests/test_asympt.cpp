/// Asymptotics tests: exactness of the rational ratio grid, the limiting
/// angle, the comparison integral f against an independent Gauss-Legendre
/// oracle (different quadrature family, different endpoint treatment), the
/// figure-eight sequence behaviour, and target-distance bookkeeping.

#include <functional>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qhomfly/asymptotics.hpp"
#include "qhomfly/errors.hpp"

using namespace qhomfly;

namespace {

// ---------------------------------------------------------------------------
// Independent quadrature oracle: composite 16-point Gauss-Legendre panels
// with geometric grading into the t = 0 endpoint, refined by halving every
// panel until two consecutive refinements agree to 1e-13.
// ---------------------------------------------------------------------------

struct GaussLegendre {
    std::vector<Real> nodes, weights;

    explicit GaussLegendre(mpfr_prec_t wp) {
        const int n = 16;
        const Real one(1, wp);
        const Real pi = const_pi(wp);
        const Real stop = pow_si(Real(2, wp), -static_cast<long>(wp) + 16);
        for (int i = 1; i <= n; ++i) {
            Real x = cos((pi * (4 * i - 1)) / (4 * n + 2));
            Real dp(0, wp);
            for (int it = 0; it < 200; ++it) {
                Real p0(1, wp);
                Real p1 = x;
                for (int k = 1; k < n; ++k) {
                    const Real p2 =
                        (x * p1 * (2 * k + 1) - p0 * k) / (k + 1);
                    p0 = p1;
                    p1 = p2;
                }
                dp = (x * p1 - p0) * n / (x * x - one);
                const Real dx = p1 / dp;
                x -= dx;
                if (abs(dx) < stop) break;
            }
            nodes.push_back(x);
            weights.push_back(Real(2, wp) / ((one - x * x) * dp * dp));
        }
    }

    Real panel(const std::function<Real(const Real&)>& g, const Real& a,
               const Real& b) const {
        const Real c = (a + b) / 2;
        const Real h = (b - a) / 2;
        Real acc(0, a.prec());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += g(c + h * nodes[i]) * weights[i];
        return acc * h;
    }
};

/// Integral of log(2 sin t) over [lo, hi] on an explicit panel list refined
/// by halving until stable.
Real oracle_log2sin(const std::vector<std::pair<Real, Real>>& base,
                    mpfr_prec_t wp) {
    static const GaussLegendre gl(320);
    const auto g = [](const Real& t) { return log(sin(t) * 2); };
    const Real tol(mpq_class("1/10000000000000"), wp);  // 1e-13
    std::vector<std::pair<Real, Real>> panels = base;
    Real prev(0, wp);
    bool have_prev = false;
    for (int level = 0; level < 9; ++level) {
        Real total(0, wp);
        for (const auto& [a, b] : panels) total += gl.panel(g, a, b);
        if (have_prev && abs(total - prev) < tol) return total;
        prev = total;
        have_prev = true;
        std::vector<std::pair<Real, Real>> next;
        next.reserve(panels.size() * 2);
        for (const auto& [a, b] : panels) {
            const Real m = (a + b) / 2;
            next.emplace_back(a, m);
            next.emplace_back(m, b);
        }
        panels = std::move(next);
    }
    return prev;
}

/// Oracle value of f(x) = 4 * integral_{pi x}^{5 pi/6} log(2 sin t) dt.
Real oracle_f(const mpq_class& x, mpfr_prec_t wp) {
    const Real pi = const_pi(wp);
    const Real lo = Real(x, wp) * pi;
    const Real hi = pi * 5 / 6;
    std::vector<std::pair<Real, Real>> panels;
    const Real delta(mpq_class(1, 2), wp);
    if (lo < delta) {
        // geometric grading into the logarithmic endpoint; the truncated
        // head below delta * 2^-120 contributes ~1e-37, far under tolerance
        Real b = delta;
        for (int k = 0; k < 120; ++k) {
            const Real a = b / 2;
            if (a <= lo) {
                panels.emplace_back(lo, b);
                break;
            }
            panels.emplace_back(a, b);
            b = a;
        }
        panels.emplace_back(delta, hi);
    } else {
        panels.emplace_back(lo, hi);
    }
    return oracle_log2sin(panels, wp) * 4;
}

/// Canonicalized rational literal (mpq_class comparison requires it).
mpq_class frac(long n, long d) {
    mpq_class v(n, d);
    v.canonicalize();
    return v;
}

}  // namespace

TEST_CASE("the ratio grid is exact rational arithmetic") {
    // Hand value: N = 75, k = 6 of 12 gives M = (1 + 73/2)/(1/2) = 75.
    CHECK(m_grid(75, 6) == mpq_class(75));
    // N = 2 collapses to divisions/(divisions - k).
    for (std::int64_t k = 1; k < 12; ++k)
        CHECK(m_grid(2, k) == frac(12, 12 - k));
    // Resubstitution reproduces k/divisions exactly, for several N.
    for (std::int64_t N : {2, 75, 125, 176})
        for (std::int64_t k = 1; k < 12; ++k) {
            const mpq_class M = m_grid(N, k);
            mpq_class lhs = (M - 1) / (M + (N - 2));
            lhs.canonicalize();
            CHECK(lhs == frac(k, 12));
        }
    // Non-default divisions.
    const mpq_class M5 = m_grid(75, 5, 6);
    CHECK((M5 - 1) / (M5 + 73) == frac(5, 6));
    CHECK_THROWS_AS(m_grid(75, 0), std::domain_error);
    CHECK_THROWS_AS(m_grid(75, 12), std::domain_error);
}

TEST_CASE("the limiting angle") {
    // M = 1 gives angle zero for every N, exactly.
    CHECK(theta_m(1, 1, 7, 128).is_zero());
    // Fixed M: the angle decreases toward zero as N doubles.
    Real prev = theta_m(2, 1, 10, 128);
    for (std::int64_t N : {20, 40, 80, 160}) {
        const Real cur = theta_m(2, 1, N, 128);
        CHECK(cur > Real(0, 128));
        CHECK(cur < prev);
        prev = cur;
    }
    // On the grid M_k the ratio is exactly k/divisions for every N.
    for (std::int64_t N : {5, 75, 176})
        for (std::int64_t k = 1; k < 12; ++k) {
            const mpq_class M = m_grid(N, k);
            CHECK(theta_ratio(M.get_num().get_si(), M.get_den().get_si(),
                              N) == frac(k, 12));
        }
    CHECK_THROWS_AS(theta_ratio(-5, 1, 4), std::domain_error);
}

TEST_CASE("comparison integral against the quadrature oracle") {
    const mpfr_prec_t prec = 256;
    const Real tol10(mpq_class("1/10000000000"), prec);   // 1e-10
    const Real tol12(mpq_class("1/1000000000000"), prec); // 1e-12

    // Empty interval.
    CHECK(f_integral(mpq_class(5, 6), prec).is_zero());

    // Endpoint x = 0: the figure-eight volume.
    const Real f0 = f_integral(mpq_class(0), prec);
    CHECK(abs(f0 - oracle_f(mpq_class(0), 320)) < tol10);
    const Real vol(mpq_class("20298832128193072/10000000000000000"), prec);
    CHECK(abs(f0 - vol) < tol12);

    // Interior points, including one below the series/quadrature split.
    for (const mpq_class& x :
         {mpq_class(1, 10), mpq_class(1, 3), mpq_class(1, 2),
          mpq_class(3, 4)}) {
        CAPTURE(x.get_str());
        CHECK(abs(f_integral(x, prec) - oracle_f(x, 320)) < tol10);
    }

    // f is positive at 1/2 and decreasing toward the zero at 5/6.
    const Real f12 = f_integral(mpq_class(1, 2), prec);
    const Real f35 = f_integral(mpq_class(3, 5), prec);
    const Real f710 = f_integral(mpq_class(7, 10), prec);
    const Real f45 = f_integral(mpq_class(4, 5), prec);
    CHECK(f12 > Real(0, prec));
    CHECK(f12 > f35);
    CHECK(f35 > f710);
    CHECK(f710 > f45);
    CHECK(f45 > Real(0, prec));

    CHECK_THROWS_AS(f_integral(mpq_class(-1, 100), prec), std::domain_error);
    CHECK_THROWS_AS(f_integral(mpq_class(6, 7), prec), std::domain_error);
}

TEST_CASE("figure-eight sequence converges from above with vanishing y") {
    const Real vol(mpq_class("20298832128193072/10000000000000000"), 256);
    Real prev_gap(1000, 256);
    for (std::int64_t N : {250, 500, 1000, 2000}) {
        const AsymSample s =
            xy_pair(KnotId::figure_eight(), 2, 1, N, 256, 1);
        CAPTURE(N);
        CHECK(s.y.is_zero());  // real positive ratio: exact zero phase
        CHECK(s.x > vol);      // approach from above
        const Real gap = abs(s.x - vol);
        CHECK(gap < prev_gap);  // and the gap shrinks
        prev_gap = gap;
    }
    // At N = 2000 the sequence is already within the acceptance window.
    CHECK(prev_gap < Real(mpq_class(5, 100), 256));
}

TEST_CASE("sequences are ordered, cached, and validated") {
    const std::vector<AsymSample> seq =
        xy_sequence(KnotId::five_two(), 2, 1, 80, 90, 5, 512, 2);
    REQUIRE(seq.size() == 3);
    CHECK(seq[0].N == 80);
    CHECK(seq[1].N == 85);
    CHECK(seq[2].N == 90);
    for (const AsymSample& s : seq) {
        CHECK(s.x.is_finite());
        CHECK(s.y.is_finite());
        CHECK(s.M == mpq_class(2));
        CHECK(s.precision_used == 512);
        // principal branch: |y| <= 2 pi^2
        const Real period = const_pi(512) * const_pi(512) * 2;
        CHECK(abs(s.y) <= period);
    }
    // The same pair computed directly matches the sequence entry exactly.
    const AsymSample direct = xy_pair(KnotId::five_two(), 2, 1, 85, 512, 2);
    CHECK((direct.x - seq[1].x).is_zero());
    CHECK((direct.y - seq[1].y).is_zero());

    CHECK(xy_sequence(KnotId::five_two(), 2, 1, 9, 5, 1, 256).empty());
    CHECK_THROWS_AS(xy_sequence(KnotId::five_two(), 2, 1, 5, 9, 0, 256),
                    std::invalid_argument);
}

TEST_CASE("integral-analogue grid") {
    const std::vector<GridSample> rows =
        integral_analogue(KnotId::six_one(), 20, 6, 256, 1);
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const GridSample& r = rows[i];
        CHECK(r.k == static_cast<std::int64_t>(i + 1));
        CHECK(r.divisions == 6);
        CHECK(r.N == 20);
        CHECK(r.M == m_grid(20, r.k, 6));
        CHECK(r.x.is_finite());
    }
    CHECK_THROWS_AS(integral_analogue(KnotId::six_one(), 20, 1, 256),
                    std::domain_error);
}

TEST_CASE("volume targets and the wrapped distance") {
    const VolumeTarget t52 = volume_target(KnotId::five_two());
    CHECK(t52.vol == frac(282812, 100000));
    CHECK(t52.cs == frac(-302413, 100000));
    CHECK(volume_target(KnotId::figure_eight()).cs == 0);
    CHECK_THROWS_AS(volume_target(KnotId::twist(7)), std::domain_error);

    const mpfr_prec_t prec = 256;
    const Real x(t52.vol, prec);
    const Real y(t52.cs, prec);
    // Exactly on target: distance zero.
    CHECK(cs_distance(x, y, t52).is_zero());
    // Shifting y by full periods of 2 pi^2 does not change the distance.
    const Real period = const_pi(prec) * const_pi(prec) * 2;
    const Real tiny = pow_si(Real(2, prec), -200);
    CHECK(cs_distance(x, y + period * 3, t52) < tiny);
    CHECK(cs_distance(x, y - period * 2, t52) < tiny);
    // A pure x offset passes straight through.
    const Real off(mpq_class(3, 10), prec);
    CHECK(abs(cs_distance(x + off, y, t52) - off) < tiny);
}
