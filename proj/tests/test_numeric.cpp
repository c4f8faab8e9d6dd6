/// Numerical evaluation tests: root-of-unity values of the quantum/framed
/// integers, the figure-eight sine product, agreement between the symbolic
/// polynomials and the collapsed numeric sums (on and off the unit circle),
/// determinism across thread counts, precision escalation, and the error
/// surface of degenerate points.

#include <stdexcept>

#include "doctest.h"
#include "qhomfly/errors.hpp"
#include "qhomfly/invariants.hpp"
#include "qhomfly/numeric_eval.hpp"

using namespace qhomfly;

namespace {

Real rel_err(const Complex& got, const Complex& want) {
    return (got - want).abs() / want.abs();
}

bool exact_eq(const Complex& x, const Complex& y) {
    return (x.re - y.re).is_zero() && (x.im - y.im).is_zero();
}

Real two_pow(long e, mpfr_prec_t prec) { return pow_si(Real(2, prec), e); }

/// The unit-circle point (a, q) = (e^{iM theta}, e^{i theta}) for integer M,
/// used to drive eval_poly / eval_ratio independently of the root tables.
struct CirclePoint {
    Complex a, q;
};

CirclePoint circle_point(long M, long N, mpfr_prec_t prec) {
    const Real theta = const_pi(prec) / (M + N - 2);
    return {Complex::cis(theta * M), Complex::cis(theta)};
}

}  // namespace

TEST_CASE("quantum and framed integers at a root point") {
    const mpfr_prec_t prec = 192;
    const EvalPoint pt = make_eval_point(2, 1, 5, prec);  // D = 5

    CHECK((eval_qint(1, pt) - Real(1, prec)).is_zero());
    CHECK(eval_qint(0, pt).is_zero());
    // [D] vanishes up to the rounding of pi itself.
    CHECK(abs(eval_qint(5, pt)) < two_pow(-184, prec));
    // integer M: [k;a] = [M+k]
    for (std::int64_t k = 0; k <= 6; ++k) {
        const Real d = abs(eval_framed(k, pt) - eval_qint(2 + k, pt));
        CHECK(d < two_pow(-170, prec));
    }

    // The flagged zero sits at k = N-2 and repeats with period 2D.
    CHECK(eval_framed_is_zero(3, pt));
    CHECK(eval_framed(3, pt).is_zero());
    CHECK(eval_framed_is_zero(13, pt));
    CHECK_FALSE(eval_framed_is_zero(2, pt));
    CHECK_FALSE(eval_framed_is_zero(4, pt));

    // Rational M = 13/10 at N = 50: D = 13 + 48*10 = 493 divides
    // 13 + (N-2)*10 exactly, so k = N-2 is flagged there too.
    const EvalPoint pt2 = make_eval_point(13, 10, 50, prec);
    CHECK(eval_framed_is_zero(48, pt2));
    CHECK(eval_framed(48, pt2).is_zero());
    CHECK_FALSE(eval_framed_is_zero(47, pt2));
}

TEST_CASE("figure-eight sine product") {
    const mpfr_prec_t prec = 128;
    // M = 2, N = 2: 1 + (2 sin(pi/2))^2 = 5, exact at working precision.
    const Real s22 = fig8_sine(make_eval_point(2, 1, 2, prec));
    CHECK((s22 - Real(5, prec)).is_zero());

    // M = 2, N = 3: 1 + 3 + 9 = 13 (factors 2 sin(pi/3) = 2 sin(2pi/3)).
    const Real s23 = fig8_sine(make_eval_point(2, 1, 3, prec));
    CHECK(abs(s23 - Real(13, prec)) < two_pow(-120, prec));

    // The partial products are squares, so every value is >= 1.
    for (long N : {2L, 5L, 17L, 160L}) {
        const Real s = fig8_sine(make_eval_point(13, 10, N, prec));
        CHECK(s >= Real(1, prec));
    }

    // eval_invariant routes the figure-eight knot through the sine product.
    const EvalResult r =
        eval_invariant(KnotId::figure_eight(), make_eval_point(2, 1, 7, prec));
    CHECK((r.value.re - fig8_sine(make_eval_point(2, 1, 7, prec))).is_zero());
    CHECK(r.value.im.is_zero());
    CHECK(r.terms_evaluated == 7);
    CHECK(r.terms_skipped_zero == 0);
}

TEST_CASE("numeric sums match the symbolic polynomials at root points") {
    const mpfr_prec_t prec = 128;
    const Real tol(mpq_class("1/100000000000000000000"), prec);  // 1e-20

    for (std::int64_t n = 1; n <= 3; ++n) {
        const std::int64_t N = n + 1;
        const EvalPoint pt = make_eval_point(2, 1, N, prec);
        const CirclePoint cp = circle_point(2, N, prec);
        CAPTURE(n);

        // Knots: evaluate the exact reduced polynomial at the same point.
        for (const KnotId& k : {KnotId::five_two(), KnotId::six_one(),
                                KnotId::twist(5)}) {
            const ColoredInvariant inv = compute_invariant(k, n);
            REQUIRE(inv.reduced.has_value());
            const Complex want = eval_poly(*inv.reduced, cp.a, cp.q);
            const Complex got = eval_invariant(k, pt).value;
            CAPTURE(knot_name(k));
            CHECK(rel_err(got, want) < tol);
        }

        // The general twist walker at p = 4 against the dedicated 6_1 sum.
        {
            const Complex got4 = eval_invariant(KnotId::twist(4), pt).value;
            const Complex got61 = eval_invariant(KnotId::six_one(), pt).value;
            CHECK(rel_err(got4, got61) < tol);
        }

        // Whitehead link: compare against the unreduced rational form (its
        // denominator is nonzero at every admissible root point).
        {
            const RationalFn wh = colored_invariant(KnotId::whitehead(), n);
            const Complex want = eval_ratio(wh, cp.a, cp.q);
            const Complex got =
                eval_invariant(KnotId::whitehead(), pt).value;
            CHECK(rel_err(got, want) < tol);
        }

        // Figure-eight: the sine product against the p = 2 twist column.
        {
            const RationalFn f8 = detail::h_twist_any(2, n);
            const Complex want = eval_ratio(f8, cp.a, cp.q);
            const Complex got =
                eval_invariant(KnotId::figure_eight(), pt).value;
            CHECK(rel_err(got, want) < tol);
        }
    }
}

TEST_CASE("generic-point evaluation matches the rational forms") {
    const mpfr_prec_t prec = 256;
    const Real tol(mpq_class("1/1" + std::string(60, '0')), prec);  // 1e-60
    const Complex a(Real(mpq_class(7, 10), prec), Real(mpq_class(2, 5), prec));
    const Complex q(Real(mpq_class(5, 8), prec),
                    Real(mpq_class(-1, 3), prec));

    for (std::int64_t n = 1; n <= 3; ++n) {
        CAPTURE(n);
        for (const KnotId& k :
             {KnotId::five_two(), KnotId::six_one(), KnotId::twist(5),
              KnotId::whitehead()}) {
            const RationalFn sym = colored_invariant(k, n);
            const Complex want = eval_ratio(sym, a, q);
            const Complex got = eval_invariant_at(k, n, a, q);
            CAPTURE(knot_name(k));
            CHECK(rel_err(got, want) < tol);
        }
        {
            const RationalFn f8 = detail::h_twist_any(2, n);
            const Complex want = eval_ratio(f8, a, q);
            const Complex got =
                eval_invariant_at(KnotId::figure_eight(), n, a, q);
            CHECK(rel_err(got, want) < tol);
        }
    }
}

TEST_CASE("thread count never changes the value") {
    const EvalPoint pt = make_eval_point(13, 10, 30, 256);
    for (const KnotId& k : {KnotId::five_two(), KnotId::six_one(),
                            KnotId::whitehead(), KnotId::twist(5)}) {
        const EvalResult r1 = eval_invariant(k, pt, 1);
        const EvalResult r3 = eval_invariant(k, pt, 3);
        const EvalResult r8 = eval_invariant(k, pt, 8);
        CAPTURE(knot_name(k));
        CHECK(exact_eq(r1.value, r3.value));
        CHECK(exact_eq(r1.value, r8.value));
        CHECK(r1.terms_evaluated == r3.terms_evaluated);
        CHECK(r1.terms_skipped_zero == r3.terms_skipped_zero);
    }
}

TEST_CASE("point normalization and conjugation") {
    // 26/20 reduces to 13/10; the two spellings evaluate identically.
    const EvalPoint pa = make_eval_point(26, 20, 30, 192);
    const EvalPoint pb = make_eval_point(13, 10, 30, 192);
    CHECK(pa.M_num == 13);
    CHECK(pa.M_den == 10);
    CHECK(exact_eq(eval_invariant(KnotId::five_two(), pa).value,
                   eval_invariant(KnotId::five_two(), pb).value));

    // Conjugating the point conjugates the value.
    EvalPoint pc = pb;
    pc.conjugate = true;
    const Complex v = eval_invariant(KnotId::six_one(), pb).value;
    const Complex vc = eval_invariant(KnotId::six_one(), pc).value;
    CHECK(rel_err(vc, v.conj()) < two_pow(-150, 192));

    // Negative rational M with M + N - 2 > 0 is a valid point.
    const EvalPoint pneg = make_eval_point(-1, 2, 6, 192);
    const EvalResult rneg = eval_invariant(KnotId::five_two(), pneg);
    CHECK(rneg.value.is_finite());
    CHECK(eval_framed_is_zero(4, pneg));  // k = N-2 is always flagged
}

TEST_CASE("zero-term accounting") {
    const EvalPoint pt = make_eval_point(13, 10, 20, 256);
    const std::int64_t n = 19;

    // Triple sums: only d = 0 survives, and nothing else is evaluated.
    const EvalResult r52 = eval_invariant(KnotId::five_two(), pt);
    CHECK(r52.terms_evaluated == (n + 1) * (n + 2) / 2);
    CHECK(r52.terms_evaluated ==
          eval_survivor_count(KnotId::five_two(), pt.N));
    CHECK(r52.terms_skipped_zero > 0);

    // Twist walker: survivors are the exact compositions.
    const EvalResult r5 = eval_invariant(KnotId::twist(5), pt);
    CHECK(r5.terms_evaluated == eval_survivor_count(KnotId::twist(5), pt.N));
    CHECK(r5.terms_skipped_zero > 0);

    // Whitehead link: the all-framed boundary summand contains [N-2;a] = 0,
    // so at least one summand is always skipped.
    const EvalResult rwh = eval_invariant(KnotId::whitehead(), pt);
    CHECK(rwh.terms_skipped_zero >= 1);
}

TEST_CASE("precision escalation") {
    // Doubling the precision moves the value by far less than 2^{-prec/2}.
    const Complex v1 =
        eval_invariant(KnotId::six_one(), make_eval_point(2, 1, 15, 192))
            .value;
    const Complex v2 =
        eval_invariant(KnotId::six_one(), make_eval_point(2, 1, 15, 384))
            .value;
    CHECK(rel_err(v1, v2) < two_pow(-96, 384));

    // Automatic escalation accepts after verifying against a doubled run and
    // reports the accepted precision; pinning that precision reproduces the
    // value bit for bit.
    const EvalResult ra =
        eval_invariant_auto(KnotId::five_two(), 2, 1, 20, 0, 1);
    CHECK(ra.precision_used >= 2 * default_precision(20));
    const EvalResult rp = eval_invariant_auto(KnotId::five_two(), 2, 1, 20,
                                              ra.precision_used, 1);
    CHECK(exact_eq(ra.value, rp.value));

    // A pinned precision is used as-is.
    const EvalResult rp2 =
        eval_invariant_auto(KnotId::six_one(), 2, 1, 12, 160, 1);
    CHECK(rp2.precision_used == 160);
}

TEST_CASE("degenerate points are rejected") {
    CHECK_THROWS_AS(make_eval_point(1, 0, 5, 128), std::invalid_argument);
    CHECK_THROWS_AS(make_eval_point(2, 1, 1, 128), std::invalid_argument);
    CHECK_THROWS_AS(make_eval_point(-5, 1, 4, 128), std::invalid_argument);
    CHECK_THROWS_AS(make_eval_point(2, 1, 5, 4), std::invalid_argument);

    // M = 1 makes [N-1] = 0, which sits inside the factorial denominators.
    CHECK_THROWS_AS(
        eval_invariant(KnotId::five_two(), make_eval_point(1, 1, 5, 128)),
        numeric_error);
    // M = 0 gives D = N-2, equally degenerate.
    CHECK_THROWS_AS(
        eval_invariant(KnotId::six_one(), make_eval_point(0, 1, 3, 128)),
        numeric_error);

    // Generic-point evaluation needs q - q^{-1} != 0 and nonzero [k].
    const mpfr_prec_t prec = 128;
    const Complex one = Complex::from_long(1, prec);
    CHECK_THROWS_AS(eval_invariant_at(KnotId::five_two(), 2, one, one),
                    std::invalid_argument);
}
