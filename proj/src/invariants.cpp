#include "qhomfly/invariants.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "qhomfly/coefficients.hpp"
#include "qhomfly/errors.hpp"

namespace qhomfly {

namespace {

/// Shared factor caches for assembling a color-n sum over the common
/// denominator (q - q^{-1})^n [n]!.
struct SumScaffold {
    std::vector<BiLaurent> fact;  ///< fact[s] = [s]!
    std::vector<BiLaurent> zpow;  ///< zpow[s] = (q - q^{-1})^s

    explicit SumScaffold(std::int64_t n) {
        fact.reserve(static_cast<std::size_t>(n) + 1);
        zpow.reserve(static_cast<std::size_t>(n) + 1);
        fact.push_back(BiLaurent::one());
        zpow.push_back(BiLaurent::one());
        const BiLaurent z = q_minus_qinv();
        for (std::int64_t s = 1; s <= n; ++s) {
            fact.push_back(fact.back() * quantum_integer(s));
            zpow.push_back(zpow.back() * z);
        }
    }

    const BiLaurent& f(std::int64_t s) const {
        return fact[static_cast<std::size_t>(s)];
    }
    const BiLaurent& z(std::int64_t s) const {
        return zpow[static_cast<std::size_t>(s)];
    }
};

/// The knots 5_2 and 6_1 share one triple sum; only the handedness of the
/// outermost alpha factor and the prefactor exponent w differ.
RationalFn proposition_triple(std::int64_t n, bool mirror_outer,
                              std::int64_t w) {
    if (n < 1) throw std::domain_error("colored invariants need color n >= 1");
    const SumScaffold s(n);
    BiLaurent acc;
    for (std::int64_t i = 0; i <= n; ++i) {
        const BiLaurent outer =
            mirror_outer ? alpha_mirror(n, n, i) : alpha(n, n, i);
        for (std::int64_t j = 0; j <= i; ++j) {
            const BiLaurent outer_j = outer * alpha(i, i, j);
            for (std::int64_t k = 0; k <= i - j; ++k) {
                const std::int64_t d = i - j - k;
                BiLaurent term = outer_j * alpha(i - j, i - j, k);
                term *= detail::framed_num_product(n - 1, n - d);
                term *= s.z(n - d) * s.f(n - d);
                const std::int64_t ea = -2 * (2 * n - 2 * i + j);
                const std::int64_t eq =
                    -2 * (2 * n * n - 2 * n - 2 * i * i + 2 * i + 2 * i * j -
                          j * j - j);
                acc += term.times_monomial(1, ea, eq);
            }
        }
    }
    acc = acc.times_monomial(1, n * w, n * (n - 1) * w);
    return RationalFn(acc, s.z(n) * s.f(n));
}

}  // namespace

KnotId KnotId::twist(std::int64_t p) {
    if (p < 3)
        throw std::domain_error("twist knots are parametrized by p >= 3");
    return {Family::Twist, p};
}

KnotId knot_from_string(const std::string& s) {
    if (s == "4_1") return KnotId::figure_eight();
    if (s == "5_2") return KnotId::five_two();
    if (s == "6_1") return KnotId::six_one();
    if (s == "wh" || s == "whitehead") return KnotId::whitehead();
    const std::string prefix = "twist:";
    if (s.rfind(prefix, 0) == 0) {
        const std::string digits = s.substr(prefix.size());
        std::size_t used = 0;
        std::int64_t p = 0;
        try {
            p = std::stoll(digits, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad twist parameter in knot name '" +
                                        s + "'");
        }
        if (used != digits.size())
            throw std::invalid_argument("bad twist parameter in knot name '" +
                                        s + "'");
        return KnotId::twist(p);
    }
    throw std::invalid_argument(
        "unknown knot '" + s +
        "' (expected 4_1, 5_2, 6_1, wh, or twist:<p>)");
}

std::string knot_name(const KnotId& k) {
    switch (k.family) {
        case KnotId::Family::FigureEight: return "4_1";
        case KnotId::Family::FiveTwo: return "5_2";
        case KnotId::Family::SixOne: return "6_1";
        case KnotId::Family::Whitehead: return "wh";
        case KnotId::Family::Twist:
            return "twist:" + std::to_string(k.twist_p);
    }
    throw internal_error("unhandled knot family");
}

std::int64_t writhe_prefactor_power(const KnotId& k) {
    switch (k.family) {
        case KnotId::Family::FigureEight:
            throw std::domain_error(
                "the figure-eight knot has no symbolic closed form here");
        case KnotId::Family::FiveTwo: return 6;
        case KnotId::Family::SixOne: return 2;
        case KnotId::Family::Whitehead: return 2;
        case KnotId::Family::Twist:
            return k.twist_p % 2 == 0 ? k.twist_p - 2 : k.twist_p + 3;
    }
    throw internal_error("unhandled knot family");
}

RationalFn h_52(std::int64_t n) { return proposition_triple(n, false, 6); }

RationalFn h_61(std::int64_t n) { return proposition_triple(n, true, 2); }

RationalFn detail::h_twist_any(std::int64_t p, std::int64_t n) {
    if (p < 2)
        throw std::domain_error("twist construction needs p >= 2");
    if (n < 1) throw std::domain_error("colored invariants need color n >= 1");
    const std::int64_t pp = (p + 1) / 2;
    const bool even = (p % 2 == 0);
    const std::int64_t w = even ? p - 2 : p + 3;
    const SumScaffold s(n);
    BiLaurent acc;
    // Partial sums J_l = j_1 + ... + j_l of the current composition.
    std::vector<std::int64_t> J(static_cast<std::size_t>(pp) + 1, 0);
    for (std::int64_t i = 0; i <= n; ++i) {
        const BiLaurent outer =
            even ? alpha_mirror(n, n, i) : alpha(n, n, i);
        // Enumerate (j_1, ..., j_{p'}) with J_{p'} <= i in lexicographic
        // order; `partial` carries outer * prod alpha(i-J_{l-1}, ., j_l).
        std::function<void(std::int64_t, const BiLaurent&)> descend =
            [&](std::int64_t l, const BiLaurent& partial) {
                if (l > pp) {
                    const std::int64_t d = i - J[static_cast<std::size_t>(pp)];
                    std::int64_t ea = 0;
                    std::int64_t eq = 0;
                    for (std::int64_t t = 0; t < pp; ++t) {
                        const std::int64_t sl =
                            n - i + J[static_cast<std::size_t>(t)];
                        const std::int64_t tl =
                            i - J[static_cast<std::size_t>(t)];
                        ea -= 2 * sl;
                        eq -= 2 * sl * (sl - 1) + 4 * sl * tl;
                    }
                    BiLaurent term =
                        partial * detail::framed_num_product(n - 1, n - d);
                    term *= s.z(n - d) * s.f(n - d);
                    acc += term.times_monomial(1, ea, eq);
                    return;
                }
                const std::int64_t prev = J[static_cast<std::size_t>(l - 1)];
                for (std::int64_t jl = 0; jl <= i - prev; ++jl) {
                    J[static_cast<std::size_t>(l)] = prev + jl;
                    descend(l + 1, partial * alpha(i - prev, i - prev, jl));
                }
            };
        descend(1, outer);
    }
    acc = acc.times_monomial(1, n * w, n * (n - 1) * w);
    return RationalFn(acc, s.z(n) * s.f(n));
}

RationalFn h_twist(std::int64_t p, std::int64_t n) {
    if (p < 3)
        throw std::domain_error("twist knots are parametrized by p >= 3");
    return detail::h_twist_any(p, n);
}

RationalFn h_whitehead(std::int64_t n) {
    if (n < 1) throw std::domain_error("colored invariants need color n >= 1");
    const SumScaffold s(n);
    // Common denominator (q - q^{-1})^{3n} ([n]!)^4; every summand's
    // denominator divides it, so each is lifted by an exact division.
    const BiLaurent den = q_minus_qinv().pow(static_cast<std::uint64_t>(3 * n)) *
                          s.f(n).pow(4);
    BiLaurent acc;
    const auto accumulate = [&](const RationalFn& term) {
        acc += term.num() * exact_div(den, term.den());
    };
    for (std::int64_t i = 1; i <= n - 1; ++i) {
        const RationalFn ai = RationalFn::from_poly(alpha(n, n, i));
        for (std::int64_t j = 0; j <= i; ++j) {
            const RationalFn sij = s_coeff(n, i - j);
            accumulate(ai * gamma(n - i, i, i, j) * sij * invert_vars(sij));
        }
    }
    const RationalFn snn = s_coeff(n, n);
    accumulate(RationalFn::from_poly(alpha(n, n, n)) * snn * invert_vars(snn));
    accumulate(RationalFn(detail::framed_num_product(n - 1, 0),
                          s.z(n) * s.f(n)));
    acc = acc.times_monomial(1, 2 * n, 2 * n * (n - 1));
    return RationalFn(acc, den);
}

RationalFn colored_invariant(const KnotId& k, std::int64_t n) {
    switch (k.family) {
        case KnotId::Family::FigureEight:
            throw std::domain_error(
                "the figure-eight knot has no symbolic closed form here; "
                "use the sine-product evaluator");
        case KnotId::Family::FiveTwo: return h_52(n);
        case KnotId::Family::SixOne: return h_61(n);
        case KnotId::Family::Whitehead: return h_whitehead(n);
        case KnotId::Family::Twist: return h_twist(k.twist_p, n);
    }
    throw internal_error("unhandled knot family");
}

BiLaurent reduce_invariant(const RationalFn& v) {
    return exact_div(v.num(), v.den());
}

Reduction reduce_with_clearing(const RationalFn& v) {
    if (v.num().is_zero()) return {BiLaurent{}, BiLaurent::one()};
    // Content of the numerator: gcd of its a-degree slices as q-polynomials.
    std::map<std::int64_t, detail::QPoly> slices;
    for (const auto& [e, c] : v.num().terms()) slices[e.ea][e.eq] = c;
    detail::QPoly g;
    for (const auto& [ea, slice] : slices) g = detail::qpoly_gcd(g, slice);
    g = detail::qpoly_gcd(g, detail::to_qpoly(v.den()));
    // Minimal clearing factor: den / gcd(den, content), unit-normalized.
    const BiLaurent clearing_raw = exact_div(v.den(), detail::from_qpoly(g));
    const BiLaurent clearing = detail::from_qpoly(
        detail::qpoly_normalize(detail::to_qpoly(clearing_raw)));
    if (clearing.term_count() <= 1)
        return {exact_div(v.num(), v.den()), BiLaurent::one()};
    return {exact_div(v.num() * clearing, v.den()), clearing};
}

BiLaurent jones_specialize(const BiLaurent& p) {
    return substitute_a_power(p, 2);
}

ColoredInvariant compute_invariant(const KnotId& k, std::int64_t n) {
    ColoredInvariant out;
    out.knot = k;
    out.color = n;
    out.value = colored_invariant(k, n);
    Reduction r = reduce_with_clearing(out.value);
    out.reduced = std::move(r.reduced);
    out.clearing = std::move(r.clearing);
    return out;
}

}  // namespace qhomfly
