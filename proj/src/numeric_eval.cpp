/// @file numeric_eval.cpp
/// @brief Root-of-unity and generic-point evaluation of the invariant sums.
///
/// Design notes.
///   * At the point q = e^{i theta}, a = q^M, theta = pi/(M+N-2), with
///     M = p/r reduced and D = p + (N-2) r, every quantum integer and framed
///     integer is real: [k] = sin(k theta)/sin(theta) and
///     [k;a] = sin((M+k) theta)/sin(theta).  A monomial a^x q^y is the unit
///     phase e^{i pi (x p + y r)/D}.  All phases are cached by their integer
///     index modulo 4D.
///   * [k;a] = 0 exactly iff D divides p + k r — detected on integers, never
///     by floating comparison.  [N-2;a] is always such a zero, which is what
///     collapses the sums.  Any summand containing a flagged zero is skipped
///     before floating work and counted.
///   * Summands are evaluated into enumeration-ordered slots (threads take
///     contiguous blocks) and combined by one fixed-shape pairwise reduction,
///     so results are bit-identical for every thread count.
///   * The same summand walkers run at arbitrary complex (a, q) through a
///     second table type with no zero flags; that path cross-validates the
///     symbolic polynomials off the unit circle.

#include "qhomfly/numeric_eval.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <utility>
#include <vector>

#include "qhomfly/errors.hpp"

namespace qhomfly {

namespace {

using i128 = __int128;

struct PointData {
    std::int64_t p = 0;  ///< reduced numerator of M
    std::int64_t r = 1;  ///< reduced denominator of M (> 0)
    std::int64_t N = 2;
    std::int64_t n = 1;  ///< color, N - 1
    std::int64_t D = 1;  ///< p + (N-2) r
    mpfr_prec_t prec = 256;
    bool conj = false;
};

PointData point_data(const EvalPoint& in) {
    const EvalPoint pt =
        make_eval_point(in.M_num, in.M_den, in.N, in.precision);
    PointData d;
    d.p = pt.M_num;
    d.r = pt.M_den;
    d.N = pt.N;
    d.n = pt.N - 1;
    d.D = pt.M_num + (pt.N - 2) * pt.M_den;
    d.prec = pt.precision;
    d.conj = in.conjugate;
    return d;
}

/// Tables for one root-of-unity point.  All lookups after construction are
/// read-only except the two mutex-guarded caches, whose entries depend only
/// on their key, so concurrent use stays deterministic.
class RootTables {
public:
    static constexpr bool root = true;

    explicit RootTables(const PointData& pd)
        : pd_(pd),
          pi_(const_pi(pd.prec)),
          theta_((pi_ * pd.r) / pd.D),
          sin_theta_(sin(theta_)),
          z_(Real(0, pd.prec),
             pd.conj ? -(sin_theta_ * 2) : sin_theta_ * 2) {
        // The sums divide by [k]! for k <= n; [k] = 0 iff D | k (the
        // fraction p/r is reduced, so gcd(D, r) = 1).  D <= n would put a
        // zero in a denominator — the point is unusable (e.g. M = 1).
        if (pd_.D <= pd_.n)
            throw numeric_error(
                "evaluation point degenerates: [" + std::to_string(pd_.D) +
                "] = 0 at this root of unity, so the factorial denominators "
                "vanish for N = " + std::to_string(pd_.N));
        const std::int64_t n = pd_.n;
        const Real inv_sin = Real(1, pd_.prec) / sin_theta_;
        qf_.reserve(static_cast<std::size_t>(n) + 1);
        iqf_.reserve(static_cast<std::size_t>(n) + 1);
        Real fact(1, pd_.prec);
        qf_.push_back(to_c(fact));
        iqf_.push_back(to_c(Real(1, pd_.prec)));
        for (std::int64_t k = 1; k <= n; ++k) {
            fact *= sin(theta_ * k) * inv_sin;
            qf_.push_back(to_c(fact));
            iqf_.push_back(to_c(Real(1, pd_.prec) / fact));
        }
        const std::int64_t frmax = 2 * n + 2;
        fr_.reserve(static_cast<std::size_t>(frmax) + 1);
        frz_.assign(static_cast<std::size_t>(frmax) + 1, 0);
        frzp_.assign(static_cast<std::size_t>(frmax) + 2, 0);
        fpp_.reserve(static_cast<std::size_t>(frmax) + 2);
        ifpp_.reserve(static_cast<std::size_t>(frmax) + 2);
        fpp_.push_back(Real(1, pd_.prec));
        ifpp_.push_back(Real(1, pd_.prec));
        for (std::int64_t k = 0; k <= frmax; ++k) {
            const bool zero = framed_index_zero(k);
            frz_[static_cast<std::size_t>(k)] = zero ? 1 : 0;
            frzp_[static_cast<std::size_t>(k) + 1] =
                frzp_[static_cast<std::size_t>(k)] + (zero ? 1 : 0);
            Real val(0, pd_.prec);
            if (!zero) {
                // angle (M+k) theta = pi (p + k r)/D
                const Real ang = (pi_ * (pd_.p + k * pd_.r)) / pd_.D;
                val = sin(ang) * inv_sin;
            }
            fr_.push_back(to_c(val));
            const Real& prev = fpp_.back();
            Real next = zero ? prev : prev * val;
            ifpp_.push_back(Real(1, pd_.prec) / next);
            fpp_.push_back(std::move(next));
        }
    }

    std::int64_t n() const { return pd_.n; }
    mpfr_prec_t prec() const { return pd_.prec; }

    Complex qf(std::int64_t k) const {
        return qf_.at(static_cast<std::size_t>(k));
    }
    Complex iqf(std::int64_t k) const {
        return iqf_.at(static_cast<std::size_t>(k));
    }
    Complex framed(std::int64_t k) const {
        return fr_.at(static_cast<std::size_t>(k));
    }
    bool framed_zero(std::int64_t k) const {
        return frz_.at(static_cast<std::size_t>(k)) != 0;
    }
    /// Number of flagged zeros among [lo;a], ..., [hi-1;a].
    std::int64_t framed_zeros_in(std::int64_t lo, std::int64_t hi) const {
        if (hi <= lo) return 0;
        return frzp_.at(static_cast<std::size_t>(hi)) -
               frzp_.at(static_cast<std::size_t>(lo));
    }
    /// prod_{k=lo}^{hi-1} [k;a]; the range must be zero-free.
    Complex framed_range_prod(std::int64_t lo, std::int64_t hi) const {
        if (hi <= lo) return to_c(Real(1, pd_.prec));
        return to_c(fpp_.at(static_cast<std::size_t>(hi)) *
                    ifpp_.at(static_cast<std::size_t>(lo)));
    }

    /// a^{ea} q^{eq} as a cached unit phase.
    Complex mono(std::int64_t ea, std::int64_t eq) const {
        i128 t = 2 * (static_cast<i128>(ea) * pd_.p +
                      static_cast<i128>(eq) * pd_.r);
        if (pd_.conj) t = -t;
        const i128 four_d = static_cast<i128>(4) * pd_.D;
        std::int64_t tm = static_cast<std::int64_t>(((t % four_d) + four_d) %
                                                    four_d);
        std::lock_guard<std::mutex> lk(mu_);
        auto it = phase_.find(tm);
        if (it != phase_.end()) return it->second;
        const Real angle = (pi_ * tm) / (2 * pd_.D);
        Complex v = Complex::cis(angle);
        phase_.emplace(tm, v);
        return v;
    }

    /// (q - q^{-1})^e, e may be negative.
    Complex zpow(std::int64_t e) const {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = zpow_.find(e);
        if (it != zpow_.end()) return it->second;
        Complex v = e >= 0 ? z_.pow(static_cast<std::uint64_t>(e))
                           : Complex::from_long(1, pd_.prec) /
                                 z_.pow(static_cast<std::uint64_t>(-e));
        zpow_.emplace(e, v);
        return v;
    }

private:
    bool framed_index_zero(std::int64_t k) const {
        const i128 v = static_cast<i128>(pd_.p) + static_cast<i128>(k) * pd_.r;
        return v % pd_.D == 0;
    }
    Complex to_c(const Real& x) const {
        return Complex(x, Real(0, pd_.prec));
    }

    PointData pd_;
    Real pi_, theta_, sin_theta_;
    Complex z_;
    std::vector<Complex> qf_, iqf_, fr_;
    std::vector<char> frz_;
    std::vector<std::int64_t> frzp_;
    std::vector<Real> fpp_, ifpp_;
    mutable std::mutex mu_;
    mutable std::map<std::int64_t, Complex> phase_;
    mutable std::map<std::int64_t, Complex> zpow_;
};

/// Tables for an arbitrary complex point (a, q): no zero structure, powers
/// computed directly.  Intended for small colors (cross-validation).
class GenericTables {
public:
    static constexpr bool root = false;

    GenericTables(std::int64_t n, const Complex& a, const Complex& q)
        : n_(n),
          prec_(std::max(a.prec(), q.prec())),
          a_(a),
          q_(q),
          one_(Complex::from_long(1, prec_)),
          ia_(one_ / a),
          iq_(one_ / q),
          z_(q_ - iq_) {
        if (!(a.abs() > Real(0, prec_)) || !(q.abs() > Real(0, prec_)))
            throw std::invalid_argument("evaluation needs nonzero a and q");
        if (!(z_.abs() > Real(0, prec_)))
            throw std::invalid_argument(
                "evaluation needs q - q^{-1} != 0");
        qf_.push_back(one_);
        iqf_.push_back(one_);
        Complex fact = one_;
        const Complex iz = one_ / z_;
        for (std::int64_t k = 1; k <= n_; ++k) {
            const Complex qint = (cpow(q_, iq_, k) - cpow(q_, iq_, -k)) * iz;
            if (!(qint.abs() > Real(0, prec_)))
                throw std::invalid_argument(
                    "evaluation point has a vanishing quantum integer [" +
                    std::to_string(k) + "]");
            fact *= qint;
            qf_.push_back(fact);
            iqf_.push_back(one_ / fact);
        }
    }

    std::int64_t n() const { return n_; }
    mpfr_prec_t prec() const { return prec_; }

    Complex qf(std::int64_t k) const {
        return qf_.at(static_cast<std::size_t>(k));
    }
    Complex iqf(std::int64_t k) const {
        return iqf_.at(static_cast<std::size_t>(k));
    }
    Complex framed(std::int64_t k) const {
        return (a_ * cpow(q_, iq_, k) - ia_ * cpow(q_, iq_, -k)) /
               z_;
    }
    bool framed_zero(std::int64_t) const { return false; }
    std::int64_t framed_zeros_in(std::int64_t, std::int64_t) const {
        return 0;
    }
    Complex framed_range_prod(std::int64_t lo, std::int64_t hi) const {
        Complex v = one_;
        for (std::int64_t k = lo; k < hi; ++k) v *= framed(k);
        return v;
    }
    Complex mono(std::int64_t ea, std::int64_t eq) const {
        return cpow(a_, ia_, ea) * cpow(q_, iq_, eq);
    }
    Complex zpow(std::int64_t e) const {
        if (e >= 0) return z_.pow(static_cast<std::uint64_t>(e));
        return one_ / z_.pow(static_cast<std::uint64_t>(-e));
    }

private:
    static Complex cpow(const Complex& base, const Complex& ibase,
                        std::int64_t e) {
        return e >= 0 ? base.pow(static_cast<std::uint64_t>(e))
                      : ibase.pow(static_cast<std::uint64_t>(-e));
    }

    std::int64_t n_;
    mpfr_prec_t prec_;
    Complex a_, q_, one_, ia_, iq_, z_;
    std::vector<Complex> qf_, iqf_;
};

// ---------------------------------------------------------------------------
// Shared numeric building blocks (templated over the table kind)
// ---------------------------------------------------------------------------

/// Gaussian binomial [nn rr] at base q^{2 base_sign}:
/// q^{base_sign rr (nn-rr)} [nn]!/([rr]! [nn-rr]!).
template <class T>
Complex qbinom2(const T& t, std::int64_t nn, std::int64_t rr, int base_sign) {
    Complex v = t.qf(nn) * t.iqf(rr) * t.iqf(nn - rr);
    return v * t.mono(0, base_sign * rr * (nn - rr));
}

/// alpha(m, nn, i) = prod_{u<i}(q^{-2} binomial factors) * (q-q^{-1})^i *
/// (-1)^i a^{-i} q^{-i(i-1)}, collapsed to
///     R z^i (-1)^i a^{-i} q^{eqp},
///     R = [m]!/[m-i]! * [nn]!/([i]![nn-i]!),
///     eqp = -i(m-1) - i(nn-i) - i(i-1)/2.
/// `inv` gives the variable-inverted value (a -> a^{-1}, q -> q^{-1}); R is
/// inversion-invariant and the two z-sign flips cancel the (-1)^i.
template <class T>
Complex alpha_val(const T& t, std::int64_t m, std::int64_t nn, std::int64_t i,
                  bool inv) {
    Complex v = t.qf(m) * t.iqf(m - i) * t.qf(nn) * t.iqf(i) * t.iqf(nn - i);
    v *= t.zpow(i);
    const std::int64_t eqp =
        -i * (m - 1) - i * (nn - i) - (i * (i - 1)) / 2;
    if (inv) return v * t.mono(i, -eqp);
    v *= t.mono(-i, eqp);
    return (i % 2 != 0) ? -v : v;
}

/// gamma(gi, gj, gk, l) with the z powers cancelled between numerator and
/// denominator:
///     [gi]! [gi-1+l choose gi-1]_{q^2}
///     * prod_{s=gj+gk-l+1}^{gi+gj+gk-l-1} [s;a] * [gj+gk-2l;a]
///     * q^{-(gi-1) l} * [gj]!/[gi+gj]! * [gk]!/[gi+gk]!
/// The framed factors in the range and the singleton must be zero-free
/// (callers check the flags first).
template <class T>
Complex gamma_val(const T& t, std::int64_t gi, std::int64_t gj,
                  std::int64_t gk, std::int64_t l) {
    Complex v = t.qf(gi);
    v *= qbinom2(t, gi - 1 + l, gi - 1, +1);
    v *= t.framed_range_prod(gj + gk - l + 1, gi + gj + gk - l);
    v *= t.framed(gj + gk - 2 * l);
    v *= t.mono(0, -(gi - 1) * l);
    v *= t.iqf(gi + gj) * t.qf(gj) * t.iqf(gi + gk) * t.qf(gk);
    return v;
}

struct Counters {
    std::int64_t evaluated = 0;
    std::int64_t skipped = 0;
};

/// S(n, s) for s = 0..n: the bracket coefficients
///     S(n,s) = sum_{u=0}^{s} inv-alpha(s, n, u) * prod_{v=u}^{s-1}[v;a]
///              * [u]!/[s]!
/// (explicit z powers cancel; inv-alpha keeps its internal z^u).  With
/// `inverted` the variable-inverted values are produced instead (the
/// alpha factor switches back to the plain orientation).
template <class T>
std::vector<Complex> s_values(const T& t, std::int64_t n, bool inverted,
                              Counters& c) {
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (std::int64_t s = 0; s <= n; ++s) {
        Complex acc = Complex::zero(t.prec());
        for (std::int64_t u = 0; u <= s; ++u) {
            if (t.framed_zeros_in(u, s) > 0) {
                ++c.skipped;
                continue;
            }
            Complex term = alpha_val(t, s, n, u, !inverted);
            term *= t.framed_range_prod(u, s);
            term *= t.qf(u) * t.iqf(s);
            acc += term;
            ++c.evaluated;
        }
        out.push_back(acc);
    }
    return out;
}

/// Fixed-shape pairwise reduction; result depends only on slot values and
/// count, never on thread scheduling.
Complex reduce_slots(std::vector<Complex>& s, mpfr_prec_t prec) {
    if (s.empty()) return Complex::zero(prec);
    for (std::size_t w = 1; w < s.size(); w *= 2)
        for (std::size_t i = 0; i + w < s.size(); i += 2 * w) s[i] += s[i + w];
    return s[0];
}

/// Streaming variant of the same idea (binary-counter merge) for walkers
/// that cannot afford to keep every slot; deterministic for a fixed push
/// sequence.
class StreamReducer {
public:
    explicit StreamReducer(mpfr_prec_t prec) : prec_(prec) {}
    void push(Complex v) {
        for (std::size_t k = 0;; ++k) {
            if (k == levels_.size()) {
                levels_.emplace_back(std::move(v), true);
                return;
            }
            if (!levels_[k].second) {
                levels_[k] = {std::move(v), true};
                return;
            }
            v = levels_[k].first + v;
            levels_[k].second = false;
        }
    }
    Complex total() const {
        Complex acc = Complex::zero(prec_);
        for (const auto& [v, live] : levels_)
            if (live) acc += v;
        return acc;
    }

private:
    mpfr_prec_t prec_;
    std::vector<std::pair<Complex, bool>> levels_;
};

/// Evaluates slots[i] = f(i) over contiguous per-thread blocks.
void fill_slots(std::vector<Complex>& slots, int threads,
                const std::function<Complex(std::size_t)>& f) {
    const std::size_t count = slots.size();
    std::size_t T = threads < 1 ? 1 : static_cast<std::size_t>(threads);
    if (T > count) T = count == 0 ? 1 : count;
    if (T <= 1) {
        for (std::size_t i = 0; i < count; ++i) slots[i] = f(i);
        return;
    }
    const std::size_t chunk = (count + T - 1) / T;
    std::vector<std::exception_ptr> errs(T);
    std::vector<std::thread> pool;
    pool.reserve(T - 1);
    const auto body = [&](std::size_t tid) {
        const std::size_t lo = tid * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        try {
            for (std::size_t i = lo; i < hi; ++i) slots[i] = f(i);
        } catch (...) {
            errs[tid] = std::current_exception();
        }
    };
    for (std::size_t tid = 1; tid < T; ++tid) pool.emplace_back(body, tid);
    body(0);
    for (auto& th : pool) th.join();
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------
// Family walkers
// ---------------------------------------------------------------------------

/// The 5_2 / 6_1 triple sum.  Summands are indexed by (i, j, k) with
/// 0 <= k <= i - j <= i <= n and carry the framed product over
/// [n-d;a], ..., [n-1;a], d = i-j-k; at the root only d = 0 survives
/// because [n-1;a] = [N-2;a] = 0.
template <class T>
EvalResult eval_triple_t(const T& t, bool mirror_outer, std::int64_t w,
                         int threads) {
    const std::int64_t n = t.n();
    struct Tup {
        std::int32_t i, j, k;
    };
    std::vector<Tup> tups;
    std::int64_t skipped = 0;
    for (std::int64_t i = 0; i <= n; ++i)
        for (std::int64_t j = 0; j <= i; ++j)
            for (std::int64_t k = 0; k <= i - j; ++k) {
                const std::int64_t d = i - j - k;
                if (t.framed_zeros_in(n - d, n) > 0) {
                    ++skipped;
                    continue;
                }
                tups.push_back({static_cast<std::int32_t>(i),
                                static_cast<std::int32_t>(j),
                                static_cast<std::int32_t>(k)});
            }
    std::vector<Complex> slots(tups.size());
    fill_slots(slots, threads, [&](std::size_t idx) {
        const std::int64_t i = tups[idx].i;
        const std::int64_t j = tups[idx].j;
        const std::int64_t k = tups[idx].k;
        const std::int64_t d = i - j - k;
        Complex v = alpha_val(t, n, n, i, mirror_outer);
        v *= alpha_val(t, i, i, j, false);
        v *= alpha_val(t, i - j, i - j, k, false);
        if (d > 0) v *= t.framed_range_prod(n - d, n);
        v *= t.qf(n - d) * t.iqf(n);
        const std::int64_t ea = -2 * (2 * n - 2 * i + j) + n * w;
        const std::int64_t eq =
            -2 * (2 * n * n - 2 * n - 2 * i * i + 2 * i + 2 * i * j - j * j -
                  j) +
            n * (n - 1) * w;
        return v * t.mono(ea, eq);
    });
    EvalResult out;
    out.value = reduce_slots(slots, t.prec());
    out.terms_evaluated = static_cast<std::int64_t>(tups.size());
    out.terms_skipped_zero = skipped;
    return out;
}

/// The p-half-twist sum over compositions (j_1, ..., j_{p'}) with partial
/// sums J_l <= i.  At the root only exact compositions (J_{p'} = i, i.e.
/// d = 0) survive; the walker prunes the last level to the single surviving
/// value and counts the pruned terms combinatorially.  Evaluation is serial
/// (memory-light streaming reduction), so thread count never matters.
template <class T>
EvalResult eval_twist_t(const T& t, std::int64_t p) {
    const std::int64_t n = t.n();
    const std::int64_t pp = (p + 1) / 2;
    const bool even = (p % 2 == 0);
    const std::int64_t w = even ? p - 2 : p + 3;
    StreamReducer red(t.prec());
    std::int64_t evaluated = 0;
    std::int64_t skipped = 0;
    std::vector<std::int64_t> J(static_cast<std::size_t>(pp) + 1, 0);
    for (std::int64_t i = 0; i <= n; ++i) {
        const Complex outer = alpha_val(t, n, n, i, even);
        std::function<void(std::int64_t, const Complex&)> descend =
            [&](std::int64_t l, const Complex& partial) {
                if (l > pp) {
                    const std::int64_t d = i - J[static_cast<std::size_t>(pp)];
                    if (t.framed_zeros_in(n - d, n) > 0) {
                        ++skipped;
                        return;
                    }
                    std::int64_t ea = 0, eq = 0;
                    for (std::int64_t u = 0; u < pp; ++u) {
                        const std::int64_t sl =
                            n - i + J[static_cast<std::size_t>(u)];
                        const std::int64_t tl =
                            i - J[static_cast<std::size_t>(u)];
                        ea -= 2 * sl;
                        eq -= 2 * sl * (sl - 1) + 4 * sl * tl;
                    }
                    Complex v = partial;
                    if (d > 0) v *= t.framed_range_prod(n - d, n);
                    v *= t.qf(n - d) * t.iqf(n);
                    v *= t.mono(ea + n * w, eq + n * (n - 1) * w);
                    red.push(std::move(v));
                    ++evaluated;
                    return;
                }
                const std::int64_t prev = J[static_cast<std::size_t>(l - 1)];
                std::int64_t lo = 0;
                if constexpr (T::root) {
                    // Only J_{p'} = i survives; force the last level.
                    if (l == pp) lo = i - prev;
                }
                for (std::int64_t jl = lo; jl <= i - prev; ++jl) {
                    J[static_cast<std::size_t>(l)] = prev + jl;
                    descend(l + 1,
                            partial * alpha_val(t, i - prev, i - prev, jl,
                                                false));
                }
            };
        descend(1, outer);
    }
    if constexpr (T::root) {
        // Pruned lattice points: all compositions with J_{p'} < i.
        mpz_class total = 0;
        for (std::int64_t i = 0; i <= n; ++i) {
            mpz_class c;
            mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(i + pp),
                         static_cast<unsigned long>(pp));
            total += c;
        }
        total -= evaluated + skipped;
        if (!total.fits_slong_p())
            throw std::invalid_argument(
                "twist summation lattice too large to account");
        skipped += total.get_si();
    }
    EvalResult out;
    out.value = red.total();
    out.terms_evaluated = evaluated;
    out.terms_skipped_zero = skipped;
    return out;
}

/// The Whitehead double sum plus its two boundary summands.  S values are
/// precomputed serially (both orientations); interior summand (i, j) carries
/// gamma(n-i, i, i, j) whose framed factors supply the zero flags.
template <class T>
EvalResult eval_wh_t(const T& t, int threads) {
    const std::int64_t n = t.n();
    Counters c;
    const std::vector<Complex> sv = s_values(t, n, false, c);
    const std::vector<Complex> isv = s_values(t, n, true, c);
    struct Tup {
        std::int32_t i, j;
    };
    std::vector<Tup> tups;
    for (std::int64_t i = 1; i <= n - 1; ++i)
        for (std::int64_t j = 0; j <= i; ++j) {
            const std::int64_t gi = n - i, gj = i, gk = i, l = j;
            if (t.framed_zeros_in(gj + gk - l + 1, gi + gj + gk - l) > 0 ||
                t.framed_zero(gj + gk - 2 * l)) {
                ++c.skipped;
                continue;
            }
            tups.push_back({static_cast<std::int32_t>(i),
                            static_cast<std::int32_t>(j)});
        }
    const bool boundary2_zero = t.framed_zeros_in(0, n) > 0;
    const std::size_t extra = boundary2_zero ? 1 : 2;
    std::vector<Complex> slots(tups.size() + extra);
    fill_slots(slots, threads, [&](std::size_t idx) {
        if (idx < tups.size()) {
            const std::int64_t i = tups[idx].i;
            const std::int64_t j = tups[idx].j;
            Complex v = alpha_val(t, n, n, i, false);
            v *= gamma_val(t, n - i, i, i, j);
            v *= sv[static_cast<std::size_t>(i - j)];
            v *= isv[static_cast<std::size_t>(i - j)];
            return v;
        }
        if (idx == tups.size()) {
            Complex v = alpha_val(t, n, n, n, false);
            v *= sv[static_cast<std::size_t>(n)];
            v *= isv[static_cast<std::size_t>(n)];
            return v;
        }
        // prod_{s=0}^{n-1} [s;a] / [n]!  (framed-numerator z powers cancel
        // against the z^n [n]! denominator)
        return t.framed_range_prod(0, n) * t.iqf(n);
    });
    c.evaluated += static_cast<std::int64_t>(slots.size());
    if (boundary2_zero) ++c.skipped;
    EvalResult out;
    out.value = reduce_slots(slots, t.prec()) * t.mono(2 * n, 2 * n * (n - 1));
    out.terms_evaluated = c.evaluated;
    out.terms_skipped_zero = c.skipped;
    return out;
}

template <class T>
EvalResult dispatch_family(const T& t, const KnotId& knot, int threads) {
    switch (knot.family) {
        case KnotId::Family::FiveTwo:
            return eval_triple_t(t, false, 6, threads);
        case KnotId::Family::SixOne:
            return eval_triple_t(t, true, 2, threads);
        case KnotId::Family::Twist:
            return eval_twist_t(t, knot.twist_p);
        case KnotId::Family::Whitehead:
            return eval_wh_t(t, threads);
        case KnotId::Family::FigureEight:
            // FigureEight is the p = 2 twist construction (used only on the
            // generic-point path; the root path uses fig8_sine).
            return eval_twist_t(t, 2);
    }
    throw internal_error("unhandled knot family");
}

}  // namespace

mpfr_prec_t default_precision(std::int64_t N) {
    const std::int64_t bits = 16 * N;
    return bits > 256 ? static_cast<mpfr_prec_t>(bits) : 256;
}

EvalPoint make_eval_point(std::int64_t M_num, std::int64_t M_den,
                          std::int64_t N, mpfr_prec_t precision) {
    if (M_den == 0)
        throw std::invalid_argument("M denominator must be nonzero");
    if (M_den < 0) {
        M_den = -M_den;
        M_num = -M_num;
    }
    if (N < 2) throw std::invalid_argument("N must be at least 2");
    if (precision < 8)
        throw std::invalid_argument("precision must be at least 8 bits");
    const std::int64_t g =
        std::gcd(M_num < 0 ? -M_num : M_num, M_den);
    if (g > 1) {
        M_num /= g;
        M_den /= g;
    }
    const i128 D = static_cast<i128>(M_num) + static_cast<i128>(N - 2) * M_den;
    if (D <= 0)
        throw std::invalid_argument("the evaluation point needs M + N - 2 > 0");
    if (D > (static_cast<i128>(1) << 60))
        throw std::invalid_argument("evaluation point out of supported range");
    EvalPoint pt;
    pt.M_num = M_num;
    pt.M_den = M_den;
    pt.N = N;
    pt.precision = precision;
    return pt;
}

Real eval_qint(std::int64_t k, const EvalPoint& pt_in) {
    const PointData pd = point_data(pt_in);
    const Real pi = const_pi(pd.prec);
    const Real theta = (pi * pd.r) / pd.D;
    return sin(theta * k) / sin(theta);
}

bool eval_framed_is_zero(std::int64_t k, const EvalPoint& pt_in) {
    const PointData pd = point_data(pt_in);
    const i128 v = static_cast<i128>(pd.p) + static_cast<i128>(k) * pd.r;
    return v % pd.D == 0;
}

Real eval_framed(std::int64_t k, const EvalPoint& pt_in) {
    const PointData pd = point_data(pt_in);
    if (eval_framed_is_zero(k, pt_in)) return Real(0, pd.prec);
    const Real pi = const_pi(pd.prec);
    // sin(pi (p + k r)/D) / sin(pi r/D); the numerator index fits in 64 bits
    // by the D <= 2^60 bound from make_eval_point.
    const Real num_ang = (pi * (pd.p + k * pd.r)) / pd.D;
    const Real den_ang = (pi * pd.r) / pd.D;
    return sin(num_ang) / sin(den_ang);
}

Real fig8_sine(const EvalPoint& pt_in) {
    const PointData pd = point_data(pt_in);
    const Real pi = const_pi(pd.prec);
    Real sum(1, pd.prec);
    Real running(1, pd.prec);
    for (std::int64_t i = 1; i <= pd.N - 1; ++i) {
        // factor 2 sin((M-1+t) theta) at t = i-1: angle pi (p - r + t r)/D
        const Real ang = (pi * (pd.p - pd.r + (i - 1) * pd.r)) / pd.D;
        const Real f = sin(ang) * 2;
        running *= f * f;
        sum += running;
    }
    return sum;
}

EvalResult eval_invariant(const KnotId& knot, const EvalPoint& pt_in,
                          int threads) {
    const PointData pd = point_data(pt_in);
    EvalResult out;
    if (knot.family == KnotId::Family::FigureEight) {
        out.value = Complex(fig8_sine(pt_in), Real(0, pd.prec));
        out.precision_used = pd.prec;
        out.terms_evaluated = pd.N;
        out.terms_skipped_zero = 0;
        return out;
    }
    const RootTables t(pd);
    out = dispatch_family(t, knot, threads);
    out.precision_used = pd.prec;
    if (!out.value.is_finite())
        throw numeric_error(
            "evaluation produced a non-finite value at " +
            std::to_string(pd.prec) + " bits");
    return out;
}

EvalResult eval_invariant_auto(const KnotId& knot, std::int64_t M_num,
                               std::int64_t M_den, std::int64_t N,
                               mpfr_prec_t pinned_bits, int threads) {
    if (pinned_bits > 0) {
        return eval_invariant(knot, make_eval_point(M_num, M_den, N,
                                                    pinned_bits),
                              threads);
    }
    mpfr_prec_t prec = default_precision(N);
    EvalResult prev =
        eval_invariant(knot, make_eval_point(M_num, M_den, N, prec), threads);
    const mpq_class tol_q("1/1000000000000");  // 1e-12 relative
    for (int iter = 0; iter < 16; ++iter) {
        prec *= 2;
        if (prec > (1 << 22))
            throw numeric_error(
                "precision escalation exhausted at " + std::to_string(prec) +
                " bits; last magnitude " +
                prev.value.abs().str(6));
        EvalResult cur = eval_invariant(
            knot, make_eval_point(M_num, M_den, N, prec), threads);
        const Real diff = (prev.value - cur.value).abs();
        const Real tol = cur.value.abs() * Real(tol_q, prec);
        if (diff <= tol) return cur;
        prev = std::move(cur);
    }
    throw numeric_error("precision escalation did not converge");
}

std::int64_t eval_survivor_count(const KnotId& knot, std::int64_t N) {
    if (N < 2) throw std::invalid_argument("N must be at least 2");
    const std::int64_t n = N - 1;
    switch (knot.family) {
        case KnotId::Family::FigureEight:
            return N;
        case KnotId::Family::FiveTwo:
        case KnotId::Family::SixOne:
            return (n + 1) * (n + 2) / 2;
        case KnotId::Family::Whitehead:
            // interior pairs + boundaries + the two S tables
            return (n + 1) * (n + 2) + 2;
        case KnotId::Family::Twist: {
            const std::int64_t pp = (knot.twist_p + 1) / 2;
            mpz_class total = 0;
            for (std::int64_t i = 0; i <= n; ++i) {
                mpz_class c;
                mpz_bin_uiui(c.get_mpz_t(),
                             static_cast<unsigned long>(i + pp - 1),
                             static_cast<unsigned long>(pp - 1));
                total += c;
            }
            if (!total.fits_slong_p())
                throw std::invalid_argument(
                    "twist summation lattice too large");
            return total.get_si();
        }
    }
    throw internal_error("unhandled knot family");
}

Complex eval_poly(const BiLaurent& p, const Complex& a, const Complex& q) {
    const mpfr_prec_t prec = std::max(a.prec(), q.prec());
    const Complex one = Complex::from_long(1, prec);
    const Complex ia = one / a;
    const Complex iq = one / q;
    const auto cpow = [&](const Complex& base, const Complex& ibase,
                          std::int64_t e) {
        return e >= 0 ? base.pow(static_cast<std::uint64_t>(e))
                      : ibase.pow(static_cast<std::uint64_t>(-e));
    };
    Complex acc = Complex::zero(prec);
    for (const auto& [e, c] : p.terms()) {
        Complex term = cpow(a, ia, e.ea) * cpow(q, iq, e.eq);
        acc += term.scale(Real(c, prec));
    }
    return acc;
}

Complex eval_ratio(const RationalFn& f, const Complex& a, const Complex& q) {
    return eval_poly(f.num(), a, q) / eval_poly(f.den(), a, q);
}

Complex eval_invariant_at(const KnotId& knot, std::int64_t n, const Complex& a,
                          const Complex& q) {
    if (n < 1)
        throw std::domain_error("colored invariants need color n >= 1");
    const GenericTables t(n, a, q);
    return dispatch_family(t, knot, 1).value;
}

}  // namespace qhomfly
