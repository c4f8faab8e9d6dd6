#include "qhomfly/oracle.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qhomfly/errors.hpp"

namespace qhomfly {

namespace {

struct PortRef {
    std::size_t ci;
    bool under;
};

struct Index {
    std::map<std::int64_t, PortRef> consumer;  ///< arc -> crossing it enters
    std::map<std::int64_t, PortRef> emitter;   ///< arc -> crossing it leaves
};

Index build_index(const Diagram& d) {
    Index ix;
    for (std::size_t ci = 0; ci < d.crossings.size(); ++ci) {
        const Crossing& c = d.crossings[ci];
        const auto add = [&](std::map<std::int64_t, PortRef>& m,
                             std::int64_t arc, bool under, const char* what) {
            if (!m.emplace(arc, PortRef{ci, under}).second)
                throw std::invalid_argument("arc " + std::to_string(arc) +
                                            " is used twice as " + what);
        };
        add(ix.consumer, c.under_in, true, "an in-port");
        add(ix.consumer, c.over_in, false, "an in-port");
        add(ix.emitter, c.under_out, true, "an out-port");
        add(ix.emitter, c.over_out, false, "an out-port");
    }
    return ix;
}

struct Visit {
    std::size_t ci;
    bool under;
};

struct Traversal {
    std::vector<Visit> visits;          ///< global visit order
    std::map<std::int64_t, std::int64_t> relabel;  ///< arc -> dense label
    std::size_t closed_components = 0;
};

/// Walks every component: the cut component first (starting on the cut
/// arc), then closed components based at their smallest arc label.
Traversal traverse(const Diagram& d, const Index& ix) {
    Traversal tr;
    std::set<std::int64_t> seen;
    const auto walk = [&](std::int64_t start) {
        std::int64_t cur = start;
        for (;;) {
            seen.insert(cur);
            tr.relabel.emplace(cur,
                               static_cast<std::int64_t>(tr.relabel.size()));
            const auto it = ix.consumer.find(cur);
            if (it == ix.consumer.end()) break;  // bare cut strand
            const PortRef pr = it->second;
            tr.visits.push_back({pr.ci, pr.under});
            const Crossing& c = d.crossings[pr.ci];
            cur = pr.under ? c.under_out : c.over_out;
            if (cur == start) break;
        }
    };
    if (d.cut) walk(*d.cut);
    for (;;) {
        std::int64_t base = 0;
        bool found = false;
        for (const auto& [arc, pr] : ix.consumer) {
            (void)pr;
            if (!seen.count(arc)) {
                base = arc;
                found = true;
                break;
            }
        }
        if (!found) break;
        walk(base);
        ++tr.closed_components;
    }
    return tr;
}

/// First crossing whose first visit arrives on the under strand, if any.
std::optional<std::size_t> first_bad(const Traversal& tr) {
    std::set<std::size_t> met;
    for (const Visit& v : tr.visits)
        if (met.insert(v.ci).second && v.under) return v.ci;
    return std::nullopt;
}

void replace_arc(Diagram& d, std::int64_t from, std::int64_t to) {
    for (Crossing& c : d.crossings) {
        if (c.under_in == from) c.under_in = to;
        if (c.under_out == from) c.under_out = to;
        if (c.over_in == from) c.over_in = to;
        if (c.over_out == from) c.over_out = to;
    }
    if (d.cut && *d.cut == from) d.cut = to;
}

/// Joins the arc emitted as `r` onto the arc consumed as `p` after a
/// crossing was deleted. p == r closes a loop: a free circle, unless it is
/// the cut arc (then a bare open strand remains).
void merge_arcs(Diagram& d, std::int64_t p, std::int64_t r) {
    if (p == r) {
        if (!(d.cut && *d.cut == p)) d.free_loops += 1;
        return;
    }
    replace_arc(d, r, p);
}

/// Removes curls by the first Reidemeister move; each carries a factor
/// a^{sign}. The curl arc must be intact (not the cut arc).
BiLaurent simplify_kinks(Diagram& d) {
    BiLaurent f = BiLaurent::one();
    const auto is_cut = [&](std::int64_t arc) {
        return d.cut && *d.cut == arc;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t ci = 0; ci < d.crossings.size(); ++ci) {
            const Crossing c = d.crossings[ci];
            std::int64_t p = 0;
            std::int64_t r = 0;
            if (c.under_out == c.over_in && !is_cut(c.under_out)) {
                p = c.under_in;
                r = c.over_out;
            } else if (c.over_out == c.under_in && !is_cut(c.over_out)) {
                p = c.over_in;
                r = c.under_out;
            } else {
                continue;
            }
            f = f.times_monomial(1, c.sign, 0);
            d.crossings.erase(d.crossings.begin() +
                              static_cast<std::ptrdiff_t>(ci));
            merge_arcs(d, p, r);
            changed = true;
            break;
        }
    }
    return f;
}

Diagram switched(Diagram d, std::size_t ci) {
    Crossing& c = d.crossings[ci];
    c.sign = -c.sign;
    std::swap(c.under_in, c.over_in);
    std::swap(c.under_out, c.over_out);
    return d;
}

/// Oriented smoothing: the strand entering under exits where the over
/// strand exited, and vice versa.
Diagram smoothed(Diagram d, std::size_t ci) {
    const Crossing c = d.crossings[ci];
    d.crossings.erase(d.crossings.begin() + static_cast<std::ptrdiff_t>(ci));
    merge_arcs(d, c.under_in, c.over_out);
    merge_arcs(d, c.over_in, c.under_out);
    return d;
}

/// Serialization under the traversal relabeling; sound as a memo key and
/// stable across histories that produce the same relabeled diagram.
std::string canonical_key(const Diagram& d, const Traversal& tr) {
    std::vector<std::array<std::int64_t, 5>> rows;
    rows.reserve(d.crossings.size());
    for (const Crossing& c : d.crossings)
        rows.push_back({static_cast<std::int64_t>(c.sign),
                        tr.relabel.at(c.under_in), tr.relabel.at(c.under_out),
                        tr.relabel.at(c.over_in), tr.relabel.at(c.over_out)});
    std::sort(rows.begin(), rows.end());
    std::ostringstream os;
    os << (d.cut ? 'T' : 'C');
    for (const auto& r : rows) {
        for (const std::int64_t v : r) os << ' ' << v;
        os << ';';
    }
    return os.str();
}

std::int64_t writhe(const Diagram& d) {
    std::int64_t w = 0;
    for (const Crossing& c : d.crossings) w += c.sign;
    return w;
}

using Memo = std::map<std::string, RationalFn>;

RationalFn bracket_rec(Diagram d, Memo& memo) {
    RationalFn factor = RationalFn::one();
    const BiLaurent kinks = simplify_kinks(d);
    if (!(kinks == BiLaurent::one())) factor = RationalFn::from_poly(kinks);
    if (d.free_loops > 0) {
        factor *= framed_integer(0).pow(
            static_cast<std::uint64_t>(d.free_loops));
        d.free_loops = 0;
    }
    if (d.crossings.empty()) return factor;
    const Index ix = build_index(d);
    const Traversal tr = traverse(d, ix);
    const auto bad = first_bad(tr);
    if (!bad) {
        // Descending diagram: an unlink in regular isotopy.
        RationalFn base =
            RationalFn::from_poly(BiLaurent::monomial(1, writhe(d), 0));
        base *= framed_integer(0).pow(
            static_cast<std::uint64_t>(tr.closed_components));
        return factor * base;
    }
    const std::string key = canonical_key(d, tr);
    if (const auto it = memo.find(key); it != memo.end())
        return factor * it->second;
    const int s = d.crossings[*bad].sign;
    RationalFn b = bracket_rec(switched(d, *bad), memo);
    const RationalFn sm = RationalFn::from_poly(q_minus_qinv()) *
                          bracket_rec(smoothed(d, *bad), memo);
    if (s > 0)
        b += sm;
    else
        b -= sm;
    memo.emplace(key, b);
    return factor * b;
}

}  // namespace

void validate_diagram(const Diagram& d) {
    if (d.free_loops < 0)
        throw std::invalid_argument("free_loops must be non-negative");
    std::set<std::int64_t> ids;
    for (const Crossing& c : d.crossings) {
        if (c.sign != 1 && c.sign != -1)
            throw std::invalid_argument("crossing " + std::to_string(c.id) +
                                        " has sign outside {+1, -1}");
        if (!ids.insert(c.id).second)
            throw std::invalid_argument("duplicate crossing id " +
                                        std::to_string(c.id));
    }
    const Index ix = build_index(d);
    for (const auto& [arc, pr] : ix.consumer) {
        (void)pr;
        if (!ix.emitter.count(arc))
            throw std::invalid_argument(
                "arc " + std::to_string(arc) +
                " enters a crossing but never leaves one");
    }
    for (const auto& [arc, pr] : ix.emitter) {
        (void)pr;
        if (!ix.consumer.count(arc))
            throw std::invalid_argument(
                "arc " + std::to_string(arc) +
                " leaves a crossing but never enters one");
    }
}

RationalFn framed_bracket(const Diagram& d) {
    validate_diagram(d);
    Memo memo;
    return bracket_rec(d, memo);
}

RationalFn oracle_homfly(const Diagram& d) {
    if (d.cut)
        throw std::invalid_argument(
            "oracle_homfly needs a closed diagram (this one is cut open)");
    const RationalFn b = framed_bracket(d);
    // a^{-w} B / [0;a]: divide the numerator by (a - a^{-1}) exactly, then
    // restore the q - q^{-1} factor.
    BiLaurent num = detail::div_a_minus_ainv(b.num()) * q_minus_qinv();
    return RationalFn(num.times_monomial(1, -writhe(d), 0), b.den());
}

RationalFn oracle_tangle(const Diagram& d) {
    if (!d.cut)
        throw std::invalid_argument(
            "oracle_tangle needs a cut-open diagram");
    const RationalFn b = framed_bracket(d);
    return RationalFn(b.num().times_monomial(1, -writhe(d), 0), b.den());
}

bool skein_triple_check(const Diagram& d, std::int64_t crossing_id) {
    validate_diagram(d);
    std::size_t ci = d.crossings.size();
    for (std::size_t t = 0; t < d.crossings.size(); ++t)
        if (d.crossings[t].id == crossing_id) ci = t;
    if (ci == d.crossings.size())
        throw std::invalid_argument("no crossing has id " +
                                    std::to_string(crossing_id));
    const Diagram other = switched(d, ci);
    const Diagram& plus = d.crossings[ci].sign > 0 ? d : other;
    const Diagram& minus = d.crossings[ci].sign > 0 ? other : d;
    const RationalFn lhs = framed_bracket(plus) - framed_bracket(minus);
    const RationalFn rhs = RationalFn::from_poly(q_minus_qinv()) *
                           framed_bracket(smoothed(d, ci));
    return lhs.equals(rhs);
}

Diagram braid_closure(int strands, const std::vector<int>& word) {
    if (strands < 1)
        throw std::invalid_argument("braid closure needs strands >= 1");
    Diagram d;
    std::vector<std::int64_t> current(static_cast<std::size_t>(strands));
    for (int i = 0; i < strands; ++i)
        current[static_cast<std::size_t>(i)] = i;
    std::int64_t next_arc = strands;
    std::int64_t next_id = 1;
    for (const int letter : word) {
        const int k = std::abs(letter);
        if (k < 1 || k >= strands)
            throw std::invalid_argument("braid letter " +
                                        std::to_string(letter) +
                                        " is out of range");
        const std::size_t i = static_cast<std::size_t>(k - 1);
        const std::int64_t A = current[i];
        const std::int64_t B = current[i + 1];
        const std::int64_t n1 = next_arc++;
        const std::int64_t n2 = next_arc++;
        Crossing c;
        c.id = next_id++;
        if (letter > 0) {
            // strand at position k crosses over strand k+1
            c.sign = +1;
            c.over_in = A;
            c.over_out = n2;
            c.under_in = B;
            c.under_out = n1;
        } else {
            c.sign = -1;
            c.under_in = A;
            c.under_out = n2;
            c.over_in = B;
            c.over_out = n1;
        }
        d.crossings.push_back(c);
        current[i] = n1;
        current[i + 1] = n2;
    }
    for (int i = 0; i < strands; ++i) {
        const std::int64_t last = current[static_cast<std::size_t>(i)];
        if (last == i) {
            d.free_loops += 1;  // strand untouched by any letter
            continue;
        }
        replace_arc(d, last, i);
    }
    return d;
}

Diagram detail::twist_template(std::int64_t p, bool parity, int eps_t,
                               int eps_c) {
    if (p < 2)
        throw std::invalid_argument("twist template needs p >= 2");
    const std::int64_t C = p + 2;
    struct Station {
        std::int64_t id;
        bool over;
    };
    std::vector<Station> seq;
    seq.reserve(static_cast<std::size_t>(2 * C));
    const auto first_over = [&](std::int64_t t) {
        const bool over = (t % 2 == 0);
        return parity ? over : !over;
    };
    for (std::int64_t t = 0; t < p; ++t) seq.push_back({t + 1, first_over(t)});
    seq.push_back({p + 1, true});   // clasp d_1, first pass
    seq.push_back({p + 2, false});  // clasp d_2, first pass
    for (std::int64_t t = p - 1; t >= 0; --t)
        seq.push_back({t + 1, !first_over(t)});
    seq.push_back({p + 2, true});   // clasp d_2, second pass
    seq.push_back({p + 1, false});  // clasp d_1, second pass
    std::map<std::int64_t, Crossing> cr;
    for (std::int64_t k = 0; k < 2 * C; ++k) {
        const Station st = seq[static_cast<std::size_t>(k)];
        Crossing& c = cr[st.id];
        c.id = st.id;
        c.sign = st.id <= p ? eps_t : eps_c;
        const std::int64_t in = (k + 2 * C - 1) % (2 * C);
        const std::int64_t out = k;
        if (st.over) {
            c.over_in = in;
            c.over_out = out;
        } else {
            c.under_in = in;
            c.under_out = out;
        }
    }
    Diagram d;
    for (const auto& [id, c] : cr) {
        (void)id;
        d.crossings.push_back(c);
    }
    return d;
}

BiLaurent detail::div_a_minus_ainv(const BiLaurent& p) {
    if (p.is_zero()) return {};
    using QP = std::map<std::int64_t, Rational>;
    std::map<std::int64_t, QP> slices;
    for (const auto& [e, c] : p.terms()) slices[e.ea][e.eq] = c;
    const std::int64_t hi = slices.rbegin()->first;
    const std::int64_t lo = slices.begin()->first;
    const auto add_into = [](QP& x, const QP& y) {
        for (const auto& [eq, c] : y) {
            Rational& t = x[eq];
            t += c;
            if (t == 0) x.erase(eq);
        }
    };
    // p = (a - a^{-1}) q means p_k = q_{k-1} - q_{k+1}; solve from the top.
    std::map<std::int64_t, QP> quot;
    for (std::int64_t k = hi; k >= lo; --k) {
        QP v;
        if (const auto it = slices.find(k); it != slices.end()) v = it->second;
        if (const auto it = quot.find(k + 1); it != quot.end())
            add_into(v, it->second);
        if (!v.empty()) quot[k - 1] = std::move(v);
    }
    // Exactness: both trailing solutions must vanish, otherwise the
    // division has a remainder.
    if (quot.count(lo) || quot.count(lo - 1))
        throw internal_error(
            "division by (a - a^{-1}) left a remainder");
    BiLaurent out;
    for (const auto& [k, slice] : quot)
        for (const auto& [eq, c] : slice) out.add_term(c, k, eq);
    return out;
}

Diagram twist_knot_diagram(std::int64_t p) {
    if (p < 2)
        throw std::invalid_argument("twist knots need p >= 2 crossings in "
                                    "the twist region");
    // After p half-twists the two strands entering the clasp are parallel
    // for even p and antiparallel for odd p, which flips the sign of the
    // clasp crossings; the twist crossings are negative throughout.
    return detail::twist_template(p, false, -1, p % 2 == 0 ? +1 : -1);
}

Diagram whitehead_diagram(bool cut) {
    Diagram d = braid_closure(3, {-1, 2, -1, 2, -1});
    // The braid permutation fixes strand 1 and swaps strands 2 and 3, so
    // arc 0 closes the single-strand component; cutting it there opens the
    // link into a 1-1 tangle.
    if (cut) d.cut = 0;
    return d;
}

nlohmann::json diagram_to_json(const Diagram& d) {
    nlohmann::json j;
    j["crossings"] = nlohmann::json::array();
    for (const Crossing& c : d.crossings) {
        j["crossings"].push_back({{"id", c.id},
                                  {"sign", c.sign},
                                  {"under_in", c.under_in},
                                  {"under_out", c.under_out},
                                  {"over_in", c.over_in},
                                  {"over_out", c.over_out}});
    }
    if (d.cut) j["cut"] = *d.cut;
    if (d.free_loops != 0) j["free_loops"] = d.free_loops;
    return j;
}

Diagram diagram_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("crossings") ||
        !j["crossings"].is_array())
        throw std::invalid_argument(
            "diagram JSON needs a 'crossings' array");
    Diagram d;
    for (const auto& cj : j["crossings"]) {
        Crossing c;
        c.id = cj.at("id").get<std::int64_t>();
        c.sign = cj.at("sign").get<int>();
        c.under_in = cj.at("under_in").get<std::int64_t>();
        c.under_out = cj.at("under_out").get<std::int64_t>();
        c.over_in = cj.at("over_in").get<std::int64_t>();
        c.over_out = cj.at("over_out").get<std::int64_t>();
        d.crossings.push_back(c);
    }
    if (j.contains("cut")) d.cut = j["cut"].get<std::int64_t>();
    if (j.contains("free_loops"))
        d.free_loops = j["free_loops"].get<std::int64_t>();
    validate_diagram(d);
    return d;
}

}  // namespace qhomfly
