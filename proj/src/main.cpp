/// @file main.cpp
/// Command-line front end.
///
/// Subcommands:
///   invariant  exact reduced colored invariant of a knot family,
///   evaluate   high-precision value at a root-of-unity point q = e^{i pi/(M+N-2)},
///   asympt     growth-rate sequence (x,y) = 2 pi Log(H_{M,N+1}/H_{M,N}) over N,
///   grid       x-values over the rational angle grid M_k at fixed N,
///   integral   the limiting log-sine integral f(x) on [0, 5/6],
///   oracle     diagram-level re-evaluation of a stored fixture (cross-check).
///
/// Exit codes: 0 success, 2 usage / precondition error, 3 numeric failure,
/// 4 internal inconsistency.
///
/// All output is deterministic: JSON objects carry alphabetically ordered
/// keys, CSV rows print a fixed digit count derived from the working
/// precision, and repeated runs with different --threads are byte-identical.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qhomfly/asymptotics.hpp"
#include "qhomfly/errors.hpp"
#include "qhomfly/invariants.hpp"
#include "qhomfly/numeric_eval.hpp"
#include "qhomfly/oracle.hpp"
#include "qhomfly/serialize.hpp"

#ifndef QHOMFLY_DEFAULT_FIXTURE_DIR
#define QHOMFLY_DEFAULT_FIXTURE_DIR ""
#endif

namespace {

using nlohmann::json;
using qhomfly::BiLaurent;
using qhomfly::ColoredInvariant;
using qhomfly::Diagram;
using qhomfly::EvalResult;
using qhomfly::internal_error;
using qhomfly::KnotId;
using qhomfly::RationalFn;
using qhomfly::Real;
using qhomfly::Reduction;

// ---------------------------------------------------------------------------
// small shared helpers
// ---------------------------------------------------------------------------

/// Exact rational from "p", "p/q" or a decimal literal like "1.3" (sign
/// allowed). Reduced; |numerator| and denominator are capped at 1e9.
mpq_class parse_rational(const std::string& text) {
    const auto fail = [&text]() -> mpq_class {
        throw std::invalid_argument("invalid rational '" + text +
                                    "' (use an integer, num/den, or a decimal "
                                    "like 1.3)");
    };
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = (s[0] == '-');
        s.erase(0, 1);
    }
    const auto digits_only = [](const std::string& t) {
        return !t.empty() &&
               std::all_of(t.begin(), t.end(), [](unsigned char c) {
                   return std::isdigit(c) != 0;
               });
    };
    mpq_class v;
    const auto slash = s.find('/');
    const auto dot = s.find('.');
    if (slash != std::string::npos) {
        const std::string a = s.substr(0, slash);
        const std::string b = s.substr(slash + 1);
        if (!digits_only(a) || !digits_only(b)) return fail();
        const mpz_class num(a), den(b);
        if (den == 0) return fail();
        v = mpq_class(num, den);
    } else if (dot != std::string::npos) {
        const std::string a = s.substr(0, dot);
        const std::string b = s.substr(dot + 1);
        if (!digits_only(a) || !digits_only(b)) return fail();
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10,
                      static_cast<unsigned long>(b.size()));
        const mpz_class num = mpz_class(a) * scale + mpz_class(b);
        v = mpq_class(num, scale);
    } else {
        if (!digits_only(s)) return fail();
        v = mpq_class(mpz_class(s));
    }
    v.canonicalize();
    if (neg) v = -v;
    const mpz_class bound(1000000000L);
    if (abs(v.get_num()) > bound || v.get_den() > bound)
        throw std::invalid_argument("rational '" + text +
                                    "' out of range (|num| and den must stay "
                                    "<= 1e9 after reduction)");
    return v;
}

struct RatParts {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

RatParts rational_parts(const mpq_class& v) {
    // parse_rational caps both sides at 1e9, so the conversion is safe.
    return {v.get_num().get_si(), v.get_den().get_si()};
}

/// Working precision from the --prec flag, falling back to the
/// QHOMFLY_PREC_BITS environment variable; 0 means automatic escalation.
mpfr_prec_t effective_prec(std::int64_t flag) {
    std::int64_t v = flag;
    if (v == 0) {
        if (const char* e = std::getenv("QHOMFLY_PREC_BITS"); e && *e) {
            char* end = nullptr;
            const long parsed = std::strtol(e, &end, 10);
            if (end == e || *end != '\0')
                throw std::invalid_argument(
                    "QHOMFLY_PREC_BITS must be an integer number of bits");
            v = parsed;
        }
    }
    if (v == 0) return 0;
    if (v < 8 || v > (std::int64_t{1} << 22))
        throw std::invalid_argument(
            "precision must be between 8 and 4194304 bits");
    return static_cast<mpfr_prec_t>(v);
}

/// Printed significant digits for values computed at `bits` working
/// precision: floor(bits log10 2) - 8 guard digits, clamped to [6, 30].
int out_digits(mpfr_prec_t bits) {
    const double log10_2 = 0.30102999566398120;
    long d = static_cast<long>(
                 std::floor(static_cast<double>(bits) * log10_2)) -
             8;
    d = std::min<long>(30, std::max<long>(6, d));
    return static_cast<int>(d);
}

/// "from:to:step" with integer fields and step >= 1.
struct NRange {
    std::int64_t from = 0;
    std::int64_t to = 0;
    std::int64_t step = 1;
};

NRange parse_range(const std::string& text) {
    const auto fail = [&text]() -> NRange {
        throw std::invalid_argument("invalid range '" + text +
                                    "' (expected from:to:step)");
    };
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) return fail();
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
        return fail();
    const auto to_int = [&fail](const std::string& part) {
        if (part.empty()) fail();
        errno = 0;
        char* end = nullptr;
        const long long v = std::strtoll(part.c_str(), &end, 10);
        if (errno != 0 || end != part.c_str() + part.size()) fail();
        return static_cast<std::int64_t>(v);
    };
    NRange r;
    r.from = to_int(text.substr(0, c1));
    r.to = to_int(text.substr(c1 + 1, c2 - c1 - 1));
    r.step = to_int(text.substr(c2 + 1));
    if (r.step < 1)
        throw std::invalid_argument("range step must be >= 1");
    return r;
}

/// Upper bound on N for the summand-level evaluators; the sine-product
/// figure-eight path is cheap and allowed much further.
void guard_numeric(const KnotId& k, std::int64_t max_N) {
    if (max_N < 2) throw std::invalid_argument("N must be >= 2");
    const std::int64_t cap =
        (k.family == KnotId::Family::FigureEight) ? 5000 : 400;
    if (max_N > cap)
        throw std::invalid_argument(
            "N = " + std::to_string(max_N) + " exceeds the " +
            qhomfly::knot_name(k) + " evaluation guard (N <= " +
            std::to_string(cap) + ")");
    if (k.family == KnotId::Family::Twist &&
        qhomfly::eval_survivor_count(k, max_N) > 2000000)
        throw std::invalid_argument(
            "twist summation has more than 2e6 surviving terms at N = " +
            std::to_string(max_N) + "; lower N or the twist parameter");
}

/// Size guard for the exact symbolic computation (term counts explode
/// combinatorially in the color).
void guard_symbolic(const KnotId& k, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("color n must be >= 1");
    switch (k.family) {
        case KnotId::Family::FigureEight:
            throw std::domain_error(
                "the figure-eight invariant has no exact sum form here; use "
                "`evaluate --knot 4_1`");
        case KnotId::Family::Whitehead:
            if (n > 6)
                throw std::invalid_argument(
                    "color n <= 6 for the exact Whitehead computation");
            break;
        case KnotId::Family::Twist:
            if (k.twist_p > 20)
                throw std::invalid_argument(
                    "twist parameter p <= 20 for the exact computation");
            [[fallthrough]];
        default:
            if (n > 8)
                throw std::invalid_argument(
                    "color n <= 8 for the exact computation");
            break;
    }
}

/// Writes `content` to stdout, or atomically (temp file + rename) to `path`.
void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp(target);
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw std::invalid_argument("cannot open output file '" +
                                        tmp.string() + "'");
        os << content;
        os.flush();
        if (!os)
            throw std::invalid_argument("failed while writing '" +
                                        tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

/// Shared JSON / text rendering of a reduced invariant, used by both the
/// closed-form path and the diagram oracle so equal values print identically.
std::string render_reduction(const BiLaurent& reduced, const BiLaurent& clearing,
                             const std::string& format) {
    if (format == "text") {
        std::string s = reduced.str();
        if (!(clearing == BiLaurent::one()))
            s = "(" + s + ") / (" + clearing.str() + ")";
        return s + "\n";
    }
    json j;
    j["clearing"] = qhomfly::to_json(clearing);
    j["reduced"] = qhomfly::to_json(reduced);
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// subcommand bodies
// ---------------------------------------------------------------------------

struct Options {
    std::string knot;
    std::string M;
    std::string range;
    std::string fixture;
    std::string format = "json";
    std::string out;
    std::string x_from = "0";
    std::string x_to = "5/6";
    std::int64_t n = 0;
    std::int64_t N = 0;
    std::int64_t divisions = 12;
    std::int64_t steps = 100;
    std::int64_t prec = 0;
    int threads = 1;
};

void cmd_invariant(const Options& o) {
    const KnotId k = qhomfly::knot_from_string(o.knot);
    guard_symbolic(k, o.n);
    const ColoredInvariant inv = qhomfly::compute_invariant(k, o.n);
    if (!inv.reduced)
        throw internal_error("computed invariant carries no reduction");
    write_output(o.out, render_reduction(*inv.reduced, inv.clearing, o.format));
}

void cmd_evaluate(const Options& o) {
    const KnotId k = qhomfly::knot_from_string(o.knot);
    const RatParts m = rational_parts(parse_rational(o.M));
    guard_numeric(k, o.N);
    const mpfr_prec_t pinned = effective_prec(o.prec);
    const EvalResult r =
        qhomfly::eval_invariant_auto(k, m.num, m.den, o.N, pinned, o.threads);
    const int dg = out_digits(r.precision_used);
    json j;
    j["im"] = r.value.im.str(dg);
    j["precision_used"] = static_cast<std::int64_t>(r.precision_used);
    j["re"] = r.value.re.str(dg);
    j["terms_evaluated"] = r.terms_evaluated;
    j["terms_skipped_zero"] = r.terms_skipped_zero;
    write_output(o.out, j.dump(2) + "\n");
}

void cmd_asympt(const Options& o) {
    const KnotId k = qhomfly::knot_from_string(o.knot);
    const RatParts m = rational_parts(parse_rational(o.M));
    const NRange r = parse_range(o.range);
    if (r.from < 2) throw std::invalid_argument("N range must start at >= 2");
    if (r.from <= r.to) guard_numeric(k, r.to + 1);  // the pair at N uses N+1
    const mpfr_prec_t pinned = effective_prec(o.prec);
    const auto seq = qhomfly::xy_sequence(k, m.num, m.den, r.from, r.to,
                                          r.step, pinned, o.threads);
    std::ostringstream os;
    os << "M_num,M_den,N,x,y\n";
    for (const auto& s : seq) {
        const int dg = out_digits(s.precision_used);
        os << s.M.get_num().get_str() << ',' << s.M.get_den().get_str() << ','
           << s.N << ',' << s.x.str(dg) << ',' << s.y.str(dg) << '\n';
    }
    write_output(o.out, os.str());
}

void cmd_grid(const Options& o) {
    const KnotId k = qhomfly::knot_from_string(o.knot);
    guard_numeric(k, o.N + 1);  // each grid point pairs N with N+1
    const mpfr_prec_t pinned = effective_prec(o.prec);
    const auto rows =
        qhomfly::integral_analogue(k, o.N, o.divisions, pinned, o.threads);
    std::ostringstream os;
    os << "k,divisions,M_num,M_den,N,x\n";
    for (const auto& g : rows) {
        const int dg = out_digits(g.precision_used);
        os << g.k << ',' << g.divisions << ',' << g.M.get_num().get_str()
           << ',' << g.M.get_den().get_str() << ',' << g.N << ','
           << g.x.str(dg) << '\n';
    }
    write_output(o.out, os.str());
}

void cmd_integral(const Options& o) {
    const mpq_class x0 = parse_rational(o.x_from);
    const mpq_class x1 = parse_rational(o.x_to);
    if (o.steps < 1 || o.steps > 10000)
        throw std::invalid_argument("steps must be between 1 and 10000");
    mpfr_prec_t prec = effective_prec(o.prec);
    if (prec == 0) prec = 256;
    const int dg = out_digits(prec);
    std::vector<mpq_class> xs;
    if (x0 == x1) {
        xs.push_back(x0);
    } else {
        const mpq_class span = x1 - x0;
        for (std::int64_t i = 0; i <= o.steps; ++i) {
            mpq_class xi = x0 + span * mpq_class(static_cast<long>(i)) /
                                    mpq_class(static_cast<long>(o.steps));
            xi.canonicalize();
            xs.push_back(xi);
        }
    }
    std::ostringstream os;
    os << "x,f\n";
    for (const auto& xi : xs) {
        const Real fx = qhomfly::f_integral(xi, prec);
        os << Real(xi, prec).str(dg) << ',' << fx.str(dg) << '\n';
    }
    write_output(o.out, os.str());
}

/// Maps knot-style spellings to fixture file stems; unknown names pass
/// through verbatim (whitehead_tangle, trefoil_braid, ...).
std::string resolve_fixture_name(const std::string& s) {
    if (s == "4_1") return "twist_p2";
    if (s == "5_2") return "twist_p3";
    if (s == "6_1") return "twist_p4";
    if (s == "wh" || s == "whitehead") return "whitehead_closed";
    if (s.rfind("twist:", 0) == 0) return "twist_p" + s.substr(6);
    return s;
}

void cmd_oracle(const Options& o) {
    namespace fs = std::filesystem;
    std::string path = o.fixture;
    if (!(fs::exists(path) && fs::is_regular_file(path))) {
        const char* env = std::getenv("QHOMFLY_FIXTURE_DIR");
        const std::string dir =
            (env && *env) ? env : std::string(QHOMFLY_DEFAULT_FIXTURE_DIR);
        path = dir + "/" + resolve_fixture_name(o.fixture) + ".json";
        if (!fs::exists(path))
            throw std::invalid_argument("unknown fixture '" + o.fixture +
                                        "' (no file " + path + ")");
    }
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::invalid_argument("cannot read fixture file '" + path + "'");
    Diagram d;
    RationalFn fresh;
    bool has_stored = false;
    RationalFn stored;
    try {
        json j;
        is >> j;
        d = qhomfly::diagram_from_json(j.at("diagram"));
        qhomfly::validate_diagram(d);
        fresh = d.cut ? qhomfly::oracle_tangle(d) : qhomfly::oracle_homfly(d);
        if (j.contains("homfly")) {
            stored = qhomfly::rationalfn_from_json(j.at("homfly"));
            has_stored = true;
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument("fixture file '" + path +
                                    "' is malformed: " + e.what());
    }
    if (has_stored && !fresh.equals(stored))
        throw internal_error(
            "oracle mismatch: re-evaluated diagram disagrees with the stored "
            "value in " + path);
    const Reduction red = qhomfly::reduce_with_clearing(fresh);
    write_output(o.out, render_reduction(red.reduced, red.clearing, o.format));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Colored two-variable invariants of twist knots and the Whitehead "
        "link: exact reduced polynomials, high-precision root-of-unity "
        "evaluation, growth-rate sequences, and a diagram-level oracle."};
    app.require_subcommand(1);
    Options o;

    const std::string knot_help =
        "knot family: 4_1, 5_2, 6_1, wh, or twist:<p> (p >= 3)";
    const std::string prec_help =
        "working precision in bits (default: QHOMFLY_PREC_BITS env or "
        "automatic escalation)";
    const std::string out_help = "write output to this file (atomic)";
    const std::string threads_help = "worker threads (results are identical "
                                     "for every value)";

    CLI::App* inv = app.add_subcommand(
        "invariant", "Exact reduced colored invariant of a knot family");
    inv->add_option("--knot", o.knot, knot_help)->required();
    inv->add_option("--n", o.n, "color (symmetric-power index, n >= 1)")
        ->required();
    inv->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    inv->add_option("--out", o.out, out_help);

    CLI::App* ev = app.add_subcommand(
        "evaluate",
        "Evaluate the color-(N-1) invariant at q = exp(i pi/(M+N-2)), a = q^M");
    ev->add_option("--knot", o.knot, knot_help)->required();
    ev->add_option("--M", o.M, "rational parameter M (e.g. 2, 13/10, 1.3)")
        ->required();
    ev->add_option("--N", o.N, "color parameter N >= 2")->required();
    ev->add_option("--prec", o.prec, prec_help);
    ev->add_option("--threads", o.threads, threads_help)
        ->check(CLI::Range(1, 64));
    ev->add_option("--out", o.out, out_help);

    CLI::App* as = app.add_subcommand(
        "asympt",
        "Growth-rate sequence (x,y) = 2 pi Log(H_{M,N+1}/H_{M,N}) over N");
    as->add_option("--knot", o.knot, knot_help)->required();
    as->add_option("--M", o.M, "rational parameter M")->required();
    as->add_option("--N-range", o.range, "N values as from:to:step")
        ->required();
    as->add_option("--prec", o.prec, prec_help);
    as->add_option("--threads", o.threads, threads_help)
        ->check(CLI::Range(1, 64));
    as->add_option("--out", o.out, out_help);

    CLI::App* gr = app.add_subcommand(
        "grid", "x-values over the rational angle grid M_k at fixed N");
    gr->add_option("--knot", o.knot, knot_help)->required();
    gr->add_option("--N", o.N, "color parameter N >= 2")->required();
    gr->add_option("--divisions", o.divisions,
                   "grid divisions (rows k = 1..divisions-1)")
        ->check(CLI::Range(std::int64_t{2}, std::int64_t{1000}));
    gr->add_option("--prec", o.prec, prec_help);
    gr->add_option("--threads", o.threads, threads_help)
        ->check(CLI::Range(1, 64));
    gr->add_option("--out", o.out, out_help);

    CLI::App* in = app.add_subcommand(
        "integral", "Limiting log-sine integral f(x) over a rational grid");
    in->add_option("--x-from", o.x_from, "left endpoint (rational in [0,5/6])");
    in->add_option("--x-to", o.x_to, "right endpoint (rational in [0,5/6])");
    in->add_option("--steps", o.steps, "number of subintervals");
    in->add_option("--prec", o.prec, prec_help);
    in->add_option("--out", o.out, out_help);

    CLI::App* orc = app.add_subcommand(
        "oracle",
        "Re-evaluate a stored diagram fixture and print its reduction");
    orc->add_option("--fixture", o.fixture,
                    "fixture name (unknot, 5_2, twist:4, whitehead_tangle, "
                    "...) or a JSON file path")
        ->required();
    orc->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    orc->add_option("--out", o.out, out_help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(inv)) cmd_invariant(o);
        else if (app.got_subcommand(ev)) cmd_evaluate(o);
        else if (app.got_subcommand(as)) cmd_asympt(o);
        else if (app.got_subcommand(gr)) cmd_grid(o);
        else if (app.got_subcommand(in)) cmd_integral(o);
        else if (app.got_subcommand(orc)) cmd_oracle(o);
        return 0;
    } catch (const qhomfly::numeric_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
