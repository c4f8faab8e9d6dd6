/// @file oracle.hpp
/// Independent diagram-level evaluator for the (uncolored) two-variable
/// skein invariant. Diagrams are oriented crossing lists over integer arc
/// labels; the evaluator resolves them by the classical switch-and-smooth
/// recursion for the regular-isotopy bracket B:
///
///   B(L+) - B(L-) = (q - q^{-1}) B(L0),
///   B(positive kink) = a B,   B(unknot) = [0;a] = (a - a^{-1})/(q - q^{-1}),
///
/// and normalizes by the writhe, giving an invariant P with
/// a P(L+) - a^{-1} P(L-) = (q - q^{-1}) P(L0) and P(unknot) = 1.
///
/// This path shares no code with the closed-form invariants and serves as
/// their ground-truth cross-check at color one.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhomfly/laurent.hpp"

namespace qhomfly {

/// One oriented crossing. Arc labels are arbitrary integers; each arc enters
/// exactly one crossing port (as *_in) and leaves exactly one (as *_out).
struct Crossing {
    std::int64_t id = 0;
    int sign = +1;  ///< +1 or -1
    std::int64_t under_in = 0;
    std::int64_t under_out = 0;
    std::int64_t over_in = 0;
    std::int64_t over_out = 0;
};

/// An oriented link diagram, optionally cut open along one arc (making the
/// component through that arc a 1-1 tangle), plus crossing-free circles.
struct Diagram {
    std::vector<Crossing> crossings;
    /// Arc along which the diagram is cut open; the cut point sits in the
    /// middle of that arc. A cut arc that touches no crossing is a bare
    /// strand and may then appear nowhere in `crossings`.
    std::optional<std::int64_t> cut;
    /// Crossing-free circles carried alongside the crossing data.
    std::int64_t free_loops = 0;
};

/// Structural validation: signs are ±1, every arc occurs exactly once as an
/// in-port and once as an out-port (a crossing-free cut arc may be absent
/// entirely), crossing ids are unique, free_loops >= 0.
/// @throws std::invalid_argument describing the first violation.
void validate_diagram(const Diagram& d);

/// Regular-isotopy bracket B of the diagram (kinks contribute a^{±1}, each
/// closed unknot component contributes [0;a]). Denominators are powers of
/// q - q^{-1} only.
RationalFn framed_bracket(const Diagram& d);

/// Writhe-normalized invariant a^{-w} B / [0;a] of a closed diagram.
/// @throws std::invalid_argument if the diagram is cut open.
RationalFn oracle_homfly(const Diagram& d);

/// Writhe-normalized scalar a^{-w} B of a 1-1 tangle (a diagram with a cut).
/// Closing the tangle multiplies this by [0;a], so for a cut-open link
/// diagram the tangle value equals the closed diagram's oracle_homfly.
/// @throws std::invalid_argument if the diagram is not cut open.
RationalFn oracle_tangle(const Diagram& d);

/// Verifies the skein relation B(L+) - B(L-) = (q - q^{-1}) B(L0) at the
/// crossing with the given id, by evaluating all three diagrams.
/// @throws std::invalid_argument if no crossing has that id.
bool skein_triple_check(const Diagram& d, std::int64_t crossing_id);

/// Closure of a braid word on `strands` strands: letter +k (1 <= k <
/// strands) is the positive Artin generator crossing strand k over strand
/// k+1, and -k its inverse.
/// @throws std::invalid_argument for out-of-range letters or strands < 1.
Diagram braid_closure(int strands, const std::vector<int>& word);

/// Standard twist-knot diagram with p half-twists closed by a clasp
/// (p + 2 crossings): p = 2 is the figure-eight knot, p = 3 the knot 5_2,
/// p = 4 the knot 6_1. Matches the conventions of the closed-form
/// invariants in invariants.hpp.
/// @throws std::invalid_argument unless p >= 2.
Diagram twist_knot_diagram(std::int64_t p);

/// Whitehead-link diagram: the closure of the 3-strand braid
/// (sigma_1^{-1} sigma_2)^2 sigma_1^{-1} (5 crossings, linking number 0).
/// With `cut` the single-strand component is opened into a 1-1 tangle;
/// either way the value matches h_whitehead at color one.
Diagram whitehead_diagram(bool cut);

/// JSON (de)serialization of diagrams; the format mirrors the struct:
/// {"crossings":[{"id","sign","under_in","under_out","over_in","over_out"}],
///  "cut": <arc>?, "free_loops": <count>?}.
nlohmann::json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const nlohmann::json& j);

namespace detail {

/// Parametrized twist-knot template used by twist_knot_diagram and the
/// calibration tests: `parity` flips which twist passes run over/under,
/// eps_t / eps_c are the signs of the twist and clasp crossings.
Diagram twist_template(std::int64_t p, bool parity, int eps_t, int eps_c);

/// Exact division by (a - a^{-1}) along the a-degree slices.
/// @throws internal_error if the division leaves a remainder.
BiLaurent div_a_minus_ainv(const BiLaurent& p);

}  // namespace detail

}  // namespace qhomfly
