/// @file serialize.hpp
/// @brief JSON (de)serialization for polynomials and quotients.
///
/// A BiLaurent is encoded as an array of term records
///     {"e_a": int, "e_q": int, "coeff_num": "...", "coeff_den": "..."}
/// sorted lexicographically by (e_a, e_q).  Coefficients travel as decimal
/// strings so arbitrarily large integers survive the round trip.
#pragma once

#include <json.hpp>

#include "qhomfly/laurent.hpp"

namespace qhomfly {

inline nlohmann::json to_json(const BiLaurent& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) {
        arr.push_back({{"e_a", e.ea},
                       {"e_q", e.eq},
                       {"coeff_num", c.get_num().get_str()},
                       {"coeff_den", c.get_den().get_str()}});
    }
    return arr;
}

inline BiLaurent bilaurent_from_json(const nlohmann::json& arr) {
    if (!arr.is_array())
        throw std::invalid_argument("polynomial JSON must be an array of terms");
    BiLaurent p;
    for (const auto& t : arr) {
        const mpz_class num(t.at("coeff_num").get<std::string>());
        const mpz_class den(t.at("coeff_den").get<std::string>());
        if (den == 0)
            throw std::invalid_argument("polynomial JSON term with zero coeff_den");
        Rational c(num, den);
        c.canonicalize();
        p.add_term(c, t.at("e_a").get<std::int64_t>(),
                   t.at("e_q").get<std::int64_t>());
    }
    return p;
}

/// Quotients serialize as {"num": [...], "den": [...]}.
inline nlohmann::json to_json(const RationalFn& f) {
    return {{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

inline RationalFn rationalfn_from_json(const nlohmann::json& obj) {
    return RationalFn(bilaurent_from_json(obj.at("num")),
                      bilaurent_from_json(obj.at("den")));
}

}  // namespace qhomfly
