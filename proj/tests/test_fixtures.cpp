#include <doctest.h>

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhomfly/invariants.hpp"
#include "qhomfly/oracle.hpp"
#include "qhomfly/serialize.hpp"

using namespace qhomfly;

#ifndef QHOMFLY_FIXTURE_DIR
#error "QHOMFLY_FIXTURE_DIR must point at the committed fixture directory"
#endif

namespace {

nlohmann::json load_fixture(const std::string& name) {
    const std::string path =
        std::string(QHOMFLY_FIXTURE_DIR) + "/" + name + ".json";
    std::ifstream is(path);
    REQUIRE_MESSAGE(is.good(), "missing fixture file ", path);
    return nlohmann::json::parse(is);
}

RationalFn evaluate(const Diagram& d) {
    return d.cut ? oracle_tangle(d) : oracle_homfly(d);
}

}  // namespace

TEST_CASE("fixture diagrams evaluate to their stored polynomials") {
    const std::vector<std::string> names = {
        "unknot",           "trefoil_braid",    "twist_p2",
        "twist_p3",         "twist_p4",         "twist_p5",
        "whitehead_closed", "whitehead_tangle"};
    for (const std::string& name : names) {
        CAPTURE(name);
        const nlohmann::json j = load_fixture(name);
        CHECK(j.at("schema").get<int>() == 1);
        CHECK(j.at("name").get<std::string>() == name);
        const Diagram d = diagram_from_json(j.at("diagram"));
        const RationalFn stored = rationalfn_from_json(j.at("homfly"));
        CHECK(evaluate(d).equals(stored));
    }
}

TEST_CASE("fixture diagrams match the current generators") {
    const std::vector<std::pair<std::string, Diagram>> builders = {
        {"unknot", braid_closure(1, {})},
        {"trefoil_braid", braid_closure(2, {1, 1, 1})},
        {"twist_p2", twist_knot_diagram(2)},
        {"twist_p3", twist_knot_diagram(3)},
        {"twist_p4", twist_knot_diagram(4)},
        {"twist_p5", twist_knot_diagram(5)},
        {"whitehead_closed", whitehead_diagram(false)},
        {"whitehead_tangle", whitehead_diagram(true)},
    };
    for (const auto& [name, built] : builders) {
        CAPTURE(name);
        const nlohmann::json j = load_fixture(name);
        CHECK(j.at("diagram") == diagram_to_json(built));
    }
}

TEST_CASE("fixture polynomials agree with the colored formulas at color one") {
    CHECK(rationalfn_from_json(load_fixture("twist_p3").at("homfly"))
              .equals(h_52(1)));
    CHECK(rationalfn_from_json(load_fixture("twist_p4").at("homfly"))
              .equals(h_61(1)));
    CHECK(rationalfn_from_json(load_fixture("twist_p5").at("homfly"))
              .equals(h_twist(5, 1)));
    CHECK(rationalfn_from_json(load_fixture("whitehead_closed").at("homfly"))
              .equals(h_whitehead(1)));
}
