/// Regenerates the committed diagram fixtures under data/fixtures/.
///
/// Usage: gen_fixtures [output-dir]          (default: data/fixtures)
///
/// Each fixture file stores a planar diagram together with the exact
/// HOMFLY value computed from it, so the files double as regression
/// anchors: loaders can re-evaluate the diagram and compare against the
/// stored polynomial without rebuilding it from a generator.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhomfly/oracle.hpp"
#include "qhomfly/serialize.hpp"

namespace {

struct FixtureSpec {
    std::string name;
    std::string description;
    qhomfly::Diagram diagram;
};

std::vector<FixtureSpec> fixture_list() {
    using qhomfly::braid_closure;
    using qhomfly::twist_knot_diagram;
    using qhomfly::whitehead_diagram;
    std::vector<FixtureSpec> out;
    out.push_back({"unknot",
                   "Closure of the empty one-strand braid (zero crossings).",
                   braid_closure(1, {})});
    out.push_back({"trefoil_braid",
                   "Closure of the two-strand braid with three positive "
                   "crossings (right-handed trefoil).",
                   braid_closure(2, {1, 1, 1})});
    for (std::int64_t p = 2; p <= 5; ++p) {
        out.push_back({"twist_p" + std::to_string(p),
                       "Twist knot with " + std::to_string(p) +
                           " half-twists followed by a clasp.",
                       twist_knot_diagram(p)});
    }
    out.push_back({"whitehead_closed",
                   "Whitehead link as the closure of a three-strand braid.",
                   whitehead_diagram(false)});
    out.push_back({"whitehead_tangle",
                   "Whitehead link with one component cut open into a "
                   "1-1 tangle.",
                   whitehead_diagram(true)});
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path outdir =
        argc > 1 ? std::filesystem::path(argv[1])
                 : std::filesystem::path("data/fixtures");
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) {
        std::cerr << "cannot create " << outdir << ": " << ec.message()
                  << "\n";
        return 1;
    }
    for (const FixtureSpec& f : fixture_list()) {
        const qhomfly::RationalFn value =
            f.diagram.cut ? qhomfly::oracle_tangle(f.diagram)
                          : qhomfly::oracle_homfly(f.diagram);
        nlohmann::json j;
        j["schema"] = 1;
        j["name"] = f.name;
        j["description"] = f.description;
        j["diagram"] = qhomfly::diagram_to_json(f.diagram);
        j["homfly"] = qhomfly::to_json(value);
        const std::filesystem::path path = outdir / (f.name + ".json");
        std::ofstream os(path);
        if (!os) {
            std::cerr << "cannot open " << path << " for writing\n";
            return 1;
        }
        os << j.dump(2) << "\n";
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}
