#include "ohcp/fixtures.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace ohcp {

const std::vector<Fixture>& builtin_fixtures() {
    static const std::vector<Fixture> all = [] {
        std::vector<Fixture> f;

        f.push_back({"square",
                     "two triangles glued along a diagonal",
                     {{0, 1, 2}, {0, 2, 3}},
                     0, {}, 1, 0, "yes"});

        f.push_back({"tetrahedron",
                     "boundary of the 3-simplex",
                     {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}},
                     0, {}, 1, 0, "yes"});

        f.push_back({"mobius5",
                     "five-triangle one-sided band",
                     {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {1, 4, 5}, {1, 2, 5}},
                     1, {}, 0, 1, "no"});

        f.push_back({"filled_core",
                     "five-triangle band with its core circle coned off by a new apex",
                     {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {1, 4, 5}, {1, 2, 5},
                      {1, 2, 6}, {2, 3, 6}, {3, 4, 6}, {4, 5, 6}, {1, 5, 6}},
                     0, {}, 0, 16, "yes"});

        f.push_back({"rp2",
                     "six-vertex closed non-orientable surface",
                     {{1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 6}, {1, 5, 6},
                      {2, 3, 5}, {2, 3, 6}, {2, 4, 6}, {3, 4, 5}, {4, 5, 6}},
                     0, {2}, 0, -1, ""});

        f.push_back({"pinched",
                     "analog of a band pinched so that a narrower band sits inside it",
                     {{1, 2, 3}, {1, 2, 9}, {1, 3, 4}, {1, 4, 6}, {1, 6, 7},
                      {1, 8, 9}, {2, 3, 4}, {6, 7, 8}, {7, 8, 9}},
                     1, {}, 0, 2, ""});

        f.push_back({"strip_edge",
                     "analog of a band self-intersecting along one edge",
                     {{0, 1, 2}, {1, 2, 3}, {0, 2, 3}, {0, 1, 3},
                      {0, 1, 4}, {1, 4, 5}, {0, 4, 5}, {0, 1, 5}},
                     -1, {}, 1, 0, "yes"});

        return f;
    }();
    return all;
}

const Fixture& fixture(const std::string& name) {
    for (const Fixture& f : builtin_fixtures())
        if (f.name == name) return f;
    throw InternalError("unknown fixture '" + name + "'");
}

void write_fixtures(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    nlohmann::json manifest = nlohmann::json::array();
    for (const Fixture& f : builtin_fixtures()) {
        std::string file = f.name + ".cplx";
        std::ofstream out(fs::path(dir) / file);
        if (!out) throw ParseError(dir + "/" + file + ": cannot write file");
        out << "# " << f.description << "\n";
        for (const auto& verts : f.maximal) {
            for (size_t i = 0; i < verts.size(); ++i) out << (i ? " " : "") << verts[i];
            out << "\n";
        }

        nlohmann::json e;
        e["name"] = f.name;
        e["file"] = file;
        e["description"] = f.description;
        nlohmann::json exp = nlohmann::json::object();
        if (f.expected_h1_betti >= 0) {
            exp["h1_betti"] = f.expected_h1_betti;
            exp["h1_torsion"] = f.expected_h1_torsion;
        }
        if (f.expected_tu >= 0) exp["boundary_tu"] = f.expected_tu == 1;
        if (f.expected_mntus_count >= 0) exp["mntus_count"] = f.expected_mntus_count;
        if (!f.expected_neutralized.empty()) exp["neutralized"] = f.expected_neutralized;
        e["expected"] = exp;
        manifest.push_back(e);
    }
    std::ofstream mf(fs::path(dir) / "manifest.json");
    mf << manifest.dump(2) << "\n";
}

}  // namespace ohcp
