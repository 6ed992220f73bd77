#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ohcp/fixtures.hpp"
#include "ohcp/io.hpp"
#include "ohcp/lp.hpp"
#include "ohcp/neutralize.hpp"
#include "ohcp/tu.hpp"

namespace {

using nlohmann::json;
using namespace ohcp;

constexpr const char* kVersion = "0.1.0";

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    uint64_t h = 1469598103934665603ull;  // FNV-1a
    char c;
    while (in.get(c)) {
        h ^= uint8_t(c);
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string rat_str(const Rat& r) { return r.get_str(); }

json simplex_json(const std::vector<long>& verts) {
    json a = json::array();
    for (long v : verts) a.push_back(v);
    return a;
}

json chain_json(const SimplicialComplex& kc, int dim, const std::vector<Rat>& dense) {
    json a = json::array();
    for (size_t i = 0; i < dense.size(); ++i) {
        if (dense[i] == 0) continue;
        json e;
        e["coefficient"] = rat_str(dense[i]);
        e["simplex"] = simplex_json(kc.simplices(dim)[int(i)]);
        a.push_back(e);
    }
    return a;
}

json report_header(const std::string& command, const std::string& input_file) {
    json r;
    r["command"] = command;
    r["version"] = kVersion;
    r["input"]["file"] = input_file;
    r["input"]["digest"] = file_digest(input_file);
    return r;
}

void emit(const json& report, const std::string& out_path) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw ParseError(out_path + ": cannot write file");
        out << text;
    }
}

std::string verdict_str(OverallVerdict v, bool vacuous) {
    switch (v) {
        case OverallVerdict::Neutralized:
            return vacuous ? "yes (vacuous)" : "yes";
        case OverallVerdict::NotNeutralized:
            return "no";
        default:
            return "unknown";
    }
}

std::string cell_verdict_str(CellVerdict v) {
    switch (v) {
        case CellVerdict::Neutralized:
            return "neutralized";
        case CellVerdict::NotNeutralized:
            return "not-neutralized";
        default:
            return "unknown";
    }
}

int run_homology(const std::string& file, int p, const std::string& out) {
    ParsedComplex pc = load_complex(file);
    HomologyGroup h = homology(pc.complex, p);
    json r = report_header("homology", file);
    r["config"]["p"] = p;
    r["homology"]["betti"] = h.betti;
    json tors = json::array();
    for (const Int& t : h.torsion) tors.push_back(t.get_str());
    r["homology"]["torsion"] = tors;
    emit(r, out);
    return 0;
}

int run_solve(const std::string& file, const std::string& chain_file, int p,
              const std::string& weights_file, const std::string& uniform_weight, long budget,
              bool oracle_check, long seed, const std::string& out) {
    ParsedComplex pc = load_complex(file);
    Chain chain = load_chain(chain_file, pc.complex, p);
    std::vector<Rat> w;
    if (!weights_file.empty())
        w = load_weights(weights_file, pc.complex, p);
    else
        w.assign(pc.complex.count(p), parse_rational(uniform_weight));
    for (const Rat& wi : w)
        if (wi < 0) throw ParseError("negative uniform weight");

    OhcpInstance inst = formulate(pc.complex, p, chain_to_dense(pc.complex, chain), w);
    LpSolution sol = solve(inst);
    VertexEnumeration census = enumerate_optimal_vertices(inst, budget);

    json r = report_header("solve", file);
    r["input"]["chain_file"] = chain_file;
    r["input"]["chain_digest"] = file_digest(chain_file);
    r["config"]["p"] = p;
    r["config"]["budget"] = budget;
    r["config"]["seed"] = seed;
    if (!weights_file.empty())
        r["config"]["weights"] = weights_file;
    else
        r["config"]["uniform_weight"] = uniform_weight;

    r["solve"]["objective"] = rat_str(sol.objective);
    std::vector<Rat> opt(inst.m);
    bool integral = true;
    for (int i = 0; i < inst.m; ++i) opt[i] = p_coefficient(inst, sol.z, i);
    for (const Rat& v : sol.z)
        if (!is_integer(v)) integral = false;
    r["solve"]["optimal_chain"] = chain_json(pc.complex, p, opt);
    r["solve"]["integral"] = integral;

    long integral_vertices = 0;
    for (const SolutionVector& z : census.vertices) {
        bool ok = true;
        for (const Rat& v : z)
            if (!is_integer(v)) ok = false;
        if (ok) ++integral_vertices;
    }
    r["solve"]["census"]["optimal_vertices"] = long(census.vertices.size());
    r["solve"]["census"]["integral_vertices"] = integral_vertices;
    r["solve"]["census"]["limit_hit"] = census.limit_hit;

    if (oracle_check) {
        LpSolution slow = oracle::solve_by_support_enumeration(inst);
        if (slow.objective != sol.objective)
            throw InternalError("simplex and support-enumeration optima disagree");
        r["solve"]["oracle_agrees"] = true;
    }
    emit(r, out);
    return 0;
}

json certificate_json(const SimplicialComplex& kc, int q, const MntuCertificate& cert) {
    json e;
    json rows = json::array(), cols = json::array(), ext = json::array();
    for (int r : cert.rows) rows.push_back(simplex_json(kc.simplices(q - 1)[r]));
    for (int c : cert.cols) cols.push_back(simplex_json(kc.simplices(q)[c]));
    for (int r : cert.exterior_rows) ext.push_back(simplex_json(kc.simplices(q - 1)[r]));
    e["rows"] = rows;
    e["columns"] = cols;
    e["exterior_rows"] = ext;
    e["determinant"] = rat_str(cert.det);
    e["is_cmntus"] = cert.is_cmntus;
    json circ = json::array();
    for (size_t i = 0; i < cert.circuit_cols.size(); ++i) {
        circ.push_back(simplex_json(kc.simplices(q - 1)[cert.circuit_rows[i]]));
        circ.push_back(simplex_json(kc.simplices(q)[cert.circuit_cols[i]]));
    }
    e["circuit"] = circ;
    return e;
}

int run_tu(const std::string& file, int q, bool oracle_check, const std::string& out) {
    ParsedComplex pc = load_complex(file);
    BoundaryMatrix bm = boundary_matrix(pc.complex, q);
    MntusResult res = find_mntus(bm.mat);

    json r = report_header("tu", file);
    r["config"]["q"] = q;
    r["tu"]["is_totally_unimodular"] = res.certificates.empty() && res.complete;
    r["tu"]["search_complete"] = res.complete;
    json certs = json::array();
    for (const MntuCertificate& c : res.certificates) certs.push_back(certificate_json(pc.complex, q, c));
    r["tu"]["mntus"] = certs;

    if (oracle_check) {
        auto slow = oracle::mntus_by_determinant_scan(bm.mat, std::min(bm.m, bm.n));
        bool agree = slow.size() == res.certificates.size();
        for (size_t i = 0; agree && i < slow.size(); ++i)
            agree = slow[i].first == res.certificates[i].rows &&
                    slow[i].second == res.certificates[i].cols;
        if (!agree) throw InternalError("circuit search and determinant scan disagree");
        r["tu"]["oracle_agrees"] = true;
    }
    emit(r, out);
    return 0;
}

json cells_json(const SimplicialComplex& kc, int q, const NeutralizationReport& rep) {
    json cells = json::array();
    for (const NeutralizationCell& c : rep.cells) {
        json e;
        e["certificate"] = c.cert_index;
        e["row"] = simplex_json(kc.simplices(q - 1)[c.row]);
        e["sign"] = c.sign;
        e["verdict"] = cell_verdict_str(c.verdict);
        if (c.chain) {
            json u = json::array();
            for (long v : c.chain->lattice_u) u.push_back(v);
            e["chain"]["lattice_coefficients"] = u;
            e["chain"]["interior_sum"] = c.chain->interior_sum;
        }
        if (c.witness_projection) {
            json w = json::array();
            for (const Rat& v : *c.witness_projection) w.push_back(rat_str(v));
            e["witness_projection"] = w;
        }
        cells.push_back(e);
    }
    return cells;
}

int run_neutralization(const std::string& file, int q, int radius, long budget,
                       const std::string& out) {
    ParsedComplex pc = load_complex(file);
    NeutralizationReport proj = decide_by_projection(pc.complex, q, budget, radius);
    NeutralizationReport defn = decide_by_definition(pc.complex, q, radius, budget);

    json r = report_header("neutralization", file);
    r["config"]["q"] = q;
    r["config"]["radius"] = radius;
    r["config"]["budget"] = budget;

    r["neutralization"]["verdict"] = verdict_str(proj.overall, proj.vacuous);
    r["neutralization"]["mntus_count"] = long(proj.mntus.certificates.size());
    r["neutralization"]["cells"] = cells_json(pc.complex, q, proj);
    r["neutralization"]["definition_verdict"] = verdict_str(defn.overall, defn.vacuous);

    if (pc.complex.top_dimension() == 2 && q == 2) {
        auto sc = h1_trivial_shortcut(pc.complex);
        r["neutralization"]["h1_shortcut"] = sc ? "yes" : "none";
    }
    emit(r, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-rational optimal homologous chain solver and boundary-matrix analyzer"};
    app.require_subcommand(1);

    std::string file, chain_file, weights_file, uniform_weight = "1", out, out_dir;
    int p = 1, q = 2, radius = 2;
    long budget = 1000, lattice_budget = 100000, seed = 0;
    bool oracle_check = false;

    auto* c_hom = app.add_subcommand("homology", "Homology group of a complex");
    c_hom->add_option("complex", file)->required();
    c_hom->add_option("--p", p);
    c_hom->add_option("--out", out);

    auto* c_solve = app.add_subcommand("solve", "Minimum-weight homologous chain");
    c_solve->add_option("complex", file)->required();
    c_solve->add_option("chain", chain_file)->required();
    c_solve->add_option("--p", p);
    auto* wopt = c_solve->add_option("--weights", weights_file);
    c_solve->add_option("--uniform-weight", uniform_weight)->excludes(wopt);
    c_solve->add_option("--budget", budget);
    c_solve->add_option("--seed", seed);
    c_solve->add_flag("--oracle", oracle_check);
    c_solve->add_option("--out", out);

    auto* c_tu = app.add_subcommand("tu", "Total unimodularity analysis of a boundary matrix");
    c_tu->add_option("complex", file)->required();
    c_tu->add_option("--q", q);
    c_tu->add_flag("--oracle", oracle_check);
    c_tu->add_option("--out", out);

    auto* c_neut = app.add_subcommand("neutralization", "Neutralization decision");
    c_neut->add_option("complex", file)->required();
    c_neut->add_option("--q", q);
    c_neut->add_option("--radius", radius)->check(CLI::PositiveNumber);
    c_neut->add_option("--budget", lattice_budget)->check(CLI::PositiveNumber);
    c_neut->add_option("--out", out);

    auto* c_fix = app.add_subcommand("fixtures", "Write the built-in fixture corpus");
    c_fix->add_option("--out", out_dir)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_hom)) return run_homology(file, p, out);
        if (app.got_subcommand(c_solve))
            return run_solve(file, chain_file, p, weights_file, uniform_weight, budget,
                             oracle_check, seed, out);
        if (app.got_subcommand(c_tu)) return run_tu(file, q, oracle_check, out);
        if (app.got_subcommand(c_neut))
            return run_neutralization(file, q, radius, lattice_budget, out);
        if (app.got_subcommand(c_fix)) {
            write_fixtures(out_dir);
            std::cout << "wrote fixture corpus to " << out_dir << "\n";
            return 0;
        }
    } catch (const ohcp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ohcp::BudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
