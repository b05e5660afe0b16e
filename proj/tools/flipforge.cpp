// flipforge: command-line frontend for the triangulation toolkit.
//
// Verbs: gen, simflip4c, hamflip, subdivide, biarc, verify, oracle,
// render. JSON in, JSON (or SVG) out; every top-level JSON output embeds
// the tool version and the input's canonical code for provenance.
//
// Exit codes: 0 success, 2 validation diagnostic, 1 error, 64 usage.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <flipforge/audit.hpp>
#include <flipforge/bookembed.hpp>
#include <flipforge/fourconnect.hpp>
#include <flipforge/generators.hpp>
#include <flipforge/hamiltonize.hpp>
#include <flipforge/io.hpp>
#include <flipforge/oracle.hpp>
#include <flipforge/svg.hpp>
#include <flipforge/version.hpp>

using namespace flipforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDiagnostic = 2;
constexpr int kExitUsage = 64;

void emit(const ojson& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

void stamp(ojson& j, const Triangulation& input) {
    j["version"] = kVersion;
    j["canonical_code"] = canonical_code_string(input);
}

std::optional<long long> env_budget() {
    const char* s = std::getenv("FLIPFORGE_BUDGET");
    if (!s) return std::nullopt;
    return std::stoll(s);
}

Triangulation load_tri(const std::string& path) {
    return triangulation_from_json(read_json_file(path));
}

/// Subdivision pipeline with the small/easy cases folded in.
SubdivisionResult run_subdivide(const Triangulation& t) {
    if (t.n() > 5 && !is_four_connected(t))
        return eliminate_dummies_subdivisions(t, four_connect(t));
    SubdivisionResult s;
    s.witness = PlanarGraph(t);
    std::vector<int> order = flipforge::detail::find_ham_cycle(s.witness.rot);
    if (order.empty()) throw flip_error("no Hamiltonian cycle in 4-connected input (bug sentinel)");
    s.cycle = HamCycle{order};
    return s;
}

int cmd_verify(const std::string& path, const std::string& check) {
    ojson in = read_json_file(path);
    Diagnostic d = Diagnostic::good();
    try {
        if (check == "triangulation") {
            triangulation_from_json(in);  // validates
        } else if (check == "4connected") {
            Triangulation t = triangulation_from_json(in);
            if (!is_four_connected(t)) d = Diagnostic::bad("triangulation is not 4-connected");
        } else if (check == "hamiltonian") {
            const ojson& tj = in.contains("final") ? in.at("final") : in;
            Triangulation t = triangulation_from_json(tj);
            HamCycle h{in.at("cycle").get<std::vector<int>>()};
            d = verify_ham_cycle(t, h);
        } else if (check == "diagram") {
            const ojson& dj = in.contains("diagram") ? in.at("diagram") : in;
            d = verify_plane(arcdiagram_from_json(dj));
        } else {
            std::cerr << "unknown check \"" << check << "\"\n";
            return kExitUsage;
        }
    } catch (const flip_error& e) {
        d = Diagnostic::bad(e.what());
    }
    ojson out;
    out["version"] = kVersion;
    out["check"] = check;
    out["ok"] = d.ok;
    if (!d.ok) out["message"] = d.message;
    emit(out, "");
    return d.ok ? kExitOk : kExitDiagnostic;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"combinatorial triangulation toolkit"};
    app.require_subcommand(1);

    std::string family = "stacked_random", in_path, in_path_b, out_path, svg_path;
    std::string mode = "monotone", check = "triangulation", oracle_op;
    int param = 0;
    std::uint64_t seed = 0;
    double squash = 1.0, unit = 60.0;
    bool force = false;

    auto* gen = app.add_subcommand("gen", "generate a triangulation family member");
    gen->add_option("--family", family, "family name")->required();
    gen->add_option("--param", param, "family parameter");
    gen->add_option("--seed", seed, "random seed (fixed default for reproducibility)");
    gen->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* sim = app.add_subcommand("simflip4c", "simultaneous flip set to 4-connectivity");
    sim->add_option("input", in_path, "tri-v1 JSON input")->required();
    sim->add_option("-o,--output", out_path);

    auto* ham = app.add_subcommand("hamflip", "sequential flips to a Hamiltonian triangulation");
    ham->add_option("input", in_path)->required();
    ham->add_option("-o,--output", out_path);

    auto* sub = app.add_subcommand("subdivide", "edge subdivisions to a subhamiltonian graph");
    sub->add_option("input", in_path)->required();
    sub->add_option("-o,--output", out_path);

    auto* bia = app.add_subcommand("biarc", "plane biarc diagram");
    bia->add_option("input", in_path)->required();
    bia->add_option("--mode", mode)->check(CLI::IsMember({"monotone", "hamsub"}));
    bia->add_option("-o,--output", out_path);
    bia->add_option("--svg", svg_path, "also render the diagram to this SVG file");
    bia->add_option("--squash", squash, "vertical scale factor for SVG arcs");

    auto* ver = app.add_subcommand("verify", "validate an artifact");
    ver->add_option("input", in_path)->required();
    ver->add_option("--check", check)
        ->check(CLI::IsMember({"triangulation", "4connected", "hamiltonian", "diagram"}));

    auto* ora = app.add_subcommand("oracle", "brute-force ground truth at small n");
    ora->add_option("op", oracle_op, "flipdist | minsim | minbiarc")->required();
    ora->add_option("input", in_path)->required();
    ora->add_option("input2", in_path_b, "second input (flipdist only)");
    ora->add_option("-o,--output", out_path);

    auto* ren = app.add_subcommand("render", "render a diagram JSON to SVG");
    ren->add_option("input", in_path)->required();
    ren->add_option("-o,--output", out_path);
    ren->add_option("--squash", squash);
    ren->add_option("--unit", unit, "pixels per spine unit");
    ren->add_flag("--force", force, "render even if the diagram is not plane");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) {
            auto it = family_names().find(family);
            if (it == family_names().end())
                throw flip_error("unknown family \"" + family + "\"");
            FamilySpec spec{it->second, param, seed};
            Triangulation t = generate(spec);
            ojson j = triangulation_to_json(t);
            stamp(j, t);
            emit(j, out_path);
        } else if (*sim) {
            Triangulation t = load_tri(in_path);
            std::set<Edge> F = sim_flip_set(t);
            auto [result, recs] = simultaneous_flip(t, F);
            ojson j;
            stamp(j, t);
            j["flip_set"] = edges_to_json({F.begin(), F.end()});
            j["result"] = triangulation_to_json(result);
            ojson rep;
            rep["size"] = F.size();
            rep["bound"] = (2 * t.n() - 7) / 3;
            rep["within_bound"] = static_cast<int>(F.size()) <= (2 * t.n() - 7) / 3;
            rep["four_connected"] = is_four_connected(result);
            j["report"] = rep;
            emit(j, out_path);
            if (!rep["within_bound"].get<bool>() || !rep["four_connected"].get<bool>())
                return kExitDiagnostic;
        } else if (*ham) {
            Triangulation t = load_tri(in_path);
            HamFlipResult r = hamflip(t);
            ojson j;
            stamp(j, t);
            ojson body = hamflip_result_to_json(r);
            j.update(body);
            emit(j, out_path);
        } else if (*sub) {
            Triangulation t = load_tri(in_path);
            SubdivisionResult s = run_subdivide(t);
            ojson j;
            stamp(j, t);
            j.update(subdivision_result_to_json(s));
            emit(j, out_path);
        } else if (*bia) {
            Triangulation t = load_tri(in_path);
            ojson j;
            stamp(j, t);
            j["mode"] = mode;
            ArcDiagram diagram;
            BiarcStats stats;
            if (mode == "monotone") {
                MonotoneResult r = monotone_biarc_diagram(t);
                diagram = std::move(r.diagram);
                stats = r.stats;
            } else {
                SubdivisionResult s = run_subdivide(t);
                auto [d2, st] = biarc_from_subdivision(t, s);
                diagram = std::move(d2);
                stats = st;
            }
            j["diagram"] = arcdiagram_to_json(diagram);
            ojson st;
            st["proper_above"] = stats.proper_above;
            st["proper_below"] = stats.proper_below;
            st["biarcs_downup"] = stats.biarcs_downup;
            st["biarcs_other"] = stats.biarcs_other;
            st["total"] = stats.total();
            j["stats"] = st;
            emit(j, out_path);
            if (!svg_path.empty()) {
                SvgOptions opt;
                opt.squash = squash;
                write_text_file(svg_path, render_svg(diagram, opt));
            }
        } else if (*ver) {
            return cmd_verify(in_path, check);
        } else if (*ora) {
            ojson j;
            j["version"] = kVersion;
            j["op"] = oracle_op;
            auto budget = env_budget();
            if (oracle_op == "flipdist") {
                if (in_path_b.empty()) {
                    std::cerr << "flipdist needs two inputs\n";
                    return kExitUsage;
                }
                Triangulation a = load_tri(in_path), b = load_tri(in_path_b);
                j["canonical_code"] = canonical_code_string(a);
                j["canonical_code_b"] = canonical_code_string(b);
                j["value"] = flip_distance(a, b);
            } else if (oracle_op == "minsim") {
                Triangulation t = load_tri(in_path);
                j["canonical_code"] = canonical_code_string(t);
                int v = budget ? min_simflip_to_4connected(t, *budget)
                               : min_simflip_to_4connected(t);
                j["value"] = v == kNoSolution ? ojson(nullptr) : ojson(v);
            } else if (oracle_op == "minbiarc") {
                Triangulation t = load_tri(in_path);
                j["canonical_code"] = canonical_code_string(t);
                int v = budget ? min_biarcs(t, *budget) : min_biarcs(t);
                j["value"] = v == kNoSolution ? ojson(nullptr) : ojson(v);
            } else {
                std::cerr << "unknown oracle op \"" << oracle_op << "\"\n";
                return kExitUsage;
            }
            emit(j, out_path);
        } else if (*ren) {
            ojson in = read_json_file(in_path);
            const ojson& dj = in.contains("diagram") ? in.at("diagram") : in;
            ArcDiagram d = arcdiagram_from_json(dj);
            SvgOptions opt;
            opt.squash = squash;
            opt.unit = unit;
            opt.force = force;
            std::string svg = render_svg(d, opt);
            if (out_path.empty())
                std::cout << svg;
            else
                write_text_file(out_path, svg);
        }
    } catch (const flip_error& e) {
        ojson err;
        err["version"] = kVersion;
        err["error"] = e.what();
        std::cerr << err.dump() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        ojson err;
        err["version"] = kVersion;
        err["error"] = e.what();
        std::cerr << err.dump() << "\n";
        return kExitError;
    }
    return kExitOk;
}
