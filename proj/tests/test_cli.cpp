#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <flipforge/generators.hpp>
#include <flipforge/hamiltonize.hpp>
#include <flipforge/io.hpp>
#include <flipforge/svg.hpp>

using namespace flipforge;

namespace {

std::string tmpdir() {
    static std::string d = [] {
        char templ[] = "/tmp/flipforge_cli_XXXXXX";
        REQUIRE(mkdtemp(templ) != nullptr);
        return std::string(templ);
    }();
    return d;
}

int run(const std::string& args, const std::string& stdout_file = "/dev/null") {
    std::string cmd = std::string(FLIPFORGE_BIN) + " " + args + " > " + stdout_file + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("json round trips") {
    SECTION("triangulation JSON is byte-exact through parse and re-emit") {
        for (int trial = 0; trial < 10; ++trial) {
            Triangulation t = make_stacked_random(trial, 77 + trial);
            ojson j = triangulation_to_json(t);
            std::string bytes = j.dump(2);
            Triangulation back = triangulation_from_json(ojson::parse(bytes));
            REQUIRE(triangulation_to_json(back).dump(2) == bytes);
            REQUIRE(back.rotations() == t.rotations());
        }
    }
    SECTION("face-list input reconstructs the rotation system") {
        Triangulation t = make_octahedron();
        ojson j;
        ojson fl = ojson::array();
        for (const Triangle& f : faces(t)) fl.push_back(f.v);
        j["faces"] = fl;
        j["outer_face"] = t.outer_face();
        Triangulation back = triangulation_from_json(j);
        REQUIRE(validate(back).ok);
        REQUIRE(back.n() == 6);
        REQUIRE(back.edge_count() == t.edge_count());
        REQUIRE(canonical_code_string(back) == canonical_code_string(t));
    }
    SECTION("flip scripts replay") {
        Triangulation t = make_lowerham(1);
        HamFlipResult r = hamflip(t);
        ojson steps = flipscript_to_json(r.flips);
        Triangulation replayed = replay_flipscript(t, steps);
        REQUIRE(replayed.rotations() == r.final.rotations());
    }
    SECTION("arc diagram JSON round trips with exact rationals") {
        Triangulation t = make_lowerham(1);
        MonotoneResult r = monotone_biarc_diagram(t);
        ojson j = arcdiagram_to_json(r.diagram);
        ArcDiagram back = arcdiagram_from_json(j);
        REQUIRE(arcdiagram_to_json(back).dump() == j.dump());
        REQUIRE(verify_plane(back).ok);
    }
}

TEST_CASE("render_svg") {
    Triangulation t = make_octahedron();
    MonotoneResult r = monotone_biarc_diagram(t);
    SECTION("deterministic bytes") {
        REQUIRE(render_svg(r.diagram) == render_svg(r.diagram));
    }
    SECTION("one path per halfcircle piece") {
        std::string svg = render_svg(r.diagram);
        int pieces = 0;
        for (const Arc& a : r.diagram.arcs) pieces += static_cast<int>(a.pieces.size());
        std::size_t at = 0;
        int paths = 0;
        while ((at = svg.find("<path", at)) != std::string::npos) {
            ++paths;
            ++at;
        }
        REQUIRE(paths == pieces);
    }
    SECTION("refuses planted crossings unless forced") {
        ArcDiagram bad;
        for (int i = 0; i < 4; ++i) bad.spine.push_back({i, -1, Rational(i)});
        bad.arcs.push_back({Edge(0, 2), {{Rational(0), Rational(2), true}}});
        bad.arcs.push_back({Edge(1, 3), {{Rational(1), Rational(3), true}}});
        REQUIRE_THROWS_AS(render_svg(bad), flip_error);
        SvgOptions opt;
        opt.force = true;
        REQUIRE_FALSE(render_svg(bad, opt).empty());
    }
}

TEST_CASE("cli") {
    std::string d = tmpdir();
    SECTION("gen emits tri-v1 with provenance; every family verifies") {
        struct F {
            const char* name;
            int param;
        } families[] = {{"k4", 0},          {"octahedron", 0}, {"wheel5", 0},
                        {"stacked_random", 5}, {"edgebound", 3},  {"lower4c", 2},
                        {"lowerham", 1},    {"checkerboard_demo", 0}};
        for (const F& f : families) {
            std::string p = d + "/" + f.name + ".json";
            REQUIRE(run(std::string("gen --family ") + f.name + " --param " +
                        std::to_string(f.param) + " --seed 5 -o " + p) == 0);
            ojson j = ojson::parse(slurp(p));
            REQUIRE(j["format"] == "tri-v1");
            REQUIRE(j.contains("version"));
            REQUIRE(j.contains("canonical_code"));
            REQUIRE(run("verify " + p + " --check triangulation") == 0);
        }
        ojson l1 = ojson::parse(slurp(d + "/lower4c.json"));
        REQUIRE(l1["n"].get<int>() == 3 * 2 + 4);
    }
    SECTION("hamflip on the octahedron needs no flips") {
        std::string in = d + "/oct.json", out = d + "/oct_ham.json";
        REQUIRE(run("gen --family octahedron -o " + in) == 0);
        REQUIRE(run("hamflip " + in, out) == 0);
        ojson j = ojson::parse(slurp(out));
        REQUIRE(j["flips"].empty());
        REQUIRE(j["cycle"].size() == 6);
        REQUIRE(run("verify " + out + " --check hamiltonian") == 0);
    }
    SECTION("simflip4c reports the bound") {
        std::string in = d + "/eb.json", out = d + "/eb_sim.json";
        REQUIRE(run("gen --family edgebound --param 4 -o " + in) == 0);
        REQUIRE(run("simflip4c " + in, out) == 0);
        ojson j = ojson::parse(slurp(out));
        REQUIRE(j["report"]["within_bound"].get<bool>());
        REQUIRE(j["report"]["four_connected"].get<bool>());
    }
    SECTION("biarc produces a verifiable diagram and deterministic SVG") {
        std::string in = d + "/lh.json", out = d + "/lh_biarc.json";
        std::string s1 = d + "/a.svg", s2 = d + "/b.svg";
        REQUIRE(run("gen --family lowerham --param 1 -o " + in) == 0);
        REQUIRE(run("biarc " + in + " --mode monotone --svg " + s1 + " -o " + out) == 0);
        REQUIRE(run("verify " + out + " --check diagram") == 0);
        REQUIRE(run("biarc " + in + " --mode monotone --svg " + s2 + " -o " + out) == 0);
        REQUIRE(slurp(s1) == slurp(s2));
        REQUIRE(run("biarc " + in + " --mode hamsub -o " + out) == 0);
        REQUIRE(run("verify " + out + " --check diagram") == 0);
        REQUIRE(run("render " + out + " -o " + d + "/c.svg") == 0);
    }
    SECTION("verify rejects a planted crossing with exit 2") {
        ArcDiagram bad;
        for (int i = 0; i < 4; ++i) bad.spine.push_back({i, -1, Rational(i)});
        bad.arcs.push_back({Edge(0, 2), {{Rational(0), Rational(2), true}}});
        bad.arcs.push_back({Edge(1, 3), {{Rational(1), Rational(3), true}}});
        std::string p = d + "/bad.json";
        write_text_file(p, arcdiagram_to_json(bad).dump());
        REQUIRE(run("verify " + p + " --check diagram") == 2);
    }
    SECTION("oracle verbs and the budget override") {
        std::string oct = d + "/oct2.json";
        REQUIRE(run("gen --family octahedron -o " + oct) == 0);
        std::string out = d + "/oracle.json";
        REQUIRE(run("oracle flipdist " + oct + " " + oct, out) == 0);
        REQUIRE(ojson::parse(slurp(out))["value"].get<int>() == 0);
        REQUIRE(run("oracle minsim " + oct, out) == 0);
        REQUIRE(ojson::parse(slurp(out))["value"].get<int>() == 0);
        REQUIRE(run("oracle minbiarc " + oct, out) == 0);
        REQUIRE(ojson::parse(slurp(out))["value"].get<int>() == 0);
        std::string l1 = d + "/l1.json";
        REQUIRE(run("gen --family lower4c --param 1 -o " + l1) == 0);
        int code = std::system(("FLIPFORGE_BUDGET=1 " + std::string(FLIPFORGE_BIN) +
                                " oracle minsim " + l1 + " >/dev/null 2>&1")
                                   .c_str());
        REQUIRE(WEXITSTATUS(code) == 1);
    }
    SECTION("usage errors exit 64") {
        REQUIRE(run("frobnicate") == 64);
        REQUIRE(run("verify") == 64);
    }
}
