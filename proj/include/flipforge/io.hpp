#pragma once

/*
  flipforge/io.hpp

  JSON (de)serialization for every artifact the CLI exchanges:
  triangulations ("tri-v1", byte-exact round-trip), planar graphs, flip
  scripts with dummy steps, and arc diagrams with exact rational spine
  positions. Ordered JSON keeps key order deterministic so identical
  values always produce identical bytes.
*/

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "flipforge/bookembed.hpp"
#include "flipforge/fourconnect.hpp"
#include "flipforge/generators.hpp"
#include "flipforge/hamiltonize.hpp"
#include "flipforge/planar_graph.hpp"
#include "flipforge/rational.hpp"
#include "flipforge/triangulation.hpp"
#include "flipforge/version.hpp"

namespace flipforge {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// triangulations and planar graphs

inline ojson triangulation_to_json(const Triangulation& t) {
    ojson j;
    j["format"] = kFormatVersion;
    j["n"] = t.n();
    j["outer_face"] = t.outer_face();
    j["rotations"] = t.rotations();
    return j;
}

/// Accepts the rotation-system form ("tri-v1") or a bare face list
/// `{"faces":[[a,b,c],...]}` from which rotations are reconstructed.
inline Triangulation triangulation_from_json(const ojson& j) {
    if (j.contains("rotations")) {
        int n = j.at("n").get<int>();
        auto rot = j.at("rotations").get<std::vector<std::vector<int>>>();
        auto of = j.at("outer_face").get<std::array<int, 3>>();
        Triangulation t(n, std::move(rot), of);
        if (auto d = validate(t); !d.ok) throw flip_error("invalid triangulation: " + d.message);
        return t;
    }
    if (j.contains("faces")) {
        auto face_list = j.at("faces").get<std::vector<std::array<int, 3>>>();
        if (face_list.empty()) throw flip_error("empty face list");
        int n = 0;
        for (const auto& f : face_list)
            for (int v : f) n = std::max(n, v + 1);
        std::array<int, 3> outer;
        if (j.contains("outer_face")) {
            outer = j.at("outer_face").get<std::array<int, 3>>();
        } else {
            std::array<int, 3> best = face_list.front();
            std::sort(best.begin(), best.end());
            for (auto f : face_list) {
                std::sort(f.begin(), f.end());
                best = std::min(best, f);
            }
            outer = best;
        }
        return from_faces(n, face_list, outer);
    }
    throw flip_error("triangulation JSON needs \"rotations\" or \"faces\"");
}

inline ojson planar_graph_to_json(const PlanarGraph& g) {
    ojson j;
    j["format"] = "planar-v1";
    j["n"] = g.n;
    j["rotations"] = g.rot;
    return j;
}

inline PlanarGraph planar_graph_from_json(const ojson& j) {
    return PlanarGraph(j.at("n").get<int>(),
                       j.at("rotations").get<std::vector<std::vector<int>>>());
}

// ---------------------------------------------------------------------------
// flip scripts

inline ojson flip_to_json(const FlipRecord& r) {
    ojson j;
    j["op"] = "flip";
    j["edge"] = {r.removed.u, r.removed.v};
    j["created"] = {r.created.u, r.created.v};
    return j;
}

inline ojson flipscript_to_json(const std::vector<FlipRecord>& flips) {
    ojson steps = ojson::array();
    for (const FlipRecord& r : flips) steps.push_back(flip_to_json(r));
    return steps;
}

/// Full trace of the sequential 4-connecting run, dummy steps included.
inline ojson flipscript_to_json(const std::vector<StepTrace>& trace) {
    ojson steps = ojson::array();
    for (const StepTrace& st : trace) {
        if (st.dummy) {
            ojson j;
            j["op"] = "dummy";
            j["face"] = st.dummy->face.v;
            j["vertex"] = st.dummy->vertex;
            ojson fl = ojson::array();
            for (const FlipRecord& r : st.dummy->flips) fl.push_back(flip_to_json(r));
            j["flips"] = fl;
            steps.push_back(std::move(j));
        }
        for (const FlipRecord& r : st.flips) steps.push_back(flip_to_json(r));
    }
    return steps;
}

/// Replays a flip script from scratch, checking each step's recorded
/// created edge (and dummy vertex id) against what actually happens.
inline Triangulation replay_flipscript(const Triangulation& start, const ojson& steps) {
    Triangulation cur = start;
    for (const ojson& s : steps) {
        std::string op = s.at("op").get<std::string>();
        if (op == "flip") {
            auto e = s.at("edge").get<std::array<int, 2>>();
            auto c = s.at("created").get<std::array<int, 2>>();
            auto [next, rec] = flip(cur, Edge(e[0], e[1]));
            if (!(rec.created == Edge(c[0], c[1])))
                throw flip_error("replay: created edge mismatch at flip of Edge(" +
                                 std::to_string(e[0]) + "," + std::to_string(e[1]) + ")");
            cur = std::move(next);
        } else if (op == "dummy") {
            auto f = s.at("face").get<std::array<int, 3>>();
            auto [next, rec] = dummy_flip(cur, Triangle(f[0], f[1], f[2]));
            if (rec.vertex != s.at("vertex").get<int>())
                throw flip_error("replay: dummy vertex id mismatch");
            cur = std::move(next);
        } else {
            throw flip_error("replay: unknown op \"" + op + "\"");
        }
    }
    return cur;
}

// ---------------------------------------------------------------------------
// arc diagrams

inline ojson rational_to_json(const Rational& r) { return ojson::array({r.num, r.den}); }

inline Rational rational_from_json(const ojson& j) {
    return Rational(j.at(0).get<long long>(), j.at(1).get<long long>());
}

inline ojson arcdiagram_to_json(const ArcDiagram& d) {
    ojson j;
    ojson spine = ojson::array();
    for (const SpinePoint& sp : d.spine) {
        ojson p;
        if (sp.vertex >= 0)
            p["id"] = sp.vertex;
        else
            p["sub"] = "s" + std::to_string(sp.transition);
        p["pos"] = rational_to_json(sp.pos);
        spine.push_back(std::move(p));
    }
    j["spine"] = spine;
    ojson arcs = ojson::array();
    for (const Arc& a : d.arcs) {
        ojson ja;
        ja["edge"] = {a.edge.u, a.edge.v};
        ojson pieces = ojson::array();
        for (const ArcPiece& pc : a.pieces) {
            ojson jp;
            jp["l"] = rational_to_json(pc.l);
            jp["r"] = rational_to_json(pc.r);
            jp["side"] = pc.above ? "above" : "below";
            pieces.push_back(std::move(jp));
        }
        ja["pieces"] = pieces;
        arcs.push_back(std::move(ja));
    }
    j["arcs"] = arcs;
    return j;
}

inline ArcDiagram arcdiagram_from_json(const ojson& j) {
    ArcDiagram d;
    for (const ojson& p : j.at("spine")) {
        SpinePoint sp;
        if (p.contains("id")) {
            sp.vertex = p.at("id").get<int>();
        } else {
            std::string s = p.at("sub").get<std::string>();
            if (s.empty() || s[0] != 's') throw flip_error("bad spine label \"" + s + "\"");
            sp.transition = std::stoi(s.substr(1));
        }
        sp.pos = rational_from_json(p.at("pos"));
        d.spine.push_back(sp);
    }
    for (const ojson& ja : j.at("arcs")) {
        auto e = ja.at("edge").get<std::array<int, 2>>();
        Arc a{Edge(e[0], e[1]), {}};
        for (const ojson& jp : ja.at("pieces")) {
            std::string side = jp.at("side").get<std::string>();
            if (side != "above" && side != "below")
                throw flip_error("bad piece side \"" + side + "\"");
            a.pieces.push_back({rational_from_json(jp.at("l")), rational_from_json(jp.at("r")),
                                side == "above"});
        }
        d.arcs.push_back(std::move(a));
    }
    return d;
}

// ---------------------------------------------------------------------------
// composite results

inline ojson edges_to_json(const std::vector<Edge>& es) {
    ojson j = ojson::array();
    for (const Edge& e : es) j.push_back({e.u, e.v});
    return j;
}

inline ojson hamflip_result_to_json(const HamFlipResult& r) {
    ojson j;
    j["flips"] = flipscript_to_json(r.flips);
    j["final"] = triangulation_to_json(r.final);
    j["cycle"] = r.cycle.order;
    return j;
}

inline ojson subdivision_result_to_json(const SubdivisionResult& s) {
    ojson j;
    j["subdivided"] = edges_to_json({s.subdivided.begin(), s.subdivided.end()});
    j["witness"] = planar_graph_to_json(s.witness);
    j["witness_added"] = edges_to_json(s.witness_added);
    ojson mids = ojson::array();
    for (const auto& [e, m] : s.midpoint) {
        ojson jm;
        jm["edge"] = {e.u, e.v};
        jm["vertex"] = m;
        mids.push_back(std::move(jm));
    }
    j["midpoints"] = mids;
    j["cycle"] = s.cycle.order;
    return j;
}

// ---------------------------------------------------------------------------
// files

inline ojson read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw flip_error("cannot read " + path);
    return ojson::parse(in);
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw flip_error("cannot write " + path);
    out << text;
}

}  // namespace flipforge
