#pragma once

/*
  flipforge/svg.hpp

  Deterministic SVG rendering of arc diagrams: the spine as a horizontal
  line, every halfcircle piece as an elliptical-arc path on its side.
  Output bytes depend only on the diagram and the options (fixed decimal
  precision, stable element order), so identical inputs render
  byte-identically.
*/

#include <cstdio>
#include <string>

#include "flipforge/bookembed.hpp"

namespace flipforge {

struct SvgOptions {
    double unit = 60.0;     // pixels per spine unit
    double squash = 1.0;    // vertical scale factor for arc heights
    double max_height = 0;  // cap on arc height in pixels; 0 = uncapped
    bool force = false;     // render even if the diagram is not plane
};

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    // avoid the two representations of zero
    if (std::string(buf) == "-0.00") return "0.00";
    return buf;
}

}  // namespace detail

inline std::string render_svg(const ArcDiagram& d, const SvgOptions& opt = {}) {
    if (!opt.force)
        if (auto diag = verify_plane(d); !diag.ok)
            throw flip_error("render_svg: diagram is not plane (" + diag.message +
                             "); pass force to render anyway");
    auto x_of = [&](const Rational& p) {
        return 40.0 + opt.unit * static_cast<double>(p.num) / static_cast<double>(p.den);
    };
    double xmin = 1e18, xmax = -1e18, up = 0, down = 0;
    for (const SpinePoint& sp : d.spine) {
        xmin = std::min(xmin, x_of(sp.pos));
        xmax = std::max(xmax, x_of(sp.pos));
    }
    if (d.spine.empty()) xmin = xmax = 40.0;
    auto height_of = [&](double rx) {
        double h = rx * opt.squash;
        if (opt.max_height > 0) h = std::min(h, opt.max_height);
        return h;
    };
    for (const Arc& a : d.arcs)
        for (const ArcPiece& pc : a.pieces) {
            double h = height_of((x_of(pc.r) - x_of(pc.l)) / 2);
            (pc.above ? up : down) = std::max(pc.above ? up : down, h);
        }
    double y0 = 20.0 + up;
    double width = xmax + 40.0, height = y0 + down + 30.0;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::svg_num(width) +
           "\" height=\"" + detail::svg_num(height) + "\" viewBox=\"0 0 " +
           detail::svg_num(width) + " " + detail::svg_num(height) + "\">\n";
    out += "<line x1=\"" + detail::svg_num(xmin) + "\" y1=\"" + detail::svg_num(y0) +
           "\" x2=\"" + detail::svg_num(xmax) + "\" y2=\"" + detail::svg_num(y0) +
           "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    for (const Arc& a : d.arcs)
        for (const ArcPiece& pc : a.pieces) {
            double x1 = x_of(pc.l), x2 = x_of(pc.r);
            double rx = (x2 - x1) / 2, ry = height_of(rx);
            // sweep 1 bulges toward negative y (up / "above") in SVG coords
            out += "<path d=\"M " + detail::svg_num(x1) + " " + detail::svg_num(y0) + " A " +
                   detail::svg_num(rx) + " " + detail::svg_num(ry) + " 0 0 " +
                   (pc.above ? "1" : "0") + " " + detail::svg_num(x2) + " " +
                   detail::svg_num(y0) + "\" fill=\"none\" stroke=\"" +
                   (pc.above ? "#1f6fb2" : "#b23a1f") + "\" stroke-width=\"1.5\"/>\n";
        }
    for (const SpinePoint& sp : d.spine) {
        double x = x_of(sp.pos);
        if (sp.vertex >= 0) {
            out += "<circle cx=\"" + detail::svg_num(x) + "\" cy=\"" + detail::svg_num(y0) +
                   "\" r=\"3.5\" fill=\"#000\"/>\n";
            out += "<text x=\"" + detail::svg_num(x) + "\" y=\"" + detail::svg_num(y0 + 18) +
                   "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" +
                   std::to_string(sp.vertex) + "</text>\n";
        } else {
            out += "<circle cx=\"" + detail::svg_num(x) + "\" cy=\"" + detail::svg_num(y0) +
                   "\" r=\"2\" fill=\"#fff\" stroke=\"#000\" stroke-width=\"1\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace flipforge
