#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "qcm/geometry.hpp"
#include "qcm/multimap.hpp"
#include "qcm/polygon.hpp"
#include "qcm/vec.hpp"

namespace qcm {

// Minimal deterministic SVG writer for 2-D figures: field quivers and level
// regions clipped to the view box (clipped edges drawn dashed).
class SvgCanvas {
  public:
    SvgCanvas(double x0, double y0, double x1, double y1, int pixels = 640)
        : x0_(x0), y0_(y0), x1_(x1), y1_(y1), px_(pixels) {
        scale_ = px_ / (x1_ - x0_);
        py_ = static_cast<int>(std::lround((y1_ - y0_) * scale_));
    }

    void add_polygon(const Polygon& poly, const std::string& stroke, const std::string& fill,
                     bool dashed = false) {
        if (poly.size() < 2) return;
        std::ostringstream d;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            d << (i == 0 ? "M" : "L") << sx(poly[i][0]) << " " << sy(poly[i][1]);
        }
        d << "Z";
        body_ << "<path d=\"" << d.str() << "\" stroke=\"" << stroke << "\" fill=\"" << fill
              << "\" fill-opacity=\"0.15\""
              << (dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    }

    // region drawn clipped to the view box; dashed when the clip truncated it
    void add_region(const HPolyhedron& H, const std::string& color) {
        Polygon poly = clip_to_box(H, x0_, y0_, x1_, y1_);
        if (poly.empty()) return;
        bool clipped = false;
        for (const auto& v : poly)
            if (std::abs(v[0] - x0_) < 1e-9 || std::abs(v[0] - x1_) < 1e-9 ||
                std::abs(v[1] - y0_) < 1e-9 || std::abs(v[1] - y1_) < 1e-9)
                clipped = true;
        add_polygon(poly, color, color, clipped);
    }

    void add_arrow(const Vec& at, const Vec& dir, double len, const std::string& color) {
        double bx = at[0], by = at[1];
        double ex = bx + dir[0] * len, ey = by + dir[1] * len;
        body_ << "<line x1=\"" << sx(bx) << "\" y1=\"" << sy(by) << "\" x2=\"" << sx(ex)
              << "\" y2=\"" << sy(ey) << "\" stroke=\"" << color
              << "\" marker-end=\"url(#tip)\"/>\n";
    }

    void add_dot(const Vec& at, const std::string& color) {
        body_ << "<circle cx=\"" << sx(at[0]) << "\" cy=\"" << sy(at[1])
              << "\" r=\"2\" fill=\"" << color << "\"/>\n";
    }

    std::string str() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px_ << "\" height=\""
            << py_ << "\" viewBox=\"0 0 " << px_ << " " << py_ << "\">\n"
            << "<defs><marker id=\"tip\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" "
               "refY=\"3\" orient=\"auto\"><path d=\"M0 0L6 3L0 6Z\"/></marker></defs>\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

  private:
    double sx(double x) const { return (x - x0_) * scale_; }
    double sy(double y) const { return (y1_ - y) * scale_; }

    double x0_, y0_, x1_, y1_;
    int px_, py_ = 0;
    double scale_;
    std::ostringstream body_;
};

inline std::string render_quiver(const SampledMultiMap& M, double x0, double y0, double x1,
                                 double y1) {
    SvgCanvas canvas(x0, y0, x1, y1);
    double len = 0.35 * (x1 - x0) / 40.0 * 4;  // arrow length in world units
    for (std::size_t i = 0; i < M.size(); ++i) {
        if (M.cones[i].trivial()) {
            canvas.add_dot(M.points[i], "#bbbbbb");
            continue;
        }
        for (const Vec& g : M.cones[i].generators)
            canvas.add_arrow(M.points[i], g, len, "#1f5fa8");
    }
    return canvas.str();
}

inline std::string render_regions(const std::vector<HPolyhedron>& regions, double x0, double y0,
                                  double x1, double y1) {
    static const char* palette[] = {"#1f5fa8", "#a8321f", "#1fa85f", "#a81f8e",
                                    "#a8861f", "#1fa8a8"};
    SvgCanvas canvas(x0, y0, x1, y1);
    for (std::size_t i = 0; i < regions.size(); ++i)
        canvas.add_region(regions[i], palette[i % 6]);
    return canvas.str();
}

}  // namespace qcm
