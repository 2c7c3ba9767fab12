#include "bergman/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

constexpr int kSize = 640;
constexpr double kPad = 30;

// affine data -> pixel map (y flipped), uniform scale over both axes
struct Frame {
    double x0, y0, scale;
    double px(double x) const { return kPad + (x - x0) * scale; }
    double py(double y) const { return kSize - kPad - (y - y0) * scale; }
};

Frame fit(double x0, double x1, double y0, double y1) {
    double span = std::max(x1 - x0, y1 - y0);
    if (span <= 0) span = 1;
    double scale = (kSize - 2 * kPad) / span;
    // center the shorter axis
    double cx = x0 - ((kSize - 2 * kPad) / scale - (x1 - x0)) / 2;
    double cy = y0 - ((kSize - 2 * kPad) / scale - (y1 - y0)) / 2;
    return Frame{cx, cy, scale};
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void open_svg(std::ostringstream& out) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
        << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << " "
        << kSize << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void polyline(std::ostringstream& out, const Frame& f,
              const std::vector<std::pair<double, double>>& pts,
              const char* stroke, const char* extra = "") {
    out << "<polyline fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"1.5\"" << extra << " points=\"";
    for (const auto& [x, y] : pts)
        out << num(f.px(x)) << "," << num(f.py(y)) << " ";
    out << "\"/>\n";
}

std::vector<std::pair<double, double>> as_doubles(const std::vector<Cx>& zs) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(zs.size());
    for (const Cx& z : zs)
        pts.emplace_back(static_cast<double>(z.re), static_cast<double>(z.im));
    return pts;
}

const char* label_fill(int label) {
    switch (label) {
        case 0: return "#9ecae1";
        case 1: return "#fdd0a2";
        case 2: return "#a1d99b";
        default: return "white";
    }
}

}  // namespace

std::string svg_zero_scatter(const JordanDomain& d,
                             const std::vector<RootAtom>& roots, int n) {
    auto curve = as_doubles(level_curve(d, Real(1), 512));
    double x0 = 1e30, x1 = -1e30, y0 = 1e30, y1 = -1e30;
    for (const auto& [x, y] : curve) {
        x0 = std::min(x0, x); x1 = std::max(x1, x);
        y0 = std::min(y0, y); y1 = std::max(y1, y);
    }
    Frame f = fit(x0, x1, y0, y1);

    std::ostringstream out;
    open_svg(out);
    out << "<title>zeros of p_" << n << "</title>\n";
    polyline(out, f, curve, "black");
    for (const RootAtom& r : roots) {
        double radius = 2.0 + 0.5 * std::min(r.multiplicity, 5);
        out << "<circle cx=\"" << num(f.px(static_cast<double>(r.z.re)))
            << "\" cy=\"" << num(f.py(static_cast<double>(r.z.im)))
            << "\" r=\"" << num(radius) << "\" fill=\"#cb181d\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_region_map(const RegionMap& m) {
    Frame f = fit(m.bbox.x0, m.bbox.x1, m.bbox.y0, m.bbox.y1);
    double dx = (m.bbox.x1 - m.bbox.x0) / (m.nx - 1);
    double dy = (m.bbox.y1 - m.bbox.y0) / (m.ny - 1);

    std::ostringstream out;
    open_svg(out);
    for (const RegionSample& s : m.samples) {
        if (s.label < 0) continue;
        double x = static_cast<double>(s.z.re), y = static_cast<double>(s.z.im);
        out << "<rect x=\"" << num(f.px(x - dx / 2)) << "\" y=\""
            << num(f.py(y + dy / 2)) << "\" width=\"" << num(dx * f.scale)
            << "\" height=\"" << num(dy * f.scale) << "\" fill=\""
            << label_fill(s.label) << "\"/>\n";
    }
    auto curve = as_doubles(level_curve(m.domain, Real(1), 512));
    polyline(out, f, curve, "black");
    for (const Polyline& pl : m.boundary) polyline(out, f, pl, "#08306b");
    out << "</svg>\n";
    return out.str();
}

std::string svg_gamma_curve(const JordanDomain& d, int n_points) {
    auto curve = as_doubles(gamma_curve(d, n_points));  // cassini-only check
    Frame f = fit(-1.1, 1.1, -1.1, 1.1);

    std::ostringstream out;
    open_svg(out);
    out << "<circle cx=\"" << num(f.px(0)) << "\" cy=\"" << num(f.py(0))
        << "\" r=\"" << num(f.scale) << "\" fill=\"none\" stroke=\"#bbbbbb\""
        << " stroke-dasharray=\"4 3\"/>\n";
    polyline(out, f, curve, "black");
    out << "</svg>\n";
    return out.str();
}

}  // namespace bergman
