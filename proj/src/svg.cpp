#include "gco/svg.hpp"

#include <cstdio>
#include <sstream>

#include "gco/error.hpp"

namespace gco {

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

// Robots get evenly spaced hues; fixed saturation keeps figures readable.
std::string robot_color(size_t i, size_t n) {
    const double hue = 360.0 * static_cast<double>(i) / std::max<size_t>(1, n);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "hsl(%.0f,70%%,45%%)", hue);
    return buf;
}

class SvgWriter {
public:
    SvgWriter(Vec2 lo, Vec2 hi, double margin = 0.2) : lo_(lo), hi_(hi), margin_(margin) {
        const double w = hi.x - lo.x + 2 * margin;
        const double h = hi.y - lo.y + 2 * margin;
        out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << num(w) << ' '
             << num(h) << "\" width=\"" << num(w * 100) << "\" height=\"" << num(h * 100)
             << "\">\n";
        out_ << "<rect x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h)
             << "\" fill=\"white\"/>\n";
    }

    // World y points up; SVG y points down.
    double sx(double x) const { return x - lo_.x + margin_; }
    double sy(double y) const { return hi_.y - y + margin_; }

    void polygon(const ConvexPolygon& p, const std::string& fill, double opacity = 1.0) {
        out_ << "<polygon points=\"";
        for (size_t i = 0; i < p.vertices.size(); ++i) {
            if (i) out_ << ' ';
            out_ << num(sx(p.vertices[i].x)) << ',' << num(sy(p.vertices[i].y));
        }
        out_ << "\" fill=\"" << fill << "\" fill-opacity=\"" << num(opacity) << "\"/>\n";
    }

    void circle(Vec2 c, double r, const std::string& fill, const std::string& stroke = "none") {
        out_ << "<circle cx=\"" << num(sx(c.x)) << "\" cy=\"" << num(sy(c.y)) << "\" r=\""
             << num(r) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
             << "\" stroke-width=\"0.01\"/>\n";
    }

    void cross(Vec2 c, double r, const std::string& stroke) {
        out_ << "<path d=\"M " << num(sx(c.x - r)) << ' ' << num(sy(c.y - r)) << " L "
             << num(sx(c.x + r)) << ' ' << num(sy(c.y + r)) << " M " << num(sx(c.x - r)) << ' '
             << num(sy(c.y + r)) << " L " << num(sx(c.x + r)) << ' ' << num(sy(c.y - r))
             << "\" stroke=\"" << stroke << "\" stroke-width=\"0.02\" fill=\"none\"/>\n";
    }

    void polyline(const std::vector<Vec2>& pts, const std::string& stroke) {
        if (pts.empty()) return;
        out_ << "<polyline points=\"";
        for (size_t i = 0; i < pts.size(); ++i) {
            if (i) out_ << ' ';
            out_ << num(sx(pts[i].x)) << ',' << num(sy(pts[i].y));
        }
        out_ << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"0.02\"/>\n";
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    Vec2 lo_, hi_;
    double margin_;
    std::ostringstream out_;
};

std::string render(const Scenario& s, const std::vector<std::vector<Vec2>>& trajectories,
                   size_t upto, bool draw_positions) {
    if (!trajectories.empty() && trajectories.size() != s.starts.size())
        throw ValidationError("render: trajectory robot count does not match scenario");

    SvgWriter svg(s.bounds_lo, s.bounds_hi);
    for (const ConvexPolygon& p : s.obstacles) svg.polygon(p, "#555555");
    for (const SimObject& o : s.objects)
        for (const ConvexPolygon& p : o.world_polygons()) svg.polygon(p, "#cc4444", 0.8);
    for (const Pose2& g : s.object_goals) svg.cross(g.translation, 0.12, "#cc4444");

    const size_t n = s.starts.size();
    for (size_t i = 0; i < n; ++i) {
        svg.circle(s.starts[i], s.robot_radius, robot_color(i, n));
        svg.cross(s.goals[i], s.robot_radius * 0.8, "#22aa22");
    }
    for (size_t i = 0; i < trajectories.size(); ++i) {
        std::vector<Vec2> pts = trajectories[i];
        if (pts.size() > upto + 1) pts.resize(upto + 1);
        svg.polyline(pts, robot_color(i, n));
        if (draw_positions && !pts.empty())
            svg.circle(pts.back(), s.robot_radius, robot_color(i, n), "#000000");
    }
    return svg.finish();
}

}  // namespace

std::string render_svg(const Scenario& scenario,
                       const std::vector<std::vector<Vec2>>& trajectories) {
    return render(scenario, trajectories, static_cast<size_t>(-1) - 1, false);
}

std::string render_svg_frame(const Scenario& scenario,
                             const std::vector<std::vector<Vec2>>& trajectories, size_t upto) {
    return render(scenario, trajectories, upto, true);
}

}  // namespace gco
