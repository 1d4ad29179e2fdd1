#include "critset/svg.hpp"

#include <algorithm>
#include <sstream>

namespace critset {

SvgCanvas::SvgCanvas(double xmin, double xmax, double ymin, double ymax, int width, int height)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), width_(width), height_(height) {}

Eigen::Vector2d SvgCanvas::to_view(const Eigen::Vector2d& p) const {
    const double x = (p.x() - xmin_) / (xmax_ - xmin_) * width_;
    const double y = height_ - (p.y() - ymin_) / (ymax_ - ymin_) * height_;
    return {x, y};
}

void SvgCanvas::polyline(const std::vector<Eigen::Vector2d>& points, const std::string& stroke,
                         double stroke_width, bool closed) {
    if (points.size() < 2) return;
    std::ostringstream os;
    os << "<path d=\"";
    for (std::size_t k = 0; k < points.size(); ++k) {
        const Eigen::Vector2d v = to_view(points[k]);
        os << (k == 0 ? "M" : "L") << v.x() << " " << v.y() << " ";
    }
    if (closed) os << "Z";
    os << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << stroke_width
       << "\"/>\n";
    body_ += os.str();
}

void SvgCanvas::circle(const Eigen::Vector2d& center, double radius_px, const std::string& fill) {
    const Eigen::Vector2d v = to_view(center);
    std::ostringstream os;
    os << "<circle cx=\"" << v.x() << "\" cy=\"" << v.y() << "\" r=\"" << radius_px
       << "\" fill=\"" << fill << "\"/>\n";
    body_ += os.str();
}

void SvgCanvas::line(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                     const std::string& stroke, double stroke_width, bool dashed) {
    const Eigen::Vector2d va = to_view(a), vb = to_view(b);
    std::ostringstream os;
    os << "<line x1=\"" << va.x() << "\" y1=\"" << va.y() << "\" x2=\"" << vb.x() << "\" y2=\""
       << vb.y() << "\" stroke=\"" << stroke << "\" stroke-width=\"" << stroke_width << "\"";
    if (dashed) os << " stroke-dasharray=\"6 4\"";
    os << "/>\n";
    body_ += os.str();
}

std::string SvgCanvas::str() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
       << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << body_ << "</svg>\n";
    return os.str();
}

namespace {

void bounds_of(const std::vector<CriticalCurve>& curves, double& xmin, double& xmax,
               double& ymin, double& ymax) {
    xmin = ymin = 1e300;
    xmax = ymax = -1e300;
    for (const auto& c : curves)
        for (const auto& p : c.vertices) {
            xmin = std::min(xmin, p.x());
            xmax = std::max(xmax, p.x());
            ymin = std::min(ymin, p.y());
            ymax = std::max(ymax, p.y());
        }
    const double padx = 0.05 * (xmax - xmin + 1e-9), pady = 0.05 * (ymax - ymin + 1e-9);
    xmin -= padx; xmax += padx; ymin -= pady; ymax += pady;
}

} // namespace

std::string render_curves_svg(const std::vector<CriticalCurve>& curves) {
    double xmin, xmax, ymin, ymax;
    bounds_of(curves, xmin, xmax, ymin, ymax);
    SvgCanvas canvas(xmin, xmax, ymin, ymax);
    const char* colors[] = {"#1f6fb2", "#b23a1f", "#3ab21f", "#8a1fb2"};
    for (std::size_t i = 0; i < curves.size(); ++i) {
        canvas.polyline(curves[i].vertices, colors[i % 4], 1.2, true);
        for (std::size_t k = 0; k < curves[i].tags.size(); ++k)
            if (curves[i].tags[k] == PointTag::Cusp)
                canvas.circle(curves[i].vertices[k], 3.5, "#000000");
    }
    return canvas.str();
}

std::string render_homotopy_svg(const HomotopyPath& path) {
    if (path.slices.empty()) return SvgCanvas(0, 1, 0, 1).str();
    double lo = 1e300, hi = -1e300;
    for (const auto& s : path.slices)
        for (double v : s.values()) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const double offset = 0.35 * (hi - lo + 1e-9);
    const double L = path.slices.front().domain_length();
    SvgCanvas canvas(0.0, L, lo, hi + offset * static_cast<double>(path.slices.size() - 1), 640,
                     760);
    for (std::size_t j = 0; j < path.slices.size(); ++j) {
        const auto& s = path.slices[j];
        std::vector<Eigen::Vector2d> pts;
        pts.reserve(s.size() + 1);
        for (std::size_t k = 0; k < s.size(); ++k)
            pts.emplace_back(s.node(k), s[k] + offset * static_cast<double>(j));
        if (s.boundary() == Boundary::Periodic)
            pts.emplace_back(L, s[0] + offset * static_cast<double>(j));
        canvas.polyline(pts, j == 0 || j + 1 == path.slices.size() ? "#b23a1f" : "#1f6fb2", 1.0);
    }
    return canvas.str();
}

std::string render_prufer_svg(const PruferTrace& trace, double wall_half_width) {
    const double T = trace.t_samples.back();
    double lo = 0.0, hi = 0.0;
    for (std::size_t k = 0; k < trace.omega_m.size(); ++k) {
        lo = std::min(lo, trace.omega_m[k]);
        hi = std::max(hi, trace.omega_m[k]);
    }
    hi = std::max(hi, trace.m * T);
    SvgCanvas canvas(0.0, T, lo - 0.5, hi + 0.5);
    // The reference line y = m t and, when requested, the squeeze walls.
    canvas.line({0.0, 0.0}, {T, trace.m * T}, "#888888", 1.0, true);
    if (wall_half_width > 0.0) {
        canvas.line({0.0, wall_half_width}, {T, trace.m * T + wall_half_width}, "#b23a1f", 1.0);
        canvas.line({0.0, -wall_half_width}, {T, trace.m * T - wall_half_width}, "#b23a1f", 1.0);
    }
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(trace.omega_m.size());
    for (std::size_t k = 0; k < trace.omega_m.size(); ++k)
        pts.emplace_back(trace.t_samples[k], trace.omega_m[k]);
    canvas.polyline(pts, "#1f6fb2", 1.4);
    return canvas.str();
}

std::string render_sphere_curve_svg(const SphereCurve& curve) {
    SvgCanvas canvas(-1.1, 1.1, -1.1, 1.1);
    // Equator outline for reference.
    std::vector<Eigen::Vector2d> eq;
    for (int k = 0; k <= 128; ++k) {
        const double a = 2.0 * 3.14159265358979323846 * k / 128;
        eq.emplace_back(std::cos(a), std::sin(a));
    }
    canvas.polyline(eq, "#cccccc", 1.0);
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(curve.samples.size());
    for (const auto& p : curve.samples) pts.emplace_back(p.x(), p.y());
    canvas.polyline(pts, "#1f6fb2", 1.4, true);
    return canvas.str();
}

} // namespace critset
