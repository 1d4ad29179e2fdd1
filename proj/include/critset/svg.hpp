#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "critset/dirichlet.hpp"
#include "critset/first_order.hpp"
#include "critset/planar_singularity.hpp"
#include "critset/third_order.hpp"

namespace critset {

/// Minimal SVG writer: hand-written path elements, world coordinates mapped
/// to a fixed-size viewport.
class SvgCanvas {
public:
    SvgCanvas(double xmin, double xmax, double ymin, double ymax, int width = 640,
              int height = 640);

    void polyline(const std::vector<Eigen::Vector2d>& points, const std::string& stroke,
                  double stroke_width = 1.0, bool closed = false);
    void circle(const Eigen::Vector2d& center, double radius_px, const std::string& fill);
    void line(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const std::string& stroke,
              double stroke_width = 1.0, bool dashed = false);
    std::string str() const;

private:
    Eigen::Vector2d to_view(const Eigen::Vector2d& p) const;
    double xmin_, xmax_, ymin_, ymax_;
    int width_, height_;
    std::string body_;
};

/// Critical or image curves with cusp markers.
std::string render_curves_svg(const std::vector<CriticalCurve>& curves);

/// Homotopy waterfall: each slice drawn as an offset graph.
std::string render_homotopy_svg(const HomotopyPath& path);

/// Graph of the m-argument with the squeeze walls (the line y = m t plus and
/// minus the wall half-width).
std::string render_prufer_svg(const PruferTrace& trace, double wall_half_width = -1.0);

/// Orthographic projection of a sphere curve onto the xy-plane.
std::string render_sphere_curve_svg(const SphereCurve& curve);

} // namespace critset
